#pragma once

// Genus-2 curves y^2 + h(x) y = f(x) and elliptic curves in Weierstrass
// form: point counts over F_p and F_{p^2}, and local Euler factors.

#include <cstdint>
#include <string>
#include <vector>

namespace paramodular {

/// Integer polynomial, coefficients from the constant term upwards.
using Poly = std::vector<int64_t>;

Poly poly_mul(const Poly& a, const Poly& b);
/// 1 / P(X) mod X^(terms), for P(0) = 1.
std::vector<int64_t> poly_inverse_series(const Poly& p, int terms);

struct Curve {
    std::string label;
    int64_t conductor = 1;
    Poly f;  // degree <= 6
    Poly h;  // degree <= 3
    int torsion = 0;
};

/// The six curves of the verification tables (F249, F277, F295, F587-,
/// F713+, F713-).
const std::vector<Curve>& builtin_curves();
/// Accepts "F587-", "587-", "F249" or "249".
const Curve& builtin_curve(const std::string& label);

/// `CURVE label=<s> conductor=<N> f=<c0,c1,...> h=<c0,...> torsion=<T>`.
Curve parse_curve(const std::string& line);
Curve load_curve_file(const std::string& path);
std::string format_curve(const Curve& c);

/// Points of the projective model over F_{p^r} (r = 1, 2), where the
/// model may be singular; no good-reduction check.
int64_t count_points_model(const Curve& c, uint64_t p, int r);

/// count_points_model restricted to good primes; throws std::invalid_argument
/// when p divides the conductor or r is not 1 or 2.
int64_t count_points(const Curve& c, uint64_t p, int r);

/// 1 - e1 X + e2 X^2 - p e1 X^3 + p^2 X^4 from counts over F_p and F_{p^2}.
Poly good_euler_factor(const Curve& c, uint64_t p);

/// Only the linear coefficient: 1 - (p + 1 - #C(F_p)) X. Enough for
/// Dirichlet coefficients up to limits below p^2.
Poly linear_euler_factor(const Curve& c, uint64_t p);

struct BadFactor {
    Poly poly;           // (1 - eps X)(1 - a X + p X^2)
    int local_sign = 0;  // local root number, -eps
    int64_t a = 0;
    int eps = 0;         // +1 split torus, -1 nonsplit
    bool ambiguous = false;  // counts fit two (a, eps) pairs; first one returned
};

/// Local factor at p || N for semistable toric-rank-one reduction, read off
/// from point counts of the nodal reduction over F_p and F_{p^2}. Throws
/// std::runtime_error if the counts do not fit that shape.
BadFactor bad_euler_factor(const Curve& c, uint64_t p);

/// All (1 +- X)(1 - aX + pX^2) with |a| <= 2 sqrt(p).
std::vector<BadFactor> bad_factor_candidates(uint64_t p);

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
struct EllipticCurve {
    std::string label;
    int64_t conductor = 1;
    int64_t a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
};

/// p + 1 - #E(F_p), counting the singular point once at bad primes.
int64_t elliptic_ap(const EllipticCurve& e, uint64_t p);

/// Arithmetic Dirichlet coefficients b_1..b_M (index 0 unused).
std::vector<int64_t> elliptic_coefficients(const EllipticCurve& e, uint64_t m);

/// -prod_{p | N} (-a_p), valid for squarefree conductor.
int elliptic_root_number(const EllipticCurve& e);

/// 37a: y^2 + y = x^3 - x.
EllipticCurve curve_37a();

}  // namespace paramodular
