#pragma once

// Dirichlet series data for spin L-functions of genus-2 curves, their
// quadratic twists, and the lift factorization zeta(s+1/2) zeta(s-1/2) L(f,s).

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "paramodular/curve.hpp"

namespace paramodular {

struct MissingEulerFactor : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Coefficients are kept in arithmetic normalization (integers); the
/// analytic coefficient is a_n / n^(motivic_weight / 2).
struct LSeriesData {
    std::string label;
    int degree = 4;
    /// Gamma factor Gamma(s + 1/2)^gamma_power; Q = sqrt(conductor) / (2 pi)^gamma_power.
    int gamma_power = 2;
    int64_t conductor = 1;
    int motivic_weight = 1;
    /// Euler polynomials; for p^2 > euler_limit only the linear term is kept.
    std::map<uint64_t, Poly> euler_factors;
    uint64_t euler_limit = 0;
    /// Alternative to Euler factors: explicit arithmetic coefficients, index n.
    std::vector<int64_t> explicit_coefficients;
    std::optional<int> root_number;
    std::map<int64_t, int> local_signs;
    int64_t twist = 1;
    bool pole = false;
    /// Set for lifts: the root number of the elliptic factor f.
    std::optional<int> lift_elliptic_sign;

    /// Largest n for which coefficients are available.
    uint64_t available_terms() const;
};

/// Arithmetic coefficients a_1..a_M (index 0 unused, set to 0), twisted by
/// chi_twist. Throws MissingEulerFactor if M exceeds available_terms().
std::vector<int64_t> arithmetic_coefficients(const LSeriesData& lsd, uint64_t m);

/// Analytic coefficients a_n / n^(w/2) for n <= M.
std::vector<double> dirichlet_coefficients(const LSeriesData& lsd, uint64_t m);

/// Euler factors from point counts for all p <= limit; bad primes use
/// bad_euler_factor. Root number is the product of the local signs.
/// Results are cached per curve and extended on demand.
LSeriesData curve_lseries(const Curve& c, uint64_t limit);

/// Degree-2 data of an elliptic curve, Gamma(s+1/2), Q = sqrt(N)/(2 pi).
LSeriesData elliptic_lseries(const EllipticCurve& e, uint64_t limit);

/// Replaces selected bad factors (used by functional-equation fits).
LSeriesData with_bad_factor(const LSeriesData& lsd, uint64_t p, const Poly& poly);

/// N * D^4 / gcd(N, D).
int64_t twisted_conductor(int64_t level, int64_t disc);

/// eps * chi_D(N_0) * prod_{p | gcd(D, N)} eps_p with N_0 = N / gcd(N, D).
int root_number_twist(int eps, const std::map<int64_t, int>& local_signs, int64_t level, int64_t disc);

/// Quadratic twist by a fundamental discriminant.
LSeriesData twist(const LSeriesData& lsd, int64_t disc);

/// 1 - l X + (l^2 - l2 - q^(2k-4)) X^2 - l q^(2k-3) X^3 + q^(4k-6) X^4.
Poly spin_euler_factor(int64_t lambda_q, int64_t lambda_q2, int weight, int64_t q);

/// Dirichlet convolution 1 * id * b, the arithmetic coefficients of
/// zeta(s) zeta(s-1) L(f, s) for weight-2 f; exact.
std::vector<int64_t> lift_coefficients(const std::vector<int64_t>& f_coeffs, uint64_t m);

/// Degree-4 data of the Gritsenko lift of weight-2 f of level N with root
/// number f_sign; pole is set (untwisted).
LSeriesData lift_lseries(const std::vector<int64_t>& f_coeffs, int64_t level, int f_sign);

}  // namespace paramodular
