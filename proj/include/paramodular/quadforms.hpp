#pragma once

// Binary quadratic forms [Na, b, c] of level N and their classes modulo
// Gamma_0(N): enumeration, equivalence, stabilizers, Atkin-Lehner
// involutions and the generalized genus character chi_ell.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace paramodular {

/// 2x2 integer matrix [[a, b], [c, d]].
struct Matrix2 {
    int64_t a = 1, b = 0, c = 0, d = 1;

    int64_t det() const { return a * d - b * c; }
    Matrix2 operator*(const Matrix2& o) const;
    /// Inverse of a determinant +-1 matrix.
    Matrix2 inverse() const;
    static Matrix2 identity() { return {}; }

    friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

/// The form N*a*x^2 + b*x*y + c*y^2.
struct QuadForm {
    int64_t level = 1;
    int64_t a = 0, b = 0, c = 0;

    int64_t first() const { return level * a; }
    int64_t disc() const { return b * b - 4 * level * a * c; }
    bool positive_definite() const { return a > 0 && disc() < 0; }
    /// Value at (x, y); throws std::overflow_error if it does not fit.
    int64_t value(int64_t x, int64_t y) const;
    /// T[U] = U^t T U, the right action on Gram matrices.
    QuadForm act(const Matrix2& u) const;

    std::string str() const;

    friend auto operator<=>(const QuadForm&, const QuadForm&) = default;
};

bool in_gamma0(const Matrix2& u, int64_t level);

/// rho mod 2N with rho^2 = D mod 4N, sorted ascending in [0, 2N).
std::vector<int64_t> residues(int64_t level, int64_t disc);

struct ClassList {
    int64_t level = 1;
    int64_t disc = 0;
    std::vector<QuadForm> reps;
    std::vector<int> stabilizer_orders;
};

/// One canonical representative per Gamma_0(N)-class of positive definite
/// forms [Na, b, c] of discriminant disc (restricted to b = rho mod 2N when
/// rho is given), sorted by (a, b, c).
ClassList enumerate_classes(int64_t level, int64_t disc, std::optional<int64_t> rho = std::nullopt);

/// Canonical representative of the Gamma_0(N)-class of t: among all forms of
/// the class, minimal first coefficient, then b in (-Na, Na], then the
/// lexicographically least (a, b, c).
QuadForm canonical(const QuadForm& t);

/// Some U in Gamma_0(N) with t1[U] = t2, if one exists.
std::optional<Matrix2> gamma0_equivalent(const QuadForm& t1, const QuadForm& t2);

/// #{U in Gamma_0(N) : t[U] = t}.
int automorphism_count(const QuadForm& t);

/// The involution W_{N'} on Gamma_0(N)-classes, N' an exact divisor of N.
/// Returns the canonical representative of the image class.
QuadForm atkin_lehner(const QuadForm& t, int64_t exact_divisor);

/// Generalized genus character chi_ell(T) in {-1, +1} for a fundamental
/// discriminant ell dividing disc(T) with disc(T)/ell a discriminant.
/// Throws std::invalid_argument when gcd(a, b, c, ell) != 1.
int genus_character(const QuadForm& t, int64_t ell);

/// genus_character computed from a caller-chosen represented value n of the
/// modified form; used to check independence of the representative.
int genus_character_with_value(const QuadForm& t, int64_t ell, int64_t represented);

/// The modified form [Na/g, b, cg] with g = gcd(N, b, c, ell), returned as
/// (A, B, C) coefficients of A x^2 + B xy + C y^2.
struct PlainForm {
    int64_t a, b, c;
    int64_t value(int64_t x, int64_t y) const { return a * x * x + b * x * y + c * y * y; }
};
PlainForm genus_modified_form(const QuadForm& t, int64_t ell);

/// SL_2(Z)-reduction of a positive definite plain form. Returns the reduced
/// form and V with f[V] = reduced.
struct Reduction {
    PlainForm reduced;
    Matrix2 transform;
};
Reduction reduce(const PlainForm& f);

}  // namespace paramodular
