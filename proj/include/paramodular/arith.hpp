#pragma once

// Exact integer number theory used throughout the library: Kronecker
// symbols, factorization, fundamental discriminants, imaginary quadratic
// class numbers and the special values L(0, chi_D), L(1, chi_D).

#include <cstdint>
#include <utility>
#include <vector>

#include "paramodular/rational.hpp"

namespace paramodular::arith {

/// Least non-negative residue of a modulo m (m > 0).
constexpr int64_t mod(int64_t a, int64_t m) {
    const int64_t r = a % m;
    return r < 0 ? r + m : r;
}

int64_t gcd(int64_t a, int64_t b);

/// Integer square root: largest r with r*r <= n.
uint64_t isqrt(uint64_t n);
bool is_square(int64_t n);

/// Full Kronecker symbol (a/n), completely multiplicative in both arguments.
/// (a/-1) = sign(a), (a/0) = [|a| == 1].
int kronecker(int64_t a, int64_t n);

bool is_prime(uint64_t n);

/// Prime factorization as (prime, exponent) pairs in increasing order.
std::vector<std::pair<uint64_t, int>> factor(uint64_t n);
std::vector<uint64_t> prime_divisors(uint64_t n);
bool is_squarefree(uint64_t n);

/// All primes <= limit.
std::vector<uint32_t> primes_up_to(uint32_t limit);

/// A discriminant value = fundamental * conductor^2.
struct Discriminant {
    int64_t value = 1;
    int64_t fundamental = 1;
    int64_t conductor = 1;

    friend bool operator==(const Discriminant&, const Discriminant&) = default;
};

bool is_discriminant(int64_t d);
bool is_fundamental(int64_t d);

/// Splits a nonzero discriminant into its fundamental part and conductor.
/// Throws std::invalid_argument for d == 0 or d = 2, 3 mod 4.
Discriminant fundamental_decomposition(int64_t d);

/// Reduced positive definite forms [a, b, c] of discriminant d < 0:
/// |b| <= a <= c, and b >= 0 whenever |b| == a or a == c.
struct ReducedForm {
    int64_t a, b, c;
    friend auto operator<=>(const ReducedForm&, const ReducedForm&) = default;
};
std::vector<ReducedForm> reduced_forms(int64_t d, bool primitive_only);

struct ClassData {
    Discriminant disc;
    int64_t h = 1;
    int w = 2;
};

/// Class number and unit count of a negative fundamental discriminant.
ClassData class_data(int64_t d);

/// Number of units of the imaginary quadratic order of discriminant d < 0.
int unit_count(int64_t d);

struct DirichletSpecialValues {
    Rational at_zero;  // L(0, chi_D) = 2h/w
    double at_one;     // L(1, chi_D) = 2 pi h / (w sqrt|D|)
};

DirichletSpecialValues dirichlet_special_values(int64_t d);

/// Fundamental discriminants d with lo <= d <= hi, in increasing order.
std::vector<int64_t> fundamental_discriminants(int64_t lo, int64_t hi);

}  // namespace paramodular::arith
