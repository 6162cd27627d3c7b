#include "paramodular/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace paramodular {

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    auto parse_int = [&](const std::string& s) {
        if (s.empty()) throw std::invalid_argument("empty integer in '" + text + "'");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw std::invalid_argument("bad integer '" + s + "'");
        for (std::size_t j = i; j < s.size(); ++j)
            if (s[j] < '0' || s[j] > '9') throw std::invalid_argument("bad integer '" + s + "'");
        return BigInt(s[0] == '+' ? s.substr(1) : s);
    };
    if (slash == std::string::npos) return Rational(parse_int(text));
    const BigInt num = parse_int(text.substr(0, slash));
    const BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(num, den);
}

std::string to_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace paramodular

namespace paramodular::arith {

int64_t gcd(int64_t a, int64_t b) { return std::gcd(a, b); }

uint64_t isqrt(uint64_t n) {
    auto r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square(int64_t n) {
    if (n < 0) return false;
    const uint64_t r = isqrt(static_cast<uint64_t>(n));
    return r * r == static_cast<uint64_t>(n);
}

namespace {

// Jacobi symbol (a/n) for odd n > 0, 0 <= a < n.
int jacobi(uint64_t a, uint64_t n) {
    int t = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            const uint64_t r = n & 7;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t powmod(uint64_t b, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

uint64_t pollard_rho(uint64_t n) {
    if (n % 2 == 0) return 2;
    for (uint64_t c = 1;; ++c) {
        uint64_t x = 2, y = 2, d = 1;
        auto f = [&](uint64_t v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor_into(uint64_t n, std::vector<uint64_t>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    const uint64_t d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

int kronecker(int64_t a, int64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;
    int k = 1;
    // Work with magnitudes in unsigned arithmetic to avoid overflow on INT64_MIN.
    uint64_t un = n < 0 ? static_cast<uint64_t>(-(n + 1)) + 1 : static_cast<uint64_t>(n);
    int v = 0;
    while ((un & 1) == 0) {
        un >>= 1;
        ++v;
    }
    if (v & 1) {
        const int64_t r = mod(a, 8);
        if (r == 3 || r == 5) k = -k;
    }
    if (n < 0 && a < 0) k = -k;
    if (un == 1) return k;
    const int64_t ua = mod(a, static_cast<int64_t>(un));
    return k * jacobi(static_cast<uint64_t>(ua), un);
}

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic for all 64-bit n.
    for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::pair<uint64_t, int>> factor(uint64_t n) {
    if (n == 0) throw std::invalid_argument("factor(0)");
    std::vector<uint64_t> primes;
    for (uint64_t p = 2; p < 1000 && p * p <= n; ++p) {
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    factor_into(n, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<uint64_t, int>> out;
    for (uint64_t p : primes) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.emplace_back(p, 1);
    }
    return out;
}

std::vector<uint64_t> prime_divisors(uint64_t n) {
    std::vector<uint64_t> out;
    for (const auto& [p, e] : factor(n)) out.push_back(p);
    return out;
}

bool is_squarefree(uint64_t n) {
    for (const auto& [p, e] : factor(n))
        if (e > 1) return false;
    return true;
}

std::vector<uint32_t> primes_up_to(uint32_t limit) {
    std::vector<uint32_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<uint32_t>(i));
        for (uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

bool is_discriminant(int64_t d) {
    const int64_t r = mod(d, 4);
    return d != 0 && (r == 0 || r == 1);
}

bool is_fundamental(int64_t d) {
    if (d == 1) return true;
    if (!is_discriminant(d)) return false;
    const uint64_t ad = d < 0 ? static_cast<uint64_t>(-d) : static_cast<uint64_t>(d);
    if (mod(d, 4) == 1) return is_squarefree(ad);
    const int64_t m = d / 4;
    const int64_t r = mod(m, 4);
    return (r == 2 || r == 3) && is_squarefree(ad / 4);
}

Discriminant fundamental_decomposition(int64_t d) {
    if (!is_discriminant(d))
        throw std::invalid_argument("not a discriminant: " + std::to_string(d));
    const uint64_t ad = d < 0 ? static_cast<uint64_t>(-d) : static_cast<uint64_t>(d);
    int64_t core = d < 0 ? -1 : 1;
    int64_t f = 1;
    for (const auto& [p, e] : factor(ad)) {
        for (int i = 0; i < e / 2; ++i) f *= static_cast<int64_t>(p);
        if (e % 2) core *= static_cast<int64_t>(p);
    }
    // d = core * f^2 with core squarefree.
    if (mod(core, 4) != 1) {
        core *= 4;
        f /= 2;
    }
    return Discriminant{d, core, f};
}

std::vector<ReducedForm> reduced_forms(int64_t d, bool primitive_only) {
    if (d >= 0 || !is_discriminant(d))
        throw std::invalid_argument("reduced_forms needs a negative discriminant");
    std::vector<ReducedForm> out;
    const int64_t ad = -d;
    for (int64_t a = 1; 3 * a * a <= ad; ++a) {
        for (int64_t b = -a + 1; b <= a; ++b) {
            if (mod(b - d, 2) != 0) continue;
            const int64_t num = b * b - d;
            if (num % (4 * a) != 0) continue;
            const int64_t c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            if (primitive_only && std::gcd(std::gcd(a, b), c) != 1) continue;
            out.push_back({a, b, c});
        }
    }
    return out;
}

int unit_count(int64_t d) {
    if (d == -3) return 6;
    if (d == -4) return 4;
    return 2;
}

ClassData class_data(int64_t d) {
    if (d >= 0 || !is_fundamental(d))
        throw std::invalid_argument("class_data needs a negative fundamental discriminant, got " +
                                    std::to_string(d));
    ClassData out;
    out.disc = Discriminant{d, d, 1};
    out.h = static_cast<int64_t>(reduced_forms(d, true).size());
    out.w = unit_count(d);
    return out;
}

DirichletSpecialValues dirichlet_special_values(int64_t d) {
    const ClassData cd = class_data(d);
    DirichletSpecialValues out;
    out.at_zero = Rational(2 * cd.h, cd.w);
    out.at_one = 2.0 * std::numbers::pi * static_cast<double>(cd.h) /
                 (cd.w * std::sqrt(static_cast<double>(-d)));
    return out;
}

std::vector<int64_t> fundamental_discriminants(int64_t lo, int64_t hi) {
    std::vector<int64_t> out;
    for (int64_t d = lo; d <= hi; ++d)
        if (d != 0 && is_fundamental(d)) out.push_back(d);
    return out;
}

}  // namespace paramodular::arith
