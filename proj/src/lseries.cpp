#include "paramodular/lseries.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <thread>

#include "paramodular/arith.hpp"

namespace paramodular {

uint64_t LSeriesData::available_terms() const {
    if (!explicit_coefficients.empty()) return explicit_coefficients.size() - 1;
    return euler_limit;
}

namespace {

std::vector<uint32_t> smallest_prime_factors(uint64_t m) {
    std::vector<uint32_t> spf(m + 1, 0);
    for (uint64_t i = 2; i <= m; ++i)
        if (spf[i] == 0)
            for (uint64_t j = i; j <= m; j += i)
                if (spf[j] == 0) spf[j] = static_cast<uint32_t>(i);
    return spf;
}

// Extends a prime-power-filled table multiplicatively.
void fill_multiplicative(std::vector<int64_t>& a, const std::vector<uint32_t>& spf) {
    const uint64_t m = a.size() - 1;
    for (uint64_t n = 2; n <= m; ++n) {
        const uint64_t p = spf[n];
        uint64_t q = p;
        while (n % (q * p) == 0) q *= p;
        if (q != n) a[n] = a[q] * a[n / q];
    }
}

struct CurveCache {
    uint64_t limit = 0;
    std::map<uint64_t, Poly> factors;
    std::map<int64_t, int> local_signs;
};

std::mutex cache_mutex;
std::map<std::string, CurveCache> curve_cache;

// Computes factors for the given primes, full quartics when p^2 <= limit.
std::vector<Poly> compute_factors(const Curve& c, const std::vector<uint64_t>& primes, uint64_t limit) {
    std::vector<Poly> out(primes.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const uint64_t p = primes[i];
            if (c.conductor % static_cast<int64_t>(p) == 0)
                out[i] = bad_euler_factor(c, p).poly;
            else if (p * p <= limit)
                out[i] = good_euler_factor(c, p);
            else
                out[i] = linear_euler_factor(c, p);
        }
    };
    const unsigned threads = std::max(1u, std::min(std::thread::hardware_concurrency(), 16u));
    if (threads == 1 || primes.size() < 64) {
        work(0, primes.size());
        return out;
    }
    // Strided assignment balances small and large primes across threads.
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < primes.size(); i += threads) work(i, i + 1);
        });
    for (auto& th : pool) th.join();
    return out;
}

}  // namespace

std::vector<int64_t> arithmetic_coefficients(const LSeriesData& lsd, uint64_t m) {
    if (m > lsd.available_terms())
        throw MissingEulerFactor("coefficients requested up to " + std::to_string(m) + " but only " +
                                 std::to_string(lsd.available_terms()) + " available for " + lsd.label);
    std::vector<int64_t> a(m + 1, 0);
    if (m == 0) return a;
    if (!lsd.explicit_coefficients.empty()) {
        for (uint64_t n = 1; n <= m; ++n) a[n] = lsd.explicit_coefficients[n];
    } else {
        a[1] = 1;
        for (const auto& [p, poly] : lsd.euler_factors) {
            if (p > m) break;
            int terms = 1;
            for (uint64_t q = p; q <= m; q *= p) {
                ++terms;
                if (q > m / p) break;
            }
            const auto series = poly_inverse_series(poly, terms);
            uint64_t q = p;
            for (int k = 1; k < terms; ++k, q *= p) a[q] = series[static_cast<std::size_t>(k)];
        }
        fill_multiplicative(a, smallest_prime_factors(m));
    }
    if (lsd.twist != 1)
        for (uint64_t n = 1; n <= m; ++n)
            if (a[n] != 0) a[n] *= arith::kronecker(lsd.twist, static_cast<int64_t>(n));
    return a;
}

std::vector<double> dirichlet_coefficients(const LSeriesData& lsd, uint64_t m) {
    const auto a = arithmetic_coefficients(lsd, m);
    std::vector<double> out(m + 1, 0.0);
    const double w = lsd.motivic_weight / 2.0;
    for (uint64_t n = 1; n <= m; ++n)
        if (a[n] != 0) out[n] = static_cast<double>(a[n]) / std::pow(static_cast<double>(n), w);
    return out;
}

LSeriesData curve_lseries(const Curve& c, uint64_t limit) {
    const std::string key = format_curve(c);
    std::lock_guard<std::mutex> lock(cache_mutex);
    CurveCache& cache = curve_cache[key];
    if (cache.limit < limit) {
        std::vector<uint64_t> todo;
        for (uint32_t p : arith::primes_up_to(static_cast<uint32_t>(limit))) {
            const bool fresh = p > cache.limit;
            const bool upgrade = !fresh && static_cast<uint64_t>(p) * p > cache.limit &&
                                 static_cast<uint64_t>(p) * p <= limit && c.conductor % p != 0;
            if (fresh || upgrade) todo.push_back(p);
        }
        const auto polys = compute_factors(c, todo, limit);
        for (std::size_t i = 0; i < todo.size(); ++i) cache.factors[todo[i]] = polys[i];
        if (cache.local_signs.empty())
            for (uint64_t p : arith::prime_divisors(static_cast<uint64_t>(c.conductor)))
                cache.local_signs[static_cast<int64_t>(p)] = bad_euler_factor(c, p).local_sign;
        cache.limit = limit;
    }
    LSeriesData out;
    out.label = c.label;
    out.degree = 4;
    out.gamma_power = 2;
    out.conductor = c.conductor;
    out.motivic_weight = 1;
    for (const auto& [p, poly] : cache.factors) {
        if (p > limit) break;
        out.euler_factors[p] = poly;
    }
    out.euler_limit = limit;
    out.local_signs = cache.local_signs;
    int eps = 1;
    for (const auto& [p, s] : out.local_signs) eps *= s;
    out.root_number = eps;
    return out;
}

LSeriesData elliptic_lseries(const EllipticCurve& e, uint64_t limit) {
    LSeriesData out;
    out.label = e.label;
    out.degree = 2;
    out.gamma_power = 1;
    out.conductor = e.conductor;
    out.motivic_weight = 1;
    for (uint32_t p : arith::primes_up_to(static_cast<uint32_t>(limit))) {
        const int64_t ap = elliptic_ap(e, p);
        if (e.conductor % p == 0) {
            out.euler_factors[p] = {1, -ap};
            out.local_signs[p] = static_cast<int>(-ap);
        } else {
            out.euler_factors[p] = {1, -ap, static_cast<int64_t>(p)};
        }
    }
    out.euler_limit = limit;
    out.root_number = elliptic_root_number(e);
    return out;
}

LSeriesData with_bad_factor(const LSeriesData& lsd, uint64_t p, const Poly& poly) {
    LSeriesData out = lsd;
    out.euler_factors[p] = poly;
    return out;
}

int64_t twisted_conductor(int64_t level, int64_t disc) {
    const int64_t d = disc < 0 ? -disc : disc;
    const int64_t g = std::gcd(level, d);
    return level * d * d * d * d / g;
}

int root_number_twist(int eps, const std::map<int64_t, int>& local_signs, int64_t level, int64_t disc) {
    const int64_t g = std::gcd(level, disc < 0 ? -disc : disc);
    int out = eps * arith::kronecker(disc, level / g);
    for (uint64_t p : arith::prime_divisors(static_cast<uint64_t>(g))) {
        auto it = local_signs.find(static_cast<int64_t>(p));
        if (it == local_signs.end())
            throw std::invalid_argument("root_number_twist: no local sign for p=" + std::to_string(p));
        out *= it->second;
    }
    return out;
}

LSeriesData twist(const LSeriesData& lsd, int64_t disc) {
    if (!arith::is_fundamental(disc)) throw std::invalid_argument("twist needs a fundamental discriminant");
    if (disc == 1) return lsd;
    if (lsd.twist != 1) throw std::invalid_argument("twist: series is already twisted");
    LSeriesData out = lsd;
    out.twist = disc;
    out.label = lsd.label + "(x)" + std::to_string(disc);
    const int64_t ad = disc < 0 ? -disc : disc;
    if (lsd.lift_elliptic_sign) {
        if (disc > 0)
            throw std::invalid_argument("twist: lift twists by D > 1 have a different gamma factor");
        if (std::gcd(lsd.conductor, ad) != 1) throw std::invalid_argument("twist: lift twist needs gcd(N, D) = 1");
        out.conductor = lsd.conductor * ad * ad * ad * ad;
        out.root_number = *lsd.lift_elliptic_sign * arith::kronecker(disc, -lsd.conductor);
        out.pole = false;
        return out;
    }
    if (lsd.degree == 2) {
        if (std::gcd(lsd.conductor, ad) != 1) throw std::invalid_argument("twist: degree 2 twist needs gcd(N, D) = 1");
        out.conductor = lsd.conductor * ad * ad;
        if (lsd.root_number) out.root_number = *lsd.root_number * arith::kronecker(disc, -lsd.conductor);
        return out;
    }
    out.conductor = twisted_conductor(lsd.conductor, disc);
    if (lsd.root_number) out.root_number = root_number_twist(*lsd.root_number, lsd.local_signs, lsd.conductor, disc);
    return out;
}

Poly spin_euler_factor(int64_t lambda_q, int64_t lambda_q2, int weight, int64_t q) {
    auto ipow = [](int64_t b, int e) {
        int64_t r = 1;
        for (int i = 0; i < e; ++i) r *= b;
        return r;
    };
    const int k = weight;
    return {1, -lambda_q, lambda_q * lambda_q - lambda_q2 - ipow(q, 2 * k - 4), -lambda_q * ipow(q, 2 * k - 3),
            ipow(q, 4 * k - 6)};
}

std::vector<int64_t> lift_coefficients(const std::vector<int64_t>& f_coeffs, uint64_t m) {
    if (f_coeffs.size() < m + 1) throw std::invalid_argument("lift_coefficients: not enough elliptic coefficients");
    std::vector<int64_t> sigma(m + 1, 0);
    for (uint64_t d = 1; d <= m; ++d)
        for (uint64_t n = d; n <= m; n += d) sigma[n] += static_cast<int64_t>(d);
    std::vector<int64_t> out(m + 1, 0);
    for (uint64_t d = 1; d <= m; ++d) {
        if (sigma[d] == 0) continue;
        for (uint64_t e = 1; d * e <= m; ++e) out[d * e] += sigma[d] * f_coeffs[e];
    }
    return out;
}

LSeriesData lift_lseries(const std::vector<int64_t>& f_coeffs, int64_t level, int f_sign) {
    if (f_coeffs.size() < 2) throw std::invalid_argument("lift_lseries: no coefficients");
    LSeriesData out;
    out.label = "lift(" + std::to_string(level) + ")";
    out.degree = 4;
    out.gamma_power = 2;
    out.conductor = level;
    out.motivic_weight = 1;
    out.explicit_coefficients = lift_coefficients(f_coeffs, f_coeffs.size() - 1);
    out.pole = true;
    out.lift_elliptic_sign = f_sign;
    return out;
}

}  // namespace paramodular
