#include "paramodular/afe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace paramodular {

namespace {

constexpr double kUnit = 1.1102230246251565e-16;

// Beyond the table range the kernel is below 1e-40 and decays like
// exp(-d x^(1/d)); this allowance covers the remaining tail.
constexpr double kFarTail = 1e-30;

double coefficient_exponent(const LSeriesData& lsd) { return lsd.lift_elliptic_sign ? 0.5 : 0.0; }

int divisor_order(const LSeriesData& lsd) { return 2 * lsd.gamma_power; }

int require_root_number(const LSeriesData& lsd) {
    if (!lsd.root_number) throw UnknownRootNumber(lsd.label);
    return *lsd.root_number;
}

void require_no_pole(const LSeriesData& lsd) {
    if (lsd.pole) throw std::domain_error(lsd.label + ": L-function has a pole, AFE without residue terms does not apply");
}

void require_terms(const LSeriesData& lsd, uint64_t m) {
    if (m > lsd.available_terms()) throw InsufficientCoefficients(lsd.label, m, lsd.available_terms());
}

// Neumaier-compensated sum that also tracks sum |x|.
struct Accumulator {
    double sum = 0, comp = 0, abs = 0;
    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
        abs += std::abs(x);
    }
    double value() const { return sum + comp; }
};

struct Sum {
    double value = 0;
    double abs_terms = 0;  // sum |a_n n^-sigma K|
    double abs_coeffs = 0; // sum |a_n n^-sigma|
};

Sum smoothed_sum(const std::vector<double>& a, uint64_t m, double sigma, const KernelTable& kernel, double scale) {
    Accumulator acc;
    double coeffs = 0;
    const double cut = kernel.x_max() * scale;
    for (uint64_t n = 1; n <= m && static_cast<double>(n) < cut; ++n) {
        if (a[n] == 0) continue;
        const double c = a[n] * std::pow(static_cast<double>(n), -sigma);
        coeffs += std::abs(c);
        acc.add(c * kernel(static_cast<double>(n) / scale));
    }
    return {acc.value(), acc.abs, coeffs};
}

double sum_error(const Sum& s, const KernelTable& kernel) {
    const double interp = std::min(kernel.interpolation_error() * s.abs_coeffs, kernel.relative_error() * s.abs_terms);
    return interp + 16 * kUnit * s.abs_terms;
}

struct SplitPlan {
    double s, lambda, Q, factor;
    const KernelTable* first;
    const KernelTable* second;
};

SplitPlan plan(const LSeriesData& lsd, double s, double lambda) {
    const int d = lsd.gamma_power;
    SplitPlan p{s, lambda, analytic_Q(lsd), 0, nullptr, nullptr};
    p.factor = std::pow(p.Q, 1 - 2 * s) * std::exp(d * (std::lgamma(1.5 - s) - std::lgamma(s + 0.5)));
    p.first = &kernel_table({s, d, 1});
    p.second = &kernel_table({1 - s, d, 1});
    return p;
}

double split_tail(const LSeriesData& lsd, const SplitPlan& p, uint64_t m) {
    const double beta = coefficient_exponent(lsd);
    const int k = divisor_order(lsd);
    return tail_bound(*p.first, p.lambda * p.Q, p.s, beta, k, m) +
           p.factor * tail_bound(*p.second, p.Q / p.lambda, 1 - p.s, beta, k, m);
}

template <class F>
uint64_t smallest_terms(F tail, double target) {
    uint64_t hi = 1;
    while (tail(hi) > target) {
        if (hi > (uint64_t{1} << 40)) throw std::runtime_error("AFE: truncation bound does not converge");
        hi *= 2;
    }
    uint64_t lo = hi / 2;
    if (hi == 1) return 1;
    while (hi - lo > 1) {
        const uint64_t mid = lo + (hi - lo) / 2;
        if (tail(mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

Estimate split_value(const LSeriesData& lsd, const std::vector<double>& a, uint64_t m, const SplitPlan& p, int eps) {
    const Sum s1 = smoothed_sum(a, m, p.s, *p.first, p.lambda * p.Q);
    const Sum s2 = smoothed_sum(a, m, 1 - p.s, *p.second, p.Q / p.lambda);
    Estimate e;
    e.value = s1.value + eps * p.factor * s2.value;
    e.error_bound = split_tail(lsd, p, m) + sum_error(s1, *p.first) + p.factor * sum_error(s2, *p.second) +
                    4 * kUnit * std::abs(e.value);
    e.terms = m;
    return e;
}

uint64_t split_terms(const LSeriesData& lsd, const SplitPlan& p, double tol) {
    return smallest_terms([&](uint64_t m) { return split_tail(lsd, p, m); }, tol / 2);
}

}  // namespace

double analytic_Q(const LSeriesData& lsd) {
    return std::sqrt(static_cast<double>(lsd.conductor)) / std::pow(2 * std::numbers::pi, lsd.gamma_power);
}

double default_tolerance(int64_t disc) { return std::abs(disc) <= 60 ? 1e-8 : 1e-5; }

double divisor_sum_bound(int k, double x) {
    if (x < 1) return 0;
    double fact = 1;
    for (int i = 2; i < k; ++i) fact *= i;
    return x * std::pow(std::log(x) + k - 1, k - 1) / fact;
}

double tail_bound(const KernelTable& kernel, double scale, double sigma, double beta, int k, uint64_t m) {
    const double e = beta - sigma;
    const double t_end = kernel.x_max() * scale;
    std::vector<double> t{std::max(1.0, static_cast<double>(m))};
    while (t.back() < t_end) t.push_back(t.back() * 1.01);
    if (t.size() < 2) return kFarTail;
    // H[i] bounds h(n) = n^e K(n / scale) on (t_i, t_{i+1}].
    std::vector<double> H(t.size() - 1);
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double power = std::pow(e >= 0 ? t[i + 1] : t[i], e);
        const double kv = std::max(0.0, kernel(t[i] / scale));
        H[i] = power * kv * (1 + kernel.relative_error());
    }
    for (std::size_t i = H.size() - 1; i-- > 0;) H[i] = std::max(H[i], H[i + 1]);
    // Summation by parts against the monotone majorant, S(t) <= divisor_sum_bound.
    double total = H.back() * divisor_sum_bound(k, t.back());
    for (std::size_t i = 1; i < H.size(); ++i) total += divisor_sum_bound(k, t[i]) * (H[i - 1] - H[i]);
    return total + kFarTail;
}

uint64_t required_terms(const LSeriesData& lsd, double tol) {
    const auto& kernel = kernel_table({0.5, lsd.gamma_power, 1});
    const double Q = analytic_Q(lsd);
    const double beta = coefficient_exponent(lsd);
    const int k = divisor_order(lsd);
    return smallest_terms([&](uint64_t m) { return 2 * tail_bound(kernel, Q, 0.5, beta, k, m); }, tol / 2);
}

namespace {

Estimate central_sum(const LSeriesData& lsd, uint64_t m, int refine) {
    const auto& kernel = kernel_table({0.5, lsd.gamma_power, 1}, refine);
    const double Q = analytic_Q(lsd);
    const auto a = dirichlet_coefficients(lsd, m);
    const Sum s = smoothed_sum(a, m, 0.5, kernel, Q);
    Estimate e;
    e.value = 2 * s.value;
    e.error_bound = 2 * tail_bound(kernel, Q, 0.5, coefficient_exponent(lsd), divisor_order(lsd), m) +
                    2 * sum_error(s, kernel) + 2 * kUnit * std::abs(e.value);
    e.terms = m;
    e.refine = refine;
    return e;
}

}  // namespace

Estimate central_value_terms(const LSeriesData& lsd, uint64_t m, int refine) {
    require_no_pole(lsd);
    if (require_root_number(lsd) == -1) return {0.0, 0.0, 0};
    require_terms(lsd, m);
    return central_sum(lsd, m, refine);
}

Estimate central_value(const LSeriesData& lsd, double tol) {
    require_no_pole(lsd);
    if (require_root_number(lsd) == -1) return {0.0, 0.0, 0};
    const uint64_t m = required_terms(lsd, tol);
    require_terms(lsd, m);
    // The tail takes half of tol; finer kernel grids shrink the interpolation share.
    Estimate e = central_sum(lsd, m, 0);
    for (int refine = 1; refine <= 3 && e.error_bound > tol; ++refine) e = central_sum(lsd, m, refine);
    return e;
}

Estimate l_value(const LSeriesData& lsd, double s, double lambda, double tol) {
    require_no_pole(lsd);
    const int eps = require_root_number(lsd);
    if (!(s > 0 && s < 1)) throw std::domain_error("l_value: s must lie in (0, 1)");
    const SplitPlan p = plan(lsd, s, lambda);
    const uint64_t m = split_terms(lsd, p, tol);
    require_terms(lsd, m);
    return split_value(lsd, dirichlet_coefficients(lsd, m), m, p, eps);
}

Estimate central_derivative(const LSeriesData& lsd, double tol) {
    require_no_pole(lsd);
    const int eps = require_root_number(lsd);
    const double Q = analytic_Q(lsd);
    if (eps == 1) {
        // Lambda'(1/2) = 0 gives L'(1/2) = -L(1/2) (log Q + d psi(1)).
        const double c = std::log(Q) + lsd.gamma_power * digamma(1.0);
        Estimate v = central_value(lsd, tol / std::max(1.0, std::abs(c)));
        return {-c * v.value, std::abs(c) * v.error_bound, v.terms};
    }
    const auto& kernel = kernel_table({0.5, lsd.gamma_power, 2});
    const double beta = coefficient_exponent(lsd);
    const int k = divisor_order(lsd);
    auto tail = [&](uint64_t m) { return 2 * tail_bound(kernel, Q, 0.5, beta, k, m); };
    const uint64_t m = smallest_terms(tail, tol / 2);
    require_terms(lsd, m);
    const Sum s = smoothed_sum(dirichlet_coefficients(lsd, m), m, 0.5, kernel, Q);
    return {2 * s.value, tail(m) + 2 * sum_error(s, kernel) + 2 * kUnit * std::abs(s.value), m};
}

namespace {

std::vector<SplitPlan> fe_plans(const LSeriesData& lsd) {
    std::vector<SplitPlan> plans;
    for (double s0 : {0.6, 0.75})
        for (double lambda : {1.0, 1.25}) plans.push_back(plan(lsd, s0, lambda));
    return plans;
}

}  // namespace

uint64_t fe_terms(const LSeriesData& lsd, double tol) {
    uint64_t m = 1;
    for (const SplitPlan& p : fe_plans(lsd)) m = std::max(m, split_terms(lsd, p, tol));
    return m;
}

Estimate fe_residual(const LSeriesData& lsd, int eps, double tol) {
    require_no_pole(lsd);
    if (eps != 1 && eps != -1) throw std::invalid_argument("fe_residual: eps must be +1 or -1");
    const auto plans = fe_plans(lsd);
    const uint64_t m = fe_terms(lsd, tol);
    require_terms(lsd, m);
    const auto a = dirichlet_coefficients(lsd, m);
    Estimate out;
    out.terms = m;
    for (std::size_t i = 0; i < plans.size(); i += 2) {
        const Estimate x = split_value(lsd, a, m, plans[i], eps);
        const Estimate y = split_value(lsd, a, m, plans[i + 1], eps);
        out.value += std::abs(x.value - y.value);
        out.error_bound += x.error_bound + y.error_bound;
    }
    return out;
}

}  // namespace paramodular
