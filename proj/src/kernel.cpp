#include "paramodular/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace paramodular {

using cd = std::complex<double>;

cd log_gamma(cd z) {
    if (z.real() <= 0) throw std::domain_error("log_gamma: needs Re z > 0");
    cd shift = 0;
    while (z.real() < 15) {
        shift += std::log(z);
        z += 1.0;
    }
    const cd zi = 1.0 / z;
    const cd zi2 = zi * zi;
    // Stirling series with Bernoulli terms B_2k / (2k (2k-1) z^(2k-1)).
    const cd series =
        zi * (1.0 / 12 + zi2 * (-1.0 / 360 + zi2 * (1.0 / 1260 + zi2 * (-1.0 / 1680 + zi2 * (1.0 / 1188 + zi2 * (-691.0 / 360360 + zi2 * (1.0 / 156)))))));
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2 * std::numbers::pi) + series - shift;
}

double digamma(double x) {
    if (x <= 0) throw std::domain_error("digamma: needs x > 0");
    double acc = 0;
    while (x < 10) {
        acc -= 1 / x;
        x += 1;
    }
    const double xi2 = 1 / (x * x);
    return acc + std::log(x) - 0.5 / x -
           xi2 * (1.0 / 12 - xi2 * (1.0 / 120 - xi2 * (1.0 / 252 - xi2 * (1.0 / 240 - xi2 * (1.0 / 132)))));
}

namespace {

constexpr double kStep = 0.05;

// g_k = (Gamma(a+w)/Gamma(a))^d / w^m at w = c + i k h, a = s + 1/2.
struct Nodes {
    double c = 0, h = 0;
    std::vector<cd> g;
};

Nodes make_nodes(const KernelSpec& spec, double c, double h) {
    const double a = spec.s + 0.5;
    if (c <= -a) throw std::invalid_argument("kernel contour left of the first gamma pole");
    if (c == 0) throw std::invalid_argument("kernel contour through w = 0");
    const double lg_a = std::lgamma(a);
    Nodes n;
    n.c = c;
    n.h = h;
    double peak = 0;
    for (int k = 0; k < 200000; ++k) {
        const cd w(c, k * h);
        const cd lg = static_cast<double>(spec.gamma_power) * (log_gamma(a + w) - lg_a);
        const cd v = std::exp(lg) / std::pow(w, spec.w_power);
        n.g.push_back(v);
        peak = std::max(peak, std::abs(v));
        if (k * h > std::abs(c) + 5 && std::abs(v) < 1e-22 * peak) break;
    }
    return n;
}

double residue(double x, const KernelSpec& spec) {
    if (spec.w_power == 1) return 1.0;
    if (spec.w_power == 2) return spec.gamma_power * digamma(spec.s + 0.5) - std::log(x);
    throw std::invalid_argument("kernel: w_power must be 1 or 2");
}

double evaluate(const Nodes& n, double x, const KernelSpec& spec) {
    const double lx = std::log(x);
    const cd rot = std::polar(1.0, -n.h * lx);
    cd z = 1.0;
    cd acc = 0.5 * n.g[0];
    for (std::size_t k = 1; k < n.g.size(); ++k) {
        z *= rot;
        acc += n.g[k] * z;
    }
    double v = n.h / std::numbers::pi * std::exp(-n.c * lx) * acc.real();
    if (n.c < 0) v += residue(x, spec);
    return v;
}

double left_abscissa(const KernelSpec& spec) { return -(spec.s + 0.5) / 2; }

// Abscissae for x >= 1, chosen near the saddle x^(1/d) to avoid cancellation.
const double kBands[] = {1.5, 3, 6, 12, 24, 48, 96, 192};

double band_for(double x, const KernelSpec& spec) {
    const double saddle = std::pow(x, 1.0 / spec.gamma_power);
    double best = kBands[0];
    for (double c : kBands)
        if (c <= std::max(1.5, 0.8 * saddle)) best = c;
    return best;
}

struct NodeKey {
    KernelSpec spec;
    double c;
    friend bool operator<(const NodeKey& a, const NodeKey& b) {
        if (a.spec < b.spec) return true;
        if (b.spec < a.spec) return false;
        return a.c < b.c;
    }
};

std::mutex nodes_mutex;

const Nodes& cached_nodes(const KernelSpec& spec, double c) {
    static std::map<NodeKey, std::unique_ptr<Nodes>> cache;
    std::lock_guard<std::mutex> lock(nodes_mutex);
    auto& slot = cache[NodeKey{spec, c}];
    if (!slot) slot = std::make_unique<Nodes>(make_nodes(spec, c, kStep));
    return *slot;
}

}  // namespace

double kernel_contour(double x, const KernelSpec& spec, double c, double step) {
    if (x <= 0) throw std::domain_error("kernel: x must be positive");
    if (step == kStep) return evaluate(cached_nodes(spec, c), x, spec);
    return evaluate(make_nodes(spec, c, step), x, spec);
}

double kernel_direct(double x, const KernelSpec& spec) {
    if (x <= 0) throw std::domain_error("kernel: x must be positive");
    const double c = x < 1 ? left_abscissa(spec) : band_for(x, spec);
    return evaluate(cached_nodes(spec, c), x, spec);
}

double cutoff_kernel(double x) { return kernel_direct(x, KernelSpec{0.5, 2, 1}); }

KernelTable::KernelTable(const KernelSpec& spec, int refine) : spec_(spec) {
    if (refine < 0 || refine > 6) throw std::invalid_argument("KernelTable: refine must lie in [0, 6]");
    u_min_ = std::log(1e-8);
    u_step_ = std::ldexp(2e-3, -refine);
    x_max_ = 1;
    while (std::abs(kernel_direct(x_max_, spec_)) > 1e-40 && x_max_ < 1e7) x_max_ *= 1.25;
    const auto n = static_cast<std::size_t>(std::ceil((std::log(x_max_) - u_min_) / u_step_)) + 3;
    values_.resize(n);
    for (std::size_t i = 0; i < n; ++i) values_[i] = kernel_direct(std::exp(u_min_ + i * u_step_), spec_);
    // Positive kernels are interpolated in log K, which keeps the relative
    // error uniform through the super-exponential decay.
    log_scale_ = std::all_of(values_.begin(), values_.end(), [](double v) { return v > 0; });
    if (log_scale_)
        for (double& v : values_) v = std::log(v);
    // Validate interpolation at off-grid points across the range.
    double worst = 0, worst_rel = 0;
    for (int j = 0; j < 2000; ++j) {
        const double u = u_min_ + (j + 0.37) * (std::log(x_max_) - u_min_) / 2000;
        const double x = std::exp(u);
        const double exact = kernel_direct(x, spec_);
        const double diff = std::abs((*this)(x) - exact);
        worst = std::max(worst, diff);
        if (exact != 0) worst_rel = std::max(worst_rel, diff / std::abs(exact));
    }
    interp_error_ = 4 * worst + 1e-15;
    relative_error_ = 4 * worst_rel + 1e-14;
}

double KernelTable::operator()(double x) const {
    if (x >= x_max_) return 0;
    const double u = std::log(x);
    if (u < u_min_ + u_step_) return kernel_direct(x, spec_);
    const double pos = (u - u_min_) / u_step_;
    auto i = static_cast<std::size_t>(pos);
    if (i + 2 >= values_.size()) i = values_.size() - 3;
    const double t = pos - static_cast<double>(i);
    const double f0 = values_[i - 1], f1 = values_[i], f2 = values_[i + 1], f3 = values_[i + 2];
    // Cubic Lagrange through nodes -1, 0, 1, 2.
    const double v = f0 * (-t * (t - 1) * (t - 2) / 6) + f1 * ((t + 1) * (t - 1) * (t - 2) / 2) +
                     f2 * (-(t + 1) * t * (t - 2) / 2) + f3 * ((t + 1) * t * (t - 1) / 6);
    return log_scale_ ? std::exp(v) : v;
}

const KernelTable& kernel_table(const KernelSpec& spec, int refine) {
    static std::mutex mutex;
    static std::map<std::pair<KernelSpec, int>, std::unique_ptr<KernelTable>> tables;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = tables[{spec, refine}];
    if (!slot) slot = std::make_unique<KernelTable>(spec, refine);
    return *slot;
}

}  // namespace paramodular
