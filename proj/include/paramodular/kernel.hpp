#pragma once

// Incomplete-Mellin cutoff kernels
//   K(x) = (1/2 pi i) int_(c) (Gamma(s+1/2+w) / Gamma(s+1/2))^d x^(-w) dw / w^m
// evaluated by the trapezoid rule on vertical lines, and cached tables for
// bulk evaluation.

#include <complex>
#include <vector>

namespace paramodular {

std::complex<double> log_gamma(std::complex<double> z);
double digamma(double x);

struct KernelSpec {
    double s = 0.5;
    int gamma_power = 2;  // d
    int w_power = 1;      // m: 1 for values, 2 for central derivatives

    friend bool operator<(const KernelSpec& a, const KernelSpec& b) {
        if (a.s != b.s) return a.s < b.s;
        if (a.gamma_power != b.gamma_power) return a.gamma_power < b.gamma_power;
        return a.w_power < b.w_power;
    }
};

/// Trapezoid value on the line Re w = c. For c < 0 (and c > -(s+1/2)) the
/// residue at w = 0 is added back.
double kernel_contour(double x, const KernelSpec& spec, double c, double step = 0.05);

/// Direct evaluation with a contour chosen for x: a left contour for x < 1,
/// otherwise an abscissa near the saddle point.
double kernel_direct(double x, const KernelSpec& spec);

/// G(x) = (1/2 pi i) int Gamma(1+w)^2 x^(-w) dw/w, the central kernel of the
/// degree-4 L-functions.
double cutoff_kernel(double x);

/// Kernel values on a geometric grid, 4-point interpolation in log x (of log K
/// when the kernel is positive).
class KernelTable {
public:
    /// The grid step is 2e-3 / 2^refine in log x.
    explicit KernelTable(const KernelSpec& spec, int refine = 0);

    double operator()(double x) const;
    /// Largest x where the table is nonzero; beyond it the kernel is below 1e-40.
    double x_max() const { return x_max_; }
    /// Observed interpolation error bound (max abs over a validation sample,
    /// times a safety factor).
    double interpolation_error() const { return interp_error_; }
    /// Same, relative to the kernel value.
    double relative_error() const { return relative_error_; }
    const KernelSpec& spec() const { return spec_; }

private:
    KernelSpec spec_;
    double u_min_, u_step_, x_max_, interp_error_ = 0, relative_error_ = 0;
    bool log_scale_ = false;
    std::vector<double> values_;
};

/// Shared, lazily built table for the spec (thread safe).
const KernelTable& kernel_table(const KernelSpec& spec, int refine = 0);

}  // namespace paramodular
