#pragma once

// Smoothed approximate functional equation for
//   Lambda(s) = Q^s Gamma(s+1/2)^d L(s) = eps Lambda(1-s),  Q = sqrt(N) / (2 pi)^d,
// with rigorous truncation bounds from |a_n| <= d_{2d}(n) n^beta.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "paramodular/kernel.hpp"
#include "paramodular/lseries.hpp"

namespace paramodular {

struct InsufficientCoefficients : std::runtime_error {
    uint64_t required, available;
    InsufficientCoefficients(const std::string& label, uint64_t req, uint64_t avail)
        : std::runtime_error(label + ": needs " + std::to_string(req) + " coefficients, have " + std::to_string(avail)),
          required(req),
          available(avail) {}
};

struct UnknownRootNumber : std::runtime_error {
    explicit UnknownRootNumber(const std::string& label) : std::runtime_error(label + ": root number unknown") {}
};

struct Estimate {
    double value = 0;
    double error_bound = 0;
    uint64_t terms = 0;
    int refine = 0;  // kernel table refinement used
};

double analytic_Q(const LSeriesData& lsd);

/// 1e-8 for |D| <= 60, 1e-5 beyond.
double default_tolerance(int64_t disc);

/// Sum_{n <= x} d_k(n) <= x (log x + k - 1)^(k-1) / (k-1)!  for x >= 1.
double divisor_sum_bound(int k, double x);

/// Bound for sum_{n > m} d_k(n) n^(beta - sigma) K(n / scale), K the table kernel.
double tail_bound(const KernelTable& kernel, double scale, double sigma, double beta, int k, uint64_t m);

/// Smallest M whose truncation error for the central value is at most tol / 2.
uint64_t required_terms(const LSeriesData& lsd, double tol);

/// L(1/2) with error_bound <= tol. eps = -1 gives exactly 0.
Estimate central_value(const LSeriesData& lsd, double tol);

/// L(1/2) from exactly m terms on the kernel table of the given refinement,
/// with the corresponding error bound.
Estimate central_value_terms(const LSeriesData& lsd, uint64_t m, int refine = 0);

/// L(s) for real s in (0, 1) from the AFE with the splitting parameter lambda;
/// uses the root number stored in lsd.
Estimate l_value(const LSeriesData& lsd, double s, double lambda, double tol);

/// L'(1/2). For eps = -1 from the w^-2 kernel, for eps = +1 from L(1/2).
Estimate central_derivative(const LSeriesData& lsd, double tol);

/// Coefficients needed by fe_residual at this tolerance.
uint64_t fe_terms(const LSeriesData& lsd, double tol = 1e-9);

/// Sum over s0 in {0.6, 0.75} of |L(s0) at lambda = 1 minus L(s0) at lambda = 1.25|,
/// computed with root number eps. Small only when eps and the local data are
/// consistent with a functional equation.
Estimate fe_residual(const LSeriesData& lsd, int eps, double tol = 1e-9);

}  // namespace paramodular
