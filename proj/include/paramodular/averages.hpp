#pragma once

// Class sums of Fourier coefficients: A(D), B(D, rho), B(D), B_ell(D), and
// the local factor alpha.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "paramodular/coeffstore.hpp"
#include "paramodular/rational.hpp"

namespace paramodular {

enum class AverageStatus { exact, empty_sum, missing_data };

std::string to_string(AverageStatus s);

struct AverageResult {
    Rational value = 0;
    AverageStatus status = AverageStatus::exact;
    int64_t class_count = 0;
};

/// |B(D, rho)| differs between residues: the table cannot come from an eigenform.
struct DataCorruption : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// prod_{p | N} (1 + (Delta_0 / p)).
int64_t alpha(int64_t disc, int64_t level);

/// 1/2 sum_{T in Q_{N,D} / Gamma_0(N)} a(T) / eps(T).
AverageResult average_A(const CoeffTable& table, int64_t disc);

/// sum over classes of discriminant ell*D with b = rho mod 2N of
/// chi_ell(T) a(T) / eps(T). Classes with gcd(a, b, c, ell) > 1 contribute 0.
AverageResult average_B_rho(const CoeffTable& table, int64_t disc, int64_t rho, int64_t ell = 1);

/// 1/2 sum_rho |B(D, rho)|; throws DataCorruption if the |B(D, rho)| differ.
AverageResult average_B(const CoeffTable& table, int64_t disc);

/// 1/2 sum_{rho in R_{ell D}} B_ell(D, rho) (signed).
AverageResult twisted_average(const CoeffTable& table, int64_t ell, int64_t disc);

}  // namespace paramodular
