#pragma once

// Both sides of the central-value conjectures: twisted L-values, grid rows,
// the k_F fit, table output, torsion divisibility, and functional-equation
// fits for root numbers and bad Euler factors.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "paramodular/afe.hpp"
#include "paramodular/averages.hpp"
#include "paramodular/coeffstore.hpp"
#include "paramodular/curve.hpp"
#include "paramodular/golden.hpp"
#include "paramodular/lseries.hpp"

namespace paramodular {

struct HypothesisViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct AllCellsDegenerate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Central values L(F, 1/2, chi_D) of the twists of one L-function, computed
/// at default_tolerance(D) and cached.
class TwistedValues {
public:
    /// Returns the untwisted series with coefficients up to at least `limit`.
    using Source = std::function<LSeriesData(uint64_t limit)>;

    TwistedValues(std::string label, Source source);
    static TwistedValues for_curve(const Curve& c);

    /// Loads enough coefficients for all listed discriminants at once.
    void prepare(const std::vector<int64_t>& discs);

    Estimate central(int64_t disc);
    /// L_D = L(F, 1/2, chi_D) |D|.
    double normalized(int64_t disc);
    /// Error bound of normalized(disc).
    double normalized_error(int64_t disc);
    /// The twisted series with coefficients up to at least `limit`.
    LSeriesData series(int64_t disc, uint64_t limit);

    const std::string& label() const { return label_; }

private:
    uint64_t terms_for(int64_t disc);
    const LSeriesData& base(uint64_t limit);

    std::string label_;
    Source source_;
    std::optional<LSeriesData> base_;
    std::map<int64_t, Estimate> cache_;
};

enum class CellStatus { ok, empty, missing, vanishing };

std::string to_string(CellStatus s);

struct VerificationRow {
    int64_t ell = 1;
    int64_t disc = 0;
    AverageResult B;
    int64_t alpha = 0;
    double L_ell = 0, L_D = 0;
    double lhs = 0;  // B^2
    double rhs = 0;  // alpha k_F L_ell L_D
    double residual = 0;
    CellStatus status = CellStatus::missing;
};

/// Row for B_ell(D)^2 = alpha_{ell D} k_F L_ell L_D with L_X = L(F,1/2,chi_X)|X|.
/// `zero_tol` decides when L_ell L_D counts as vanishing.
VerificationRow conjecture_row(int64_t level, int64_t ell, int64_t disc, const AverageResult& B, double L_ell,
                               double L_D, double k_F, double zero_tol);

/// A_F(D)^2 = alpha_D C_F L(F,1/2,chi_D)|D|. Requires prime level, even
/// weight, a plus-space form and D < 0; throws HypothesisViolation otherwise.
VerificationRow conjectureA_row(const CoeffTable& table, TwistedValues& values, int64_t disc, double C_F);

/// Golden B as an average: exact integer or missing.
AverageResult golden_average(const GoldenCell& cell);

/// One row per reference cell, with the published B-values and k_F.
std::vector<VerificationRow> golden_rows(const GoldenForm& form, TwistedValues& values);

struct KFit {
    double k_F = 0;
    double spread = 0;  // max relative deviation from the median
    int cells = 0;
};

/// Median of B^2 / (alpha L_ell L_D) over ok rows with B != 0.
KFit fit_kF(const std::vector<VerificationRow>& rows);

struct TableCell {
    int64_t disc = 0;
    std::optional<double> normalized;  // nullopt when alpha_{ell D} = 0
    std::optional<Rational> B;         // nullopt prints as "--"
};

struct TableBlock {
    std::string label;
    int64_t ell = 1;
    double k_F = 0;
    std::vector<TableCell> cells;
};

/// Normalized values alpha_{ell D} k_F L_ell L_D, with B from `averages`
/// where available.
TableBlock build_table(const std::string& label, int64_t level, double k_F, int64_t ell,
                       const std::vector<int64_t>& discs, TwistedValues& values,
                       const std::function<std::optional<Rational>(int64_t disc)>& averages);

/// "csv" or "json".
std::string emit_table(const TableBlock& block, const std::string& format);

struct TorsionReport {
    int checked = 0;
    std::vector<std::string> violations;
};

/// T | B_ell(D) for every given B with ell != 1 != D, and, where computed
/// normalized values are supplied, normalized / T^2 close to an integer.
TorsionReport torsion_check(const GoldenForm& form, int torsion,
                            const std::map<std::pair<int64_t, int64_t>, double>& normalized = {});

struct SignFit {
    int eps = 0;
    double residual_plus = 0, residual_minus = 0;
    /// The smaller residual is below 1e-6 and the larger above 1e-5.
    bool decisive = false;
};

/// Root number minimizing fe_residual.
SignFit fit_root_number(const LSeriesData& lsd, double tol = 1e-8);

struct BadFactorFit {
    /// Candidates whose residual is within a factor 10 of the smallest. When
    /// p^2 exceeds the number of coefficients used only a_p = a + eps is
    /// visible, so several candidates tie.
    std::vector<BadFactor> best;
    int root_number = 0;  // of the untwisted series
    double residual = 0;
    double runner_up = 0;  // smallest residual outside `best`
    int64_t probe_disc = 1;
    uint64_t terms = 0;
};

/// Tests every candidate local factor at p (and both global signs) on a twist
/// whose conductor makes the coefficient at p visible.
BadFactorFit fit_bad_factor(const Curve& c, uint64_t p, double tol = 1e-8);

}  // namespace paramodular
