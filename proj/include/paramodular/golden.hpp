#pragma once

// Published reference data for the six curves: normalized central values
// alpha * k_F * L_ell * L_D, twisted averages B_ell(D), k_F and torsion, and
// the central-value ratio tables.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace paramodular {

struct GoldenCell {
    int64_t disc;
    double normalized;
    std::optional<int64_t> B;  // nullopt where no average was computed
};

struct GoldenBlock {
    int64_t ell;
    std::vector<GoldenCell> cells;
};

struct GoldenForm {
    std::string label;
    int64_t level;
    double k_F;
    int torsion;
    std::vector<GoldenBlock> blocks;
};

const std::vector<GoldenForm>& golden_forms();
const GoldenForm& golden_form(const std::string& label);

/// L_D / L_base for the listed D, L_X = L(F, 1/2, chi_X) |X|.
struct RatioTable {
    std::string label;
    int64_t base;
    std::vector<std::pair<int64_t, double>> ratios;
};

const std::vector<RatioTable>& ratio_tables();

}  // namespace paramodular
