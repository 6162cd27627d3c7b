#include "paramodular/golden.hpp"

#include <stdexcept>

namespace paramodular {

const std::vector<GoldenForm>& golden_forms() {
    static const std::vector<GoldenForm> forms = {
        {"F249", 249, 0.831968, 14,
         {{1, {{-8, 4.0, 2}, {-20, 16.0, 4}, {-35, 64.0, 8}, {-47, 4.0, 2}, {-56, 16.0, 4}, {-71, 0.0, 0}}},
          {5, {{-3, 196.0, 14}, {-4, 784.0, 28}, {-7, 784.0, 28}, {-31, 784.0, 28}, {-40, 3136.0, 56}, {-51, 19600.0, 140}}},
          {8, {{-3, 196.0, 14}, {-4, 784.0, 28}, {-7, 784.0, 28}, {-31, 784.0, 28}, {-40, 3136.0, std::nullopt}, {-51, 19600.0, std::nullopt}}},
          {-3, {{5, 196.0, 14}, {8, 196.0, 14}, {24, 784.0, 28}, {53, 3136.0, 56}, {56, 3136.0, 56}, {60, 3136.0, 56}}},
          {-4, {{5, 784.0, 28}, {8, 784.0, 28}, {24, 784.0, 28}, {53, 12544.0, 112}, {56, 12544.0, 112}, {57, 0.0, 0}}},
          {-7, {{5, 784.0, 28}, {8, 784.0, 28}, {24, 784.0, 28}, {53, 12544.0, std::nullopt}, {56, 12544.0, std::nullopt}, {57, 0.0, std::nullopt}}},
          {-8, {{1, 4.0, 2}, {28, 0.0, 0}, {37, 3136.0, std::nullopt}, {40, 3136.0, std::nullopt}, {61, 3136.0, std::nullopt}, {109, 28224.0, std::nullopt}}}}},
        {"F277", 277, 0.537715, 15,
         {{1, {{-3, 1.0, 1}, {-4, 1.0, 1}, {-7, 1.0, 1}, {-19, 4.0, 2}, {-23, 0.0, 0}, {-39, 1.0, 1}}},
          {12, {{-3, 225.0, 15}, {-4, 225.0, 15}, {-7, 225.0, 15}, {-19, 900.0, 30}, {-23, 0.0, 0}, {-39, 225.0, 15}}},
          {13, {{-3, 225.0, 15}, {-4, 225.0, 15}, {-7, 225.0, 15}, {-19, 900.0, 30}, {-23, 0.0, 0}, {-39, 225.0, 15}}},
          {-3, {{1, 1.0, 1}, {12, 225.0, 15}, {13, 225.0, 15}, {21, 225.0, 15}, {28, 225.0, 15}, {29, 2025.0, 45}}},
          {-4, {{1, 1.0, 1}, {12, 225.0, 15}, {13, 225.0, 15}, {21, 225.0, 15}, {28, 225.0, 15}, {29, 2025.0, 45}}},
          {-7, {{1, 1.0, 1}, {12, 225.0, 15}, {13, 225.0, 15}, {21, 225.0, 15}, {28, 225.0, 15}, {29, 2025.0, 45}}}}},
        {"F295", 295, 0.224744, 14,
         {{1, {{-11, 4.0, 2}, {-24, 4.0, 2}, {-31, 4.0, 2}, {-39, 4.0, 2}, {-40, 16.0, 4}, {-55, 4.0, 2}}},
          {5, {{-11, 196.0, 14}, {-24, 196.0, 14}, {-31, 196.0, 14}, {-39, 196.0, 14}, {-55, 784.0, 28}, {-56, 196.0, std::nullopt}}},
          {8, {{-3, 196.0, 14}, {-7, 196.0, 14}, {-68, 3136.0, std::nullopt}, {-87, 784.0, std::nullopt}, {-88, 3136.0, std::nullopt}, {-107, 15876.0, std::nullopt}}},
          {-3, {{8, 196.0, 14}, {13, 196.0, 14}, {33, 0.0, 0}, {37, 1764.0, 42}, {73, 0.0, 0}, {77, 784.0, std::nullopt}}},
          {-7, {{8, 196.0, 14}, {13, 196.0, 14}, {33, 0.0, std::nullopt}, {37, 1764.0, std::nullopt}, {73, 0.0, std::nullopt}, {77, 784.0, std::nullopt}}},
          {-11, {{1, 4.0, 2}, {5, 196.0, 14}, {21, 784.0, std::nullopt}, {29, 3136.0, std::nullopt}, {41, 784.0, std::nullopt}, {60, 3136.0, std::nullopt}}}}},
        {"F587-", 587, 0.002680, 1,
         {{5, {{-3, 4.0, 2}, {-4, 4.0, 2}, {-7, 4.0, 2}, {-31, 16.0, 4}, {-40, 36.0, 6}, {-43, 576.0, 24}}},
          {8, {{-3, 4.0, 2}, {-4, 4.0, 2}, {-7, 4.0, 2}, {-31, 16.0, 4}, {-40, 36.0, 6}, {-43, 576.0, 24}}},
          {13, {{-3, 4.0, 2}, {-4, 4.0, 2}, {-7, 4.0, 2}, {-31, 16.0, 4}, {-40, 36.0, 6}, {-43, 576.0, 24}}},
          {-3, {{5, 4.0, 2}, {8, 4.0, 2}, {13, 4.0, 2}, {24, 4.0, 2}, {33, 4.0, 2}, {37, 16.0, 4}}},
          {-4, {{5, 4.0, 2}, {8, 4.0, 2}, {13, 4.0, 2}, {24, 4.0, 2}, {33, 4.0, 2}, {37, 16.0, 4}}},
          {-7, {{5, 4.0, 2}, {8, 4.0, 2}, {13, 4.0, 2}, {24, 4.0, 2}, {33, 4.0, 2}, {37, 16.0, 4}}}}},
        {"F713+", 713, 0.422121, 9,
         {{1, {{-11, 16.0, 4}, {-15, 16.0, 4}, {-23, 0.0, 0}, {-43, 144.0, 12}, {-68, 64.0, 8}, {-79, 64.0, 8}}},
          {8, {{-11, 1296.0, 36}, {-15, 1296.0, 36}, {-23, 0.0, 0}, {-43, 11664.0, std::nullopt}, {-68, 5184.0, std::nullopt}, {-79, 5184.0, std::nullopt}}},
          {17, {{-4, 0.0, 0}, {-8, 0.0, 0}, {-35, 0.0, std::nullopt}, {-39, 0.0, std::nullopt}, {-47, 0.0, std::nullopt}, {-59, 0.0, std::nullopt}}},
          {-4, {{17, 0.0, 0}, {21, 1296.0, 36}, {37, 0.0, 0}, {44, 1296.0, 36}, {53, 1296.0, 36}, {57, 0.0, 0}}},
          {-8, {{17, 0.0, 0}, {21, 1296.0, 36}, {37, 0.0, std::nullopt}, {44, 1296.0, std::nullopt}, {53, 1296.0, std::nullopt}, {57, 0.0, std::nullopt}}},
          {-11, {{1, 16.0, 4}, {8, 1296.0, 36}, {41, 1296.0, std::nullopt}, {69, 20736.0, std::nullopt}, {93, 20736.0, std::nullopt}, {101, 20736.0, std::nullopt}}}}},
        {"F713-", 713, 0.005248, 1,
         {{5, {{-3, 16.0, 4}, {-24, 16.0, 4}, {-52, 400.0, 20}, {-55, 64.0, std::nullopt}, {-104, 16.0, std::nullopt}, {-116, 144.0, std::nullopt}}},
          {12, {{-7, 16.0, 4}, {-19, 256.0, 16}, {-20, 16.0, 4}, {-40, 400.0, std::nullopt}, {-51, 576.0, std::nullopt}, {-56, 16.0, std::nullopt}}},
          {13, {{-7, 16.0, 4}, {-19, 256.0, 16}, {-20, 16.0, 4}, {-40, 400.0, std::nullopt}, {-51, 576.0, std::nullopt}, {-56, 16.0, std::nullopt}}},
          {-3, {{5, 16.0, 4}, {28, 16.0, 4}, {33, 0.0, 0}, {40, 16.0, 4}, {56, 16.0, 4}, {76, 0.0, 0}}},
          {-7, {{12, 16.0, 4}, {13, 16.0, 4}, {24, 16.0, 4}, {29, 144.0, 12}, {73, 0.0, std::nullopt}, {77, 576.0, std::nullopt}}},
          {-19, {{12, 256.0, 16}, {13, 256.0, 16}, {24, 256.0, std::nullopt}, {29, 2304.0, std::nullopt}, {73, 0.0, std::nullopt}, {77, 9216.0, std::nullopt}}}}},
    };
    return forms;
}

const GoldenForm& golden_form(const std::string& label) {
    const std::string key = (!label.empty() && label[0] != 'F') ? "F" + label : label;
    for (const auto& f : golden_forms())
        if (f.label == key) return f;
    throw std::invalid_argument("no reference data for '" + label + "'");
}

const std::vector<RatioTable>& ratio_tables() {
    static const std::vector<RatioTable> tables = {
        {"F587-", -3, {{-4, 1.0}, {-7, 1.0}, {-31, 4.0}, {-40, 9.0}, {-43, 144.0}, {-47, 1.0}}},
        {"F277", 1, {{12, 225.0}, {13, 225.0}, {21, 225.0}, {28, 225.0}, {29, 2025.0}, {40, 900.0}}},
        {"F249", -4,
         {{-7, 1.0}, {-8, 1.0}, {-20, 4.0}, {-31, 1.0}, {-35, 16.0}, {-40, 4.0}, {-47, 1.0}, {-56, 4.0}, {-71, 0.0}}},
    };
    return tables;
}

}  // namespace paramodular
