#include "paramodular/averages.hpp"

#include <numeric>
#include <stdexcept>

#include "paramodular/arith.hpp"
#include "paramodular/quadforms.hpp"

namespace paramodular {

std::string to_string(AverageStatus s) {
    switch (s) {
        case AverageStatus::exact: return "exact";
        case AverageStatus::empty_sum: return "empty_sum";
        case AverageStatus::missing_data: return "missing_data";
    }
    return "?";
}

int64_t alpha(int64_t disc, int64_t level) {
    const int64_t d0 = arith::fundamental_decomposition(disc).fundamental;
    int64_t out = 1;
    for (uint64_t p : arith::prime_divisors(static_cast<uint64_t>(level)))
        out *= 1 + arith::kronecker(d0, static_cast<int64_t>(p));
    return out;
}

namespace {

void require_fundamental(int64_t d, const char* what) {
    if (!arith::is_fundamental(d))
        throw std::invalid_argument(std::string(what) + " must be a fundamental discriminant, got " +
                                    std::to_string(d));
}

// sum over a class list of weight(T) * a(T) / eps(T).
AverageResult class_sum(const CoeffTable& table, const ClassList& classes, int64_t ell) {
    AverageResult out;
    out.class_count = static_cast<int64_t>(classes.reps.size());
    if (classes.reps.empty()) {
        out.status = AverageStatus::empty_sum;
        return out;
    }
    for (std::size_t i = 0; i < classes.reps.size(); ++i) {
        const QuadForm& t = classes.reps[i];
        int chi = 1;
        if (ell != 1) {
            if (std::gcd(std::gcd(t.a, t.b), std::gcd(t.c, ell)) != 1) continue;
            chi = genus_character(t, ell);
        }
        const auto a = table.find(t);
        if (!a) {
            out.status = AverageStatus::missing_data;
            out.value = 0;
            return out;
        }
        out.value += Rational(chi) * *a / classes.stabilizer_orders[i];
    }
    return out;
}

}  // namespace

AverageResult average_A(const CoeffTable& table, int64_t disc) {
    if (disc >= 0) throw std::invalid_argument("average_A needs D < 0");
    require_fundamental(disc, "D");
    AverageResult r = class_sum(table, enumerate_classes(table.level(), disc), 1);
    if (r.status == AverageStatus::exact) r.value /= 2;
    return r;
}

AverageResult average_B_rho(const CoeffTable& table, int64_t disc, int64_t rho, int64_t ell) {
    require_fundamental(disc, "D");
    require_fundamental(ell, "ell");
    const int64_t delta = ell * disc;
    if (delta >= 0) throw std::invalid_argument("average_B_rho needs ell*D < 0");
    const int64_t n = table.level();
    if (arith::mod(rho * rho - delta, 4 * n) != 0)
        throw std::invalid_argument("rho=" + std::to_string(rho) + " is not in R_{ell D}");
    return class_sum(table, enumerate_classes(n, delta, rho), ell);
}

AverageResult average_B(const CoeffTable& table, int64_t disc) {
    require_fundamental(disc, "D");
    AverageResult out;
    const auto rs = residues(table.level(), disc);
    if (rs.empty()) {
        out.status = AverageStatus::empty_sum;
        return out;
    }
    std::optional<Rational> common;
    for (int64_t rho : rs) {
        const AverageResult b = average_B_rho(table, disc, rho);
        out.class_count += b.class_count;
        if (b.status == AverageStatus::missing_data) {
            out.status = AverageStatus::missing_data;
            out.value = 0;
            return out;
        }
        const Rational mag = abs(b.value);
        if (common && *common != mag)
            throw DataCorruption("|B(D, rho)| depends on rho for D=" + std::to_string(disc) + " at level " +
                                 std::to_string(table.level()));
        common = mag;
        out.value += mag;
    }
    out.value /= 2;
    return out;
}

AverageResult twisted_average(const CoeffTable& table, int64_t ell, int64_t disc) {
    require_fundamental(disc, "D");
    require_fundamental(ell, "ell");
    const int64_t delta = ell * disc;
    if (delta >= 0) throw std::invalid_argument("twisted_average needs ell*D < 0");
    AverageResult out;
    const auto rs = residues(table.level(), delta);
    if (rs.empty()) {
        out.status = AverageStatus::empty_sum;
        return out;
    }
    for (int64_t rho : rs) {
        const AverageResult b = average_B_rho(table, disc, rho, ell);
        out.class_count += b.class_count;
        if (b.status == AverageStatus::missing_data) {
            out.status = AverageStatus::missing_data;
            out.value = 0;
            return out;
        }
        out.value += b.value;
    }
    out.value /= 2;
    return out;
}

}  // namespace paramodular
