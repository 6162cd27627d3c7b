#include "paramodular/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "paramodular/arith.hpp"

namespace paramodular {

TwistedValues::TwistedValues(std::string label, Source source) : label_(std::move(label)), source_(std::move(source)) {}

TwistedValues TwistedValues::for_curve(const Curve& c) {
    return TwistedValues(c.label, [c](uint64_t limit) { return curve_lseries(c, limit); });
}

const LSeriesData& TwistedValues::base(uint64_t limit) {
    if (!base_ || base_->available_terms() < limit) base_ = source_(std::max<uint64_t>(limit, 16));
    return *base_;
}

uint64_t TwistedValues::terms_for(int64_t disc) {
    const LSeriesData t = twist(base(16), disc);
    if (t.root_number && *t.root_number == -1) return 0;
    return required_terms(t, default_tolerance(disc));
}

void TwistedValues::prepare(const std::vector<int64_t>& discs) {
    uint64_t m = 16;
    for (int64_t d : discs) m = std::max(m, terms_for(d));
    base(m);
}

Estimate TwistedValues::central(int64_t disc) {
    auto it = cache_.find(disc);
    if (it != cache_.end()) return it->second;
    const uint64_t m = terms_for(disc);
    const Estimate e = central_value(twist(base(m), disc), default_tolerance(disc));
    cache_[disc] = e;
    return e;
}

double TwistedValues::normalized(int64_t disc) { return central(disc).value * static_cast<double>(std::abs(disc)); }

double TwistedValues::normalized_error(int64_t disc) {
    return central(disc).error_bound * static_cast<double>(std::abs(disc));
}

LSeriesData TwistedValues::series(int64_t disc, uint64_t limit) { return twist(base(limit), disc); }

std::string to_string(CellStatus s) {
    switch (s) {
        case CellStatus::ok: return "ok";
        case CellStatus::empty: return "empty";
        case CellStatus::missing: return "missing";
        case CellStatus::vanishing: return "vanishing";
    }
    return "?";
}

VerificationRow conjecture_row(int64_t level, int64_t ell, int64_t disc, const AverageResult& B, double L_ell,
                               double L_D, double k_F, double zero_tol) {
    if (!arith::is_fundamental(ell) || !arith::is_fundamental(disc))
        throw HypothesisViolation("ell and D must be fundamental discriminants");
    if ((ell < 0) == (disc < 0)) throw HypothesisViolation("ell * D must be negative");
    VerificationRow row;
    row.ell = ell;
    row.disc = disc;
    row.B = B;
    row.alpha = alpha(ell * disc, level);
    row.L_ell = L_ell;
    row.L_D = L_D;
    row.rhs = static_cast<double>(row.alpha) * k_F * L_ell * L_D;
    if (B.status == AverageStatus::missing_data) {
        row.status = CellStatus::missing;
        return row;
    }
    row.lhs = to_double(B.value * B.value);
    row.residual = std::abs(row.lhs - row.rhs);
    if (row.alpha == 0 || B.status == AverageStatus::empty_sum)
        row.status = CellStatus::empty;
    else if (std::abs(L_ell * L_D) <= zero_tol)
        row.status = CellStatus::vanishing;
    else
        row.status = CellStatus::ok;
    return row;
}

VerificationRow conjectureA_row(const CoeffTable& table, TwistedValues& values, int64_t disc, double C_F) {
    const int64_t n = table.level();
    if (!arith::is_prime(static_cast<uint64_t>(n))) throw HypothesisViolation("level must be prime");
    if (table.weight() % 2 != 0) throw HypothesisViolation("weight must be even");
    if (disc >= 0 || !arith::is_fundamental(disc))
        throw HypothesisViolation("D must be a negative fundamental discriminant");
    int sign = 1;
    for (const auto& [p, s] : table.meta().atkin_lehner_signs) sign *= s;
    if (sign != 1) throw HypothesisViolation(table.meta().label + " is not in the plus space");
    const AverageResult A = average_A(table, disc);
    const double L = values.central(disc).value * std::pow(static_cast<double>(-disc), table.weight() - 1);
    VerificationRow row = conjecture_row(n, 1, disc, A, 1.0, L, C_F, values.normalized_error(disc));
    row.alpha = alpha(disc, n);
    row.rhs = static_cast<double>(row.alpha) * C_F * L;
    row.residual = std::abs(row.lhs - row.rhs);
    return row;
}

AverageResult golden_average(const GoldenCell& cell) {
    AverageResult r;
    if (!cell.B) {
        r.status = AverageStatus::missing_data;
        return r;
    }
    r.value = *cell.B;
    return r;
}

std::vector<VerificationRow> golden_rows(const GoldenForm& form, TwistedValues& values) {
    std::vector<int64_t> discs;
    for (const auto& b : form.blocks) {
        bool used = false;
        for (const auto& c : b.cells)
            if (c.B) {
                discs.push_back(c.disc);
                used = true;
            }
        if (used) discs.push_back(b.ell);
    }
    values.prepare(discs);
    std::vector<VerificationRow> rows;
    for (const auto& b : form.blocks)
        for (const auto& c : b.cells) {
            const AverageResult B = golden_average(c);
            if (B.status == AverageStatus::missing_data) {
                VerificationRow r;
                r.ell = b.ell;
                r.disc = c.disc;
                r.B = B;
                r.alpha = alpha(b.ell * c.disc, form.level);
                rows.push_back(r);
                continue;
            }
            const double Le = values.normalized(b.ell), Ld = values.normalized(c.disc);
            const double zero = values.normalized_error(b.ell) * std::abs(Ld) +
                                values.normalized_error(c.disc) * std::abs(Le) + 1e-12;
            rows.push_back(conjecture_row(form.level, b.ell, c.disc, B, Le, Ld, form.k_F, 1e3 * zero));
        }
    return rows;
}

KFit fit_kF(const std::vector<VerificationRow>& rows) {
    std::vector<double> ks;
    for (const auto& r : rows) {
        if (r.status != CellStatus::ok || r.B.value == 0) continue;
        ks.push_back(r.lhs / (static_cast<double>(r.alpha) * r.L_ell * r.L_D));
    }
    if (ks.size() < 2) throw AllCellsDegenerate("fewer than two usable cells for the k_F fit");
    std::vector<double> sorted = ks;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    KFit fit;
    fit.k_F = median;
    fit.cells = static_cast<int>(n);
    for (double k : ks) fit.spread = std::max(fit.spread, std::abs(k / median - 1));
    return fit;
}

TableBlock build_table(const std::string& label, int64_t level, double k_F, int64_t ell,
                       const std::vector<int64_t>& discs, TwistedValues& values,
                       const std::function<std::optional<Rational>(int64_t disc)>& averages) {
    TableBlock block;
    block.label = label;
    block.ell = ell;
    block.k_F = k_F;
    std::vector<int64_t> needed{ell};
    for (int64_t d : discs)
        if (alpha(ell * d, level) != 0) needed.push_back(d);
    values.prepare(needed);
    const double Le = values.normalized(ell);
    for (int64_t d : discs) {
        TableCell cell;
        cell.disc = d;
        const int64_t a = alpha(ell * d, level);
        if (a != 0) cell.normalized = static_cast<double>(a) * k_F * Le * values.normalized(d);
        cell.B = averages(d);
        block.cells.push_back(cell);
    }
    return block;
}

namespace {

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

std::string ell_tag(int64_t ell) { return ell == 1 ? "" : std::to_string(ell); }

}  // namespace

std::string emit_table(const TableBlock& block, const std::string& format) {
    if (format == "json") {
        nlohmann::json j;
        j["form"] = block.label;
        j["ell"] = block.ell;
        j["k_F"] = block.k_F;
        j["cells"] = nlohmann::json::array();
        for (const auto& c : block.cells) {
            nlohmann::json cell;
            cell["D"] = c.disc;
            cell["normalized"] = c.normalized ? nlohmann::json(*c.normalized) : nlohmann::json(nullptr);
            cell["B"] = c.B ? to_string(*c.B) : "--";
            j["cells"].push_back(cell);
        }
        return j.dump(2) + "\n";
    }
    if (format != "csv") throw std::invalid_argument("unknown table format '" + format + "'");
    std::ostringstream out;
    const std::string tag = ell_tag(block.ell);
    out << "D";
    for (const auto& c : block.cells) out << ',' << c.disc;
    out << "\nalpha_" << tag << "D C_" << (block.ell == 1 ? "1" : tag) << " L_D";
    for (const auto& c : block.cells) out << ',' << (c.normalized ? format_value(*c.normalized) : "");
    out << "\nB_" << (block.ell == 1 ? "1" : tag) << "(D)";
    for (const auto& c : block.cells) out << ',' << (c.B ? to_string(*c.B) : "--");
    out << '\n';
    return out.str();
}

TorsionReport torsion_check(const GoldenForm& form, int torsion,
                            const std::map<std::pair<int64_t, int64_t>, double>& normalized) {
    TorsionReport report;
    if (torsion <= 0) throw std::invalid_argument("torsion must be positive");
    const double t2 = static_cast<double>(torsion) * torsion;
    for (const auto& b : form.blocks)
        for (const auto& c : b.cells) {
            if (b.ell == 1 || c.disc == 1) continue;
            if (c.B) {
                ++report.checked;
                if (*c.B % torsion != 0)
                    report.violations.push_back(form.label + ": B_" + std::to_string(b.ell) + "(" +
                                                std::to_string(c.disc) + ") = " + std::to_string(*c.B) +
                                                " not divisible by " + std::to_string(torsion));
            }
            auto it = normalized.find({b.ell, c.disc});
            if (it != normalized.end()) {
                ++report.checked;
                const double q = it->second / t2;
                if (std::abs(q - std::round(q)) > 1e-3 * std::max(1.0, std::abs(q)))
                    report.violations.push_back(form.label + ": normalized value at ell=" + std::to_string(b.ell) +
                                                ", D=" + std::to_string(c.disc) + " is " +
                                                std::to_string(it->second) + ", not T^2 times an integer");
            }
        }
    return report;
}

SignFit fit_root_number(const LSeriesData& lsd, double tol) {
    SignFit fit;
    fit.residual_plus = fe_residual(lsd, 1, tol).value;
    fit.residual_minus = fe_residual(lsd, -1, tol).value;
    fit.eps = fit.residual_plus <= fit.residual_minus ? 1 : -1;
    const double lo = std::min(fit.residual_plus, fit.residual_minus);
    const double hi = std::max(fit.residual_plus, fit.residual_minus);
    fit.decisive = lo < 1e-6 && hi > 1e-5;
    return fit;
}

BadFactorFit fit_bad_factor(const Curve& c, uint64_t p, double tol) {
    if (c.conductor % static_cast<int64_t>(p) != 0) throw std::invalid_argument("fit_bad_factor: p must divide N");
    // Twist until the coefficient at p sits well inside the smoothed sum.
    const double target = static_cast<double>(p) / 3;
    int64_t probe = 1;
    for (int64_t m = 3; probe == 1; ++m)
        for (int64_t d : {-m, m}) {
            if (!arith::is_fundamental(d) || std::gcd(c.conductor, m) != 1) continue;
            LSeriesData shape;
            shape.conductor = twisted_conductor(c.conductor, d);
            if (analytic_Q(shape) >= target) {
                probe = d;
                break;
            }
        }
    LSeriesData base = curve_lseries(c, 16);
    base = curve_lseries(c, fe_terms(twist(base, probe), tol));
    BadFactorFit fit;
    fit.probe_disc = probe;
    struct Trial {
        double residual;
        BadFactor cand;
        int eps;
    };
    std::vector<Trial> trials;
    for (const BadFactor& cand : bad_factor_candidates(p)) {
        const LSeriesData t = twist(with_bad_factor(base, p, cand.poly), probe);
        for (int eps : {1, -1}) {
            const Estimate r = fe_residual(t, eps, tol);
            fit.terms = r.terms;
            trials.push_back({r.value, cand, eps});
        }
    }
    std::sort(trials.begin(), trials.end(), [](const Trial& a, const Trial& b) { return a.residual < b.residual; });
    fit.residual = trials.front().residual;
    fit.root_number = trials.front().eps * arith::kronecker(probe, c.conductor);
    fit.runner_up = std::numeric_limits<double>::infinity();
    for (const Trial& t : trials) {
        if (t.residual <= 10 * fit.residual + 1e-12) {
            if (t.eps == trials.front().eps) fit.best.push_back(t.cand);
        } else {
            fit.runner_up = t.residual;
            break;
        }
    }
    return fit;
}

}  // namespace paramodular
