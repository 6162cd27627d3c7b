// Command line front end: class enumeration, genus characters, averages,
// twisted central values, tables, k_F fits and torsion checks.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "paramodular/afe.hpp"
#include "paramodular/arith.hpp"
#include "paramodular/averages.hpp"
#include "paramodular/coeffstore.hpp"
#include "paramodular/curve.hpp"
#include "paramodular/golden.hpp"
#include "paramodular/lseries.hpp"
#include "paramodular/quadforms.hpp"
#include "paramodular/verify.hpp"

using namespace paramodular;

namespace {

constexpr int kOk = 0;
constexpr int kDataError = 1;
constexpr int kVerificationFailure = 2;

Curve resolve_curve(const std::string& arg) {
    if (std::filesystem::exists(arg)) return load_curve_file(arg);
    return builtin_curve(arg);
}

const GoldenForm* golden_for(const std::string& label) {
    for (const auto& g : golden_forms())
        if (g.label == label) return &g;
    return nullptr;
}

std::vector<int64_t> parse_list(const std::string& text) {
    std::vector<int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
    return out;
}

// B_ell(D) from a coefficient file, or the published value in L-only mode.
std::optional<Rational> lookup_average(const std::optional<CoeffTable>& table, const GoldenForm* golden, int64_t ell,
                                       int64_t disc) {
    if (table) {
        const AverageResult r = twisted_average(*table, ell, disc);
        if (r.status == AverageStatus::missing_data) return std::nullopt;
        return r.value;
    }
    if (!golden) return std::nullopt;
    for (const auto& b : golden->blocks) {
        if (b.ell != ell) continue;
        for (const auto& c : b.cells)
            if (c.disc == disc && c.B) return Rational(*c.B);
    }
    return std::nullopt;
}

bool squares_agree(double normalized, const Rational& B) {
    const double b2 = to_double(B * B);
    return std::abs(normalized - b2) <= 0.05 + 1e-3 * b2;
}

int cmd_classes(int64_t level, int64_t disc, std::optional<int64_t> rho) {
    const ClassList cl = enumerate_classes(level, disc, rho);
    for (std::size_t i = 0; i < cl.reps.size(); ++i)
        std::printf("%s eps=%d\n", cl.reps[i].str().c_str(), cl.stabilizer_orders[i]);
    std::printf("%zu classes\n", cl.reps.size());
    return kOk;
}

int cmd_genus_char(int64_t level, int64_t ell, const std::string& form) {
    const auto v = parse_list(form);
    if (v.size() != 3) throw std::invalid_argument("--form expects Na,b,c");
    if (v[0] % level != 0) throw std::invalid_argument("first coefficient must be divisible by the level");
    const QuadForm t{level, v[0] / level, v[1], v[2]};
    std::printf("%d\n", genus_character(t, ell));
    return kOk;
}

int cmd_average(const std::string& file, int64_t ell, int64_t disc) {
    const CoeffTable table = load_coeff_file(file);
    const AverageResult r = twisted_average(table, ell, disc);
    std::printf("B_%lld(%lld) = %s  [%s, %lld classes]\n", static_cast<long long>(ell), static_cast<long long>(disc),
                to_string(r.value).c_str(), to_string(r.status).c_str(), static_cast<long long>(r.class_count));
    return r.status == AverageStatus::missing_data ? kDataError : kOk;
}

int cmd_lvalue(const std::string& curve_arg, int64_t disc, std::optional<double> tol) {
    const Curve c = resolve_curve(curve_arg);
    const double t = tol.value_or(default_tolerance(disc));
    LSeriesData lsd = twist(curve_lseries(c, 16), disc);
    const int eps = *lsd.root_number;
    if (eps == 1) lsd = twist(curve_lseries(c, required_terms(lsd, t)), disc);
    const Estimate e = central_value(lsd, t);
    std::printf("curve %s  D=%lld  conductor=%lld  root_number=%+d\n", c.label.c_str(), static_cast<long long>(disc),
                static_cast<long long>(lsd.conductor), eps);
    std::printf("L(1/2, chi_D) = %.12f  +- %.2e  (%llu terms)\n", e.value, e.error_bound,
                static_cast<unsigned long long>(e.terms));
    std::printf("L_D = %.12f\n", e.value * std::abs(static_cast<double>(disc)));
    return kOk;
}

int cmd_table(const std::string& curve_arg, const std::string& coeffs, int64_t ell, const std::string& discs,
              const std::string& out, const std::string& format, std::optional<double> k_arg) {
    const Curve c = resolve_curve(curve_arg);
    const GoldenForm* golden = golden_for(c.label);
    const double k_F = k_arg ? *k_arg : golden ? golden->k_F : 0;
    if (k_F <= 0) throw std::invalid_argument("no k_F known for " + c.label + "; pass --k-f");
    std::optional<CoeffTable> table;
    if (!coeffs.empty()) table = load_coeff_file(coeffs);
    TwistedValues values = TwistedValues::for_curve(c);
    const TableBlock block = build_table(c.label, c.conductor, k_F, ell, parse_list(discs), values,
                                         [&](int64_t d) { return lookup_average(table, golden, ell, d); });
    const std::string text = emit_table(block, format);
    if (out.empty() || out == "-") {
        std::cout << text;
    } else {
        std::ofstream f(out);
        if (!f) throw std::runtime_error("cannot write " + out);
        f << text;
    }
    int bad = 0;
    for (const auto& cell : block.cells)
        if (cell.normalized && cell.B && !squares_agree(*cell.normalized, *cell.B)) {
            std::fprintf(stderr, "mismatch at D=%lld: %.4f vs B^2 = %s\n", static_cast<long long>(cell.disc),
                         *cell.normalized, to_string(*cell.B * *cell.B).c_str());
            ++bad;
        }
    return bad ? kVerificationFailure : kOk;
}

int cmd_fit_kf(const std::string& curve_arg, const std::string& coeffs, int64_t dmin) {
    const Curve c = resolve_curve(curve_arg);
    const GoldenForm* golden = golden_for(c.label);
    TwistedValues values = TwistedValues::for_curve(c);
    std::vector<VerificationRow> rows;
    if (coeffs.empty()) {
        if (!golden) throw std::invalid_argument("no coefficient file and no published averages for " + c.label);
        for (const auto& r : golden_rows(*golden, values))
            if (r.ell * r.disc >= dmin) rows.push_back(r);
    } else {
        const CoeffTable table = load_coeff_file(coeffs);
        std::vector<int64_t> ells{1};
        if (golden) {
            ells.clear();
            for (const auto& b : golden->blocks) ells.push_back(b.ell);
        }
        for (int64_t ell : ells)
            for (int64_t d : arith::fundamental_discriminants(std::min<int64_t>(dmin, -dmin), -dmin)) {
                if ((d < 0) == (ell < 0) || ell * d < dmin) continue;
                const AverageResult B = twisted_average(table, ell, d);
                if (B.status != AverageStatus::exact) continue;
                rows.push_back(conjecture_row(c.conductor, ell, d, B, values.normalized(ell), values.normalized(d),
                                              golden ? golden->k_F : 1.0,
                                              1e3 * (values.normalized_error(ell) + values.normalized_error(d))));
            }
    }
    const KFit fit = fit_kF(rows);
    std::printf("%s  k_F = %.6f  spread = %.2e  cells = %d\n", c.label.c_str(), fit.k_F, fit.spread, fit.cells);
    bool ok = fit.spread < 1e-2;
    if (golden) {
        const double rel = std::abs(fit.k_F / golden->k_F - 1);
        std::printf("published k_F = %.6f  relative difference %.2e\n", golden->k_F, rel);
        ok = ok && rel < 2e-3;
    }
    return ok ? kOk : kVerificationFailure;
}

int cmd_torsion(const std::string& curve_arg, bool with_lvalues) {
    const Curve c = resolve_curve(curve_arg);
    const GoldenForm* golden = golden_for(c.label);
    if (!golden) throw std::invalid_argument("no published averages for " + c.label);
    std::map<std::pair<int64_t, int64_t>, double> normalized;
    if (with_lvalues) {
        TwistedValues values = TwistedValues::for_curve(c);
        for (const auto& r : golden_rows(*golden, values))
            if (r.status == CellStatus::ok || r.status == CellStatus::vanishing) normalized[{r.ell, r.disc}] = r.rhs;
    }
    const TorsionReport rep = torsion_check(*golden, c.torsion, normalized);
    for (const auto& v : rep.violations) std::printf("violation: %s\n", v.c_str());
    std::printf("%s  torsion %d  checked %d  violations %zu\n", c.label.c_str(), c.torsion, rep.checked,
                rep.violations.size());
    return rep.violations.empty() ? kOk : kVerificationFailure;
}

int cmd_bad_factor(const std::string& curve_arg, uint64_t p) {
    const Curve c = resolve_curve(curve_arg);
    const BadFactor counted = bad_euler_factor(c, p);
    const BadFactorFit fit = fit_bad_factor(c, p);
    std::printf("counted: (1 %+d X)(1 %+lld X + %llu X^2)  local sign %+d\n", -counted.eps,
                static_cast<long long>(-counted.a), static_cast<unsigned long long>(p), counted.local_sign);
    std::printf("functional-equation fit (probe D=%lld, %llu terms): residual %.2e, next %.2e, root number %+d\n",
                static_cast<long long>(fit.probe_disc), static_cast<unsigned long long>(fit.terms), fit.residual,
                fit.runner_up, fit.root_number);
    bool found = false;
    for (const auto& b : fit.best) {
        std::printf("  minimizer a=%lld eps=%+d\n", static_cast<long long>(b.a), b.eps);
        found = found || (b.a == counted.a && b.eps == counted.eps);
    }
    return found ? kOk : kVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Paramodular central values and twisted averages"};
    app.require_subcommand(1);

    int64_t level = 1, disc = 0, ell = 1, dmin = -300;
    std::optional<int64_t> rho;
    std::optional<double> tol, k_F;
    std::string form, coeffs, curve, discs, out, format = "csv";
    uint64_t prime = 0;
    bool with_lvalues = false;

    auto* classes = app.add_subcommand("classes", "Gamma_0(N)-classes of discriminant D");
    classes->add_option("--level", level, "N")->required();
    classes->add_option("--disc", disc, "negative discriminant")->required();
    classes->add_option("--rho", rho, "residue of b mod 2N");

    auto* gchar = app.add_subcommand("genus-char", "genus character of a form");
    gchar->add_option("--level", level, "N")->required();
    gchar->add_option("--ell", ell, "fundamental discriminant")->required();
    gchar->add_option("--form", form, "Na,b,c")->required();

    auto* average = app.add_subcommand("average", "twisted average B_ell(D) from a coefficient file");
    average->add_option("--coeffs", coeffs, "coefficient file")->required();
    average->add_option("--ell", ell, "auxiliary discriminant");
    average->add_option("--disc", disc, "discriminant D")->required();

    auto* lvalue = app.add_subcommand("lvalue", "twisted central value of a curve's L-function");
    lvalue->add_option("--curve", curve, "built-in label or curve file")->required();
    lvalue->add_option("--twist", disc, "fundamental discriminant")->default_val(1);
    lvalue->add_option("--tol", tol, "absolute tolerance");

    auto* table = app.add_subcommand("table", "normalized central values and averages for one ell");
    table->add_option("--curve", curve, "built-in label or curve file")->required();
    table->add_option("--coeffs", coeffs, "coefficient file (otherwise published averages)");
    table->add_option("--ell", ell, "auxiliary discriminant")->required();
    table->add_option("--discs", discs, "D1,D2,...")->required();
    table->add_option("--out", out, "output file, - for stdout");
    table->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    table->add_option("--k-f", k_F, "constant k_F");

    auto* fit = app.add_subcommand("fit-kf", "fit k_F over a grid of (ell, D)");
    fit->add_option("--curve", curve, "built-in label or curve file")->required();
    fit->add_option("--coeffs", coeffs, "coefficient file (otherwise published averages)");
    fit->add_option("--dmin", dmin, "smallest ell*D used");

    auto* torsion = app.add_subcommand("torsion-check", "torsion divisibility of the averages");
    torsion->add_option("--curve", curve, "built-in label or curve file")->required();
    torsion->add_flag("--with-lvalues", with_lvalues, "also check computed normalized values");

    auto* bad = app.add_subcommand("bad-factor", "local factor at a bad prime, counted and fitted");
    bad->add_option("--curve", curve, "built-in label or curve file")->required();
    bad->add_option("--prime", prime, "p dividing the conductor")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kDataError;
    }

    try {
        if (*classes) return cmd_classes(level, disc, rho);
        if (*gchar) return cmd_genus_char(level, ell, form);
        if (*average) return cmd_average(coeffs, ell, disc);
        if (*lvalue) return cmd_lvalue(curve, disc, tol);
        if (*table) return cmd_table(curve, coeffs, ell, discs, out, format, k_F);
        if (*fit) return cmd_fit_kf(curve, coeffs, dmin);
        if (*torsion) return cmd_torsion(curve, with_lvalues);
        if (*bad) return cmd_bad_factor(curve, prime);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kDataError;
    }
    return kDataError;
}
