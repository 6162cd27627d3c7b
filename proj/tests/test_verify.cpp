#include <cmath>
#include <memory>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "paramodular/arith.hpp"
#include "paramodular/verify.hpp"

using namespace paramodular;

namespace {

AverageResult exact(int64_t v) {
    AverageResult r;
    r.value = Rational(v);
    return r;
}

TwistedValues values_37a() {
    return TwistedValues("37a", [](uint64_t m) { return elliptic_lseries(curve_37a(), m); });
}

}  // namespace

TEST_CASE("conjecture_row: statuses and hypotheses") {
    // N = 587, ell = 5, D = -3: alpha = (1 + (-15/587)) = 2.
    const VerificationRow ok = conjecture_row(587, 5, -3, exact(3), 2.0, 1.5, 0.25, 1e-9);
    CHECK(ok.status == CellStatus::ok);
    CHECK(ok.alpha == 2);
    CHECK(ok.lhs == 9.0);
    CHECK(ok.rhs == doctest::Approx(2 * 0.25 * 2.0 * 1.5));
    CHECK(ok.residual == doctest::Approx(9.0 - 1.5));

    const VerificationRow zero = conjecture_row(587, 5, -3, exact(0), 2.0, 1e-12, 0.25, 1e-9);
    CHECK(zero.status == CellStatus::vanishing);

    AverageResult missing;
    missing.status = AverageStatus::missing_data;
    CHECK(conjecture_row(587, 5, -3, missing, 1, 1, 1, 0).status == CellStatus::missing);

    // (5 * -3 / 3) = 0 at N = 3 gives alpha = 1; pick a pair with alpha = 0 instead.
    int64_t d_empty = 0;
    for (int64_t d : arith::fundamental_discriminants(-60, -1))
        if (alpha(5 * d, 3) == 0) {
            d_empty = d;
            break;
        }
    REQUIRE(d_empty != 0);
    AverageResult empty;
    empty.status = AverageStatus::empty_sum;
    CHECK(conjecture_row(3, 5, d_empty, empty, 1, 1, 1, 0).status == CellStatus::empty);

    CHECK_THROWS_AS(conjecture_row(587, 5, 3, exact(1), 1, 1, 1, 0), HypothesisViolation);
    CHECK_THROWS_AS(conjecture_row(587, -4, -3, exact(1), 1, 1, 1, 0), HypothesisViolation);
    CHECK_THROWS_AS(conjecture_row(587, 5, -12, exact(1), 1, 1, 1, 0), HypothesisViolation);
}

TEST_CASE("conjectureA_row hypotheses") {
    TwistedValues v = values_37a();
    FormMeta meta;
    meta.level = 3;
    meta.weight = 2;
    meta.atkin_lehner_signs = {{3, 1}};
    meta.label = "plus";
    CoeffTable plus(meta);
    for (const QuadForm& r : enumerate_classes(3, -8).reps)
        if (!plus.find(r)) plus.insert(r, Rational(2));

    const VerificationRow row = conjectureA_row(plus, v, -8, 0.5);
    CHECK(row.alpha == alpha(-8, 3));
    CHECK(row.lhs == doctest::Approx(to_double(average_A(plus, -8).value * average_A(plus, -8).value)));
    const double L = v.central(-8).value * 8;
    CHECK(row.rhs == doctest::Approx(row.alpha * 0.5 * L));

    CHECK_THROWS_AS(conjectureA_row(plus, v, 5, 1.0), HypothesisViolation);
    CHECK_THROWS_AS(conjectureA_row(plus, v, -12, 1.0), HypothesisViolation);

    FormMeta minus = meta;
    minus.atkin_lehner_signs = {{3, -1}};
    CHECK_THROWS_AS(conjectureA_row(CoeffTable(minus), v, -8, 1.0), HypothesisViolation);

    FormMeta composite = meta;
    composite.level = 6;
    composite.atkin_lehner_signs = {{2, 1}, {3, 1}};
    CHECK_THROWS_AS(conjectureA_row(CoeffTable(composite), v, -8, 1.0), HypothesisViolation);

    FormMeta odd = meta;
    odd.weight = 3;
    CHECK_THROWS_AS(conjectureA_row(CoeffTable(odd), v, -8, 1.0), HypothesisViolation);
}

TEST_CASE("fit_kF: median and spread") {
    std::vector<VerificationRow> rows;
    for (double k : {0.5, 0.52, 0.49, 0.5, 0.51}) {
        VerificationRow r = conjecture_row(587, 5, -3, exact(2), 1.0, 4.0 / (2 * k), k, 0);
        REQUIRE(r.status == CellStatus::ok);
        rows.push_back(r);
    }
    rows.push_back(conjecture_row(587, 5, -3, exact(0), 1.0, 1e-14, 1, 1e-9));  // vanishing, ignored
    const KFit fit = fit_kF(rows);
    CHECK(fit.cells == 5);
    CHECK(fit.k_F == doctest::Approx(0.5));
    CHECK(fit.spread == doctest::Approx(0.04));

    CHECK_THROWS_AS(fit_kF({rows.front(), rows.back()}), AllCellsDegenerate);
    CHECK_THROWS_AS(fit_kF({}), AllCellsDegenerate);
}

TEST_CASE("TwistedValues agree with direct twists") {
    TwistedValues v = values_37a();
    v.prepare({-3, -4, -7});
    for (int64_t d : {-3, -4, -7}) {
        const LSeriesData t = twist(elliptic_lseries(curve_37a(), 20000), d);
        INFO("D=" << d);
        if (*t.root_number == -1) {
            CHECK(v.central(d).value == 0.0);
            continue;
        }
        const Estimate direct = central_value(t, 1e-8);
        CHECK(std::abs(v.central(d).value - direct.value) < 2e-8);
        CHECK(v.normalized(d) == doctest::Approx(v.central(d).value * double(-d)));
        CHECK(v.normalized_error(d) <= 1e-8 * double(-d));
    }
    CHECK(v.label() == "37a");
}

TEST_CASE("emit_table: csv and json") {
    TableBlock b;
    b.label = "F277";
    b.ell = 5;
    b.k_F = 0.25;
    b.cells = {{-3, 12.25, Rational(30)}, {-4, std::nullopt, std::nullopt}, {-7, 0.0, Rational(0)}};
    const std::string csv = emit_table(b, "csv");
    CHECK(csv == "D,-3,-4,-7\nalpha_5D C_5 L_D,12.2,,0.0\nB_5(D),30,--,0\n");

    const auto j = nlohmann::json::parse(emit_table(b, "json"));
    CHECK(j["form"] == "F277");
    CHECK(j["ell"] == 5);
    CHECK(j["cells"].size() == 3);
    CHECK(j["cells"][0]["D"] == -3);
    CHECK(j["cells"][0]["normalized"].get<double>() == 12.25);
    CHECK(j["cells"][1]["normalized"].is_null());
    CHECK(j["cells"][1]["B"] == "--");
    CHECK(j["cells"][2]["B"] == "0");
    CHECK_THROWS_AS(emit_table(b, "xml"), std::invalid_argument);

    b.ell = 1;
    CHECK(emit_table(b, "csv").find("\nalpha_D C_1 L_D,") != std::string::npos);
}

TEST_CASE("torsion_check on reference data") {
    for (const GoldenForm& f : golden_forms()) {
        const TorsionReport r = torsion_check(f, f.torsion);
        INFO(f.label);
        CHECK(r.violations.empty());
        CHECK(r.checked > 0);
    }
    const GoldenForm& f = golden_form("F277");
    REQUIRE(f.torsion == 15);
    CHECK_FALSE(torsion_check(f, 7).violations.empty());
    CHECK_THROWS_AS(torsion_check(f, 0), std::invalid_argument);

    // Normalized values: T^2 times an integer passes, anything else is flagged.
    const int64_t ell = f.blocks[1].ell;
    const int64_t d = f.blocks[1].cells.front().disc;
    REQUIRE(ell != 1);
    REQUIRE(d != 1);
    CHECK(torsion_check(f, 15, {{{ell, d}, 225.0 * 4}}).violations.empty());
    CHECK(torsion_check(f, 15, {{{ell, d}, 225.0 * 4.5}}).violations.size() == 1);
}

TEST_CASE("fit_root_number and fit_bad_factor") {
    const SignFit s = fit_root_number(elliptic_lseries(curve_37a(), 20000));
    CHECK(s.eps == -1);
    CHECK(s.decisive);
    CHECK(s.residual_minus < 1e-6);

    const Curve& c = builtin_curve("F249");
    const BadFactorFit fit = fit_bad_factor(c, 3);
    const BadFactor truth = bad_euler_factor(c, 3);
    bool found = false;
    for (const BadFactor& b : fit.best) found = found || b.poly == truth.poly;
    CHECK(found);
    CHECK(fit.root_number == 1);
    CHECK(fit.runner_up > fit.residual);
    CHECK_THROWS_AS(fit_bad_factor(c, 5), std::invalid_argument);
}
