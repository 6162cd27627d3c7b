#include <cstdio>
#include <filesystem>
#include <memory>

#include "doctest.h"
#include "paramodular/arith.hpp"
#include "paramodular/coeffstore.hpp"

using namespace paramodular;

namespace {

QuadForm form(int64_t n, int64_t a, int64_t b, int64_t c) { return {n, a, b, c}; }

CoeffTable sample(int weight) {
    FormMeta meta;
    meta.level = 3;
    meta.weight = weight;
    meta.atkin_lehner_signs = {{3, -1}};
    meta.label = "toy";
    CoeffTable t(meta);
    t.insert(form(3, 1, 3, 2), Rational(5, 2));
    t.insert(form(3, 2, 3, 1), Rational(-7));
    t.insert(form(3, 1, 1, 1), Rational(3));
    return t;
}

}  // namespace

TEST_CASE("parse: empty table with a valid header") {
    const CoeffTable t = parse_coeff_text("PARAMODULAR level=587 weight=2 AL=587:-1\n");
    CHECK(t.size() == 0);
    CHECK(t.level() == 587);
    CHECK(t.meta().atkin_lehner_signs.at(587) == -1);
}

TEST_CASE("parse: duplicates and conflicts") {
    // [3,3,2] and its image under (1 1; 0 1), [3,9,8].
    const std::string head = "PARAMODULAR level=3 weight=2 AL=3:1\n";
    const CoeffTable t = parse_coeff_text(head + "1 3 2 4\n1 9 8 4  # same class\n");
    CHECK(t.size() == 1);
    CHECK_THROWS_AS(parse_coeff_text(head + "1 3 2 4\n1 9 8 5\n"), InconsistentCoefficient);
}

TEST_CASE("parse: errors carry line numbers") {
    try {
        parse_coeff_text("PARAMODULAR level=3 weight=2 AL=3:1\n1 3 2 4\n1 3 x 4\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
    CHECK_THROWS_AS(parse_coeff_text("JACOBI index=3 weight=2\n"), ParseError);
    CHECK_THROWS_AS(parse_coeff_text("PARAMODULAR level=3 weight=2\n"), ParseError);
    CHECK_THROWS_AS(parse_coeff_text("PARAMODULAR level=3 weight=2 AL=3:1\n1 3 2\n"), ParseError);
    CHECK_THROWS_AS(parse_coeff_text("PARAMODULAR level=3 weight=2 AL=3:1\n-1 3 2 1\n"), ParseError);
}

TEST_CASE("coefficient: symmetries") {
    const CoeffTable t = sample(2);
    const QuadForm s = form(3, 1, 3, 2);
    CHECK(t.coefficient(s) == Rational(5, 2));
    CHECK(t.coefficient(s.act({1, 1, 0, 1})) == Rational(5, 2));
    CHECK(t.coefficient(s.act({2, 1, 3, 2})) == Rational(5, 2));
    CHECK(t.coefficient(mirror(form(3, 2, 3, 1))) == Rational(-7));
    CHECK_THROWS_AS(t.coefficient(form(3, 1, 0, 5)), MissingCoefficient);
    CHECK_FALSE(t.find(form(3, 1, 0, 5)).has_value());

    // Odd weight: the mirror image carries the opposite sign, and a class
    // equal to its own mirror image can only carry 0.
    FormMeta meta;
    meta.level = 1;
    meta.weight = 3;
    CoeffTable odd(meta);
    const QuadForm u = form(1, 2, 1, 3);  // disc -23, not ambiguous
    REQUIRE_FALSE(gamma0_equivalent(u, mirror(u)).has_value());
    odd.insert(u, Rational(4));
    CHECK(odd.coefficient(u) == Rational(4));
    CHECK(odd.coefficient(mirror(u)) == Rational(-4));
    CHECK(odd.coefficient(mirror(u).act({1, 1, 0, 1})) == Rational(-4));
    CHECK_THROWS_AS(odd.insert(mirror(u), Rational(4)), InconsistentCoefficient);
    CHECK_NOTHROW(odd.insert(form(1, 1, 1, 1), Rational(0)));
    CHECK_THROWS_AS(odd.insert(form(1, 1, 0, 1), Rational(1)), InconsistentCoefficient);
}

TEST_CASE("round trip through a file") {
    const CoeffTable t = sample(2);
    const auto path = std::filesystem::temp_directory_path() / "paramodular_roundtrip.txt";
    save_coeff_file(t, path.string());
    const CoeffTable back = load_coeff_file(path.string());
    std::filesystem::remove(path);
    CHECK(back.entries() == t.entries());
    CHECK(back.level() == t.level());
    CHECK(back.weight() == t.weight());
    CHECK(back.meta().atkin_lehner_signs == t.meta().atkin_lehner_signs);
    CHECK(format_coeff_table(back) == format_coeff_table(t));
    CHECK_THROWS(load_coeff_file("/nonexistent/coeffs.txt"));
}

TEST_CASE("Jacobi tables") {
    JacobiTable j(3, 2);
    j.set_nr(1, 3, Rational(2));  // D = 9 - 12 = -3, rho = 3
    CHECK(j.get(-3, 3) == Rational(2));
    CHECK(j.get(-3, -3) == Rational(2));
    CHECK_FALSE(j.get(-15, 3).has_value());
    CHECK_THROWS_AS(j.set(-3, 3, Rational(1)), InconsistentCoefficient);
    CHECK_THROWS_AS(j.set(-3, 1, Rational(1)), std::invalid_argument);

    JacobiTable odd(3, 3);
    odd.set(-15, 3, Rational(4));
    CHECK(odd.get(-15, -3) == Rational(-4));

    const JacobiTable back = parse_jacobi_text(format_jacobi_table(j));
    CHECK(back.values() == j.values());
    CHECK(back.index() == 3);
}

TEST_CASE("Gritsenko tables") {
    auto j = std::make_shared<JacobiTable>(3, 2);
    j->set(-15, 3, Rational(6));
    j->set(-3, 3, Rational(1));
    j->set(-20, 2, Rational(-2));
    const CoeffTable t = CoeffTable::gritsenko(j);
    CHECK(t.is_lift());
    // T = [N, rho, (rho^2 - D) / 4N].
    CHECK(t.coefficient(form(3, 1, 3, (9 + 15) / 12)) == Rational(6));
    // Two inequivalent classes with the same (disc, b mod 2N).
    CHECK(t.coefficient(form(3, 1, 3, 2)) == Rational(6));
    CHECK(t.coefficient(form(3, 2, 3, 1)) == Rational(6));
    CHECK(t.coefficient(form(3, 1, 4, 3)) == Rational(-2));
    // -27 = -3 * 3^2 is not fundamental.
    CHECK_THROWS_AS(t.coefficient(form(3, 1, 3, 3)), MissingCoefficient);
    CHECK_THROWS(CoeffTable(t).insert(form(3, 1, 3, 2), Rational(1)));
}
