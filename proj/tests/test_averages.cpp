#include <map>
#include <memory>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "paramodular/arith.hpp"
#include "paramodular/averages.hpp"

using namespace paramodular;

namespace {

int units(int64_t d) { return d == -3 ? 6 : d == -4 ? 4 : 2; }

// Synthetic lift: c_rho(D) = v_D * s(rho) with s(rho) = s(-rho) = +-1.
std::shared_ptr<JacobiTable> synthetic_jacobi(int64_t n, int64_t dmin) {
    auto j = std::make_shared<JacobiTable>(n, 2);
    std::mt19937_64 rng(static_cast<uint64_t>(n));
    for (int64_t d : arith::fundamental_discriminants(dmin, -1)) {
        const int64_t v = static_cast<int64_t>(rng() % 7) - 3;
        for (int64_t rho : residues(n, d)) {
            if (j->get(d, rho)) continue;
            const int64_t s = (rng() & 1) ? 1 : -1;
            j->set(d, rho, Rational(v * s));
        }
    }
    return j;
}

// Random coefficients on every class of the given discriminants (weight 2).
CoeffTable random_table(int64_t n, const std::vector<int64_t>& discs, uint64_t seed) {
    FormMeta meta;
    meta.level = n;
    meta.weight = 2;
    for (uint64_t p : arith::prime_divisors(static_cast<uint64_t>(n))) meta.atkin_lehner_signs[int64_t(p)] = 1;
    CoeffTable t(meta);
    std::mt19937_64 rng(seed);
    for (int64_t d : discs)
        for (const QuadForm& r : enumerate_classes(n, d).reps) {
            if (t.find(r)) continue;
            t.insert(r, Rational(static_cast<int64_t>(rng() % 11) - 5));
        }
    return t;
}

}  // namespace

TEST_CASE("alpha") {
    CHECK(alpha(-15, 587) == 1 + oracle::kronecker(-15, 587));
    CHECK(alpha(-15, 587) == 2);
    CHECK(alpha(-15, 249) == 2);
    CHECK(alpha(1, 249) == 4);
    CHECK(alpha(1, 713) == 4);
    CHECK(alpha(1, 587) == 2);
    CHECK(alpha(-60, 3) == alpha(-15, 3));  // uses the fundamental part
    for (int64_t d = -200; d < 200; ++d) {
        if (!arith::is_discriminant(d) || d == 0) continue;
        const int64_t d0 = arith::fundamental_decomposition(d).fundamental;
        REQUIRE(alpha(d, 30) == (1 + oracle::kronecker(d0, 2)) * (1 + oracle::kronecker(d0, 3)) *
                                    (1 + oracle::kronecker(d0, 5)));
    }
}

TEST_CASE("lift data: B(D, rho) = c_rho(D) h / w and B_ell(D) = 0") {
    for (int64_t n : {1, 3, 6, 37}) {
        const auto j = synthetic_jacobi(n, -160);
        const CoeffTable t = CoeffTable::gritsenko(j);
        for (int64_t d : arith::fundamental_discriminants(-160, -1)) {
            const auto rs = residues(n, d);
            Rational sum = 0;
            for (int64_t rho : rs) {
                const AverageResult b = average_B_rho(t, d, rho);
                REQUIRE(b.status == AverageStatus::exact);
                const Rational expect = *j->get(d, rho) * oracle::class_number(d) / units(d);
                REQUIRE(b.value == expect);
                REQUIRE(average_B_rho(t, d, oracle::mod(-rho, 2 * n)).value == b.value);
                sum += b.value;
            }
            const AverageResult a = average_A(t, d);
            if (rs.empty()) {
                REQUIRE(a.status == AverageStatus::empty_sum);
                REQUIRE(a.value == 0);
                REQUIRE(average_B(t, d).status == AverageStatus::empty_sum);
                continue;
            }
            REQUIRE(a.value == sum / 2);
            const Rational v = abs(*j->get(d, rs.front()));
            REQUIRE(average_B(t, d).value == Rational(static_cast<int64_t>(rs.size())) / 2 * v *
                                                 oracle::class_number(d) / units(d));
        }
        for (int64_t ell : {5, 8, 12, 13, 17}) {
            for (int64_t d : arith::fundamental_discriminants(-40, -1)) {
                if (std::gcd(ell, d) != 1 || !arith::is_fundamental(ell * d) || ell * d < -160) continue;
                const AverageResult b = twisted_average(t, ell, d);
                INFO("N=" << n << " ell=" << ell << " D=" << d);
                REQUIRE(b.status != AverageStatus::missing_data);
                REQUIRE(b.value == 0);
            }
        }
    }
}

TEST_CASE("N = 3, D = -3 with c_3(-3) = v") {
    auto j = std::make_shared<JacobiTable>(3, 2);
    j->set(-3, 3, Rational(5));
    const CoeffTable t = CoeffTable::gritsenko(j);
    // R_{-3} = {3} mod 6, h = 1, w = 6.
    CHECK(residues(3, -3) == std::vector<int64_t>{3});
    CHECK(average_B(t, -3).value == Rational(1, 2) * 5 * Rational(1, 6));
}

TEST_CASE("A(D) = 1/2 sum_rho B(D, rho) and B(D, -rho) = B(D, rho) on arbitrary tables") {
    for (int64_t n : {3, 6, 10, 21}) {
        const auto discs = arith::fundamental_discriminants(-120, -1);
        const CoeffTable t = random_table(n, discs, 99);
        for (int64_t d : discs) {
            Rational sum = 0;
            for (int64_t rho : residues(n, d)) {
                const Rational b = average_B_rho(t, d, rho).value;
                REQUIRE(average_B_rho(t, d, oracle::mod(-rho, 2 * n)).value == b);
                sum += b;
            }
            REQUIRE(average_A(t, d).value == sum / 2);
        }
    }
}

TEST_CASE("average_B rejects rho-dependent magnitudes") {
    // N = 6, D = -23: R_D = {1, 5, 7, 11}, {1, 11} and {5, 7} are +- pairs.
    auto j = std::make_shared<JacobiTable>(6, 2);
    j->set(-23, 1, Rational(1));
    j->set(-23, 5, Rational(2));
    const CoeffTable t = CoeffTable::gritsenko(j);
    CHECK_THROWS_AS(average_B(t, -23), DataCorruption);
}

TEST_CASE("Atkin-Lehner antisymmetric data gives A(D) = 0") {
    for (int64_t p : {3, 7, 11}) {
        FormMeta meta;
        meta.level = p;
        meta.weight = 2;
        meta.atkin_lehner_signs = {{p, -1}};
        std::map<QuadForm, Rational> values;
        std::mt19937_64 rng(static_cast<uint64_t>(p));
        const auto discs = arith::fundamental_discriminants(-150, -1);
        for (int64_t d : discs)
            for (const QuadForm& r : enumerate_classes(p, d).reps) {
                const QuadForm c = canonical(r);
                if (values.count(c)) continue;
                const QuadForm w = atkin_lehner(c, p);
                const QuadForm m = canonical(mirror(c)), wm = canonical(mirror(w));
                const Rational v = (w == c || w == m) ? Rational(0) : Rational(int64_t(rng() % 9) + 1);
                values[c] = v;
                values[m] = v;
                values[w] = -v;
                values[wm] = -v;
            }
        CoeffTable t(meta);
        for (const auto& [form, v] : values) t.insert(form, v);
        for (int64_t d : discs) {
            const AverageResult a = average_A(t, d);
            REQUIRE(a.status != AverageStatus::missing_data);
            REQUIRE(a.value == 0);
        }
    }
}

TEST_CASE("k even, N prime: B(D) = |A(D)|") {
    for (int64_t p : {7, 37}) {
        const auto discs = arith::fundamental_discriminants(-100, -1);
        const auto j = synthetic_jacobi(p, -100);
        const CoeffTable t = CoeffTable::gritsenko(j);
        for (int64_t d : discs) REQUIRE(average_B(t, d).value == abs(average_A(t, d).value));
    }
}

TEST_CASE("B_ell(D) = B_D(ell)") {
    for (int64_t n : {3, 6, 7}) {
        std::vector<int64_t> discs;
        std::vector<std::pair<int64_t, int64_t>> pairs;
        for (int64_t ell : {5, 8, 12, 13, 17, 21})
            for (int64_t d : arith::fundamental_discriminants(-24, -1)) {
                const int64_t delta = ell * d;
                if (std::gcd(ell, -d) != 1) continue;  // arbitrary data is only symmetric for coprime pairs
                pairs.push_back({ell, d});
                discs.push_back(delta);
            }
        const CoeffTable t = random_table(n, discs, 5);
        int compared = 0;
        for (auto [ell, d] : pairs) {
            const AverageResult x = twisted_average(t, ell, d);
            const AverageResult y = twisted_average(t, d, ell);
            INFO("N=" << n << " ell=" << ell << " D=" << d);
            REQUIRE(x.status == y.status);
            REQUIRE(x.value == y.value);
            ++compared;
        }
        CHECK(compared > 10);
    }
}

TEST_CASE("empty sums and preconditions") {
    const CoeffTable t = CoeffTable::gritsenko(synthetic_jacobi(3, -60));
    // alpha_{ell D} = 0 at N = 3 exactly when (ell D / 3) = -1.
    for (int64_t ell : {5, 8, 17})
        for (int64_t d : {-4, -7, -8, -11, -19, -20}) {
            if (alpha(ell * d, 3) != 0) continue;
            const AverageResult b = twisted_average(t, ell, d);
            CHECK(b.status == AverageStatus::empty_sum);
            CHECK(b.value == 0);
        }
    CHECK_THROWS_AS(average_B_rho(t, -15, 1), std::invalid_argument);
    CHECK_THROWS_AS(average_A(t, 5), std::invalid_argument);
    CHECK_THROWS_AS(twisted_average(t, 5, 8), std::invalid_argument);

    FormMeta meta;
    meta.level = 3;
    meta.atkin_lehner_signs = {{3, 1}};
    CoeffTable partial(meta);
    partial.insert({3, 1, 3, 2}, Rational(1));
    CHECK(average_A(partial, -15).status == AverageStatus::missing_data);
}
