#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "paramodular/arith.hpp"
#include "paramodular/quadforms.hpp"

using namespace paramodular;

namespace {

QuadForm form(int64_t n, int64_t a, int64_t b, int64_t c) { return {n, a, b, c}; }

Matrix2 random_gamma0(std::mt19937_64& rng, int64_t n, int length) {
    const Matrix2 gens[] = {{1, 1, 0, 1}, {1, -1, 0, 1}, {1, 0, n, 1}, {1, 0, -n, 1}, {-1, 0, 0, -1}};
    std::uniform_int_distribution<int> pick(0, 4);
    for (;;) {
        Matrix2 u;
        for (int i = 0; i < length; ++i) u = u * gens[pick(rng)];
        if (std::max({std::abs(u.a), std::abs(u.b), std::abs(u.c), std::abs(u.d)}) <= 100000) return u;
    }
}

bool same_class(const QuadForm& s, const QuadForm& t) { return gamma0_equivalent(s, t).has_value(); }

}  // namespace

TEST_CASE("residues") {
    CHECK(residues(6, 1) == std::vector<int64_t>{1, 5, 7, 11});
    CHECK(residues(3, -1).empty());
    CHECK(residues(1, -4) == std::vector<int64_t>{0});
    for (int64_t n : {1, 3, 6, 10, 249})
        for (int64_t d = -300; d < 0; ++d) {
            if (!arith::is_discriminant(d)) continue;
            const auto r = residues(n, d);
            std::vector<int64_t> brute;
            for (int64_t rho = 0; rho < 2 * n; ++rho)
                if (oracle::mod(rho * rho - d, 4 * n) == 0) brute.push_back(rho);
            REQUIRE(r == brute);
            for (int64_t rho : r) REQUIRE(std::binary_search(r.begin(), r.end(), oracle::mod(-rho, 2 * n)));
        }
}

TEST_CASE("enumerate_classes: examples") {
    const ClassList l = enumerate_classes(3, -15, 3);
    REQUIRE(l.reps.size() == 2);
    for (const QuadForm& t : {form(3, 1, 3, 2), form(3, 2, 3, 1)}) {
        int hits = 0;
        for (const QuadForm& r : l.reps) hits += same_class(t, r);
        CHECK(hits == 1);
    }
    const ClassList one = enumerate_classes(1, -3);
    REQUIRE(one.reps.size() == 1);
    CHECK(one.stabilizer_orders[0] == 6);
    CHECK(enumerate_classes(3, -1).reps.empty());
}

TEST_CASE("enumerate_classes: |Q_{N,D,rho}/Gamma_0(N)| = h(D)") {
    for (int64_t n : {1, 3, 5, 6, 7, 10})
        for (int64_t d : arith::fundamental_discriminants(-199, -1))
            for (int64_t rho : residues(n, d)) {
                const ClassList l = enumerate_classes(n, d, rho);
                INFO("N=" << n << " D=" << d << " rho=" << rho);
                REQUIRE(static_cast<int64_t>(l.reps.size()) == oracle::class_number(d));
                for (std::size_t i = 0; i < l.reps.size(); ++i) {
                    REQUIRE(l.reps[i].disc() == d);
                    REQUIRE(oracle::mod(l.reps[i].b - rho, 2 * n) == 0);
                    REQUIRE(l.stabilizer_orders[i] == arith::unit_count(d));
                }
            }
}

TEST_CASE("enumerate_classes: brute force forms land in exactly one class") {
    for (int64_t n : {1, 3, 6, 10})
        for (int64_t d : {-3, -4, -15, -20, -23, -39, -56, -84}) {
            const ClassList l = enumerate_classes(n, d);
            for (std::size_t i = 0; i < l.reps.size(); ++i)
                for (std::size_t j = i + 1; j < l.reps.size(); ++j) REQUIRE_FALSE(same_class(l.reps[i], l.reps[j]));
            for (int64_t a = 1; a <= -d; ++a)
                for (int64_t b = -2 * n * a; b <= 2 * n * a; ++b) {
                    const int64_t num = b * b - d;
                    if (num % (4 * n * a) != 0) continue;
                    const QuadForm t = form(n, a, b, num / (4 * n * a));
                    int hits = 0;
                    for (const QuadForm& r : l.reps) {
                        const auto u = gamma0_equivalent(t, r);
                        if (!u) continue;
                        ++hits;
                        REQUIRE(in_gamma0(*u, n));
                        REQUIRE(t.act(*u) == r);
                    }
                    INFO(t.str());
                    REQUIRE(hits == 1);
                }
        }
}

TEST_CASE("gamma0_equivalent") {
    const QuadForm t = form(3, 1, 3, 2);
    CHECK(gamma0_equivalent(t, t) == Matrix2::identity());
    // Decided by exhaustive bounded search.
    const auto mirrored = oracle::equivalent_bounded(form(3, 1, 3, 2), form(3, 1, -3, 2), 4);
    CHECK(gamma0_equivalent(form(3, 1, 3, 2), form(3, 1, -3, 2)).has_value() == mirrored.has_value());
    CHECK_FALSE(oracle::equivalent_bounded(form(3, 1, 3, 2), form(3, 2, 3, 1), 6).has_value());
    CHECK_FALSE(gamma0_equivalent(form(3, 1, 3, 2), form(3, 2, 3, 1)).has_value());

    std::mt19937_64 rng(7);
    for (int64_t n : {3, 6, 249})
        for (int i = 0; i < 200; ++i) {
            const ClassList l = enumerate_classes(n, n == 249 ? -47 : -23);
            const QuadForm s = l.reps[i % l.reps.size()];
            const QuadForm img = s.act(random_gamma0(rng, n, 6));
            const auto u = gamma0_equivalent(img, s);
            REQUIRE(u.has_value());
            REQUIRE(img.act(*u) == s);
            REQUIRE(canonical(img) == canonical(s));
        }
}

TEST_CASE("automorphism_count") {
    CHECK(automorphism_count(form(1, 1, 1, 1)) == 6);
    CHECK(automorphism_count(form(1, 1, 0, 1)) == 4);
    CHECK(automorphism_count(form(3, 1, 3, 2)) == 2);
    // Oracle: stabilizer elements have small entries for these forms.
    for (const QuadForm& t : {form(1, 1, 1, 1), form(1, 1, 0, 1), form(3, 1, 3, 2), form(3, 1, 3, 1)}) {
        int count = 0;
        for (int64_t a = -3; a <= 3; ++a)
            for (int64_t b = -3; b <= 3; ++b)
                for (int64_t c = -3; c <= 3; ++c)
                    for (int64_t d = -3; d <= 3; ++d) {
                        const Matrix2 u{a, b, c, d};
                        if (u.det() == 1 && in_gamma0(u, t.level) && t.act(u) == t) ++count;
                    }
        CHECK(automorphism_count(t) == count);
    }
}

TEST_CASE("atkin_lehner") {
    const QuadForm t = form(3, 1, 3, 2);
    CHECK(atkin_lehner(t, 1) == canonical(t));
    CHECK_THROWS_AS(atkin_lehner(form(12, 1, 1, 1), 2), std::invalid_argument);
    CHECK_THROWS_AS(atkin_lehner(t, 2), std::invalid_argument);

    // W_3 permutes the two rho = 3 classes at N = 3, D = -15.
    std::set<QuadForm> before, after;
    for (const QuadForm& r : enumerate_classes(3, -15, 3).reps) {
        before.insert(canonical(r));
        after.insert(atkin_lehner(r, 3));
        CHECK(oracle::mod(atkin_lehner(r, 3).b - 3, 6) == 0);
    }
    CHECK(before == after);

    for (int64_t n : {6, 15, 30, 21})
        for (int64_t d : {-15, -20, -24, -39, -35, -84, -119})
            for (const QuadForm& r : enumerate_classes(n, d).reps)
                for (int64_t m = 1; m <= n; ++m) {
                    if (n % m != 0 || std::gcd(m, n / m) != 1) continue;
                    const QuadForm w = atkin_lehner(r, m);
                    INFO(r.str() << " W_" << m);
                    REQUIRE(w.disc() == d);
                    REQUIRE(atkin_lehner(w, m) == canonical(r));
                    REQUIRE(oracle::mod(w.b + r.b, 2 * m) == 0);
                    REQUIRE(oracle::mod(w.b - r.b, 2 * n / m) == 0);
                }
}

TEST_CASE("genus_character: examples") {
    for (const QuadForm& t : {form(3, 1, 3, 2), form(3, 2, 3, 1), form(1, 1, 1, 1)}) CHECK(genus_character(t, 1) == 1);
    CHECK(genus_character(form(3, 1, 3, 2), 5) == -1);
    CHECK(genus_character(form(3, 2, 3, 1), 5) == 1);
    CHECK(genus_character(form(3, 1, 3, 6), -3) == 1);
    CHECK_THROWS_AS(genus_character(form(3, 5, 5, 5), 5), std::invalid_argument);
}

namespace {

// All classes of discriminant ell * D for fundamental D with ell D < 0.
std::vector<QuadForm> forms_for(int64_t n, int64_t ell) {
    std::vector<QuadForm> out;
    for (int64_t d : arith::fundamental_discriminants(-120, 120)) {
        if (d == 0 || (d < 0) == (ell < 0)) continue;
        for (const QuadForm& t : enumerate_classes(n, ell * d).reps) {
            if (std::gcd(std::gcd(std::gcd(t.a, std::abs(t.b)), t.c), std::abs(ell)) != 1) continue;
            out.push_back(t);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("genus_character: Gamma_0(N) invariance") {
    std::mt19937_64 rng(11);
    for (int64_t n : {3, 249})
        for (int64_t ell : {1, 5, 8, -3, -4}) {
            const auto forms = forms_for(n, ell);
            REQUIRE(!forms.empty());
            for (int i = 0; i < 300; ++i) {
                const QuadForm t = forms[rng() % forms.size()];
                const QuadForm img = t.act(random_gamma0(rng, n, 8));
                INFO("N=" << n << " ell=" << ell << " " << t.str() << " -> " << img.str());
                REQUIRE(genus_character(img, ell) == genus_character(t, ell));
            }
        }
}

TEST_CASE("genus_character: independent of the represented value") {
    for (int64_t n : {3, 6, 249})
        for (int64_t ell : {5, 8, -3, -4, -7, 12, -8}) {
            for (const QuadForm& t : forms_for(n, ell)) {
                const PlainForm m = genus_modified_form(t, ell);
                const int ref = genus_character(t, ell);
                int used = 0;
                for (int64_t x = -6; x <= 6 && used < 5; ++x)
                    for (int64_t y = 0; y <= 6 && used < 5; ++y) {
                        const int64_t v = m.value(x, y);
                        if (v == 0 || std::gcd(v, ell) != 1) continue;
                        ++used;
                        REQUIRE(genus_character_with_value(t, ell, v) == ref);
                    }
                REQUIRE(used == 5);
            }
        }
}

TEST_CASE("genus_character: multiplicativity") {
    const std::pair<int64_t, int64_t> splits[] = {{5, -3}, {-4, 5}, {-3, -4}, {8, -3}, {5, -7}, {-8, 5}, {13, -4}};
    for (int64_t n : {3, 6, 7})
        for (auto [l1, l2] : splits) {
            const int64_t ell = l1 * l2;
            for (const QuadForm& t : forms_for(n, ell)) {
                // chi_{l1} needs disc(T) / l1 to be a discriminant and gcd(a, b, c, l1) = 1.
                bool defined = true;
                for (int64_t l : {l1, l2}) {
                    const int64_t rest = t.disc() / l;
                    defined = defined && t.disc() % l == 0 && arith::is_discriminant(rest) &&
                              std::gcd(std::gcd(std::gcd(t.a, std::abs(t.b)), t.c), std::abs(l)) == 1;
                }
                if (!defined) continue;
                REQUIRE(genus_character(t, ell) == genus_character(t, l1) * genus_character(t, l2));
            }
        }
}

TEST_CASE("genus_character: W_p with p | ell picks up (D/p)") {
    // disc -15 = (-3) * 5 at N = 3: W_3 swaps the two classes (forced by the
    // p-not-dividing-ell law for chi_5) while chi_{-3} takes both signs, so
    // chi_{-3}(W_3 T) = (5/3) chi_{-3}(T), not chi_{-3}(T).
    const QuadForm t = form(3, 1, 3, 2);
    const QuadForm w = atkin_lehner(t, 3);
    CHECK(w == canonical(form(3, 2, 3, 1)));
    CHECK(genus_character(t, 5) == -genus_character(w, 5));
    CHECK(genus_character(t, -3) == -genus_character(w, -3));
}

TEST_CASE("genus_character: Atkin-Lehner twist law") {
    for (int64_t n : {3, 15, 21})
        for (int64_t ell : {5, -3, -4, 8, -7, 12, -8, 21}) {
            for (const QuadForm& t : forms_for(n, ell))
                for (uint64_t up : arith::prime_divisors(static_cast<uint64_t>(n))) {
                    const int64_t p = static_cast<int64_t>(up);
                    const QuadForm w = atkin_lehner(t, p);
                    INFO("N=" << n << " ell=" << ell << " p=" << p << " " << t.str());
                    if (ell % p != 0) {
                        REQUIRE(genus_character(w, ell) == arith::kronecker(ell, p) * genus_character(t, ell));
                    } else {
                        const int64_t pstar = p % 4 == 1 ? p : -p;
                        if (t.disc() % pstar != 0 || !arith::is_discriminant(t.disc() / pstar)) continue;
                        const int64_t rest = t.disc() / pstar;
                        if (rest % p == 0) continue;
                        REQUIRE(genus_character(w, pstar) == arith::kronecker(rest, p) * genus_character(t, pstar));
                    }
                }
        }
}
