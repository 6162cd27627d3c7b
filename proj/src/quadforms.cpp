#include "paramodular/quadforms.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <map>
#include <numeric>
#include <stdexcept>

#include "paramodular/arith.hpp"

namespace paramodular {

using arith::mod;

namespace {

int64_t narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("quadratic form coefficient overflow");
    return static_cast<int64_t>(v);
}

struct Wide {
    __int128 a, b, c;
};

Wide act_wide(int64_t a, int64_t b, int64_t c, const Matrix2& u) {
    const __int128 p = u.a, q = u.b, r = u.c, s = u.d;
    return {a * p * p + b * p * r + c * r * r,
            2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            a * q * q + b * q * s + c * s * s};
}

PlainForm act_plain(const PlainForm& f, const Matrix2& u) {
    const Wide w = act_wide(f.a, f.b, f.c, u);
    return {narrow(w.a), narrow(w.b), narrow(w.c)};
}

// x*s - y*q = 1 for coprime (x, y).
Matrix2 complete(int64_t x, int64_t y) {
    // Extended Euclid on (x, y): find s, t with x*s + y*t = 1, set q = -t.
    int64_t old_r = x, r = y, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const int64_t qt = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - qt * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - qt * s);
        std::tie(old_t, t) = std::make_pair(t, old_t - qt * t);
    }
    if (old_r < 0) {
        old_s = -old_s;
        old_t = -old_t;
    }
    if (old_r != 1 && old_r != -1) throw std::logic_error("complete(): entries not coprime");
    return {x, -old_t, y, old_s};
}

std::vector<Matrix2> automorphisms(const PlainForm& reduced) {
    std::vector<Matrix2> out;
    for (int64_t p = -1; p <= 1; ++p)
        for (int64_t q = -1; q <= 1; ++q)
            for (int64_t r = -1; r <= 1; ++r)
                for (int64_t s = -1; s <= 1; ++s) {
                    const Matrix2 u{p, q, r, s};
                    if (u.det() != 1) continue;
                    const PlainForm g = act_plain(reduced, u);
                    if (g.a == reduced.a && g.b == reduced.b && g.c == reduced.c) out.push_back(u);
                }
    return out;
}

// Translate so that b lies in (-a, a].
PlainForm normalize_b(const PlainForm& f) {
    int64_t r = mod(f.b, 2 * f.a);
    if (r > f.a) r -= 2 * f.a;
    const int64_t t = (r - f.b) / (2 * f.a);
    return act_plain(f, Matrix2{1, t, 0, 1});
}

struct Point {
    int64_t value, x, y;
};

// Primitive (x, y) up to sign with R(x, y) <= bound, sorted by value.
std::vector<Point> points_up_to(const PlainForm& r, int64_t bound) {
    std::vector<Point> out;
    if (r.a <= bound) out.push_back({r.a, 1, 0});
    const int64_t ad = 4 * r.a * r.c - r.b * r.b;
    // R(x,y) = a (x + b y / 2a)^2 + ad y^2 / 4a.
    for (int64_t y = 1;; ++y) {
        const __int128 base = static_cast<__int128>(ad) * y * y;
        if (base > static_cast<__int128>(4) * r.a * bound) break;
        const double centre = -static_cast<double>(r.b) * static_cast<double>(y) / (2.0 * r.a);
        const double span =
            std::sqrt(std::max(0.0, (4.0 * r.a * bound - static_cast<double>(base)) / (4.0 * r.a * r.a)));
        const auto lo = static_cast<int64_t>(std::floor(centre - span)) - 1;
        const auto hi = static_cast<int64_t>(std::ceil(centre + span)) + 1;
        for (int64_t x = lo; x <= hi; ++x) {
            if (std::gcd(x, y) != 1) continue;
            const __int128 v = static_cast<__int128>(r.a) * x * x + static_cast<__int128>(r.b) * x * y +
                               static_cast<__int128>(r.c) * y * y;
            if (v <= bound) out.push_back({static_cast<int64_t>(v), x, y});
        }
    }
    std::sort(out.begin(), out.end(), [](const Point& p, const Point& q) {
        return std::tie(p.value, p.x, p.y) < std::tie(q.value, q.x, q.y);
    });
    return out;
}

// Whether (x, y)^t lies in the first-column coset of g modulo Gamma_0(N).
bool same_coset(const Matrix2& g, int64_t x, int64_t y, int64_t level) {
    const __int128 lower = static_cast<__int128>(g.a) * y - static_cast<__int128>(g.c) * x;
    return lower % level == 0;
}

QuadForm form_from_point(const PlainForm& r, int64_t x, int64_t y, int64_t level) {
    const PlainForm f = normalize_b(act_plain(r, complete(x, y)));
    return QuadForm{level, f.a / level, f.b, f.c};
}

// Canonical representative of the union of cosets {g_i Gamma_0(N)} in the
// SL_2 class of the reduced form r. Every coset contains a column with value
// at most `guaranteed`.
QuadForm canonical_over_cosets(const PlainForm& r, const std::vector<Matrix2>& cosets, int64_t level,
                               int64_t guaranteed) {
    int64_t bound = std::min(guaranteed, std::max<int64_t>(r.c, 1) * level);
    while (true) {
        const auto pts = points_up_to(r, bound);
        std::optional<int64_t> best_value;
        std::optional<QuadForm> best;
        for (const Point& p : pts) {
            if (best_value && p.value > *best_value) break;
            if (p.value % level != 0) continue;
            bool hit = false;
            for (const Matrix2& g : cosets)
                if (same_coset(g, p.x, p.y, level)) {
                    hit = true;
                    break;
                }
            if (!hit) continue;
            best_value = p.value;
            const QuadForm f = form_from_point(r, p.x, p.y, level);
            if (!best || f < *best) best = f;
        }
        if (best) return *best;
        if (bound >= guaranteed) throw std::logic_error("canonical(): coset minimum not found");
        bound = bound > guaranteed / 2 ? guaranteed : 2 * bound;
    }
}

PlainForm plain(const QuadForm& t) { return {t.first(), t.b, t.c}; }

// Index of (x : y) in P^1(Z/N) for squarefree N, mixed radix over primes.
struct ProjectiveLine {
    int64_t level;
    std::vector<int64_t> primes;

    explicit ProjectiveLine(int64_t n) : level(n) {
        for (uint64_t p : arith::prime_divisors(static_cast<uint64_t>(n))) primes.push_back(static_cast<int64_t>(p));
    }

    int64_t size() const {
        int64_t s = 1;
        for (int64_t p : primes) s *= p + 1;
        return s;
    }

    static int64_t inverse_mod(int64_t a, int64_t p) {
        int64_t r = 1, b = mod(a, p), e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    }

    int64_t index(int64_t x, int64_t y) const {
        int64_t idx = 0, radix = 1;
        for (int64_t p : primes) {
            const int64_t yp = mod(y, p);
            const int64_t digit = yp == 0 ? p : mod(x, p) * inverse_mod(yp, p) % p;
            idx += digit * radix;
            radix *= p + 1;
        }
        return idx;
    }

    // A primitive integer column with the given index.
    std::pair<int64_t, int64_t> lift(int64_t idx) const {
        if (primes.empty()) return {1, 0};
        int64_t x = 0, y = 0;
        for (int64_t p : primes) {
            const int64_t digit = idx % (p + 1);
            idx /= p + 1;
            const int64_t xp = digit == p ? 1 : digit;
            const int64_t yp = digit == p ? 0 : 1;
            // CRT: solve X = xp mod p, X = x mod (product so far).
            const int64_t m = level / p;
            const int64_t e = m * inverse_mod(m % p, p);  // 1 mod p, 0 mod m
            x = mod(x + (xp - x) * (e % level), level);
            y = mod(y + (yp - y) * (e % level), level);
        }
        for (int64_t k = 0;; ++k) {
            const int64_t yy = y + k * level;
            if (std::gcd(x, yy) == 1) return {x, yy};
        }
    }
};

}  // namespace

Matrix2 Matrix2::operator*(const Matrix2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

Matrix2 Matrix2::inverse() const {
    const int64_t dt = det();
    if (dt != 1 && dt != -1) throw std::invalid_argument("Matrix2::inverse needs determinant +-1");
    return {d * dt, -b * dt, -c * dt, a * dt};
}

int64_t QuadForm::value(int64_t x, int64_t y) const {
    const __int128 v = static_cast<__int128>(first()) * x * x + static_cast<__int128>(b) * x * y +
                       static_cast<__int128>(c) * y * y;
    return narrow(v);
}

QuadForm QuadForm::act(const Matrix2& u) const {
    const Wide w = act_wide(first(), b, c, u);
    if (w.a % level != 0) throw std::invalid_argument("QuadForm::act: result is not of level N");
    return QuadForm{level, narrow(w.a / level), narrow(w.b), narrow(w.c)};
}

std::string QuadForm::str() const {
    return "[" + std::to_string(first()) + "," + std::to_string(b) + "," + std::to_string(c) + "]";
}

bool in_gamma0(const Matrix2& u, int64_t level) { return u.det() == 1 && u.c % level == 0; }

std::vector<int64_t> residues(int64_t level, int64_t disc) {
    std::vector<int64_t> out;
    for (int64_t rho = 0; rho < 2 * level; ++rho)
        if (mod(rho * rho - disc, 4 * level) == 0) out.push_back(rho);
    return out;
}

Reduction reduce(const PlainForm& f) {
    if (f.a <= 0 || f.b * f.b - 4 * f.a * f.c >= 0)
        throw std::invalid_argument("reduce(): form is not positive definite");
    PlainForm g = f;
    Matrix2 v = Matrix2::identity();
    const Matrix2 swap{0, -1, 1, 0};
    while (true) {
        int64_t r = mod(g.b, 2 * g.a);
        if (r > g.a) r -= 2 * g.a;
        const int64_t t = (r - g.b) / (2 * g.a);
        if (t != 0) {
            const Matrix2 tr{1, t, 0, 1};
            g = act_plain(g, tr);
            v = v * tr;
        }
        if (g.a > g.c) {
            g = act_plain(g, swap);
            v = v * swap;
            continue;
        }
        if (g.a == g.c && g.b < 0) {
            g = act_plain(g, swap);
            v = v * swap;
        }
        return {g, v};
    }
}

QuadForm canonical(const QuadForm& t) {
    if (!t.positive_definite()) throw std::invalid_argument("canonical(): form not positive definite: " + t.str());
    const Reduction red = reduce(plain(t));
    const Matrix2 back = red.transform.inverse();  // t = R[back]
    std::vector<Matrix2> cosets;
    for (const Matrix2& s : automorphisms(red.reduced)) cosets.push_back(s * back);
    return canonical_over_cosets(red.reduced, cosets, t.level, t.first());
}

std::optional<Matrix2> gamma0_equivalent(const QuadForm& t1, const QuadForm& t2) {
    if (t1.level != t2.level || t1.disc() != t2.disc()) return std::nullopt;
    if (t1 == t2) return Matrix2::identity();
    const Reduction r1 = reduce(plain(t1));
    const Reduction r2 = reduce(plain(t2));
    if (r1.reduced.a != r2.reduced.a || r1.reduced.b != r2.reduced.b || r1.reduced.c != r2.reduced.c)
        return std::nullopt;
    const Matrix2 v2inv = r2.transform.inverse();
    for (const Matrix2& s : automorphisms(r1.reduced)) {
        const Matrix2 u = r1.transform * s * v2inv;
        if (in_gamma0(u, t1.level)) return u;
    }
    return std::nullopt;
}

int automorphism_count(const QuadForm& t) {
    if (!t.positive_definite()) throw std::invalid_argument("automorphism_count(): form not positive definite");
    const Reduction red = reduce(plain(t));
    const Matrix2 vinv = red.transform.inverse();
    int count = 0;
    for (const Matrix2& s : automorphisms(red.reduced))
        if (in_gamma0(red.transform * s * vinv, t.level)) ++count;
    return count;
}

ClassList enumerate_classes(int64_t level, int64_t disc, std::optional<int64_t> rho) {
    if (level < 1 || !arith::is_squarefree(static_cast<uint64_t>(level)))
        throw std::invalid_argument("enumerate_classes(): level must be squarefree");
    if (disc >= 0) throw std::invalid_argument("enumerate_classes(): need a negative discriminant");
    ClassList out;
    out.level = level;
    out.disc = disc;
    if (residues(level, disc).empty()) return out;
    if (rho) rho = mod(*rho, 2 * level);

    const ProjectiveLine line(level);
    std::vector<std::pair<QuadForm, int>> found;
    for (const arith::ReducedForm& rf : arith::reduced_forms(disc, false)) {
        const PlainForm r{rf.a, rf.b, rf.c};
        const auto auts = automorphisms(r);
        const int64_t npts = line.size();
        std::vector<bool> seen(static_cast<std::size_t>(npts), false);
        for (int64_t idx = 0; idx < npts; ++idx) {
            if (seen[static_cast<std::size_t>(idx)]) continue;
            const auto [x, y] = line.lift(idx);
            const Matrix2 g = complete(x, y);
            const PlainForm f = act_plain(r, g);
            std::vector<Matrix2> orbit;
            for (const Matrix2& s : auts) {
                const Matrix2 sg = s * g;
                seen[static_cast<std::size_t>(line.index(sg.a, sg.c))] = true;
                orbit.push_back(sg);
            }
            if (f.a % level != 0) continue;
            if (rho && mod(f.b, 2 * level) != *rho) continue;
            const QuadForm rep = canonical_over_cosets(r, orbit, level, f.a);
            int eps = 0;
            const Matrix2 ginv = g.inverse();
            for (const Matrix2& s : auts)
                if (in_gamma0(ginv * s * g, level)) ++eps;
            found.emplace_back(rep, eps);
        }
    }
    std::sort(found.begin(), found.end());
    for (const auto& [rep, eps] : found) {
        out.reps.push_back(rep);
        out.stabilizer_orders.push_back(eps);
    }
    return out;
}

QuadForm atkin_lehner(const QuadForm& t, int64_t q) {
    const int64_t n = t.level;
    if (q < 1 || n % q != 0 || std::gcd(q, n / q) != 1)
        throw std::invalid_argument("atkin_lehner(): " + std::to_string(q) + " is not an exact divisor of " +
                                    std::to_string(n));
    if (q == 1) return canonical(t);
    // W = [[q, beta], [n, q delta]] with q*delta - (n/q)*beta = 1.
    const Matrix2 bez = complete(q, n / q);  // q*s - (n/q)*qq = 1 with columns (q, n/q)
    const int64_t delta = bez.d;
    const int64_t beta = bez.b;
    const Matrix2 w{q, beta, n, q * delta};
    const Wide img = act_wide(t.first(), t.b, t.c, w);
    if (img.a % q != 0 || img.b % q != 0 || img.c % q != 0)
        throw std::logic_error("atkin_lehner(): non-integral image");
    const QuadForm f{n, narrow(img.a / q / n), narrow(img.b / q), narrow(img.c / q)};
    if (static_cast<__int128>(f.a) * n * q != img.a) throw std::logic_error("atkin_lehner(): image not of level N");
    return canonical(f);
}

PlainForm genus_modified_form(const QuadForm& t, int64_t ell) {
    const int64_t g = std::gcd(std::gcd(t.level, t.b), std::gcd(t.c, ell));
    return {t.first() / g, t.b, t.c * g};
}

namespace {

void check_genus_args(const QuadForm& t, int64_t ell) {
    if (!arith::is_fundamental(ell))
        throw std::invalid_argument("genus_character(): ell must be a fundamental discriminant");
    const int64_t d = t.disc();
    if (d % ell != 0 || !arith::is_discriminant(d / ell))
        throw std::invalid_argument("genus_character(): disc(T) is not ell times a discriminant");
    if (std::gcd(std::gcd(t.a, t.b), std::gcd(t.c, ell)) != 1)
        throw std::invalid_argument("genus_character(): gcd(a, b, c, ell) != 1 for " + t.str());
}

}  // namespace

int genus_character_with_value(const QuadForm& t, int64_t ell, int64_t n) {
    check_genus_args(t, ell);
    if (std::gcd(n, ell) != 1) throw std::invalid_argument("genus_character(): value not coprime to ell");
    const int64_t g = std::gcd(std::gcd(t.level, t.b), std::gcd(t.c, ell));
    int chi = arith::kronecker(ell, n);
    if (g > 1) {
        for (uint64_t up : arith::prime_divisors(static_cast<uint64_t>(g))) {
            const auto p = static_cast<int64_t>(up);
            if (p == 2) {
                int64_t odd = ell;
                while (odd % 2 == 0) odd /= 2;
                chi *= arith::kronecker(2, odd);
            } else {
                chi *= arith::kronecker(-ell / p, p);
            }
        }
    }
    return chi;
}

int genus_character(const QuadForm& t, int64_t ell) {
    check_genus_args(t, ell);
    if (ell == 1) return 1;
    const PlainForm m = genus_modified_form(t, ell);
    const PlainForm r = reduce(m).reduced;
    for (int64_t s = 1; s <= 30; ++s) {
        for (int64_t x = -s; x <= s; ++x)
            for (int64_t y = -s; y <= s; ++y) {
                if (std::max(std::abs(x), std::abs(y)) != s && s > 1) continue;
                const int64_t n = r.value(x, y);
                if (n > 0 && std::gcd(n, ell) == 1) return genus_character_with_value(t, ell, n);
            }
    }
    throw std::logic_error("genus_character(): no represented value coprime to ell for " + t.str());
}

}  // namespace paramodular
