#include "paramodular/curve.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "paramodular/arith.hpp"

namespace paramodular {

using arith::mod;

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

std::vector<int64_t> poly_inverse_series(const Poly& p, int terms) {
    if (p.empty() || p[0] != 1) throw std::invalid_argument("poly_inverse_series needs P(0) = 1");
    std::vector<int64_t> out(static_cast<std::size_t>(terms), 0);
    if (terms == 0) return out;
    out[0] = 1;
    for (int k = 1; k < terms; ++k) {
        int64_t v = 0;
        for (int j = 1; j <= k && j < static_cast<int>(p.size()); ++j) v -= p[j] * out[k - j];
        out[k] = v;
    }
    return out;
}

namespace {

// F = 4f + h^2 as a degree-6 integer polynomial (zero padded).
std::array<int64_t, 7> discriminant_poly(const Curve& c) {
    std::array<int64_t, 7> F{};
    for (std::size_t i = 0; i < c.f.size(); ++i) F[i] += 4 * c.f[i];
    for (std::size_t i = 0; i < c.h.size(); ++i)
        for (std::size_t j = 0; j < c.h.size(); ++j) F[i + j] += c.h[i] * c.h[j];
    return F;
}

int64_t coeff(const Poly& p, std::size_t i) { return i < p.size() ? p[i] : 0; }

// chi(v) for v in [0, p), reused between calls on one thread.
const std::vector<int8_t>& char_table(uint64_t p) {
    thread_local std::vector<int8_t> chi;
    thread_local uint64_t cached = 0;
    if (cached == p) return chi;
    chi.assign(p, -1);
    chi[0] = 0;
    uint64_t sq = 0;
    for (uint64_t i = 1; i <= p / 2; ++i) {
        sq += 2 * i - 1;  // i^2 = (i-1)^2 + 2i - 1
        if (sq >= p) sq -= p;
        chi[sq] = 1;
    }
    cached = p;
    return chi;
}

int legendre(uint64_t v, uint64_t p) { return char_table(p)[v % p]; }

int64_t eval_mod(const std::array<int64_t, 7>& F, int64_t x, int64_t p) {
    int64_t v = 0;
    for (int i = 6; i >= 0; --i) v = mod(v * mod(x, p) + mod(F[static_cast<std::size_t>(i)], p), p);
    return v;
}

// sum_{x in F_p} chi(F(x)) for a polynomial of degree <= 6, by forward
// differences. The range is split into kLanes blocks advanced together so
// the difference updates vectorize.
int64_t char_sum_fp(const std::array<int64_t, 7>& F, uint64_t p) {
    constexpr int kLanes = 8;
    const auto pp = static_cast<int64_t>(p);
    if (pp < 64) {
        int64_t sum = 0;
        for (int64_t x = 0; x < pp; ++x) sum += legendre(static_cast<uint64_t>(eval_mod(F, x, pp)), p);
        return sum;
    }
    const auto p32 = static_cast<uint32_t>(p);
    const int64_t block = (pp + kLanes - 1) / kLanes;
    alignas(64) uint32_t d[7][kLanes];
    for (int j = 0; j < kLanes; ++j) {
        int64_t v[7];
        for (int x = 0; x < 7; ++x) v[x] = eval_mod(F, j * block + x, pp);
        for (int k = 1; k < 7; ++k)
            for (int x = 6; x >= k; --x) v[x] = mod(v[x] - v[x - 1], pp);
        for (int k = 0; k < 7; ++k) d[k][j] = static_cast<uint32_t>(v[k]);
    }
    const int8_t* chi = char_table(p).data();
    int32_t acc[kLanes] = {};
    auto advance = [&] {
        for (int j = 0; j < kLanes; ++j)
            for (int k = 0; k < 6; ++k) {
                const uint32_t t = d[k][j] + d[k + 1][j];
                d[k][j] = t >= p32 ? t - p32 : t;
            }
    };
    // Lanes 0..kLanes-2 cover `block` values each, the last lane the rest.
    const int64_t last = pp - (kLanes - 1) * block;
    for (int64_t s = 0; s < last; ++s) {
        for (int j = 0; j < kLanes; ++j) acc[j] += chi[d[0][j]];
        advance();
    }
    for (int64_t s = last; s < block; ++s) {
        for (int j = 0; j < kLanes - 1; ++j) acc[j] += chi[d[0][j]];
        advance();
    }
    int64_t total = 0;
    for (int j = 0; j < kLanes; ++j) total += acc[j];
    return total;
}

// sum_{z in F_{p^2}} chi(F(z)), F_{p^2} = F_p[t]/(t^2 - n).
int64_t char_sum_fp2(const std::array<int64_t, 7>& F, uint64_t p) {
    uint64_t n = 2;
    while (legendre(n, p) != -1) ++n;
    std::array<uint64_t, 7> c{};
    for (std::size_t i = 0; i < 7; ++i) c[i] = static_cast<uint64_t>(mod(F[i], static_cast<int64_t>(p)));
    int64_t sum = 0;
    for (uint64_t a = 0; a < p; ++a)
        for (uint64_t b = 0; b < p; ++b) {
            uint64_t re = c[6], im = 0;
            for (int i = 5; i >= 0; --i) {
                const uint64_t nr = (re * a + n * (im * b % p) + c[static_cast<std::size_t>(i)]) % p;
                const uint64_t ni = (re * b + im * a) % p;
                re = nr;
                im = ni;
            }
            const uint64_t norm = (re * re + p * p - n * (im * im % p)) % p;
            sum += legendre(norm, p);
        }
    return sum;
}

// Exhaustive count for p = 2 over F_2 (r = 1) or F_4 (r = 2). F_4 elements
// are 2-bit vectors u + v w with w^2 = w + 1.
int64_t count_char2(const Curve& c, int r) {
    const int q = r == 1 ? 2 : 4;
    auto mul = [](int x, int y) {
        const int a0 = x & 1, a1 = x >> 1, b0 = y & 1, b1 = y >> 1;
        const int hi = a1 & b1;
        return ((a0 & b0) ^ hi) | (((a0 & b1) ^ (a1 & b0) ^ hi) << 1);
    };
    auto eval = [&](const Poly& poly, int x) {
        int v = 0;
        for (std::size_t i = poly.size(); i-- > 0;) v = mul(v, x) ^ static_cast<int>(mod(poly[i], 2));
        return v;
    };
    int64_t count = 0;
    for (int x = 0; x < q; ++x) {
        const int hx = eval(c.h, x), fx = eval(c.f, x);
        for (int y = 0; y < q; ++y)
            if ((mul(y, y) ^ mul(hx, y) ^ fx) == 0) ++count;
    }
    const int h3 = static_cast<int>(mod(coeff(c.h, 3), 2));
    const int f6 = static_cast<int>(mod(coeff(c.f, 6), 2));
    for (int v = 0; v < q; ++v)
        if ((mul(v, v) ^ mul(h3, v) ^ f6) == 0) ++count;
    return count;
}

std::map<std::string, std::string> parse_fields(const std::string& line, const std::string& head) {
    std::istringstream in(line);
    std::string tok;
    in >> tok;
    if (tok != head) throw std::invalid_argument("expected '" + head + "' line");
    std::map<std::string, std::string> kv;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad field '" + tok + "'");
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return kv;
}

Poly parse_poly(const std::string& s) {
    Poly out;
    std::istringstream in(s);
    for (std::string item; std::getline(in, item, ',');) out.push_back(std::stoll(item));
    if (out.empty()) throw std::invalid_argument("empty polynomial");
    return out;
}

std::string format_poly(const Poly& p) {
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) out += (i ? "," : "") + std::to_string(p[i]);
    return out;
}

}  // namespace

const std::vector<Curve>& builtin_curves() {
    static const std::vector<Curve> curves = {
        {"F249", 249, {0, 1, 1}, {1, 0, 0, 1}, 14},
        {"F277", 277, {0, -1, 2, -2, 0, 1}, {1}, 15},
        {"F295", 295, {0, 0, 0, -1, -1}, {1, 0, 0, 1}, 14},
        {"F587-", 587, {0, 0, -1, -1}, {1, 1, 0, 1}, 1},
        {"F713+", 713, {0, 0, 0, 0, -1}, {1, 1, 0, 1}, 9},
        {"F713-", 713, {0, 0, 0, -1, 0, 1}, {1, 1, 0, 1}, 1},
    };
    return curves;
}

const Curve& builtin_curve(const std::string& label) {
    const std::string key = (!label.empty() && label[0] != 'F') ? "F" + label : label;
    for (const Curve& c : builtin_curves())
        if (c.label == key) return c;
    throw std::invalid_argument("unknown curve label '" + label + "'");
}

Curve parse_curve(const std::string& line) {
    const auto kv = parse_fields(line, "CURVE");
    Curve c;
    c.label = kv.count("label") ? kv.at("label") : "";
    if (!kv.count("conductor") || !kv.count("f") || !kv.count("h"))
        throw std::invalid_argument("CURVE line needs conductor=, f= and h=");
    c.conductor = std::stoll(kv.at("conductor"));
    c.f = parse_poly(kv.at("f"));
    c.h = parse_poly(kv.at("h"));
    if (kv.count("torsion")) c.torsion = std::stoi(kv.at("torsion"));
    if (c.f.size() > 7 || c.h.size() > 4) throw std::invalid_argument("need deg f <= 6 and deg h <= 3");
    if (c.conductor < 1 || !arith::is_squarefree(static_cast<uint64_t>(c.conductor)))
        throw std::invalid_argument("conductor must be squarefree");
    return c;
}

Curve load_curve_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    for (std::string line; std::getline(in, line);) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        return parse_curve(line);
    }
    throw std::runtime_error(path + ": no CURVE line");
}

std::string format_curve(const Curve& c) {
    return "CURVE label=" + c.label + " conductor=" + std::to_string(c.conductor) + " f=" + format_poly(c.f) +
           " h=" + format_poly(c.h) + " torsion=" + std::to_string(c.torsion);
}

int64_t count_points_model(const Curve& c, uint64_t p, int r) {
    if (r != 1 && r != 2) throw std::invalid_argument("count_points: r must be 1 or 2");
    if (!arith::is_prime(p)) throw std::invalid_argument("count_points: p must be prime");
    if (p == 2) return count_char2(c, r);
    const auto F = discriminant_poly(c);
    const int64_t f6 = mod(F[6], static_cast<int64_t>(p));
    if (r == 1) {
        const int64_t infinity = 1 + legendre(static_cast<uint64_t>(f6), p);
        return static_cast<int64_t>(p) + char_sum_fp(F, p) + infinity;
    }
    const int64_t q = static_cast<int64_t>(p * p);
    const int64_t infinity = f6 == 0 ? 1 : 2;
    return q + char_sum_fp2(F, p) + infinity;
}

int64_t count_points(const Curve& c, uint64_t p, int r) {
    if (c.conductor % static_cast<int64_t>(p) == 0)
        throw std::invalid_argument("count_points: p=" + std::to_string(p) + " is a bad prime");
    return count_points_model(c, p, r);
}

Poly good_euler_factor(const Curve& c, uint64_t p) {
    const int64_t pp = static_cast<int64_t>(p);
    const int64_t s1 = pp + 1 - count_points(c, p, 1);
    const int64_t s2 = pp * pp + 1 - count_points(c, p, 2);
    const int64_t twice = s1 * s1 - s2;
    if (twice % 2 != 0) throw std::logic_error("odd s1^2 - s2 at p=" + std::to_string(p));
    const int64_t e2 = twice / 2;
    return {1, -s1, e2, -pp * s1, pp * pp};
}

Poly linear_euler_factor(const Curve& c, uint64_t p) {
    const int64_t pp = static_cast<int64_t>(p);
    return {1, -(pp + 1 - count_points(c, p, 1))};
}

std::vector<BadFactor> bad_factor_candidates(uint64_t p) {
    std::vector<BadFactor> out;
    const int64_t pp = static_cast<int64_t>(p);
    const auto bound = static_cast<int64_t>(std::floor(2.0 * std::sqrt(static_cast<double>(p))));
    for (int eps : {1, -1})
        for (int64_t a = -bound; a <= bound; ++a) {
            BadFactor b;
            b.a = a;
            b.eps = eps;
            b.local_sign = -eps;
            b.poly = poly_mul({1, -eps}, {1, -a, pp});
            out.push_back(b);
        }
    return out;
}

BadFactor bad_euler_factor(const Curve& c, uint64_t p) {
    const int64_t pp = static_cast<int64_t>(p);
    if (c.conductor % pp != 0) throw std::invalid_argument("bad_euler_factor: p does not divide N");
    if ((c.conductor / pp) % pp == 0) throw std::invalid_argument("bad_euler_factor: p^2 divides N");
    const int64_t s1 = pp + 1 - count_points_model(c, p, 1);
    const int64_t s2 = pp * pp + 1 - count_points_model(c, p, 2);
    const int64_t a2 = s2 + 2 * pp - 1;
    if (a2 < 0 || !arith::is_square(a2))
        throw std::runtime_error("counts at p=" + std::to_string(p) + " do not fit a toric rank one factor");
    const auto r = static_cast<int64_t>(arith::isqrt(static_cast<uint64_t>(a2)));
    std::vector<BadFactor> fits;
    for (int64_t a : {r, -r}) {
        const int64_t eps = s1 - a;
        if (eps != 1 && eps != -1) continue;
        if (!fits.empty() && fits.back().a == a) continue;
        BadFactor b;
        b.a = a;
        b.eps = static_cast<int>(eps);
        b.local_sign = -b.eps;
        b.poly = poly_mul({1, -eps}, {1, -a, pp});
        fits.push_back(b);
    }
    if (fits.empty())
        throw std::runtime_error("counts at p=" + std::to_string(p) + " do not fit a toric rank one factor");
    fits.front().ambiguous = fits.size() > 1;
    return fits.front();
}

int64_t elliptic_ap(const EllipticCurve& e, uint64_t p) {
    const int64_t pp = static_cast<int64_t>(p);
    if (p == 2) {
        int64_t count = 1;
        for (int64_t x = 0; x < 2; ++x)
            for (int64_t y = 0; y < 2; ++y) {
                const int64_t lhs = y * y + e.a1 * x * y + e.a3 * y;
                const int64_t rhs = x * x * x + e.a2 * x * x + e.a4 * x + e.a6;
                if (mod(lhs - rhs, 2) == 0) ++count;
            }
        return pp + 1 - count;
    }
    // (2y + a1 x + a3)^2 = 4(x^3 + a2 x^2 + a4 x + a6) + (a1 x + a3)^2.
    int64_t sum = 0;
    for (int64_t x = 0; x < pp; ++x) {
        const int64_t g = mod(4 * (mod(x * x % pp * x + e.a2 * x % pp * x + e.a4 * x + e.a6, pp)) +
                                  mod(e.a1 * x + e.a3, pp) * mod(e.a1 * x + e.a3, pp),
                              pp);
        sum += legendre(static_cast<uint64_t>(g), p);
    }
    return -sum;
}

std::vector<int64_t> elliptic_coefficients(const EllipticCurve& e, uint64_t m) {
    std::vector<int64_t> b(m + 1, 0);
    if (m == 0) return b;
    b[1] = 1;
    std::vector<uint32_t> spf(m + 1, 0);
    for (uint64_t i = 2; i <= m; ++i)
        if (spf[i] == 0)
            for (uint64_t j = i; j <= m; j += i)
                if (spf[j] == 0) spf[j] = static_cast<uint32_t>(i);
    for (uint64_t p : arith::primes_up_to(static_cast<uint32_t>(m))) {
        const int64_t ap = elliptic_ap(e, p);
        const bool bad = e.conductor % static_cast<int64_t>(p) == 0;
        const int64_t pp = static_cast<int64_t>(p);
        int64_t prev = 1, cur = ap;
        for (uint64_t q = p; q <= m; q *= p) {
            b[q] = cur;
            const int64_t next = bad ? ap * cur : ap * cur - pp * prev;
            prev = cur;
            cur = next;
            if (q > m / p) break;
        }
    }
    for (uint64_t n = 2; n <= m; ++n) {
        const uint64_t p = spf[n];
        uint64_t q = p;
        while (n % (q * p) == 0) q *= p;
        if (q != n) b[n] = b[q] * b[n / q];
    }
    return b;
}

int elliptic_root_number(const EllipticCurve& e) {
    int sign = -1;
    for (uint64_t p : arith::prime_divisors(static_cast<uint64_t>(e.conductor))) {
        const int64_t ap = elliptic_ap(e, p);
        if (ap != 1 && ap != -1) throw std::runtime_error("elliptic_root_number: additive reduction");
        sign *= static_cast<int>(-ap);
    }
    return sign;
}

EllipticCurve curve_37a() { return {"37a", 37, 0, 0, 1, -1, 0}; }

}  // namespace paramodular
