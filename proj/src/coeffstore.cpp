#include "paramodular/coeffstore.hpp"

#include <fstream>
#include <numeric>
#include <sstream>
#include <vector>

#include "paramodular/arith.hpp"

namespace paramodular {

using arith::mod;

ParseError::ParseError(const std::string& where, int line_no, const std::string& what)
    : std::runtime_error(where + ":" + std::to_string(line_no) + ": " + what), line(line_no) {}

MissingCoefficient::MissingCoefficient(const QuadForm& t)
    : std::runtime_error("missing Fourier coefficient for " + t.str() + " at level " + std::to_string(t.level)),
      form(t) {}

namespace {

int sign_power(int weight) { return weight % 2 == 0 ? 1 : -1; }

std::string strip_comment(const std::string& line) {
    const auto hash = line.find('#');
    std::string s = hash == std::string::npos ? line : line.substr(0, hash);
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

int64_t parse_int64(const std::string& s) {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad integer '" + s + "'");
    return v;
}

std::map<std::string, std::string> parse_header(const std::vector<std::string>& toks, const std::string& kind,
                                                const std::string& source, int line_no) {
    if (toks.empty() || toks[0] != kind) throw ParseError(source, line_no, "expected header starting with " + kind);
    std::map<std::string, std::string> kv;
    for (std::size_t i = 1; i < toks.size(); ++i) {
        const auto eq = toks[i].find('=');
        if (eq == std::string::npos) throw ParseError(source, line_no, "bad header field '" + toks[i] + "'");
        kv[toks[i].substr(0, eq)] = toks[i].substr(eq + 1);
    }
    return kv;
}

// Splits text into (line number, stripped content) pairs, skipping blanks.
std::vector<std::pair<int, std::string>> content_lines(const std::string& text) {
    std::vector<std::pair<int, std::string>> out;
    std::istringstream in(text);
    int n = 0;
    for (std::string line; std::getline(in, line);) {
        ++n;
        std::string s = strip_comment(line);
        if (!s.empty()) out.emplace_back(n, std::move(s));
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

}  // namespace

JacobiTable::JacobiTable(int64_t index, int weight) : index_(index), weight_(weight) {
    if (index < 1) throw std::invalid_argument("Jacobi index must be positive");
}

void JacobiTable::set(int64_t disc, int64_t rho, const Rational& value) {
    const int64_t m = 2 * index_;
    rho = mod(rho, m);
    if (mod(rho * rho - disc, 4 * index_) != 0)
        throw std::invalid_argument("rho^2 != D mod 4N for D=" + std::to_string(disc) + " rho=" + std::to_string(rho));
    const std::pair<int64_t, int64_t> keys[2] = {{disc, rho}, {disc, mod(-rho, m)}};
    const Rational vals[2] = {value, value * sign_power(weight_)};
    for (int i = 0; i < 2; ++i) {
        auto it = values_.find(keys[i]);
        if (it != values_.end() && it->second != vals[i])
            throw InconsistentCoefficient("conflicting Jacobi coefficient at D=" + std::to_string(disc) +
                                          " rho=" + std::to_string(keys[i].second));
    }
    for (int i = 0; i < 2; ++i) values_[keys[i]] = vals[i];
}

void JacobiTable::set_nr(int64_t n, int64_t r, const Rational& value) { set(r * r - 4 * n * index_, r, value); }

std::optional<Rational> JacobiTable::get(int64_t disc, int64_t rho) const {
    auto it = values_.find({disc, mod(rho, 2 * index_)});
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

CoeffTable::CoeffTable(FormMeta meta) : meta_(std::move(meta)) {
    if (meta_.level < 1 || !arith::is_squarefree(static_cast<uint64_t>(meta_.level)))
        throw std::invalid_argument("coefficient table level must be squarefree");
}

CoeffTable CoeffTable::gritsenko(std::shared_ptr<const JacobiTable> jacobi, std::string label) {
    FormMeta meta;
    meta.level = jacobi->index();
    meta.weight = jacobi->weight();
    meta.label = std::move(label);
    CoeffTable t(meta);
    for (const auto& [key, v] : jacobi->values()) t.max_disc_ = std::max(t.max_disc_, -key.first);
    t.jacobi_ = std::move(jacobi);
    return t;
}

QuadForm mirror(const QuadForm& t) { return QuadForm{t.level, t.a, -t.b, t.c}; }

void CoeffTable::insert(const QuadForm& t, const Rational& value) {
    if (jacobi_) throw std::logic_error("cannot insert into a lift table");
    if (t.level != meta_.level) throw std::invalid_argument("level mismatch for " + t.str());
    const QuadForm key = canonical(t);
    const QuadForm mkey = canonical(mirror(t));
    const Rational mvalue = value * sign_power(meta_.weight);
    if (key == mkey && mvalue != value)
        throw InconsistentCoefficient("class of " + t.str() + " is mirror-symmetric but coefficient is nonzero in odd weight");
    if (auto it = entries_.find(key); it != entries_.end() && it->second != value)
        throw InconsistentCoefficient("conflicting coefficients for the class of " + t.str());
    if (auto it = entries_.find(mkey); it != entries_.end() && it->second != mvalue)
        throw InconsistentCoefficient("coefficient of " + t.str() + " violates the (-1)^k mirror rule");
    if (entries_.count(mkey) && !entries_.count(key)) return;  // mirrored entry already determines it
    entries_[key] = value;
    max_disc_ = std::max(max_disc_, -t.disc());
}

std::optional<Rational> CoeffTable::find(const QuadForm& t) const {
    if (t.level != meta_.level) throw std::invalid_argument("level mismatch for " + t.str());
    if (!t.positive_definite()) throw std::invalid_argument("coefficient query needs a positive definite form");
    if (jacobi_) {
        const int64_t d = t.disc();
        if (!arith::is_fundamental(d)) return std::nullopt;
        if (std::gcd(std::gcd(t.first(), t.b), t.c) != 1) return std::nullopt;
        return jacobi_->get(d, t.b);
    }
    const QuadForm key = canonical(t);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    const QuadForm mkey = canonical(mirror(t));
    if (auto it = entries_.find(mkey); it != entries_.end()) return it->second * sign_power(meta_.weight);
    return std::nullopt;
}

Rational CoeffTable::coefficient(const QuadForm& t) const {
    auto v = find(t);
    if (!v) throw MissingCoefficient(t);
    return *v;
}

CoeffTable parse_coeff_text(const std::string& text, const std::string& source) {
    const auto lines = content_lines(text);
    if (lines.empty()) throw ParseError(source, 1, "missing PARAMODULAR header");
    const auto& [hline, htext] = lines.front();
    const auto kv = parse_header(split_ws(htext), "PARAMODULAR", source, hline);
    FormMeta meta;
    try {
        if (!kv.count("level") || !kv.count("weight")) throw std::invalid_argument("header needs level= and weight=");
        meta.level = parse_int64(kv.at("level"));
        meta.weight = static_cast<int>(parse_int64(kv.at("weight")));
        if (kv.count("label")) meta.label = kv.at("label");
        if (kv.count("AL") && !kv.at("AL").empty()) {
            std::istringstream in(kv.at("AL"));
            for (std::string item; std::getline(in, item, ',');) {
                const auto colon = item.find(':');
                if (colon == std::string::npos) throw std::invalid_argument("bad AL entry '" + item + "'");
                const int64_t p = parse_int64(item.substr(0, colon));
                const int64_t s = parse_int64(item.substr(colon + 1));
                if (s != 1 && s != -1) throw std::invalid_argument("AL sign must be +-1");
                meta.atkin_lehner_signs[p] = static_cast<int>(s);
            }
        }
        if (meta.weight < 2) throw std::invalid_argument("weight must be at least 2");
        for (uint64_t p : arith::prime_divisors(static_cast<uint64_t>(meta.level)))
            if (!meta.atkin_lehner_signs.count(static_cast<int64_t>(p)))
                throw std::invalid_argument("missing AL sign for p=" + std::to_string(p));
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(source, hline, e.what());
    }
    CoeffTable table(meta);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& [n, s] = lines[i];
        const auto toks = split_ws(s);
        if (toks.size() != 4) throw ParseError(source, n, "expected '<a> <b> <c> <value>'");
        try {
            const QuadForm t{meta.level, parse_int64(toks[0]), parse_int64(toks[1]), parse_int64(toks[2])};
            if (!t.positive_definite()) throw std::invalid_argument("form " + t.str() + " is not positive definite");
            table.insert(t, parse_rational(toks[3]));
        } catch (const InconsistentCoefficient& e) {
            throw InconsistentCoefficient(source + ":" + std::to_string(n) + ": " + e.what());
        } catch (const std::exception& e) {
            throw ParseError(source, n, e.what());
        }
    }
    return table;
}

CoeffTable load_coeff_file(const std::string& path) { return parse_coeff_text(read_file(path), path); }

std::string format_coeff_table(const CoeffTable& table) {
    if (table.is_lift()) throw std::logic_error("lift tables are stored as Jacobi files");
    std::ostringstream out;
    const FormMeta& m = table.meta();
    out << "PARAMODULAR level=" << m.level << " weight=" << m.weight << " AL=";
    bool first = true;
    for (const auto& [p, s] : m.atkin_lehner_signs) {
        out << (first ? "" : ",") << p << ":" << s;
        first = false;
    }
    if (!m.label.empty()) out << " label=" << m.label;
    out << "\n";
    for (const auto& [t, v] : table.entries()) out << t.a << " " << t.b << " " << t.c << " " << to_string(v) << "\n";
    return out.str();
}

void save_coeff_file(const CoeffTable& table, const std::string& path) { write_file(path, format_coeff_table(table)); }

JacobiTable parse_jacobi_text(const std::string& text, const std::string& source) {
    const auto lines = content_lines(text);
    if (lines.empty()) throw ParseError(source, 1, "missing JACOBI header");
    const auto& [hline, htext] = lines.front();
    const auto kv = parse_header(split_ws(htext), "JACOBI", source, hline);
    int64_t index = 0;
    int weight = 0;
    try {
        index = parse_int64(kv.at("index"));
        weight = static_cast<int>(parse_int64(kv.at("weight")));
    } catch (const std::exception&) {
        throw ParseError(source, hline, "header needs integer index= and weight=");
    }
    JacobiTable table(index, weight);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& [n, s] = lines[i];
        const auto toks = split_ws(s);
        if (toks.size() != 3) throw ParseError(source, n, "expected '<n> <r> <value>'");
        try {
            table.set_nr(parse_int64(toks[0]), parse_int64(toks[1]), parse_rational(toks[2]));
        } catch (const InconsistentCoefficient& e) {
            throw InconsistentCoefficient(source + ":" + std::to_string(n) + ": " + e.what());
        } catch (const std::exception& e) {
            throw ParseError(source, n, e.what());
        }
    }
    return table;
}

JacobiTable load_jacobi_file(const std::string& path) { return parse_jacobi_text(read_file(path), path); }

std::string format_jacobi_table(const JacobiTable& table) {
    std::ostringstream out;
    out << "JACOBI index=" << table.index() << " weight=" << table.weight() << "\n";
    for (const auto& [key, v] : table.values()) {
        const auto [d, rho] = key;
        const int64_t n = (rho * rho - d) / (4 * table.index());
        out << n << " " << rho << " " << to_string(v) << "\n";
    }
    return out.str();
}

void save_jacobi_file(const JacobiTable& table, const std::string& path) {
    write_file(path, format_jacobi_table(table));
}

}  // namespace paramodular
