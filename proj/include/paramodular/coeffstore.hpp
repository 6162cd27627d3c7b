#pragma once

// Fourier coefficient tables a(T;F) keyed by Gamma_0(N)-classes, Jacobi
// coefficient tables c_rho(D), and the text formats they are stored in.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "paramodular/quadforms.hpp"
#include "paramodular/rational.hpp"

namespace paramodular {

struct ParseError : std::runtime_error {
    ParseError(const std::string& where, int line, const std::string& what);
    int line;
};

struct MissingCoefficient : std::runtime_error {
    explicit MissingCoefficient(const QuadForm& t);
    QuadForm form;
};

struct InconsistentCoefficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FormMeta {
    int64_t level = 1;
    int weight = 2;
    std::map<int64_t, int> atkin_lehner_signs;
    std::string label;
};

/// c_rho(D) for a Jacobi form of index N; c(n, r) depends only on
/// D = r^2 - 4nN and r mod 2N.
class JacobiTable {
public:
    JacobiTable(int64_t index, int weight);

    int64_t index() const { return index_; }
    int weight() const { return weight_; }

    /// Sets c_rho(D) and c_{-rho}(D) = (-1)^k c_rho(D). Throws
    /// InconsistentCoefficient on a conflicting value.
    void set(int64_t disc, int64_t rho, const Rational& value);
    void set_nr(int64_t n, int64_t r, const Rational& value);
    std::optional<Rational> get(int64_t disc, int64_t rho) const;

    const std::map<std::pair<int64_t, int64_t>, Rational>& values() const { return values_; }

private:
    int64_t index_;
    int weight_;
    std::map<std::pair<int64_t, int64_t>, Rational> values_;
};

class CoeffTable {
public:
    explicit CoeffTable(FormMeta meta);

    /// Gritsenko lift of a Jacobi table: a(T) = c_b(disc T) on primitive T of
    /// fundamental discriminant; every other query is missing.
    static CoeffTable gritsenko(std::shared_ptr<const JacobiTable> jacobi, std::string label = "lift");

    const FormMeta& meta() const { return meta_; }
    int64_t level() const { return meta_.level; }
    int weight() const { return meta_.weight; }

    /// Stores a(t) under the canonical class representative. Throws
    /// InconsistentCoefficient if an equivalent (or mirrored) entry disagrees.
    void insert(const QuadForm& t, const Rational& value);

    std::optional<Rational> find(const QuadForm& t) const;
    /// Throws MissingCoefficient when the class is not covered.
    Rational coefficient(const QuadForm& t) const;

    std::size_t size() const { return entries_.size(); }
    int64_t max_disc() const { return max_disc_; }
    const std::map<QuadForm, Rational>& entries() const { return entries_; }
    bool is_lift() const { return jacobi_ != nullptr; }

private:
    FormMeta meta_;
    std::map<QuadForm, Rational> entries_;
    int64_t max_disc_ = 0;
    std::shared_ptr<const JacobiTable> jacobi_;
};

/// [Na, -b, c], the image of T under diag(1, -1).
QuadForm mirror(const QuadForm& t);

CoeffTable parse_coeff_text(const std::string& text, const std::string& source = "<string>");
CoeffTable load_coeff_file(const std::string& path);
std::string format_coeff_table(const CoeffTable& table);
void save_coeff_file(const CoeffTable& table, const std::string& path);

JacobiTable parse_jacobi_text(const std::string& text, const std::string& source = "<string>");
JacobiTable load_jacobi_file(const std::string& path);
std::string format_jacobi_table(const JacobiTable& table);
void save_jacobi_file(const JacobiTable& table, const std::string& path);

}  // namespace paramodular
