#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "forestsos/edge_set.hpp"

namespace forestsos {

using Integer = mpz_class;
using Rational = mpq_class;

/// Product of edge variables, e.g. y_f^2*y_g. Powers are sorted by name and
/// never zero.
struct Monomial {
    std::vector<std::pair<EdgeId, unsigned>> powers;

    static Monomial of(const EdgeSet& edges);
    unsigned degree() const;
    std::string to_string() const;
    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Sparse multivariate polynomial over the integers in the edge variables.
///
/// Terms are kept in canonical order: lexicographic on exponent vectors with
/// variables ranked by name, largest first. Zero coefficients and unused
/// variables are never stored, so `==` is structural equality.
///
/// At most kMaxVariables distinct variables per polynomial and per-variable
/// exponents up to 255.
class Polynomial {
public:
    static constexpr std::size_t kMaxVariables = 64;

    Polynomial() = default;
    static Polynomial constant(const Integer& c);
    static Polynomial variable(const EdgeId& name);
    static Polynomial monomial(const Monomial& m, const Integer& coeff = 1);
    /// y^X for an edge set X.
    static Polynomial of_set(const EdgeSet& edges);
    static Polynomial from_terms(const std::vector<std::pair<Monomial, Integer>>& terms);
    /// One merge for many summands.
    static Polynomial sum(const std::vector<Polynomial>& parts);

    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t term_count() const noexcept { return terms_.size(); }
    const std::vector<EdgeId>& variables() const noexcept { return vars_; }
    bool has_variable(const EdgeId& name) const;
    unsigned degree_in(const EdgeId& name) const;
    unsigned total_degree() const;
    Integer coefficient(const Monomial& m) const;
    /// Terms in canonical order.
    std::vector<std::pair<Monomial, Integer>> terms() const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Polynomial& other);
    Polynomial& operator*=(const Integer& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Integer& c) { return a *= c; }
    friend Polynomial operator*(const Integer& c, Polynomial a) { return a *= c; }
    friend bool operator==(const Polynomial&, const Polynomial&);

    /// Canonical text, e.g. `y_f^2*y_g - 2*y_f + 1`; zero prints as `0`.
    std::string to_string() const;
    /// Accepts the canonical text and any reordering of it.
    static Polynomial parse(std::string_view text);

    // Low-level access used by the operator layer.
    Polynomial coefficient_of_power(const EdgeId& name, unsigned k) const;
    Polynomial derivative(const EdgeId& name) const;

private:
    using Key = std::array<std::uint64_t, kMaxVariables / 8>;
    struct Term {
        Key key{};
        Integer coeff;
    };

    static unsigned exponent(const Key& key, std::size_t var);
    static void set_exponent(Key& key, std::size_t var, unsigned e);
    Key remapped(const Key& key, const std::vector<std::size_t>& target) const;
    void adopt_variables(const std::vector<EdgeId>& merged);
    unsigned max_exponent() const;
    void canonicalize();
    void prune_variables();
    int var_index(const EdgeId& name) const;

    std::vector<EdgeId> vars_;
    std::vector<Term> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

Polynomial pow(const Polynomial& base, unsigned exponent);

/// Coefficient of y_g^k, as a polynomial without y_g.
Polynomial coeff_extract(const Polynomial& p, const EdgeId& g, unsigned k);
/// d p / d y_e.
Polynomial partial(const Polynomial& p, const EdgeId& e);
/// p at y_e = 0.
Polynomial delete_var(const Polynomial& p, const EdgeId& e);

/// den^d * p(y_g = num/den). Throws InvalidArgument when d < deg_g(p) or
/// den is zero.
Polynomial substitute_rational(const Polynomial& p, const EdgeId& g, const Polynomial& num,
                               const Polynomial& den, unsigned d);

/// Assignment of strictly positive rationals to edge variables.
class RationalPoint {
public:
    RationalPoint() = default;
    /// Every variable of `p` set to one.
    static RationalPoint ones(const std::vector<EdgeId>& names);

    /// Throws InvalidArgument unless value > 0.
    void set(const EdgeId& name, const Rational& value);
    bool contains(const EdgeId& name) const { return values_.count(name) != 0; }
    const Rational& at(const EdgeId& name) const;
    const std::map<EdgeId, Rational>& values() const noexcept { return values_; }
    std::string to_string() const;

private:
    std::map<EdgeId, Rational> values_;
};

/// Exact value; throws InvalidArgument when a variable is unassigned.
Rational evaluate(const Polynomial& p, const RationalPoint& point);

std::size_t negative_term_count(const Polynomial& p);

}  // namespace forestsos
