#include "forestsos/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>
#include <bit>
#include <unordered_map>

#include "forestsos/error.hpp"

namespace forestsos {

// ---- Monomial ----

Monomial Monomial::of(const EdgeSet& edges) {
    Monomial m;
    for (const auto& name : edges) m.powers.emplace_back(name, 1u);
    return m;
}

unsigned Monomial::degree() const {
    unsigned d = 0;
    for (const auto& [name, e] : powers) d += e;
    return d;
}

std::string Monomial::to_string() const {
    if (powers.empty()) return "1";
    std::string out;
    for (const auto& [name, e] : powers) {
        if (!out.empty()) out += '*';
        out += "y_" + name;
        if (e != 1) out += '^' + std::to_string(e);
    }
    return out;
}

// ---- key helpers ----

unsigned Polynomial::exponent(const Key& key, std::size_t var) {
    return static_cast<unsigned>(key[var / 8] >> ((7 - var % 8) * 8) & 0xff);
}

void Polynomial::set_exponent(Key& key, std::size_t var, unsigned e) {
    const unsigned shift = (7 - var % 8) * 8;
    key[var / 8] &= ~(std::uint64_t{0xff} << shift);
    key[var / 8] |= std::uint64_t{e} << shift;
}

Polynomial::Key Polynomial::remapped(const Key& key, const std::vector<std::size_t>& target) const {
    Key out{};
    for (std::size_t i = 0; i < vars_.size(); ++i) set_exponent(out, target[i], exponent(key, i));
    return out;
}

int Polynomial::var_index(const EdgeId& name) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), name);
    if (it == vars_.end() || *it != name) return -1;
    return static_cast<int>(it - vars_.begin());
}

void Polynomial::adopt_variables(const std::vector<EdgeId>& merged) {
    if (merged == vars_) return;
    if (merged.size() > Polynomial::kMaxVariables)
        throw InvalidArgument("polynomial would exceed " + std::to_string(kMaxVariables) + " variables");
    std::vector<std::size_t> target(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i)
        target[i] = static_cast<std::size_t>(std::lower_bound(merged.begin(), merged.end(), vars_[i]) -
                                             merged.begin());
    // A monotone relabelling keeps lexicographic order intact.
    for (auto& t : terms_) t.key = remapped(t.key, target);
    vars_ = merged;
}

unsigned Polynomial::max_exponent() const {
    unsigned m = 0;
    for (const auto& t : terms_)
        for (std::size_t i = 0; i < vars_.size(); ++i) m = std::max(m, exponent(t.key, i));
    return m;
}

void Polynomial::canonicalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.key > b.key; });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().key == t.key)
            merged.back().coeff += t.coeff;
        else
            merged.push_back(std::move(t));
    }
    std::erase_if(merged, [](const Term& t) { return sgn(t.coeff) == 0; });
    terms_ = std::move(merged);
    prune_variables();
}

void Polynomial::prune_variables() {
    Key used{};
    for (const auto& t : terms_)
        for (std::size_t w = 0; w < used.size(); ++w) used[w] |= t.key[w];
    std::vector<EdgeId> kept;
    std::vector<std::size_t> target(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        target[i] = kept.size();
        if (exponent(used, i) != 0) kept.push_back(vars_[i]);
    }
    if (kept.size() == vars_.size()) return;
    for (auto& t : terms_) {
        Key out{};
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (auto e = exponent(t.key, i)) set_exponent(out, target[i], e);
        t.key = out;
    }
    vars_ = std::move(kept);
}

// ---- construction ----

Polynomial Polynomial::constant(const Integer& c) {
    Polynomial p;
    if (sgn(c) != 0) p.terms_.push_back({Key{}, c});
    return p;
}

Polynomial Polynomial::variable(const EdgeId& name) {
    return monomial(Monomial{{{name, 1u}}});
}

Polynomial Polynomial::monomial(const Monomial& m, const Integer& coeff) {
    return from_terms({{m, coeff}});
}

Polynomial Polynomial::of_set(const EdgeSet& edges) { return monomial(Monomial::of(edges)); }

Polynomial Polynomial::from_terms(const std::vector<std::pair<Monomial, Integer>>& terms) {
    Polynomial p;
    std::vector<EdgeId> names;
    for (const auto& [m, c] : terms)
        for (const auto& [name, e] : m.powers) names.push_back(name);
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    if (names.size() > kMaxVariables)
        throw InvalidArgument("polynomial would exceed " + std::to_string(kMaxVariables) + " variables");
    p.vars_ = std::move(names);
    p.terms_.reserve(terms.size());
    for (const auto& [m, c] : terms) {
        Term t{Key{}, c};
        for (const auto& [name, e] : m.powers) {
            if (e > 255) throw InvalidArgument("exponent above 255 for y_" + name);
            auto i = static_cast<std::size_t>(p.var_index(name));
            unsigned total = exponent(t.key, i) + e;
            if (total > 255) throw InvalidArgument("exponent above 255 for y_" + name);
            set_exponent(t.key, i, total);
        }
        p.terms_.push_back(std::move(t));
    }
    p.canonicalize();
    return p;
}

// ---- queries ----

bool Polynomial::has_variable(const EdgeId& name) const { return var_index(name) >= 0; }

unsigned Polynomial::degree_in(const EdgeId& name) const {
    int i = var_index(name);
    if (i < 0) return 0;
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, exponent(t.key, static_cast<std::size_t>(i)));
    return d;
}

unsigned Polynomial::total_degree() const {
    unsigned d = 0;
    for (const auto& t : terms_) {
        unsigned s = 0;
        for (std::size_t i = 0; i < vars_.size(); ++i) s += exponent(t.key, i);
        d = std::max(d, s);
    }
    return d;
}

Integer Polynomial::coefficient(const Monomial& m) const {
    Key key{};
    for (const auto& [name, e] : m.powers) {
        int i = var_index(name);
        if (i < 0 || e == 0 || e > 255) return 0;
        set_exponent(key, static_cast<std::size_t>(i), e);
    }
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                               [](const Term& t, const Key& k) { return t.key > k; });
    if (it == terms_.end() || it->key != key) return 0;
    return it->coeff;
}

std::vector<std::pair<Monomial, Integer>> Polynomial::terms() const {
    std::vector<std::pair<Monomial, Integer>> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Monomial m;
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (auto e = exponent(t.key, i)) m.powers.emplace_back(vars_[i], e);
        out.emplace_back(std::move(m), t.coeff);
    }
    return out;
}

// ---- arithmetic ----

Polynomial Polynomial::operator-() const {
    Polynomial p = *this;
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    if (other.is_zero()) return *this;
    std::vector<EdgeId> merged;
    std::set_union(vars_.begin(), vars_.end(), other.vars_.begin(), other.vars_.end(),
                   std::back_inserter(merged));
    Polynomial rhs = other;
    rhs.adopt_variables(merged);
    adopt_variables(merged);

    std::vector<Term> out;
    out.reserve(terms_.size() + rhs.terms_.size());
    auto a = terms_.begin();
    auto b = rhs.terms_.begin();
    while (a != terms_.end() || b != rhs.terms_.end()) {
        if (b == rhs.terms_.end() || (a != terms_.end() && a->key > b->key)) {
            out.push_back(std::move(*a++));
        } else if (a == terms_.end() || b->key > a->key) {
            out.push_back(std::move(*b++));
        } else {
            Integer c = a->coeff + b->coeff;
            if (sgn(c) != 0) out.push_back({a->key, std::move(c)});
            ++a;
            ++b;
        }
    }
    terms_ = std::move(out);
    prune_variables();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) { return *this += -other; }

Polynomial& Polynomial::operator*=(const Polynomial& other) {
    *this = *this * other;
    return *this;
}

Polynomial& Polynomial::operator*=(const Integer& c) {
    if (sgn(c) == 0) {
        *this = Polynomial{};
        return *this;
    }
    for (auto& t : terms_) t.coeff *= c;
    return *this;
}

Polynomial Polynomial::sum(const std::vector<Polynomial>& parts) {
    std::vector<EdgeId> merged;
    for (const auto& p : parts) {
        std::vector<EdgeId> next;
        std::set_union(merged.begin(), merged.end(), p.vars_.begin(), p.vars_.end(), std::back_inserter(next));
        merged = std::move(next);
    }
    if (merged.size() > kMaxVariables)
        throw InvalidArgument("polynomial would exceed " + std::to_string(kMaxVariables) + " variables");
    Polynomial out;
    std::size_t n = 0;
    for (const auto& p : parts) n += p.terms_.size();
    out.terms_.reserve(n);
    for (const auto& p : parts) {
        if (p.vars_ == merged) {
            out.terms_.insert(out.terms_.end(), p.terms_.begin(), p.terms_.end());
            continue;
        }
        std::vector<std::size_t> target(p.vars_.size());
        for (std::size_t i = 0; i < p.vars_.size(); ++i)
            target[i] = static_cast<std::size_t>(std::lower_bound(merged.begin(), merged.end(), p.vars_[i]) -
                                                 merged.begin());
        for (const auto& t : p.terms_) out.terms_.push_back(Term{p.remapped(t.key, target), t.coeff});
    }
    out.vars_ = std::move(merged);
    out.canonicalize();
    return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.max_exponent() + b.max_exponent() > 255)
        throw InvalidArgument("product exponent would exceed 255");
    std::vector<EdgeId> merged;
    std::set_union(a.vars_.begin(), a.vars_.end(), b.vars_.begin(), b.vars_.end(),
                   std::back_inserter(merged));
    if (merged.size() > Polynomial::kMaxVariables)
        throw InvalidArgument("polynomial would exceed " + std::to_string(Polynomial::kMaxVariables) + " variables");
    auto keys = [&merged](const Polynomial& p) {
        std::vector<Polynomial::Key> out;
        out.reserve(p.terms_.size());
        if (p.vars_ == merged) {
            for (const auto& t : p.terms_) out.push_back(t.key);
            return out;
        }
        std::vector<std::size_t> target(p.vars_.size());
        for (std::size_t i = 0; i < p.vars_.size(); ++i)
            target[i] = static_cast<std::size_t>(std::lower_bound(merged.begin(), merged.end(), p.vars_[i]) -
                                                 merged.begin());
        for (const auto& t : p.terms_) out.push_back(p.remapped(t.key, target));
        return out;
    };
    const std::vector<Polynomial::Key> ka = keys(a), kb = keys(b);

    const std::size_t words = (merged.size() + 7) / 8;
    Polynomial out;
    out.vars_ = std::move(merged);
    // Exponents stay below 256, so bytes never carry into each other.
    auto add = [words](const Polynomial::Key& x, const Polynomial::Key& y) {
        Polynomial::Key k{};
        for (std::size_t w = 0; w < words; ++w) k[w] = x[w] + y[w];
        return k;
    };

    // Small coefficients: accumulate in 128 bits. Each key collects at most
    // min(|a|, |b|) products, so the bound below rules out overflow.
    auto max_bits = [](const Polynomial& p) {
        std::size_t m = 0;
        for (const auto& t : p.terms_) m = std::max(m, mpz_sizeinbase(t.coeff.get_mpz_t(), 2));
        return m;
    };
    const std::size_t count = std::min(a.terms_.size(), b.terms_.size());
    const std::size_t count_bits = static_cast<std::size_t>(std::bit_width(count));
    const std::size_t bits_a = max_bits(a), bits_b = max_bits(b);
    if (bits_a <= 62 && bits_b <= 62 && bits_a + bits_b + count_bits <= 125) {
        std::vector<long> cb;
        cb.reserve(b.terms_.size());
        for (const auto& t : b.terms_) cb.push_back(t.coeff.get_si());
        std::vector<std::pair<Polynomial::Key, __int128>> prods;
        prods.reserve(a.terms_.size() * b.terms_.size());
        for (std::size_t i = 0; i < ka.size(); ++i) {
            const __int128 cx = a.terms_[i].coeff.get_si();
            for (std::size_t j = 0; j < kb.size(); ++j) prods.emplace_back(add(ka[i], kb[j]), cx * cb[j]);
        }
        auto greater = [words](const auto& x, const auto& y) {
            for (std::size_t w = 0; w < words; ++w)
                if (x.first[w] != y.first[w]) return x.first[w] > y.first[w];
            return false;
        };
        std::sort(prods.begin(), prods.end(), greater);
        for (std::size_t i = 0; i < prods.size();) {
            std::size_t j = i;
            __int128 v = 0;
            for (; j < prods.size() && !greater(prods[i], prods[j]); ++j) v += prods[j].second;
            if (v != 0) {
                const bool neg = v < 0;
                const unsigned __int128 mag =
                    neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
                const std::uint64_t limbs[2] = {static_cast<std::uint64_t>(mag),
                                                static_cast<std::uint64_t>(mag >> 64)};
                Integer c;
                mpz_import(c.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, limbs);
                if (neg) c = -c;
                out.terms_.push_back(Polynomial::Term{prods[i].first, std::move(c)});
            }
            i = j;
        }
        out.prune_variables();
        return out;
    }

    auto hash = [words](const Polynomial::Key& k) {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (std::size_t w = 0; w < words; ++w) h = (h ^ k[w]) * 0x100000001b3ull + (h >> 29);
        return static_cast<std::size_t>(h);
    };
    std::unordered_map<Polynomial::Key, Integer, decltype(hash)> acc(a.terms_.size() + b.terms_.size(), hash);
    for (std::size_t i = 0; i < ka.size(); ++i)
        for (std::size_t j = 0; j < kb.size(); ++j)
            mpz_addmul(acc[add(ka[i], kb[j])].get_mpz_t(), a.terms_[i].coeff.get_mpz_t(),
                       b.terms_[j].coeff.get_mpz_t());
    out.terms_.reserve(acc.size());
    for (auto& [k, c] : acc) out.terms_.push_back(Polynomial::Term{k, std::move(c)});
    out.canonicalize();
    return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.vars_ != b.vars_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].key != b.terms_[i].key || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
}

Polynomial pow(const Polynomial& base, unsigned exponent) {
    Polynomial result = Polynomial::constant(1);
    Polynomial square = base;
    while (exponent) {
        if (exponent & 1) result *= square;
        exponent >>= 1;
        if (exponent) square = square * square;
    }
    return result;
}

// ---- variable operations ----

Polynomial Polynomial::coefficient_of_power(const EdgeId& name, unsigned k) const {
    int i = var_index(name);
    if (i < 0) return k == 0 ? *this : Polynomial{};
    Polynomial out;
    out.vars_ = vars_;
    for (const auto& t : terms_) {
        if (exponent(t.key, static_cast<std::size_t>(i)) != k) continue;
        Term copy = t;
        set_exponent(copy.key, static_cast<std::size_t>(i), 0);
        out.terms_.push_back(std::move(copy));
    }
    out.canonicalize();
    return out;
}

Polynomial Polynomial::derivative(const EdgeId& name) const {
    int i = var_index(name);
    if (i < 0) return {};
    Polynomial out;
    out.vars_ = vars_;
    for (const auto& t : terms_) {
        unsigned e = exponent(t.key, static_cast<std::size_t>(i));
        if (e == 0) continue;
        Term copy = t;
        set_exponent(copy.key, static_cast<std::size_t>(i), e - 1);
        copy.coeff *= e;
        out.terms_.push_back(std::move(copy));
    }
    out.canonicalize();
    return out;
}

Polynomial coeff_extract(const Polynomial& p, const EdgeId& g, unsigned k) {
    return p.coefficient_of_power(g, k);
}

Polynomial partial(const Polynomial& p, const EdgeId& e) { return p.derivative(e); }

Polynomial delete_var(const Polynomial& p, const EdgeId& e) { return p.coefficient_of_power(e, 0); }

Polynomial substitute_rational(const Polynomial& p, const EdgeId& g, const Polynomial& num,
                               const Polynomial& den, unsigned d) {
    if (den.is_zero()) throw InvalidArgument("substitution denominator is zero");
    const unsigned deg = p.degree_in(g);
    if (d < deg)
        throw InvalidArgument("degree bound " + std::to_string(d) + " is below deg_" + g + " = " +
                              std::to_string(deg));
    std::vector<Polynomial> num_pow{Polynomial::constant(1)};
    std::vector<Polynomial> den_pow{Polynomial::constant(1)};
    for (unsigned k = 1; k <= d; ++k) {
        num_pow.push_back(num_pow.back() * num);
        den_pow.push_back(den_pow.back() * den);
    }
    Polynomial out;
    for (unsigned k = 0; k <= deg; ++k) {
        Polynomial c = coeff_extract(p, g, k);
        if (c.is_zero()) continue;
        out += c * num_pow[k] * den_pow[d - k];
    }
    return out;
}

// ---- text ----

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms()) {
        const bool negative = sgn(c) < 0;
        Integer mag = abs(c);
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        if (m.powers.empty())
            out += mag.get_str();
        else if (mag == 1)
            out += m.to_string();
        else
            out += mag.get_str() + "*" + m.to_string();
    }
    return out;
}

namespace {

class PolynomialParser {
public:
    explicit PolynomialParser(std::string_view text) {
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) text_ += c;
    }

    Polynomial parse() {
        if (text_.empty()) throw ParseError("empty polynomial");
        std::vector<std::pair<Monomial, Integer>> terms;
        bool negative = false;
        if (peek() == '+' || peek() == '-') negative = text_[pos_++] == '-';
        while (true) {
            auto [m, c] = term();
            terms.emplace_back(std::move(m), negative ? Integer(-c) : c);
            if (pos_ == text_.size()) break;
            char op = text_[pos_++];
            if (op != '+' && op != '-') fail("expected '+' or '-'");
            negative = op == '-';
        }
        return Polynomial::from_terms(terms);
    }

private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError(why + " at offset " + std::to_string(pos_) + " in polynomial '" + text_ + "'");
    }

    std::string digits() {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected digits");
        return text_.substr(start, pos_ - start);
    }

    std::pair<Monomial, Integer> term() {
        Integer coeff = 1;
        std::map<EdgeId, unsigned> powers;
        while (true) {
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                coeff *= Integer(digits());
            } else if (text_.compare(pos_, 2, "y_") == 0) {
                pos_ += 2;
                std::size_t start = pos_;
                while (pos_ < text_.size() && text_[pos_] != '^' && text_[pos_] != '*' &&
                       text_[pos_] != '+' && text_[pos_] != '-')
                    ++pos_;
                std::string name = text_.substr(start, pos_ - start);
                if (!is_valid_edge_name(name)) fail("bad variable name 'y_" + name + "'");
                unsigned e = 1;
                if (peek() == '^') {
                    ++pos_;
                    auto d = digits();
                    if (d.size() > 3 || std::stoul(d) > 255) fail("exponent too large");
                    e = static_cast<unsigned>(std::stoul(d));
                }
                powers[name] += e;
            } else {
                fail("expected a coefficient or a y_ variable");
            }
            if (peek() != '*') break;
            ++pos_;
        }
        Monomial m;
        for (auto& [name, e] : powers)
            if (e) m.powers.emplace_back(name, e);
        return {std::move(m), coeff};
    }

    std::string text_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text) { return PolynomialParser(text).parse(); }

// ---- evaluation ----

RationalPoint RationalPoint::ones(const std::vector<EdgeId>& names) {
    RationalPoint p;
    for (const auto& n : names) p.set(n, 1);
    return p;
}

void RationalPoint::set(const EdgeId& name, const Rational& value) {
    if (sgn(value) <= 0) throw InvalidArgument("point coordinate y_" + name + " must be positive");
    Rational v = value;
    v.canonicalize();
    values_[name] = v;
}

const Rational& RationalPoint::at(const EdgeId& name) const {
    auto it = values_.find(name);
    if (it == values_.end()) throw InvalidArgument("no value assigned to y_" + name);
    return it->second;
}

std::string RationalPoint::to_string() const {
    std::string out;
    for (const auto& [name, v] : values_) {
        if (!out.empty()) out += ' ';
        out += "y_" + name + "=" + v.get_str();
    }
    return out;
}

Rational evaluate(const Polynomial& p, const RationalPoint& point) {
    Rational total = 0;
    std::map<EdgeId, std::vector<Rational>> powers;
    for (const auto& name : p.variables()) powers[name] = {1, point.at(name)};
    for (const auto& [m, c] : p.terms()) {
        Rational value = c;
        for (const auto& [name, e] : m.powers) {
            auto& list = powers[name];
            while (list.size() <= e) list.push_back(list.back() * list[1]);
            value *= list[e];
        }
        total += value;
    }
    total.canonicalize();
    return total;
}

std::size_t negative_term_count(const Polynomial& p) {
    std::size_t n = 0;
    for (const auto& [m, c] : p.terms())
        if (sgn(c) < 0) ++n;
    return n;
}

}  // namespace forestsos
