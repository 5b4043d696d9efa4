#include <catch_amalgamated.hpp>

#include <random>

#include "forestsos/error.hpp"
#include "forestsos/polynomial.hpp"

using namespace forestsos;

namespace {

const std::vector<EdgeId> kVars = {"a", "b", "c", "g"};

Polynomial random_poly(std::mt19937_64& rng) {
    Polynomial p;
    const int terms = static_cast<int>(rng() % 5);
    for (int t = 0; t < terms; ++t) {
        Polynomial m = Polynomial::constant(static_cast<long>(rng() % 7) - 3);
        for (const auto& v : kVars)
            m *= pow(Polynomial::variable(v), static_cast<unsigned>(rng() % 3));
        p += m;
    }
    return p;
}

RationalPoint random_point(std::mt19937_64& rng) {
    RationalPoint pt;
    for (const auto& v : kVars) pt.set(v, Rational(1 + rng() % 9, 1 + rng() % 9));
    return pt;
}

}  // namespace

TEST_CASE("canonical printing") {
    Polynomial y = Polynomial::variable("g");
    CHECK((y + y * y).to_string() == "y_g^2 + y_g");
    CHECK(Polynomial().to_string() == "0");
    CHECK(Polynomial::constant(1).to_string() == "1");
    Polynomial f = Polynomial::variable("f");
    CHECK((f * y * y + y * f * f + f * y).to_string() == "y_f^2*y_g + y_f*y_g^2 + y_f*y_g");
    CHECK((Polynomial::constant(1) - Polynomial::constant(2) * f).to_string() == "-2*y_f + 1");
}

TEST_CASE("parse accepts any term order") {
    CHECK(Polynomial::parse("y_g + y_g^2") == Polynomial::parse("y_g^2 + y_g"));
    CHECK(Polynomial::parse("y_g*y_f^2 + y_f*y_g + y_f*y_g^2") ==
          Polynomial::parse("y_f^2*y_g + y_f*y_g^2 + y_f*y_g"));
    CHECK(Polynomial::parse("0").is_zero());
    CHECK(Polynomial::parse("-3*y_a*y_a + 3*y_a^2").is_zero());
    CHECK_THROWS_AS(Polynomial::parse(""), ParseError);
    CHECK_THROWS_AS(Polynomial::parse("y_"), ParseError);
    CHECK_THROWS_AS(Polynomial::parse("y_a +"), ParseError);
    CHECK_THROWS_AS(Polynomial::parse("x_a"), ParseError);
}

TEST_CASE("ring operations agree with evaluation") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        Polynomial p = random_poly(rng), q = random_poly(rng);
        RationalPoint pt = random_point(rng);
        const Rational vp = evaluate(p, pt), vq = evaluate(q, pt);
        CHECK(evaluate(p + q, pt) == vp + vq);
        CHECK(evaluate(p - q, pt) == vp - vq);
        CHECK(evaluate(p * q, pt) == vp * vq);
        CHECK(Polynomial::parse(p.to_string()) == p);
        CHECK((p - p).is_zero());
        CHECK(p * q == q * p);
    }
}

TEST_CASE("coefficient extraction, partials and zero substitution") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 200; ++i) {
        Polynomial p = random_poly(rng);
        Polynomial rebuilt;
        for (unsigned k = 0; k <= p.degree_in("g"); ++k)
            rebuilt += coeff_extract(p, "g", k) * pow(Polynomial::variable("g"), k);
        CHECK(rebuilt == p);
        CHECK(delete_var(p, "g") == coeff_extract(p, "g", 0));
        CHECK_FALSE(coeff_extract(p, "g", 1).has_variable("g"));
        // d/dg of sum c_k g^k = sum k c_k g^(k-1)
        Polynomial d;
        for (unsigned k = 1; k <= p.degree_in("g"); ++k)
            d += Polynomial::constant(k) * coeff_extract(p, "g", k) * pow(Polynomial::variable("g"), k - 1);
        CHECK(partial(p, "g") == d);
    }
}

TEST_CASE("rational substitution clears denominators") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 200; ++i) {
        Polynomial p = random_poly(rng);
        const long k = 1 + static_cast<long>(rng() % 4);
        Polynomial num = Polynomial::constant(k) * Polynomial::variable("a") * Polynomial::variable("b") +
                         Polynomial::variable("c") + Polynomial::constant(2);
        Polynomial den = Polynomial::variable("a") + Polynomial::constant(k);
        const unsigned d = p.degree_in("g") + static_cast<unsigned>(rng() % 2);
        Polynomial s = substitute_rational(p, "g", num, den, d);
        RationalPoint pt = random_point(rng);
        RationalPoint at;
        for (const auto& [name, v] : pt.values())
            if (name != "g") at.set(name, v);
        const Rational n = evaluate(num, at), m = evaluate(den, at);
        // p(g = n/m) * m^d, evaluated at the same point
        RationalPoint sub = at;
        sub.set("g", n / m);
        Rational expected = evaluate(p, sub);
        for (unsigned j = 0; j < d; ++j) expected *= m;
        CHECK(evaluate(s, at) == expected);
    }
    Polynomial y = Polynomial::variable("g");
    CHECK_THROWS_AS(substitute_rational(y * y, "g", y, Polynomial::constant(1), 1), InvalidArgument);
    CHECK_THROWS_AS(substitute_rational(y, "g", y, Polynomial(), 1), InvalidArgument);
}

TEST_CASE("negative terms and points") {
    CHECK(negative_term_count(Polynomial::parse("y_a - y_b - 2*y_c + 1")) == 2);
    RationalPoint pt;
    CHECK_THROWS_AS(pt.set("a", 0), InvalidArgument);
    CHECK_THROWS_AS(pt.set("a", Rational(-1, 2)), InvalidArgument);
    CHECK_THROWS_AS(evaluate(Polynomial::variable("z"), pt), InvalidArgument);
    CHECK(evaluate(Polynomial::parse("y_a^2 + 1"), RationalPoint::ones({"a"})) == 2);
}

TEST_CASE("limits") {
    Polynomial y = Polynomial::variable("a");
    CHECK_THROWS_AS(pow(y, 200) * pow(y, 100), InvalidArgument);
    Polynomial wide;
    for (int i = 0; i < 64; ++i) wide += Polynomial::variable("v" + std::to_string(i));
    CHECK_THROWS_AS(wide + Polynomial::variable("w"), InvalidArgument);
}

TEST_CASE("sum of many parts and wide coefficients") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 50; ++i) {
        std::vector<Polynomial> parts;
        Polynomial running;
        for (int j = 0; j < 6; ++j) {
            parts.push_back(random_poly(rng));
            running += parts.back();
        }
        CHECK(Polynomial::sum(parts) == running);
    }
    CHECK(Polynomial::sum({}).is_zero());

    // Past 64 bits the product falls back to GMP accumulation.
    const Integer big("123456789012345678901234567890");
    Polynomial a = Polynomial::constant(big) * Polynomial::variable("a") + Polynomial::constant(3);
    Polynomial b = Polynomial::variable("a") - Polynomial::constant(big);
    RationalPoint pt;
    pt.set("a", Rational(5, 7));
    pt.set("b", Rational(11, 3));
    CHECK(evaluate(a * b, pt) == evaluate(a, pt) * evaluate(b, pt));
    Polynomial w = Polynomial::constant(Integer(1) << 61) * Polynomial::variable("b") + Polynomial::constant(1);
    CHECK((w * w).to_string() == Polynomial::parse((w * w).to_string()).to_string());
    CHECK(evaluate(w * w, pt) == evaluate(w, pt) * evaluate(w, pt));
}
