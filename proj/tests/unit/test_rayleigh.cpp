#include <catch_amalgamated.hpp>

#include <random>

#include "forestsos/error.hpp"
#include "forestsos/rayleigh.hpp"
#include "forestsos/series_parallel.hpp"
#include "oracles.hpp"

using namespace forestsos;

namespace {

std::vector<EdgeId> nonloops(const MultiGraph& g) {
    std::vector<EdgeId> out;
    for (const auto& e : g.edges())
        if (!e.is_loop()) out.push_back(e.name);
    return out;
}

}  // namespace

TEST_CASE("forest polynomial matches subset enumeration") {
    for (const auto& g : oracle::all_graphs(6, 5)) REQUIRE(forest_poly(g) == oracle::forest_poly(g));
    CHECK(forest_poly(MultiGraph()).to_string() == "1");
    CHECK(forest_poly(MultiGraph::k3("e", "f", "g")).term_count() == 7);
}

TEST_CASE("tree polynomial matches the matrix-tree theorem") {
    std::mt19937_64 rng(5);
    for (const auto& g : oracle::all_graphs(6, 5)) {
        if (!is_connected(g)) {
            CHECK_THROWS_AS(tree_poly(g), InvalidArgument);
            continue;
        }
        Polynomial t = tree_poly(g);
        REQUIRE(t == oracle::tree_poly(g));
        std::map<EdgeId, Rational> w;
        RationalPoint pt;
        for (const auto& e : g.edges()) {
            Rational v(1 + rng() % 20, 1 + rng() % 20);
            v.canonicalize();
            w[e.name] = v;
            if (t.has_variable(e.name)) pt.set(e.name, v);
        }
        CHECK(evaluate(t, pt) == oracle::tree_sum(g, w));
    }
}

TEST_CASE("Rayleigh difference matches the minor formula") {
    for (const auto& g : oracle::all_graphs(6, 5)) {
        auto names = nonloops(g);
        for (std::size_t i = 0; i < names.size(); ++i)
            for (std::size_t j = i + 1; j < names.size(); ++j) {
                Polynomial d = delta(g, names[i], names[j]);
                REQUIRE(d == oracle::delta_by_minors(g, names[i], names[j]));
                CHECK(d == delta(g, names[j], names[i]));
            }
    }
}

TEST_CASE("small closed forms") {
    MultiGraph k3 = MultiGraph::k3("e", "f", "g");
    MultiGraph star = MultiGraph::k3_star("e", "f", "g");
    CHECK(delta(k3, "e", "f") == Polynomial::parse("y_g + y_g^2"));
    CHECK(delta(star, "e", "f") == Polynomial::parse("1"));
    CHECK(phi(k3, "e") == Polynomial::parse("y_f*y_g^2 + y_g*y_f^2 + y_f*y_g"));
    CHECK(phi(star, "e") == Polynomial::parse("y_f + y_g"));

    MultiGraph path(3, {{"e", 0, 1}, {"f", 1, 2}});
    CHECK(delta(path, "e", "f").is_zero());

    CHECK_THROWS_AS(delta(k3, "e", "e"), InvalidArgument);
    CHECK_THROWS_AS(delta(k3, "e", "z"), InvalidArgument);
    MultiGraph loopy(2, {{"e", 0, 1}, {"l", 1, 1}});
    CHECK_THROWS_AS(delta(loopy, "e", "l"), InvalidArgument);
    CHECK_THROWS_AS(phi(loopy, "l"), InvalidArgument);
}

TEST_CASE("operator identities on small graphs") {
    for (const auto& g : oracle::all_graphs(5, 5)) {
        auto r = check_identities(g);
        INFO(format_graph(g) << r.to_text());
        REQUIRE(r.all_hold());
    }
    auto r = check_identities(two_sum(MultiGraph::k3("a", "b", "g"), MultiGraph::k3("g", "c", "d"), "g"));
    CHECK(r.checked.size() == 6);
    CHECK(r.total_checked() > 0);
}

TEST_CASE("two-sum and direct-sum identities") {
    const std::array<EdgeId, 3> hn = {"e", "h1", "g"}, kn = {"g", "f", "k1"};
    for (auto hb : {SpBase::kK3, SpBase::kK3Star})
        for (auto kb : {SpBase::kK3, SpBase::kK3Star}) {
            auto r = check_two_sum_identities(base_graph(hb, hn), base_graph(kb, kn), "g");
            INFO(r.to_text());
            CHECK(r.all_hold());
            CHECK(r.total_checked() > 0);
        }
    auto d = check_direct_sum_identities(MultiGraph::k3("a", "b", "c"), MultiGraph::k3_star("p", "q", "r"));
    CHECK(d.all_hold());
    CHECK(forest_poly(direct_sum(MultiGraph::k3("a", "b", "c"), MultiGraph::k3_star("p", "q", "r"))) ==
          forest_poly(MultiGraph::k3("a", "b", "c")) * forest_poly(MultiGraph::k3_star("p", "q", "r")));
}

TEST_CASE("sampling is exact and reproducible") {
    MultiGraph g = two_sum(MultiGraph::k3("e", "x", "g"), MultiGraph::k3_star("g", "f", "y"), "g");
    auto a = sample_nonnegativity(g, "e", "f", 10, 42);
    auto b = sample_nonnegativity(g, "e", "f", 10, 42);
    CHECK(a.to_text() == b.to_text());
    CHECK(a.samples.size() == 11);
    CHECK(a.samples.front().point.values().size() == g.edge_count() - 2);
    CHECK_FALSE(a.counterexample());
    CHECK(a.minimum() > 0);
    for (const auto& s : a.samples) CHECK(evaluate(a.difference, s.point) == s.value);
    CHECK_THROWS_AS(sample_nonnegativity(g, "e", "f", 0, 1), InvalidArgument);
    CHECK(sample_nonnegativity(g, "e", "f", 10, 43).to_text() != a.to_text());
}
