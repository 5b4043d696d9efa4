#include <catch_amalgamated.hpp>

#include "forestsos/certificate.hpp"
#include "forestsos/error.hpp"
#include "forestsos/rayleigh.hpp"
#include "oracles.hpp"

using namespace forestsos;

namespace {

oracle::IndexMap as_map(const std::vector<EdgeSet>& outers,
                        const std::function<std::vector<InnerTerm>(const EdgeSet&)>& list) {
    oracle::IndexMap out;
    for (const auto& s : outers) {
        auto& v = out[s];
        for (const auto& t : list(s)) v.push_back({t.forest, t.cycle});
        std::sort(v.begin(), v.end());
    }
    return out;
}

MultiGraph c4() { return MultiGraph(4, {{"a", 0, 1}, {"b", 1, 2}, {"c", 2, 3}, {"d", 3, 0}}); }

}  // namespace

TEST_CASE("index sets match subset enumeration") {
    for (const auto& g : oracle::all_graphs(5, 5)) {
        for (const auto& e : g.edges()) {
            if (e.is_loop()) continue;
            auto q = as_map(q_sets(g, e.name), [&](const EdgeSet& s) { return b_sets(g, s, e.name); });
            REQUIRE(q == oracle::phi_index(g, e.name));
            for (const auto& f : g.edges()) {
                if (f.is_loop() || f.name <= e.name) continue;
                auto s = as_map(s_sets(g, e.name, f.name),
                                [&](const EdgeSet& x) { return a_sets(g, x, e.name, f.name); });
                REQUIRE(s == oracle::delta_index(g, e.name, f.name));
            }
        }
    }
}

TEST_CASE("triangle skeletons are certificates") {
    MultiGraph k3 = MultiGraph::k3("e", "f", "g");
    DeltaCert d = delta_skeleton(k3, "e", "f");
    CHECK(d.entries.size() == 2);
    Verdict v = verify_delta(k3, "e", "f", d);
    CHECK(v.accepted());
    CHECK(v.complete);
    CHECK(v.expansion == Polynomial::parse("y_g + y_g^2"));

    PhiCert p = phi_skeleton(k3, "e");
    Verdict w = verify_phi(k3, "e", p);
    CHECK(w.accepted());
    CHECK(w.expansion == phi(k3, "e"));
}

TEST_CASE("text round trip is idempotent") {
    MultiGraph g = c4();
    DeltaCert d = delta_skeleton(g, "a", "c");
    const std::string text = to_text(d);
    auto parsed = parse_certificate(text);
    REQUIRE(std::holds_alternative<DeltaCert>(parsed));
    CHECK(std::get<DeltaCert>(parsed) == d);
    CHECK(to_text(std::get<DeltaCert>(parsed)) == text);

    PhiCert p = phi_skeleton(g, "b");
    auto pp = parse_certificate(to_text(p));
    REQUIRE(std::holds_alternative<PhiCert>(pp));
    CHECK(to_text(std::get<PhiCert>(pp)) == to_text(p));
}

TEST_CASE("tampered certificates are rejected") {
    MultiGraph g = c4();
    DeltaCert d = delta_skeleton(g, "a", "c");
    REQUIRE(verify_delta(g, "a", "c", d).accepted());

    DeltaCert flipped = d;
    flipped.entries.back().signs.begin()->second = -1;
    // A single-cycle square does not care about the sign.
    CHECK(verify_delta(g, "a", "c", flipped).accepted());

    DeltaCert dropped = d;
    dropped.entries.pop_back();
    Verdict v = verify_delta(g, "a", "c", dropped);
    CHECK_FALSE(v.accepted());
    CHECK_FALSE(v.difference.is_zero());
    CHECK_FALSE(v.complete);
    CHECK(v.to_text().find("rejected") != std::string::npos);

    DeltaCert bogus = d;
    bogus.entries.front().inner.push_back({EdgeSet{"b"}, EdgeSet{"a", "b", "c"}});
    Verdict b = verify_delta(g, "a", "c", bogus);
    CHECK_FALSE(b.accepted());
    CHECK_FALSE(b.problems.empty());

    DeltaCert unsigned_cycle = d;
    unsigned_cycle.entries.front().signs.clear();
    CHECK_FALSE(verify_delta(g, "a", "c", unsigned_cycle).accepted());
    CHECK_THROWS_AS(unsigned_cycle.expand(), InvalidArgument);
}

TEST_CASE("sign matters once two cycles share an outer set") {
    // Two parallel routes between the ends of e and f.
    MultiGraph g(4, {{"e", 0, 1}, {"f", 2, 3}, {"p", 1, 2}, {"q", 3, 0}, {"r", 1, 2}});
    DeltaCert d = delta_skeleton(g, "e", "f");
    bool changed = false;
    for (auto& en : d.entries)
        if (en.signs.size() > 1) en.signs.begin()->second = -1, changed = true;
    REQUIRE(changed);
    const bool plus = verify_delta(g, "e", "f", delta_skeleton(g, "e", "f")).accepted();
    const bool minus = verify_delta(g, "e", "f", d).accepted();
    CHECK(plus != minus);
}

TEST_CASE("context checks") {
    MultiGraph g = c4();
    DeltaCert d = delta_skeleton(g, "a", "c");
    CHECK(verify_delta(g, "c", "a", d).accepted());
    CHECK_THROWS_AS(verify_delta(g, "a", "b", d), InvalidArgument);
    CHECK_THROWS_AS(verify_delta(MultiGraph::k3("a", "b", "c"), "a", "c", d), InvalidArgument);
    PhiCert p = phi_skeleton(g, "a");
    CHECK_THROWS_AS(verify_phi(g, "b", p), InvalidArgument);
}

TEST_CASE("certificate parse errors") {
    CHECK_THROWS_AS(parse_certificate(""), ParseError);
    CHECK_THROWS_AS(parse_certificate("kind square\ngraph x\nedges e f\n"), ParseError);
    CHECK_THROWS_AS(parse_certificate("kind delta\ngraph x\nedges e\n"), ParseError);
    CHECK_THROWS_AS(parse_certificate("kind phi\ngraph x\nedges e\nentry {f}\n"), ParseError);
    CHECK_THROWS_AS(parse_certificate("kind phi\ngraph x\nedges e\nentry {f}\nsign {e,f} 2\nend\n"), ParseError);
    CHECK_THROWS_AS(parse_certificate("kind phi\ngraph x\nedges e\nset {f} {e,f}\n"), ParseError);
    try {
        parse_certificate("kind phi\ngraph x\nedges e\nentry {f}\nbanana\n");
        FAIL("accepted");
    } catch (const ParseError& e) {
        CHECK(e.line() == 5);
    }
}
