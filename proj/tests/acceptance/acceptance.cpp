// Acceptance runner: one PASS/FAIL line per criterion.
//
//   acceptance                 every criterion
//   acceptance --criterion N   just N; exit status 1 on FAIL

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "forestsos/certificate.hpp"
#include "forestsos/commands.hpp"
#include "forestsos/error.hpp"
#include "forestsos/rayleigh.hpp"
#include "forestsos/series_parallel.hpp"
#include "forestsos/sign_search.hpp"
#include "forestsos/sp_construct.hpp"
#include "oracles.hpp"

using namespace forestsos;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    std::string first_failure;

    void fail(const std::string& why) {
        if (pass) first_failure = why;
        pass = false;
    }
};

struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<void(Outcome&)> run;
};

std::vector<EdgeId> nonloops(const MultiGraph& g) {
    std::vector<EdgeId> out;
    for (const auto& e : g.edges())
        if (!e.is_loop()) out.push_back(e.name);
    return out;
}

MultiGraph k4() {
    return MultiGraph(4, {{"a", 0, 1}, {"b", 0, 2}, {"c", 0, 3}, {"d", 1, 2}, {"e", 1, 3}, {"f", 2, 3}});
}

// ---- 1 ----
void base_formulas(Outcome& o) {
    const Polynomial want_k3 = Polynomial::parse("y_f*y_g^2 + y_g*y_f^2 + y_f*y_g");
    const Polynomial want_star = Polynomial::parse("y_f + y_g");
    const Polynomial k3 = phi(MultiGraph::k3("e", "f", "g"), "e");
    const Polynomial star = phi(MultiGraph::k3_star("e", "f", "g"), "e");
    if (k3 != want_k3) o.fail("phi(K3, e) = " + k3.to_string());
    if (star != want_star) o.fail("phi(K3*, e) = " + star.to_string());
    o.detail << "phi(K3,e) = " << k3 << "; phi(K3*,e) = " << star;
}

// ---- 2 ----
void exhaustive_construction(Outcome& o) {
    std::size_t recipes = 0, deltas = 0, phis = 0;
    auto check_pair = [&](const CertPair& p, const std::string& what) {
        const Polynomial z = forest_poly(p.graph);
        for (const auto& [ef, c] : p.delta) {
            ++deltas;
            const Polynomial target = rayleigh_difference(z, ef.first, ef.second);
            if (!verify_delta(p.graph, ef.first, ef.second, c, VerifyOptions{true, &target}).accepted())
                o.fail(what + ": delta " + ef.first + "," + ef.second);
        }
        for (const auto& [e, c] : p.phi) {
            ++phis;
            const Polynomial target = phi_of(z, e);
            if (!verify_phi(p.graph, e, c, VerifyOptions{true, &target}).accepted()) o.fail(what + ": phi " + e);
        }
    };
    auto decomposed = [&](const SpRecipe& r) {
        // The graph as construct_delta / construct_phi see it.
        CertPair q = construct_all(replay(r));
        check_pair(q, "decomposed " + r.to_string());
        const auto names = nonloops(q.graph);
        if (q.phi.size() != names.size() || q.delta.size() != names.size() * (names.size() - 1) / 2)
            o.fail("missing pairs for " + r.to_string());
    };
    auto run_recipe = [&](const SpRecipe& r, bool replayed) {
        ++recipes;
        try {
            decomposed(r);
            if (replayed) check_pair(construct_from_recipe(r), r.to_string());
        } catch (const Error& e) {
            o.fail(r.to_string() + ": " + e.what());
        }
    };
    const auto all = oracle::recipes_up_to(4, true);
    for (const auto& r : all) run_recipe(r, false);
    // One representative per shape also goes through recipe replay, with every
    // trailing deletion or contraction.
    std::size_t shapes = 0, minor_recipes = 0;
    for (const auto& r : oracle::recipes_up_to(4, false)) {
        run_recipe(r, true);
        ++shapes;
        const MultiGraph g = replay(r);
        for (const auto& e : g.edges()) {
            for (auto step : {SpStep::remove(e.name), SpStep::contract(e.name)}) {
                if (step.kind == SpStep::Kind::kContract && e.is_loop()) continue;
                SpRecipe m = r;
                m.steps.push_back(step);
                run_recipe(m, true);
                ++minor_recipes;
            }
        }
    }
    o.detail << all.size() << " extension recipes decomposed, " << shapes << " shapes replayed, " << minor_recipes
             << " with a trailing minor step; " << deltas << " delta and " << phis << " phi certificates verified";
}

// ---- 3 ----
void random_construction(Outcome& o) {
    std::mt19937_64 rng(20240601);
    std::size_t ok = 0, certs = 0;
    const std::size_t count = 200;
    for (std::size_t i = 0; i < count; ++i) {
        SpRecipe r = random_recipe(rng, 7, 3);
        try {
            CertPair p = construct_from_recipe(r);
            p.verify_all(false);
            CertPair q = construct_all(p.graph);
            q.verify_all(false);
            certs += p.delta.size() + p.phi.size() + q.delta.size() + q.phi.size();
            ++ok;
        } catch (const Error& e) {
            o.fail(r.to_string() + ": " + std::string(e.what()).substr(0, 300));
        }
    }
    o.detail << ok << "/" << count << " recipes verified (" << certs << " certificates)";
}

// ---- 4 ----
void minor_limits(Outcome& o) {
    std::size_t graphs = 0, checks = 0;
    for (const auto& g : oracle::all_graphs(6, 5)) {
        ++graphs;
        const auto names = nonloops(g);
        for (std::size_t i = 0; i < names.size(); ++i)
            for (std::size_t j = i + 1; j < names.size(); ++j) {
                const EdgeId &e = names[i], &f = names[j];
                const Polynomial d = delta(g, e, f);
                for (const auto& x : g.edges()) {
                    if (x.name == e || x.name == f) continue;
                    const MultiGraph del = delete_edge(g, x.name);
                    ++checks;
                    if (coeff_extract(d, x.name, 0) != oracle::delta_by_minors(del, e, f))
                        o.fail("deletion limit on " + g.fingerprint() + " " + e + f + x.name);
                    if (x.is_loop()) {
                        // y_g never occurs, so nothing sits at y_g^2.
                        if (!coeff_extract(d, x.name, 2).is_zero()) o.fail("loop coefficient");
                        continue;
                    }
                    const MultiGraph con = contract_edge(g, x.name);
                    Polynomial want;
                    if (!con.edge(e).is_loop() && !con.edge(f).is_loop()) want = oracle::delta_by_minors(con, e, f);
                    ++checks;
                    if (coeff_extract(d, x.name, 2) != want)
                        o.fail("contraction limit on " + g.fingerprint() + " " + e + f + x.name);
                }
            }
    }
    o.detail << graphs << " graphs, " << checks << " limit identities";
}

// ---- 5 ----
MultiGraph prefixed(const MultiGraph& g, const std::string& prefix) {
    MultiGraph out = g;
    for (const auto& e : g.edges()) out = rename_edge(out, e.name, prefix + e.name);
    return out;
}

void two_sum_identities(Outcome& o) {
    std::size_t sums = 0, checks = 0;
    auto run = [&](const MultiGraph& h, const MultiGraph& k, const EdgeId& glue) {
        ++sums;
        auto r = check_two_sum_identities(h, k, glue);
        checks += r.total_checked();
        if (!r.all_hold()) o.fail(r.failures.front().identity + " " + r.failures.front().context);
    };
    for (auto hb : {SpBase::kK3, SpBase::kK3Star})
        for (auto kb : {SpBase::kK3, SpBase::kK3Star})
            for (int hg = 0; hg < 3; ++hg)
                for (int kg = 0; kg < 3; ++kg) {
                    std::array<EdgeId, 3> hn = {"h0", "h1", "h2"}, kn = {"k0", "k1", "k2"};
                    hn[hg] = "g";
                    kn[kg] = "g";
                    run(base_graph(hb, hn), base_graph(kb, kn), "g");
                }
    std::mt19937_64 rng(77);
    int random_pairs = 0;
    while (random_pairs < 20) {
        MultiGraph h = prefixed(replay(random_recipe(rng, 3, 1)), "h");
        MultiGraph k = prefixed(replay(random_recipe(rng, 3, 1)), "k");
        auto hn = nonloops(h), kn = nonloops(k);
        if (hn.size() < 2 || kn.size() < 2) continue;
        h = rename_edge(h, hn[rng() % hn.size()], "g");
        k = rename_edge(k, kn[rng() % kn.size()], "g");
        run(h, k, "g");
        ++random_pairs;
    }
    o.detail << sums << " two-sums (" << random_pairs << " random SP pairs), " << checks << " identities";
}

// ---- 6 ----
void identity_suite(Outcome& o) {
    const unsigned families = Identity::kDecomposition | Identity::kDeltaSplit | Identity::kPhiMinor | Identity::kNewId;
    IdentityReport total;
    std::size_t graphs = 0;
    for (const auto& g : oracle::all_graphs(6, 12)) {
        ++graphs;
        total.merge(check_identities(g, families));
    }
    if (!total.all_hold())
        o.fail(total.failures.front().identity + " " + total.failures.front().context + ": " +
               total.failures.front().difference.to_string());
    o.detail << graphs << " graphs;";
    for (const auto& [name, n] : total.checked) o.detail << ' ' << name << '=' << n;
}

// ---- 7 ----
void k33_reproduction(Outcome& o) {
    bool four = false, nonneg = true;
    for (const auto& orbit : k33_report(50, 0)) {
        four = four || orbit.negative_terms == 4;
        nonneg = nonneg && orbit.delta_i_at_ones >= 0 && orbit.delta_i_minimum >= 0;
        o.detail << orbit.name << " (" << orbit.e << "," << orbit.f << "): " << orbit.negative_terms
                 << " negative terms, min DeltaI over " << orbit.samples << " points "
                 << (orbit.delta_i_minimum >= 0 ? ">= 0" : "< 0") << "; ";
    }
    if (!four) o.fail("no orbit of DeltaI - DeltaB has exactly 4 negative terms");
    if (!nonneg) o.fail("DeltaI negative at a sample point");
}

// ---- 8 ----
void oracle_equivalence(Outcome& o) {
    std::size_t graphs = 0, lists = 0;
    for (const auto& g : oracle::all_graphs(6, 12)) {
        ++graphs;
        const auto names = nonloops(g);
        for (std::size_t i = 0; i < names.size(); ++i) {
            const EdgeId& e = names[i];
            oracle::IndexMap q;
            for (const auto& s : q_sets(g, e)) {
                auto& v = q[s];
                for (const auto& t : b_sets(g, s, e)) v.push_back({t.forest, t.cycle});
                std::sort(v.begin(), v.end());
                ++lists;
            }
            if (q != oracle::phi_index(g, e)) o.fail("Q/B on " + g.fingerprint() + " " + e);
            for (std::size_t j = i + 1; j < names.size(); ++j) {
                const EdgeId& f = names[j];
                oracle::IndexMap s;
                for (const auto& x : s_sets(g, e, f)) {
                    auto& v = s[x];
                    for (const auto& t : a_sets(g, x, e, f)) v.push_back({t.forest, t.cycle});
                    std::sort(v.begin(), v.end());
                    ++lists;
                }
                if (s != oracle::delta_index(g, e, f)) o.fail("S/A on " + g.fingerprint() + " " + e + f);
            }
        }
    }
    o.detail << graphs << " graphs, " << lists << " index lists";
}

// ---- 9 ----
void search_agreement(Outcome& o) {
    std::size_t graphs = 0, pairs = 0;
    std::uint64_t nodes = 0;
    for (const auto& g : oracle::all_graphs(6, 12)) {
        if (oracle::has_k4_minor(g)) continue;
        ++graphs;
        const auto names = nonloops(g);
        for (std::size_t i = 0; i < names.size(); ++i)
            for (std::size_t j = i + 1; j < names.size(); ++j) {
                ++pairs;
                const EdgeId &e = names[i], &f = names[j];
                auto s = sign_search_delta(g, e, f);
                nodes += s.nodes;
                if (s.status != SearchStatus::kFound) {
                    o.fail("search " + to_string(s.status) + " on " + g.fingerprint() + " " + e + f);
                    continue;
                }
                const Polynomial built = construct_delta(g, e, f).expand();
                const Polynomial searched = s.cert->expand();
                if (built != searched || built != delta(g, e, f))
                    o.fail("expansions differ on " + g.fingerprint() + " " + e + f);
            }
    }
    o.detail << graphs << " series-parallel graphs, " << pairs << " pairs, " << nodes << " search nodes";
}

// ---- 10 ----
void k4_search(Outcome& o) {
    const MultiGraph g = k4();
    const auto names = nonloops(g);
    std::map<std::string, int> verdicts;
    auto tally = [&](SearchStatus s) { ++verdicts[to_string(s)]; };
    for (std::size_t i = 0; i < names.size(); ++i) {
        auto p = sign_search_phi(g, names[i]);
        tally(p.status);
        if (p.cert && !verify_phi(g, names[i], *p.cert).accepted()) o.fail("phi certificate rejected");
        for (std::size_t j = i + 1; j < names.size(); ++j) {
            auto d = sign_search_delta(g, names[i], names[j]);
            tally(d.status);
            if (d.cert && !verify_delta(g, names[i], names[j], *d.cert).accepted()) o.fail("delta certificate rejected");
        }
    }
    o.detail << "K4 verdicts:";
    for (const auto& [k, n] : verdicts) o.detail << ' ' << k << '=' << n;
    o.detail << " (K7, cube, Moebius ladder not attempted)";
}

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list = {
        {1, "base formulas", 1, base_formulas},
        {2, "SP construction, exhaustive small scale", 300, exhaustive_construction},
        {3, "SP construction, randomized", 600, random_construction},
        {4, "minor limits", 300, minor_limits},
        {5, "two-sum identities", 120, two_sum_identities},
        {6, "identity suite", 300, identity_suite},
        {7, "K3,3 reproduction", 120, k33_reproduction},
        {8, "oracle equivalence", 120, oracle_equivalence},
        {9, "search/construct agreement", 300, search_agreement},
        {10, "K4 search terminates within budget", 120, k4_search},
    };
    return list;
}

bool run_one(const Criterion& c) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
        c.run(o);
    } catch (const std::exception& e) {
        o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) o.fail("over the time limit");
    std::cout << "criterion " << c.id << " [PRIMARY] " << (o.pass ? "PASS" : "FAIL") << "  " << c.name << "  ("
              << std::fixed << std::setprecision(2) << secs << " s, limit " << std::setprecision(0) << c.limit_seconds
              << " s)  " << o.detail.str();
    if (!o.pass) std::cout << "  -- " << o.first_failure;
    std::cout << std::endl;
    return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    int which = 0;
    app.add_option("--criterion", which, "run only this criterion")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);

    bool all = true;
    for (const auto& c : criteria())
        if (which == 0 || which == c.id) all = run_one(c) && all;
    return all ? 0 : 1;
}
