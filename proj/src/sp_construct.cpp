#include "forestsos/sp_construct.hpp"

#include <algorithm>
#include <sstream>

#include "forestsos/error.hpp"
#include "forestsos/rayleigh.hpp"

namespace forestsos {

namespace {

std::pair<EdgeId, EdgeId> key(const EdgeId& e, const EdgeId& f) { return e < f ? std::pair{e, f} : std::pair{f, e}; }

/// Drops sign keys of cycles that no longer occur and entries that became
/// empty, then sorts.
void tidy(SosCert& c) {
    std::vector<CertEntry> kept;
    for (auto& en : c.entries) {
        if (en.inner.empty()) continue;
        std::map<EdgeSet, int> used;
        for (const auto& t : en.inner) used[t.cycle] = en.sign(t.cycle);
        en.signs = std::move(used);
        kept.push_back(std::move(en));
    }
    c.entries = std::move(kept);
    c.normalize();
}


/// Forests of k - glue, split by whether they join the ends of glue. For
/// the joining ones, also the path they contain between those ends.
struct GlueForests {
    std::vector<std::pair<EdgeSet, EdgeSet>> spanning;  // (forest, path)
    std::vector<EdgeSet> other;
};

GlueForests glue_forests(const MultiGraph& k, const EdgeId& glue) {
    GlueForests out;
    const std::size_t gi = k.index_of(glue);
    if (k.edge(gi).is_loop()) throw InvalidArgument("glue edge '" + glue + "' is a loop");
    const EdgeMask gb = EdgeMask{1} << gi;
    for (EdgeMask f : forest_masks(k, k.all_edges() & ~gb)) {
        if (spans(k, f, gi)) {
            EdgeMask cycle = *unique_cycle(k, f | gb);
            out.spanning.emplace_back(k.names_of(f), k.names_of(cycle & ~gb));
        } else {
            out.other.push_back(k.names_of(f));
        }
    }
    return out;
}

SosCert minor_delete(const SosCert& c, const EdgeId& x, const std::string& id) {
    SosCert out;
    out.graph_id = id;
    for (const auto& en : c.entries) {
        if (en.outer.contains(x)) continue;
        CertEntry n{en.outer, {}, en.signs};
        for (const auto& t : en.inner)
            if (!t.forest.contains(x)) n.inner.push_back(t);
        out.entries.push_back(std::move(n));
    }
    return out;
}

SosCert minor_contract(const SosCert& c, const EdgeId& x, const std::string& id) {
    SosCert out;
    out.graph_id = id;
    for (const auto& en : c.entries) {
        if (en.outer.contains(x)) continue;
        CertEntry n{en.outer, {}, {}};
        for (const auto& t : en.inner) {
            if (!t.forest.contains(x)) continue;
            InnerTerm m{t.forest.without(x), t.cycle.without(x)};
            n.signs[m.cycle] = en.sign(t.cycle);
            n.inner.push_back(std::move(m));
        }
        out.entries.push_back(std::move(n));
    }
    return out;
}

/// Keeps empty entries only while their outer set is still an outer set of
/// the minor, as the definitions require.
void drop_stale(SosCert& c, const MultiGraph& minor, const EdgeSet& base) {
    std::vector<CertEntry> kept;
    for (auto& en : c.entries) {
        if (en.inner.empty() && !lies_on_cycle(minor, en.outer, base)) continue;
        if (!en.inner.empty()) {
            std::map<EdgeSet, int> used;
            for (const auto& t : en.inner) used[t.cycle] = en.sign(t.cycle);
            en.signs = std::move(used);
        }
        kept.push_back(std::move(en));
    }
    c.entries = std::move(kept);
    c.normalize();
}

SosCert join_forests(const SosCert& c, const std::vector<EdgeSet>& forests, const std::string& id) {
    SosCert out;
    out.graph_id = id;
    for (const auto& en : c.entries) {
        CertEntry n{en.outer, {}, en.signs};
        for (const auto& t : en.inner)
            for (const auto& f : forests) n.inner.push_back({t.forest | f, t.cycle});
        out.entries.push_back(std::move(n));
    }
    tidy(out);
    return out;
}

std::vector<EdgeSet> all_forests(const MultiGraph& k) { return enumerate_forests(k); }

/// Shared body of the same-side Delta rule and the Phi rule: substitutes
/// the glue variable of the H certificate by the forests of K, and
/// multiplies the outer sets holding the glue edge by the Phi K{glue} form.
SosCert same_side(const SosCert& ch, const SosCert& ck_phi, const MultiGraph& k, const EdgeId& glue,
                  const std::string& id) {
    const GlueForests fk = glue_forests(k, glue);
    SosCert out;
    out.graph_id = id;
    for (const auto& en : ch.entries) {
        if (!en.outer.contains(glue)) {
            CertEntry n{en.outer, {}, {}};
            for (const auto& t : en.inner) {
                const int s = en.sign(t.cycle);
                if (t.forest.contains(glue)) {
                    const EdgeSet rest = t.forest.without(glue);
                    for (const auto& [f, path] : fk.spanning) {
                        EdgeSet cycle = t.cycle.contains(glue) ? t.cycle.without(glue) | path : t.cycle;
                        n.signs[cycle] = s;
                        n.inner.push_back({rest | f, std::move(cycle)});
                    }
                } else {
                    for (const auto& f : fk.other) n.inner.push_back({t.forest | f, t.cycle});
                    if (!fk.other.empty()) n.signs[t.cycle] = s;
                }
            }
            out.entries.push_back(std::move(n));
            continue;
        }
        const EdgeSet outer_h = en.outer.without(glue);
        for (const auto& q : ck_phi.entries) {
            CertEntry n{outer_h | q.outer, {}, {}};
            for (const auto& th : en.inner) {
                const int sh = en.sign(th.cycle);
                for (const auto& tk : q.inner) {
                    EdgeSet cycle = th.cycle.without(glue) | tk.cycle.without(glue);
                    n.signs[cycle] = sh * q.sign(tk.cycle);
                    n.inner.push_back({th.forest.without(glue) | tk.forest, std::move(cycle)});
                }
            }
            out.entries.push_back(std::move(n));
        }
    }
    tidy(out);
    return out;
}

void require_glue(const MultiGraph& h, const MultiGraph& k, const EdgeId& glue) {
    if (!h.has_edge(glue) || !k.has_edge(glue)) throw InvalidArgument("glue edge '" + glue + "' missing");
}

}  // namespace

// ---- CertPair ----

DeltaCert CertPair::delta_for(const EdgeId& e, const EdgeId& f) const {
    auto it = delta.find(key(e, f));
    if (it == delta.end()) throw InvalidArgument("no certificate for pair " + e + "," + f);
    DeltaCert c = it->second;
    c.e = e;
    c.f = f;
    return c;
}

const PhiCert& CertPair::phi_for(const EdgeId& e) const {
    auto it = phi.find(e);
    if (it == phi.end()) throw InvalidArgument("no certificate for edge " + e);
    return it->second;
}

void CertPair::verify_all(bool completeness) const {
    const Polynomial z = forest_poly(graph);
    for (const auto& [ef, c] : delta) {
        Polynomial target = rayleigh_difference(z, ef.first, ef.second);
        VerifyOptions vo{completeness, &target};
        Verdict v = verify_delta(graph, ef.first, ef.second, c, vo);
        if (!v.accepted() || (completeness && !v.complete))
            throw CompositionError("delta certificate for " + ef.first + "," + ef.second + " on graph " +
                                   graph.fingerprint() + " fails:\n" + v.to_text() + to_text(c));
    }
    for (const auto& [e, c] : phi) {
        Polynomial target = phi_of(z, e);
        VerifyOptions vo{completeness, &target};
        Verdict v = verify_phi(graph, e, c, vo);
        if (!v.accepted() || (completeness && !v.complete))
            throw CompositionError("phi certificate for " + e + " on graph " + graph.fingerprint() + " fails:\n" +
                                   v.to_text() + to_text(c));
    }
}

CertPair base_certs(SpBase which, const std::array<EdgeId, 3>& names) {
    CertPair p;
    p.graph = base_graph(which, names);
    for (std::size_t i = 0; i < 3; ++i) {
        p.phi[names[i]] = phi_skeleton(p.graph, names[i]);
        for (std::size_t j = 0; j < 3; ++j)
            if (names[i] < names[j]) p.delta[{names[i], names[j]}] = delta_skeleton(p.graph, names[i], names[j]);
    }
    p.verify_all(true);
    return p;
}

// ---- minors ----

DeltaCert cert_delete(const DeltaCert& c, const MultiGraph& g, const EdgeId& x) {
    if (x == c.e || x == c.f) throw InvalidArgument("cannot delete a distinguished edge '" + x + "'");
    MultiGraph minor = delete_edge(g, x);
    DeltaCert out;
    static_cast<SosCert&>(out) = minor_delete(c, x, minor.fingerprint());
    out.e = c.e;
    out.f = c.f;
    drop_stale(out, minor, EdgeSet{c.e, c.f});
    return out;
}

DeltaCert cert_contract(const DeltaCert& c, const MultiGraph& g, const EdgeId& x) {
    if (x == c.e || x == c.f) throw InvalidArgument("cannot contract a distinguished edge '" + x + "'");
    MultiGraph minor = contract_edge(g, x);
    DeltaCert out;
    static_cast<SosCert&>(out) = minor_contract(c, x, minor.fingerprint());
    out.e = c.e;
    out.f = c.f;
    drop_stale(out, minor, EdgeSet{c.e, c.f});
    return out;
}

PhiCert cert_delete(const PhiCert& c, const MultiGraph& g, const EdgeId& x) {
    if (x == c.e) throw InvalidArgument("cannot delete the distinguished edge '" + x + "'");
    MultiGraph minor = delete_edge(g, x);
    PhiCert out;
    static_cast<SosCert&>(out) = minor_delete(c, x, minor.fingerprint());
    out.e = c.e;
    drop_stale(out, minor, EdgeSet{c.e});
    return out;
}

PhiCert cert_contract(const PhiCert& c, const MultiGraph& g, const EdgeId& x) {
    if (x == c.e) throw InvalidArgument("cannot contract the distinguished edge '" + x + "'");
    MultiGraph minor = contract_edge(g, x);
    PhiCert out;
    static_cast<SosCert&>(out) = minor_contract(c, x, minor.fingerprint());
    out.e = c.e;
    drop_stale(out, minor, EdgeSet{c.e});
    return out;
}

// ---- sums ----

DeltaCert cert_direct_sum(const DeltaCert& c, const MultiGraph& h, const MultiGraph& k) {
    MultiGraph g = direct_sum(h, k);
    DeltaCert out;
    static_cast<SosCert&>(out) = join_forests(c, all_forests(k), g.fingerprint());
    out.e = c.e;
    out.f = c.f;
    return out;
}

PhiCert cert_direct_sum(const PhiCert& c, const MultiGraph& h, const MultiGraph& k) {
    MultiGraph g = direct_sum(h, k);
    PhiCert out;
    static_cast<SosCert&>(out) = join_forests(c, all_forests(k), g.fingerprint());
    out.e = c.e;
    return out;
}

DeltaCert cert_cross_two_sum(const DeltaCert& ch, const MultiGraph& h, const DeltaCert& ck, const MultiGraph& k,
                             const EdgeId& glue) {
    require_glue(h, k, glue);
    const bool h_ok = ch.e == glue || ch.f == glue;
    const bool k_ok = ck.e == glue || ck.f == glue;
    if (!h_ok || !k_ok) throw InvalidArgument("cross rule needs certificates at the glue edge '" + glue + "'");
    DeltaCert out;
    out.graph_id = two_sum(h, k, glue).fingerprint();
    out.e = ch.e == glue ? ch.f : ch.e;
    out.f = ck.e == glue ? ck.f : ck.e;
    for (const auto& a : ch.entries) {
        for (const auto& b : ck.entries) {
            CertEntry n{a.outer | b.outer, {}, {}};
            for (const auto& ta : a.inner) {
                for (const auto& tb : b.inner) {
                    EdgeSet cycle = ta.cycle.without(glue) | tb.cycle.without(glue);
                    n.signs[cycle] = a.sign(ta.cycle) * b.sign(tb.cycle);
                    n.inner.push_back({ta.forest | tb.forest, std::move(cycle)});
                }
            }
            out.entries.push_back(std::move(n));
        }
    }
    tidy(out);
    return out;
}

DeltaCert cert_same_side_two_sum(const DeltaCert& ch, const MultiGraph& h, const PhiCert& ck, const MultiGraph& k,
                                 const EdgeId& glue) {
    require_glue(h, k, glue);
    if (ch.e == glue || ch.f == glue) throw InvalidArgument("same-side rule needs e, f away from the glue edge");
    if (ck.e != glue) throw InvalidArgument("same-side rule needs Phi K at the glue edge");
    DeltaCert out;
    static_cast<SosCert&>(out) = same_side(ch, ck, k, glue, two_sum(h, k, glue).fingerprint());
    out.e = ch.e;
    out.f = ch.f;
    return out;
}

PhiCert phi_cert_two_sum(const PhiCert& ch, const MultiGraph& h, const PhiCert& ck, const MultiGraph& k,
                         const EdgeId& glue) {
    require_glue(h, k, glue);
    if (ch.e == glue) throw InvalidArgument("Phi two-sum rule needs e away from the glue edge");
    if (ck.e != glue) throw InvalidArgument("Phi two-sum rule needs Phi K at the glue edge");
    PhiCert out;
    static_cast<SosCert&>(out) = same_side(ch, ck, k, glue, two_sum(h, k, glue).fingerprint());
    out.e = ch.e;
    return out;
}

namespace {

EdgeSet renamed(const EdgeSet& s, const EdgeId& from, const EdgeId& to) {
    return s.contains(from) ? s.without(from).with(to) : s;
}

SosCert renamed(const SosCert& c, const EdgeId& from, const EdgeId& to, const std::string& id) {
    SosCert out;
    out.graph_id = id;
    for (const auto& en : c.entries) {
        CertEntry n{renamed(en.outer, from, to), {}, {}};
        for (const auto& t : en.inner) n.inner.push_back({renamed(t.forest, from, to), renamed(t.cycle, from, to)});
        for (const auto& [cy, s] : en.signs) n.signs[renamed(cy, from, to)] = s;
        out.entries.push_back(std::move(n));
    }
    out.normalize();
    return out;
}

}  // namespace

DeltaCert rename_edge(const DeltaCert& c, const EdgeId& from, const EdgeId& to, const std::string& graph_id) {
    DeltaCert out;
    static_cast<SosCert&>(out) = renamed(c, from, to, graph_id);
    out.e = c.e == from ? to : c.e;
    out.f = c.f == from ? to : c.f;
    return out;
}

PhiCert rename_edge(const PhiCert& c, const EdgeId& from, const EdgeId& to, const std::string& graph_id) {
    PhiCert out;
    static_cast<SosCert&>(out) = renamed(c, from, to, graph_id);
    out.e = c.e == from ? to : c.e;
    return out;
}

// ---- recursion ----

namespace {

CertPair rename_pair(const CertPair& p, const EdgeId& from, const EdgeId& to) {
    CertPair out;
    out.graph = rename_edge(p.graph, from, to);
    const std::string id = out.graph.fingerprint();
    for (const auto& [ef, c] : p.delta) {
        DeltaCert r = rename_edge(c, from, to, id);
        out.delta[key(r.e, r.f)] = r;
    }
    for (const auto& [e, c] : p.phi) {
        PhiCert r = rename_edge(c, from, to, id);
        out.phi[r.e] = r;
    }
    return out;
}

std::vector<EdgeId> non_loops(const MultiGraph& g, const EdgeId& skip) {
    std::vector<EdgeId> out;
    for (const auto& e : g.edges())
        if (!e.is_loop() && e.name != skip) out.push_back(e.name);
    return out;
}

/// Certificates of H (+)_glue K from complete certificate sets of both.
CertPair two_sum_pair(const CertPair& h, const CertPair& k, const EdgeId& glue) {
    CertPair out;
    out.graph = two_sum(h.graph, k.graph, glue);
    const auto eh = non_loops(h.graph, glue);
    const auto ek = non_loops(k.graph, glue);
    const PhiCert& phi_hg = h.phi_for(glue);
    const PhiCert& phi_kg = k.phi_for(glue);

    for (std::size_t i = 0; i < eh.size(); ++i)
        for (std::size_t j = i + 1; j < eh.size(); ++j)
            out.delta[key(eh[i], eh[j])] =
                cert_same_side_two_sum(h.delta_for(eh[i], eh[j]), h.graph, phi_kg, k.graph, glue);
    for (std::size_t i = 0; i < ek.size(); ++i)
        for (std::size_t j = i + 1; j < ek.size(); ++j)
            out.delta[key(ek[i], ek[j])] =
                cert_same_side_two_sum(k.delta_for(ek[i], ek[j]), k.graph, phi_hg, h.graph, glue);
    for (const auto& e : eh)
        for (const auto& f : ek) {
            DeltaCert c = cert_cross_two_sum(h.delta_for(e, glue), h.graph, k.delta_for(glue, f), k.graph, glue);
            out.delta[key(e, f)] = std::move(c);
        }
    for (const auto& e : eh) out.phi[e] = phi_cert_two_sum(h.phi_for(e), h.graph, phi_kg, k.graph, glue);
    for (const auto& e : ek) out.phi[e] = phi_cert_two_sum(k.phi_for(e), k.graph, phi_hg, h.graph, glue);

    // The K-side certificates carry the id of K (+) H, which is the same graph.
    const std::string id = out.graph.fingerprint();
    for (auto& [ef, c] : out.delta) c.graph_id = id;
    for (auto& [e, c] : out.phi) c.graph_id = id;
    return out;
}

CertPair minor_pair(const CertPair& p, const SpStep& step) {
    CertPair out;
    const bool del = step.kind == SpStep::Kind::kDelete;
    const EdgeId& x = step.edge;
    if (!del && p.graph.edge(x).is_loop()) throw InvalidArgument("cannot contract loop '" + x + "'");
    out.graph = del ? delete_edge(p.graph, x) : contract_edge(p.graph, x);
    auto admissible = [&](const EdgeId& e) { return e != x && out.graph.has_edge(e) && !out.graph.edge(e).is_loop(); };
    for (const auto& [ef, c] : p.delta) {
        if (!admissible(ef.first) || !admissible(ef.second)) continue;
        out.delta[ef] = del ? cert_delete(c, p.graph, x) : cert_contract(c, p.graph, x);
    }
    for (const auto& [e, c] : p.phi) {
        if (!admissible(e)) continue;
        out.phi[e] = del ? cert_delete(c, p.graph, x) : cert_contract(c, p.graph, x);
    }
    return out;
}

}  // namespace

CertPair extend(const CertPair& p, const SpStep& step) {
    CertPair out;
    switch (step.kind) {
        case SpStep::Kind::kSeries: {
            CertPair k = base_certs(SpBase::kK3, {step.edge, step.first, step.second});
            out = two_sum_pair(p, k, step.edge);
            break;
        }
        case SpStep::Kind::kParallel: {
            std::size_t counter = 0;
            MultiGraph probe = p.graph;
            EdgeId glue;
            do {
                glue = fresh_name(probe, "_p", counter);
            } while (glue == step.first);
            CertPair h = rename_pair(p, step.edge, glue);
            CertPair k = base_certs(SpBase::kK3Star, {glue, step.edge, step.first});
            out = two_sum_pair(h, k, glue);
            break;
        }
        case SpStep::Kind::kDelete:
        case SpStep::Kind::kContract: out = minor_pair(p, step); break;
    }
    out.verify_all(false);
    return out;
}

CertPair construct_from_recipe(const SpRecipe& recipe) {
    recipe.validate();
    CertPair p = base_certs(recipe.base, recipe.base_edges);
    for (const auto& s : recipe.steps) p = extend(p, s);
    return p;
}

namespace {

SpDecomposition decompose_or_throw(const MultiGraph& g) {
    auto d = sp_decompose(g);
    if (auto* bad = std::get_if<NotSeriesParallel>(&d))
        throw NotSeriesParallelError("graph is not series-parallel: block core " + bad->core.to_string() +
                                     " reduces no further");
    return std::get<SpDecomposition>(d);
}

}  // namespace

CertPair construct_all(const MultiGraph& g) {
    const SpDecomposition d = decompose_or_throw(g);
    const std::string id = g.fingerprint();
    CertPair out;
    out.graph = g;
    std::map<EdgeId, std::size_t> part_of;
    for (std::size_t i = 0; i < d.parts.size(); ++i) {
        CertPair p = construct_from_recipe(d.parts[i].recipe);
        EdgeSet mine = p.graph.edge_names();
        for (const auto& n : mine) part_of[n] = i;
        const auto rest = enumerate_forests(delete_edges(g, mine));
        for (const auto& [ef, c] : p.delta) {
            DeltaCert j;
            static_cast<SosCert&>(j) = join_forests(c, rest, id);
            j.e = c.e;
            j.f = c.f;
            out.delta[ef] = std::move(j);
        }
        for (const auto& [e, c] : p.phi) {
            PhiCert j;
            static_cast<SosCert&>(j) = join_forests(c, rest, id);
            j.e = c.e;
            out.phi[e] = std::move(j);
        }
    }
    // Pairs split across blocks share no cycle: Delta vanishes.
    const auto edges = non_loops(g, {});
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            auto k = key(edges[i], edges[j]);
            if (out.delta.count(k)) continue;
            DeltaCert c;
            c.graph_id = id;
            c.e = k.first;
            c.f = k.second;
            out.delta[k] = std::move(c);
        }
    out.verify_all(true);
    return out;
}

DeltaCert construct_delta(const MultiGraph& g, const EdgeId& e, const EdgeId& f) {
    if (e == f) throw InvalidArgument("edges must be distinct, got '" + e + "' twice");
    for (const auto& x : {e, f})
        if (!g.has_edge(x) || g.edge(x).is_loop()) throw InvalidArgument("edge '" + x + "' is unknown or a loop");
    const SpDecomposition d = decompose_or_throw(g);
    const std::string id = g.fingerprint();
    DeltaCert out;
    out.graph_id = id;
    out.e = e;
    out.f = f;
    for (const auto& part : d.parts) {
        MultiGraph pg = replay(part.recipe);
        if (!pg.has_edge(e)) continue;
        if (pg.has_edge(f)) {
            CertPair p = construct_from_recipe(part.recipe);
            DeltaCert c = p.delta_for(e, f);
            static_cast<SosCert&>(out) = join_forests(c, enumerate_forests(delete_edges(g, pg.edge_names())), id);
        }
        break;
    }
    Verdict v = verify_delta(g, e, f, out);
    if (!v.accepted()) throw CompositionError("constructed certificate does not verify:\n" + v.to_text());
    return out;
}

PhiCert construct_phi(const MultiGraph& g, const EdgeId& e) {
    if (!g.has_edge(e) || g.edge(e).is_loop()) throw InvalidArgument("edge '" + e + "' is unknown or a loop");
    const SpDecomposition d = decompose_or_throw(g);
    const std::string id = g.fingerprint();
    PhiCert out;
    out.graph_id = id;
    out.e = e;
    for (const auto& part : d.parts) {
        MultiGraph pg = replay(part.recipe);
        if (!pg.has_edge(e)) continue;
        CertPair p = construct_from_recipe(part.recipe);
        static_cast<SosCert&>(out) =
            join_forests(p.phi_for(e), enumerate_forests(delete_edges(g, pg.edge_names())), id);
        break;
    }
    Verdict v = verify_phi(g, e, out);
    if (!v.accepted()) throw CompositionError("constructed certificate does not verify:\n" + v.to_text());
    return out;
}

// ---- cross-term residual ----

std::string ResidualReport::to_text() const {
    std::ostringstream out;
    out << "degree0 " << degree0 << '\n';
    out << "degree0_verified " << (degree0_verified ? "true" : "false") << '\n';
    out << "degree2 " << degree2 << '\n';
    out << "degree2_verified " << (degree2_verified ? "true" : "false") << '\n';
    out << "squares " << squares << '\n';
    out << "squares_equal_delta " << (squares_equal_delta ? "true" : "false") << '\n';
    out << "cross " << cross << '\n';
    out << "residual " << residual << '\n';
    out << "residual_zero " << (residual_zero() ? "true" : "false") << '\n';
    return out.str();
}

ResidualReport cross_term_residual(const MultiGraph& g, const EdgeId& e, const EdgeId& f, const PhiCert& c) {
    if (e == f) throw InvalidArgument("edges must be distinct, got '" + e + "' twice");
    if (!g.has_edge(f) || g.edge(f).is_loop()) throw InvalidArgument("edge '" + f + "' is unknown or a loop");
    Verdict v = verify_phi(g, e, c);
    if (!v.accepted()) throw InvalidArgument("Phi certificate does not verify:\n" + v.to_text());

    ResidualReport r;
    for (const auto& en : c.entries) {
        const Polynomial ys = Polynomial::of_set(en.outer);
        Polynomial p0, p1, all;
        for (const auto& t : en.inner) {
            Polynomial m = Polynomial::of_set(t.forest - en.outer);
            if (en.sign(t.cycle) < 0) m = -m;
            all += m;
            if (en.outer.contains(f)) continue;
            if (t.forest.contains(f)) p1 += coeff_extract(m, f, 1);
            else p0 += m;
        }
        if (en.outer.contains(f)) {
            r.squares += Polynomial::of_set(en.outer.without(f)) * (all * all);
        } else {
            r.degree0 += ys * (p0 * p0);
            r.degree2 += ys * (p1 * p1);
            r.cross += ys * (p0 * p1);
        }
    }

    const Polynomial z = forest_poly(g);
    const Polynomial ze = partial(z, e);
    const Polynomial zef = partial(ze, f);
    r.residual = r.cross - (delete_var(delete_var(z, e), f) * zef - delete_var(ze, f) * zef);
    r.squares_equal_delta = r.squares == rayleigh_difference(z, e, f);

    const MultiGraph del = delete_edge(g, f);
    PhiCert c0 = cert_delete(c, g, f);
    r.degree0_verified = c0.expand() == r.degree0 && verify_phi(del, e, c0).accepted();

    const MultiGraph con = contract_edge(g, f);
    if (con.edge(e).is_loop()) {
        r.degree2_verified = r.degree2.is_zero();
    } else {
        PhiCert c2 = cert_contract(c, g, f);
        r.degree2_verified = c2.expand() == r.degree2 && verify_phi(con, e, c2).accepted();
    }
    return r;
}

}  // namespace forestsos
