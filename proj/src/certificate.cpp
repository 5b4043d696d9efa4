#include "forestsos/certificate.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "forestsos/error.hpp"
#include "forestsos/rayleigh.hpp"

namespace forestsos {

int CertEntry::sign(const EdgeSet& cycle) const {
    auto it = signs.find(cycle);
    if (it == signs.end()) throw InvalidArgument("no sign for cycle " + cycle.to_string() + " under " + outer.to_string());
    return it->second;
}

const CertEntry* SosCert::find(const EdgeSet& outer) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), outer,
                               [](const CertEntry& a, const EdgeSet& o) { return a.outer < o; });
    if (it == entries.end() || it->outer != outer) return nullptr;
    return &*it;
}

void SosCert::normalize() {
    for (auto& en : entries) std::sort(en.inner.begin(), en.inner.end());
    std::sort(entries.begin(), entries.end(), [](const CertEntry& a, const CertEntry& b) { return a.outer < b.outer; });
}

std::size_t SosCert::inner_count() const {
    std::size_t n = 0;
    for (const auto& en : entries) n += en.inner.size();
    return n;
}

Polynomial SosCert::expand() const {
    std::vector<Polynomial> parts;
    parts.reserve(entries.size());
    for (const auto& en : entries) {
        std::vector<std::pair<Monomial, Integer>> terms;
        terms.reserve(en.inner.size());
        for (const auto& t : en.inner) {
            if (!en.outer.is_subset_of(t.forest))
                throw InvalidArgument("outer set " + en.outer.to_string() + " not inside " + t.forest.to_string());
            terms.emplace_back(Monomial::of(t.forest - en.outer), en.sign(t.cycle));
        }
        const Polynomial inner = Polynomial::from_terms(terms);
        parts.push_back(Polynomial::of_set(en.outer) * (inner * inner));
    }
    return Polynomial::sum(parts);
}

// ---- index sets ----

namespace {

struct Closed {
    EdgeMask forest;
    EdgeMask cycle;
};

/// Forests A avoiding `base` such that A + base holds exactly one cycle and
/// that cycle contains all of `base`.
std::vector<Closed> closing_forests(const MultiGraph& g, EdgeMask base) {
    std::vector<Closed> out;
    for (EdgeMask a : forest_masks(g, g.all_edges() & ~base)) {
        EdgeMask m = a | base;
        if (nullity(g, m) != 1) continue;
        auto c = unique_cycle(g, m);
        if (c && (*c & base) == base) out.push_back({a, *c});
    }
    return out;
}

EdgeMask base_mask(const MultiGraph& g, const EdgeId& e, const EdgeId* f) {
    EdgeMask m = EdgeMask{1} << g.index_of(e);
    if (f) m |= EdgeMask{1} << g.index_of(*f);
    return m;
}

std::vector<EdgeSet> outer_sets(const MultiGraph& g, EdgeMask base, bool nonempty) {
    std::set<EdgeMask> found;
    for (const auto& c : closing_forests(g, base)) {
        EdgeMask free = c.cycle & ~base;
        for (EdgeMask s = free;; s = (s - 1) & free) {
            if (s || !nonempty) found.insert(s);
            if (!s) break;
        }
    }
    std::vector<EdgeSet> out;
    for (EdgeMask s : found) out.push_back(g.names_of(s));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<InnerTerm> inner_terms(const MultiGraph& g, EdgeMask base, const EdgeSet& outer) {
    std::vector<InnerTerm> out;
    for (const auto& n : outer)
        if (!g.has_edge(n)) return out;
    EdgeMask s = g.mask_of(outer);
    if (s & base) return out;
    for (const auto& c : closing_forests(g, base))
        if ((c.cycle & s) == s) out.push_back({g.names_of(c.forest), g.names_of(c.cycle)});
    std::sort(out.begin(), out.end());
    return out;
}

void require_admissible(const MultiGraph& g, const EdgeId& e) {
    if (!g.has_edge(e)) throw InvalidArgument("unknown edge '" + e + "'");
    if (g.edge(e).is_loop()) throw InvalidArgument("edge '" + e + "' is a loop");
}

void require_admissible(const MultiGraph& g, const EdgeId& e, const EdgeId& f) {
    if (e == f) throw InvalidArgument("edges must be distinct, got '" + e + "' twice");
    require_admissible(g, e);
    require_admissible(g, f);
}

SosCert skeleton(const MultiGraph& g, EdgeMask base, bool nonempty) {
    SosCert c;
    c.graph_id = g.fingerprint();
    std::map<EdgeMask, CertEntry> by_outer;
    for (const auto& cl : closing_forests(g, base)) {
        EdgeMask free = cl.cycle & ~base;
        InnerTerm t{g.names_of(cl.forest), g.names_of(cl.cycle)};
        for (EdgeMask s = free;; s = (s - 1) & free) {
            if (s || !nonempty) {
                auto& en = by_outer[s];
                en.inner.push_back(t);
                en.signs[t.cycle] = 1;
            }
            if (!s) break;
        }
    }
    for (auto& [mask, en] : by_outer) {
        en.outer = g.names_of(mask);
        c.entries.push_back(std::move(en));
    }
    c.normalize();
    return c;
}

}  // namespace

std::vector<EdgeSet> s_sets(const MultiGraph& g, const EdgeId& e, const EdgeId& f) {
    require_admissible(g, e, f);
    return outer_sets(g, base_mask(g, e, &f), false);
}

std::vector<InnerTerm> a_sets(const MultiGraph& g, const EdgeSet& s, const EdgeId& e, const EdgeId& f) {
    require_admissible(g, e, f);
    return inner_terms(g, base_mask(g, e, &f), s);
}

std::vector<EdgeSet> q_sets(const MultiGraph& g, const EdgeId& e) {
    require_admissible(g, e);
    return outer_sets(g, base_mask(g, e, nullptr), true);
}

std::vector<InnerTerm> b_sets(const MultiGraph& g, const EdgeSet& q, const EdgeId& e) {
    require_admissible(g, e);
    if (q.empty()) return {};
    return inner_terms(g, base_mask(g, e, nullptr), q);
}

DeltaCert delta_skeleton(const MultiGraph& g, const EdgeId& e, const EdgeId& f) {
    require_admissible(g, e, f);
    DeltaCert c;
    static_cast<SosCert&>(c) = skeleton(g, base_mask(g, e, &f), false);
    c.e = e;
    c.f = f;
    return c;
}

PhiCert phi_skeleton(const MultiGraph& g, const EdgeId& e) {
    require_admissible(g, e);
    PhiCert c;
    static_cast<SosCert&>(c) = skeleton(g, base_mask(g, e, nullptr), true);
    c.e = e;
    return c;
}

bool lies_on_cycle(const MultiGraph& g, const EdgeSet& outer, const EdgeSet& base) {
    for (const auto& n : outer | base)
        if (!g.has_edge(n)) return false;
    EdgeMask want = g.mask_of(outer | base);
    for (EdgeMask c : cycle_masks(g))
        if ((c & want) == want) return true;
    return false;
}

// ---- verification ----

std::string Verdict::to_text() const {
    std::ostringstream out;
    out << "verdict " << (accepted() ? "verified" : "rejected") << '\n';
    for (const auto& p : problems) out << "problem " << p << '\n';
    out << "complete " << (complete ? "true" : "false") << '\n';
    out << "difference " << difference << '\n';
    return out.str();
}

namespace {

Verdict verify_common(const MultiGraph& g, EdgeMask base, bool nonempty, const SosCert& c,
                      const VerifyOptions& opts, const Polynomial& target) {
    Verdict v;
    auto problem = [&v](const std::string& s) { v.problems.push_back(s); };
    const EdgeSet base_names = g.names_of(base);

    std::set<EdgeSet> outers;
    for (const auto& en : c.entries) {
        const std::string where = "entry " + en.outer.to_string() + ": ";
        if (!outers.insert(en.outer).second) problem(where + "repeated outer set");
        if (nonempty && en.outer.empty()) problem(where + "outer set must be non-empty");
        bool known = true;
        for (const auto& n : en.outer)
            if (!g.has_edge(n)) known = false;
        if (!known || en.outer.intersects(base_names)) {
            problem(where + "outer set not inside the admissible edges");
            continue;
        }
        if (en.inner.empty() && !lies_on_cycle(g, en.outer, base_names))
            problem(where + "outer set lies on no cycle through the base edges");

        std::set<InnerTerm> seen;
        std::set<EdgeSet> cycles;
        for (const auto& t : en.inner) {
            const std::string at = where + t.forest.to_string() + " " + t.cycle.to_string() + ": ";
            if (!seen.insert(t).second) problem(at + "repeated inner term");
            cycles.insert(t.cycle);
            bool ok = true;
            for (const auto& n : t.forest)
                if (!g.has_edge(n)) ok = false;
            for (const auto& n : t.cycle)
                if (!g.has_edge(n)) ok = false;
            if (!ok) {
                problem(at + "unknown edge");
                continue;
            }
            EdgeMask a = g.mask_of(t.forest);
            if (a & base) problem(at + "forest meets the base edges");
            if (!is_forest(g, a)) problem(at + "not a forest");
            EdgeMask m = a | base;
            auto cyc = nullity(g, m) == 1 ? unique_cycle(g, m) : std::nullopt;
            if (!cyc) problem(at + "forest plus base edges does not hold exactly one cycle");
            else if (*cyc != g.mask_of(t.cycle)) problem(at + "listed cycle is not the unique cycle");
            if (!(en.outer | base_names).is_subset_of(t.cycle)) problem(at + "cycle misses the outer set");
            if (!en.outer.is_subset_of(t.forest)) problem(at + "outer set not inside the forest");
        }
        for (const auto& cy : cycles) {
            auto it = en.signs.find(cy);
            if (it == en.signs.end()) problem(where + "no sign for cycle " + cy.to_string());
            else if (it->second != 1 && it->second != -1) problem(where + "sign must be +1 or -1");
        }
        for (const auto& [cy, s] : en.signs)
            if (!cycles.count(cy)) problem(where + "sign for unused cycle " + cy.to_string());
    }

    if (opts.check_completeness) {
        SosCert full = skeleton(g, base, nonempty);
        for (const auto& en : full.entries) {
            const CertEntry* mine = c.find(en.outer);
            std::vector<InnerTerm> have;
            if (mine) {
                have = mine->inner;
                std::sort(have.begin(), have.end());
            } else {
                for (const auto& other : c.entries)
                    if (other.outer == en.outer) have = other.inner;
            }
            if (have != en.inner) v.complete = false;
        }
        for (const auto& en : c.entries)
            if (!en.inner.empty() && !full.find(en.outer)) v.complete = false;
    }

    v.target = target;
    if (v.problems.empty()) {
        v.expansion = c.expand();
        v.difference = v.expansion - target;
    } else {
        try {
            v.expansion = c.expand();
            v.difference = v.expansion - target;
        } catch (const InvalidArgument&) {
            v.difference = -target;
        }
    }
    return v;
}

}  // namespace

Verdict verify_delta(const MultiGraph& g, const EdgeId& e, const EdgeId& f, const DeltaCert& c,
                     const VerifyOptions& opts) {
    require_admissible(g, e, f);
    if (c.graph_id != g.fingerprint())
        throw InvalidArgument("certificate is for graph " + c.graph_id + ", not " + g.fingerprint());
    if (!((c.e == e && c.f == f) || (c.e == f && c.f == e)))
        throw InvalidArgument("certificate is for edges " + c.e + "," + c.f + ", not " + e + "," + f);
    Polynomial target = opts.target ? *opts.target : delta(g, e, f);
    return verify_common(g, base_mask(g, e, &f), false, c, opts, target);
}

Verdict verify_phi(const MultiGraph& g, const EdgeId& e, const PhiCert& c, const VerifyOptions& opts) {
    require_admissible(g, e);
    if (c.graph_id != g.fingerprint())
        throw InvalidArgument("certificate is for graph " + c.graph_id + ", not " + g.fingerprint());
    if (c.e != e) throw InvalidArgument("certificate is for edge " + c.e + ", not " + e);
    Polynomial target = opts.target ? *opts.target : phi(g, e);
    return verify_common(g, base_mask(g, e, nullptr), true, c, opts, target);
}

// ---- text format ----

namespace {

void write_entries(std::ostringstream& out, const SosCert& c) {
    for (const auto& en : c.entries) {
        out << "entry " << en.outer.to_string() << '\n';
        for (const auto& [cy, s] : en.signs) out << "sign " << cy.to_string() << ' ' << (s > 0 ? "+1" : "-1") << '\n';
        for (const auto& t : en.inner) out << "set " << t.forest.to_string() << ' ' << t.cycle.to_string() << '\n';
        out << "end\n";
    }
}

}  // namespace

std::string to_text(const DeltaCert& c) {
    std::ostringstream out;
    out << "kind delta\ngraph " << c.graph_id << "\nedges " << c.e << ' ' << c.f << '\n';
    write_entries(out, c);
    return out.str();
}

std::string to_text(const PhiCert& c) {
    std::ostringstream out;
    out << "kind phi\ngraph " << c.graph_id << "\nedges " << c.e << '\n';
    write_entries(out, c);
    return out.str();
}

std::variant<DeltaCert, PhiCert> parse_certificate(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line, kind, graph;
    std::vector<std::string> edges;
    std::vector<CertEntry> entries;
    CertEntry* open = nullptr;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> w;
        for (std::string s; ls >> s;) w.push_back(s);
        if (w.empty()) continue;
        auto arity = [&](std::size_t n) {
            if (w.size() != n) throw ParseError("'" + w[0] + "' expects " + std::to_string(n - 1) + " arguments", lineno);
        };
        auto set_of = [&](const std::string& s) {
            try {
                return EdgeSet::parse(s);
            } catch (const ParseError& e) {
                throw ParseError(e.what(), lineno);
            }
        };
        if (w[0] == "kind") {
            arity(2);
            if (w[1] != "delta" && w[1] != "phi") throw ParseError("unknown kind '" + w[1] + "'", lineno);
            kind = w[1];
        } else if (w[0] == "graph") {
            arity(2);
            graph = w[1];
        } else if (w[0] == "edges") {
            edges.assign(w.begin() + 1, w.end());
        } else if (w[0] == "entry") {
            arity(2);
            if (open) throw ParseError("entry inside entry", lineno);
            entries.push_back({set_of(w[1]), {}, {}});
            open = &entries.back();
        } else if (w[0] == "sign") {
            arity(3);
            if (!open) throw ParseError("sign outside entry", lineno);
            int s = w[2] == "+1" ? 1 : w[2] == "-1" ? -1 : 0;
            if (!s) throw ParseError("sign must be +1 or -1", lineno);
            if (!open->signs.emplace(set_of(w[1]), s).second) throw ParseError("repeated sign", lineno);
        } else if (w[0] == "set") {
            arity(3);
            if (!open) throw ParseError("set outside entry", lineno);
            open->inner.push_back({set_of(w[1]), set_of(w[2])});
        } else if (w[0] == "end") {
            arity(1);
            if (!open) throw ParseError("end without entry", lineno);
            open = nullptr;
        } else {
            throw ParseError("unknown statement '" + w[0] + "'", lineno);
        }
    }
    if (open) throw ParseError("unterminated entry");
    if (kind.empty()) throw ParseError("missing kind");
    if (graph.empty()) throw ParseError("missing graph");
    for (const auto& e : edges)
        if (!is_valid_edge_name(e)) throw ParseError("invalid edge name '" + e + "'");
    if (kind == "delta") {
        if (edges.size() != 2) throw ParseError("delta certificate needs two edges");
        DeltaCert c;
        c.graph_id = graph;
        c.e = edges[0];
        c.f = edges[1];
        c.entries = std::move(entries);
        return c;
    }
    if (edges.size() != 1) throw ParseError("phi certificate needs one edge");
    PhiCert c;
    c.graph_id = graph;
    c.e = edges[0];
    c.entries = std::move(entries);
    return c;
}

}  // namespace forestsos
