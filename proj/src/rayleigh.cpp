#include "forestsos/rayleigh.hpp"

#include <sstream>

#include "forestsos/error.hpp"

namespace forestsos {

Polynomial forest_poly(const MultiGraph& g) {
    std::vector<std::pair<Monomial, Integer>> terms;
    for (EdgeMask m : forest_masks(g)) terms.emplace_back(Monomial::of(g.names_of(m)), 1);
    return Polynomial::from_terms(terms);
}

Polynomial tree_poly(const MultiGraph& g) {
    if (!is_connected(g)) throw InvalidArgument("disconnected graph has no spanning tree");
    const std::size_t r = static_cast<std::size_t>(g.vertex_count() > 0 ? g.vertex_count() - 1 : 0);
    std::vector<std::pair<Monomial, Integer>> terms;
    for (EdgeMask m : forest_masks(g))
        if (static_cast<std::size_t>(__builtin_popcountll(m)) == r) terms.emplace_back(Monomial::of(g.names_of(m)), 1);
    return Polynomial::from_terms(terms);
}

Polynomial rayleigh_difference(const Polynomial& z, const EdgeId& e, const EdgeId& f) {
    Polynomial ze = partial(z, e);
    return ze * partial(z, f) - z * partial(ze, f);
}

Polynomial phi_of(const Polynomial& z, const EdgeId& e) {
    Polynomial ze = partial(z, e);
    return (delete_var(z, e) - ze) * ze;
}

Polynomial psi_of(const Polynomial& z, const EdgeId& e, const EdgeId& f) {
    Polynomial ze = partial(z, e);
    Polynomial zf = partial(z, f);
    Polynomial zef = partial(ze, f);
    Polynomial ze_f = delete_var(ze, f);
    return delete_var(zf, e) * ze_f + delete_var(delete_var(z, e), f) * zef - Integer(2) * ze_f * zef;
}

namespace {

void require_edge(const MultiGraph& g, const EdgeId& e) {
    if (!g.has_edge(e)) throw InvalidArgument("unknown edge '" + e + "'");
    if (g.edge(e).is_loop()) throw InvalidArgument("edge '" + e + "' is a loop");
}

void require_pair(const MultiGraph& g, const EdgeId& e, const EdgeId& f) {
    if (e == f) throw InvalidArgument("edges must be distinct, got '" + e + "' twice");
    require_edge(g, e);
    require_edge(g, f);
}

std::vector<EdgeId> non_loop_edges(const MultiGraph& g) {
    std::vector<EdgeId> out;
    for (const auto& edge : g.edges())
        if (!edge.is_loop()) out.push_back(edge.name);
    return out;
}

}  // namespace

Polynomial delta(const MultiGraph& g, const EdgeId& e, const EdgeId& f) {
    require_pair(g, e, f);
    return rayleigh_difference(forest_poly(g), e, f);
}

Polynomial phi(const MultiGraph& g, const EdgeId& e) {
    require_edge(g, e);
    return phi_of(forest_poly(g), e);
}

Polynomial psi(const MultiGraph& g, const EdgeId& e, const EdgeId& f) {
    require_pair(g, e, f);
    return psi_of(forest_poly(g), e, f);
}

// ---- identity checks ----

std::size_t IdentityReport::total_checked() const {
    std::size_t n = 0;
    for (const auto& [name, count] : checked) n += count;
    return n;
}

void IdentityReport::record(const std::string& identity, const std::string& context, const Polynomial& lhs,
                            const Polynomial& rhs) {
    ++checked[identity];
    if (!(lhs == rhs)) failures.push_back({identity, context, lhs - rhs});
}

void IdentityReport::merge(const IdentityReport& other) {
    for (const auto& [name, count] : other.checked) checked[name] += count;
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
}

std::string IdentityReport::to_text() const {
    std::ostringstream out;
    for (const auto& [name, count] : checked) out << "checked " << name << ' ' << count << '\n';
    for (const auto& fail : failures)
        out << "failed " << fail.identity << " [" << fail.context << "] difference " << fail.difference << '\n';
    out << "verdict " << (all_hold() ? "all-hold" : "violated") << '\n';
    return out.str();
}

IdentityReport check_identities(const MultiGraph& g, unsigned families) {
    auto wants = [families](Identity id) { return (families & static_cast<unsigned>(id)) != 0; };
    IdentityReport report;
    const Polynomial z = forest_poly(g);
    const auto edges = non_loop_edges(g);

    std::map<EdgeId, Polynomial> deleted, contracted;
    for (const auto& x : edges) {
        deleted[x] = forest_poly(delete_edge(g, x));
        contracted[x] = forest_poly(contract_edge(g, x));
    }

    if (wants(Identity::kDecomposition))
        for (const auto& x : edges)
            report.record("decomposition", x, z, deleted[x] + Polynomial::variable(x) * contracted[x]);

    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = 0; j < edges.size(); ++j) {
            if (i == j) continue;
            const EdgeId& e = edges[i];
            const EdgeId& f = edges[j];
            const std::string ctx = e + "," + f;
            const Polynomial d = rayleigh_difference(z, e, f);
            const Polynomial ze = partial(z, e);
            const Polynomial zef = partial(ze, f);
            const Polynomial z_ef = delete_var(delete_var(z, e), f);
            const Polynomial ze_f = delete_var(ze, f);

            if (i < j && wants(Identity::kDeltaSplit))
                report.record("delta-split", ctx, d, ze_f * delete_var(partial(z, f), e) - z_ef * zef);
            if (wants(Identity::kPhiMinor)) {
                Polynomial yf = Polynomial::variable(f);
                report.record("phi-minor", ctx, phi_of(z, e),
                              phi_of(deleted[f], e) + yf * psi_of(z, e, f) + yf * yf * phi_of(contracted[f], e));
            }
            if (wants(Identity::kNewId))
                report.record("new-id", ctx, psi_of(z, e, f), d + Integer(2) * (z_ef * zef - ze_f * zef));
            if (i > j) continue;
            for (const auto& x : edges) {
                if (x == e || x == f) continue;
                const std::string tctx = ctx + "," + x;
                if (wants(Identity::kDeletionLimit))
                    report.record("deletion-limit", tctx, coeff_extract(d, x, 0),
                                  rayleigh_difference(deleted[x], e, f));
                if (wants(Identity::kContractionLimit))
                    report.record("contraction-limit", tctx, coeff_extract(d, x, 2),
                                  rayleigh_difference(contracted[x], e, f));
            }
        }
    }
    return report;
}

namespace {

/// Same-side and Phi substitution identities for pairs inside `h`.
void same_side(IdentityReport& report, const MultiGraph& h, const MultiGraph& k, const EdgeId& glue,
               const Polynomial& zg, const std::string& side) {
    const Polynomial zh = forest_poly(h);
    const Polynomial zk = forest_poly(k);
    const Polynomial kg = partial(zk, glue);
    const Polynomial num = delete_var(zk, glue) - kg;
    const auto edges = non_loop_edges(h);
    for (const auto& e : edges) {
        if (e == glue) continue;
        report.record("phi-two-sum", side + ":" + e, substitute_rational(phi_of(zh, e), glue, num, kg, 2),
                      phi_of(zg, e));
        for (const auto& f : edges) {
            if (f == glue || f <= e) continue;
            report.record("same-side-two-sum", side + ":" + e + "," + f,
                          substitute_rational(rayleigh_difference(zh, e, f), glue, num, kg, 2),
                          rayleigh_difference(zg, e, f));
        }
    }
}

}  // namespace

IdentityReport check_two_sum_identities(const MultiGraph& h, const MultiGraph& k, const EdgeId& glue) {
    const MultiGraph g = two_sum(h, k, glue);
    const Polynomial zg = forest_poly(g);
    const Polynomial zh = forest_poly(h);
    const Polynomial zk = forest_poly(k);
    IdentityReport report;
    for (const auto& e : non_loop_edges(h)) {
        if (e == glue) continue;
        const Polynomial dh = rayleigh_difference(zh, e, glue);
        for (const auto& f : non_loop_edges(k)) {
            if (f == glue) continue;
            report.record("cross-two-sum", e + "," + f, rayleigh_difference(zg, e, f),
                          dh * rayleigh_difference(zk, glue, f));
        }
    }
    same_side(report, h, k, glue, zg, "H");
    same_side(report, k, h, glue, zg, "K");
    return report;
}

IdentityReport check_direct_sum_identities(const MultiGraph& h, const MultiGraph& k) {
    const MultiGraph g = direct_sum(h, k);
    const Polynomial zg = forest_poly(g);
    IdentityReport report;
    auto side = [&](const MultiGraph& a, const MultiGraph& b, const std::string& name) {
        const Polynomial za = forest_poly(a);
        const Polynomial zb = forest_poly(b);
        const Polynomial sq = zb * zb;
        const auto edges = non_loop_edges(a);
        for (const auto& e : edges) {
            report.record("direct-sum-phi", name + ":" + e, phi_of(zg, e), sq * phi_of(za, e));
            for (const auto& f : edges)
                if (e < f)
                    report.record("direct-sum-delta", name + ":" + e + "," + f, rayleigh_difference(zg, e, f),
                                  sq * rayleigh_difference(za, e, f));
        }
    };
    side(h, k, "H");
    side(k, h, "K");
    for (const auto& e : non_loop_edges(h))
        for (const auto& f : non_loop_edges(k))
            report.record("direct-sum-across", e + "," + f, rayleigh_difference(zg, e, f), Polynomial());
    return report;
}

// ---- sampling ----

Rational RayleighReport::minimum() const {
    if (samples.empty()) return 0;
    Rational best = samples.front().value;
    for (const auto& s : samples)
        if (s.value < best) best = s.value;
    return best;
}

std::optional<Sample> RayleighReport::counterexample() const {
    for (const auto& s : samples)
        if (sgn(s.value) < 0) return s;
    return std::nullopt;
}

std::string RayleighReport::to_text() const {
    std::ostringstream out;
    out << "graph " << graph_id << '\n';
    out << "edges " << e << ' ' << f << '\n';
    out << "delta " << difference << '\n';
    out << "negative_coefficients " << negative_coefficients << '\n';
    out << "samples " << samples.size() << '\n';
    out << "minimum " << minimum().get_str() << '\n';
    auto bad = counterexample();
    out << "nonnegative " << (bad ? "false" : "true") << '\n';
    if (bad) out << "counterexample " << bad->point.to_string() << " value " << bad->value.get_str() << '\n';
    return out.str();
}

RationalPoint random_positive_point(const std::vector<EdgeId>& names, std::mt19937_64& rng) {
    RationalPoint p;
    for (const auto& n : names) {
        unsigned long num = 1 + rng() % 100;
        unsigned long den = 1 + rng() % 100;
        p.set(n, Rational(num, den));
    }
    return p;
}

RayleighReport sample_nonnegativity(const MultiGraph& g, const EdgeId& e, const EdgeId& f, std::size_t trials,
                                    std::uint64_t seed) {
    if (trials == 0) throw InvalidArgument("at least one trial is required");
    RayleighReport r;
    r.graph_id = g.fingerprint();
    r.e = e;
    r.f = f;
    r.difference = delta(g, e, f);
    r.negative_coefficients = negative_term_count(r.difference);

    std::vector<EdgeId> names;
    for (const auto& edge : g.edges())
        if (edge.name != e && edge.name != f) names.push_back(edge.name);

    RationalPoint ones = RationalPoint::ones(names);
    r.samples.push_back({ones, evaluate(r.difference, ones)});
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        RationalPoint p = random_positive_point(names, rng);
        Rational v = evaluate(r.difference, p);
        r.samples.push_back({std::move(p), std::move(v)});
    }
    return r;
}

}  // namespace forestsos
