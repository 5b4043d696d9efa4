#pragma once

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "forestsos/multigraph.hpp"
#include "forestsos/polynomial.hpp"

namespace forestsos {

/// One inner index: a forest (A-set or B-set) and the unique cycle it closes
/// together with the distinguished edges.
struct InnerTerm {
    EdgeSet forest;
    EdgeSet cycle;

    friend bool operator==(const InnerTerm&, const InnerTerm&) = default;
    friend auto operator<=>(const InnerTerm& a, const InnerTerm& b) {
        if (auto c = a.cycle <=> b.cycle; c != 0) return c;
        return a.forest <=> b.forest;
    }
};

/// y^outer * (sum over inner of sign(cycle) * y^(forest - outer))^2.
struct CertEntry {
    EdgeSet outer;
    std::vector<InnerTerm> inner;
    /// Sign per cycle; every cycle of `inner` must have one.
    std::map<EdgeSet, int> signs;

    int sign(const EdgeSet& cycle) const;
    friend bool operator==(const CertEntry&, const CertEntry&) = default;
};

/// Common body of Delta and Phi certificates.
struct SosCert {
    std::string graph_id;
    std::vector<CertEntry> entries;

    const CertEntry* find(const EdgeSet& outer) const;
    /// Sorts entries by outer set and inner terms canonically.
    void normalize();
    std::size_t inner_count() const;
    /// Exact right-hand side. Throws InvalidArgument if a cycle lacks a sign
    /// or an outer set is not inside its forest.
    Polynomial expand() const;
    friend bool operator==(const SosCert&, const SosCert&) = default;
};

/// Delta G{e,f} = sum_S y^S (sum_A c(S,C) y^(A-S))^2.
struct DeltaCert : SosCert {
    EdgeId e, f;
    friend bool operator==(const DeltaCert&, const DeltaCert&) = default;
};

/// Phi G{e} = sum_Q y^Q (sum_B d(Q,D) y^(B-Q))^2, with Q non-empty.
struct PhiCert : SosCert {
    EdgeId e;
    friend bool operator==(const PhiCert&, const PhiCert&) = default;
};

// ---- index sets ----
//
// A-sets: forests A inside E-ef such that A+ef contains exactly one cycle C,
// and S+ef lies in C. B-sets likewise with the single edge e, and Q != {}.

std::vector<EdgeSet> s_sets(const MultiGraph& g, const EdgeId& e, const EdgeId& f);
std::vector<InnerTerm> a_sets(const MultiGraph& g, const EdgeSet& s, const EdgeId& e, const EdgeId& f);
std::vector<EdgeSet> q_sets(const MultiGraph& g, const EdgeId& e);
std::vector<InnerTerm> b_sets(const MultiGraph& g, const EdgeSet& q, const EdgeId& e);

/// Every S-set with its full A-list, all signs +1.
DeltaCert delta_skeleton(const MultiGraph& g, const EdgeId& e, const EdgeId& f);
PhiCert phi_skeleton(const MultiGraph& g, const EdgeId& e);

/// True when `outer` + `base` is contained in some cycle of g.
bool lies_on_cycle(const MultiGraph& g, const EdgeSet& outer, const EdgeSet& base);

// ---- verification ----

struct Verdict {
    /// Structural invariant violations; empty when the certificate is well formed.
    std::vector<std::string> problems;
    /// Every inner list equals the enumerated A-list (B-list) of its outer
    /// set and every outer set is present. Reported, not part of acceptance.
    bool complete = true;
    Polynomial expansion;
    Polynomial target;
    /// expansion - target
    Polynomial difference;

    bool accepted() const { return problems.empty() && difference.is_zero(); }
    std::string to_text() const;
};

struct VerifyOptions {
    bool check_completeness = true;
    /// Precomputed Delta (or Phi) to compare against; computed when null.
    const Polynomial* target = nullptr;
};

/// Throws InvalidArgument when the certificate context does not match
/// (g, e, f).
Verdict verify_delta(const MultiGraph& g, const EdgeId& e, const EdgeId& f, const DeltaCert& c,
                     const VerifyOptions& opts = {});
Verdict verify_phi(const MultiGraph& g, const EdgeId& e, const PhiCert& c, const VerifyOptions& opts = {});

// ---- text format ----
//
//   kind delta
//   graph 52eb68f50bba3423
//   edges e f
//   entry {g}
//   sign {e,f,g} +1
//   set {g} {e,f,g}
//   end

std::string to_text(const DeltaCert& c);
std::string to_text(const PhiCert& c);
std::variant<DeltaCert, PhiCert> parse_certificate(std::string_view text);

}  // namespace forestsos
