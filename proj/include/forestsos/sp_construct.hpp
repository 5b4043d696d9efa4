#pragma once

#include <map>
#include <string>
#include <utility>

#include "forestsos/certificate.hpp"
#include "forestsos/series_parallel.hpp"

namespace forestsos {

/// Delta certificates for every pair of non-loop edges and Phi
/// certificates for every non-loop edge of one graph.
struct CertPair {
    MultiGraph graph;
    /// Keyed by (e, f) with e < f.
    std::map<std::pair<EdgeId, EdgeId>, DeltaCert> delta;
    std::map<EdgeId, PhiCert> phi;

    /// Certificate for the unordered pair, reported with the edges in the
    /// order asked for.
    DeltaCert delta_for(const EdgeId& e, const EdgeId& f) const;
    const PhiCert& phi_for(const EdgeId& e) const;
    /// Verifies every certificate against `graph`; throws CompositionError
    /// with the first failing verdict.
    void verify_all(bool completeness) const;
};

/// Skeleton certificates of K3 or (K3)* with every sign +1.
CertPair base_certs(SpBase which, const std::array<EdgeId, 3>& names);

// Minor steps. `g` is the graph the certificate belongs to.
DeltaCert cert_delete(const DeltaCert& c, const MultiGraph& g, const EdgeId& x);
DeltaCert cert_contract(const DeltaCert& c, const MultiGraph& g, const EdgeId& x);
PhiCert cert_delete(const PhiCert& c, const MultiGraph& g, const EdgeId& x);
PhiCert cert_contract(const PhiCert& c, const MultiGraph& g, const EdgeId& x);

/// Every A-set joined with every forest of k; the result belongs to the
/// direct sum of h and k.
DeltaCert cert_direct_sum(const DeltaCert& c, const MultiGraph& h, const MultiGraph& k);
PhiCert cert_direct_sum(const PhiCert& c, const MultiGraph& h, const MultiGraph& k);

/// From Delta H{e,glue} and Delta K{glue,f}: Delta G{e,f} for G = H (+)_glue K.
DeltaCert cert_cross_two_sum(const DeltaCert& ch, const MultiGraph& h, const DeltaCert& ck, const MultiGraph& k,
                             const EdgeId& glue);

/// From Delta H{e,f} and Phi K{glue}: Delta G{e,f} for G = H (+)_glue K.
DeltaCert cert_same_side_two_sum(const DeltaCert& ch, const MultiGraph& h, const PhiCert& ck, const MultiGraph& k,
                                 const EdgeId& glue);

/// From Phi H{e} and Phi K{glue}: Phi G{e} for G = H (+)_glue K.
PhiCert phi_cert_two_sum(const PhiCert& ch, const MultiGraph& h, const PhiCert& ck, const MultiGraph& k,
                         const EdgeId& glue);

DeltaCert rename_edge(const DeltaCert& c, const EdgeId& from, const EdgeId& to, const std::string& graph_id);
PhiCert rename_edge(const PhiCert& c, const EdgeId& from, const EdgeId& to, const std::string& graph_id);

/// One recipe step applied to a full certificate set. Every produced
/// certificate is verified before it is returned.
CertPair extend(const CertPair& p, const SpStep& step);

CertPair construct_from_recipe(const SpRecipe& recipe);

/// Certificates for every admissible pair and edge of a series-parallel
/// graph. Throws NotSeriesParallelError otherwise.
CertPair construct_all(const MultiGraph& g);

DeltaCert construct_delta(const MultiGraph& g, const EdgeId& e, const EdgeId& f);
PhiCert construct_phi(const MultiGraph& g, const EdgeId& e);

/// Split of a Phi G{e} certificate by the degree of y_f.
struct ResidualReport {
    Polynomial degree0;
    Polynomial degree2;
    /// Terms whose Q-set contains f, divided by y_f.
    Polynomial squares;
    /// Cross terms of the Q-sets avoiding f, divided by 2 y_f.
    Polynomial cross;
    /// cross - (G^ef G_ef - G_e^f G_ef)
    Polynomial residual;
    bool degree0_verified = false;
    bool degree2_verified = false;
    bool squares_equal_delta = false;

    bool residual_zero() const { return residual.is_zero(); }
    std::string to_text() const;
};

/// Throws InvalidArgument when c does not verify for (g, e).
ResidualReport cross_term_residual(const MultiGraph& g, const EdgeId& e, const EdgeId& f, const PhiCert& c);

}  // namespace forestsos
