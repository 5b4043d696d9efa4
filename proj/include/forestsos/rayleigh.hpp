#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "forestsos/multigraph.hpp"
#include "forestsos/polynomial.hpp"

namespace forestsos {

/// Spanning-forest generating polynomial: one monomial per acyclic edge
/// subset. Loops never occur in a forest and so never appear.
Polynomial forest_poly(const MultiGraph& g);

/// Spanning-tree generating polynomial. Throws InvalidArgument when the graph
/// is disconnected.
Polynomial tree_poly(const MultiGraph& g);

// Operators on a polynomial Z in which y_e, y_f occur at most linearly.
// Subscripts are partial derivatives, superscripts evaluation at zero.

/// Z_e Z_f - Z Z_ef.
Polynomial rayleigh_difference(const Polynomial& z, const EdgeId& e, const EdgeId& f);
/// (Z^e - Z_e) Z_e.
Polynomial phi_of(const Polynomial& z, const EdgeId& e);
/// Z_f^e Z_e^f + Z^ef Z_ef - 2 Z_e^f Z_ef.
Polynomial psi_of(const Polynomial& z, const EdgeId& e, const EdgeId& f);

/// Forest Rayleigh difference of g at the edge pair. Throws InvalidArgument
/// when e == f, an edge is unknown, or either edge is a loop.
Polynomial delta(const MultiGraph& g, const EdgeId& e, const EdgeId& f);
Polynomial phi(const MultiGraph& g, const EdgeId& e);
Polynomial psi(const MultiGraph& g, const EdgeId& e, const EdgeId& f);

/// Outcome of a family of exact polynomial identity checks.
struct IdentityReport {
    struct Failure {
        std::string identity;
        std::string context;
        Polynomial difference;  ///< left side minus right side
    };

    /// Checks performed per identity name.
    std::map<std::string, std::size_t> checked;
    std::vector<Failure> failures;

    bool all_hold() const noexcept { return failures.empty(); }
    std::size_t total_checked() const;
    void record(const std::string& identity, const std::string& context, const Polynomial& lhs,
                const Polynomial& rhs);
    void merge(const IdentityReport& other);
    std::string to_text() const;
};

enum class Identity : unsigned {
    kDecomposition = 1u << 0,     ///< G = G^g + y_g G_g, with the minors' polynomials
    kDeltaSplit = 1u << 1,        ///< Delta = G_e^f G_f^e - G^ef G_ef
    kPhiMinor = 1u << 2,          ///< Phi G{e} = Phi G^f{e} + y_f Psi + y_f^2 Phi G_f{e}
    kNewId = 1u << 3,             ///< Psi = Delta + 2(G^ef G_ef - G_e^f G_ef)
    kDeletionLimit = 1u << 4,     ///< coefficient of y_g^0 in Delta is Delta of G\g
    kContractionLimit = 1u << 5,  ///< coefficient of y_g^2 in Delta is Delta of G/g
    kAll = (1u << 6) - 1,
};

constexpr unsigned operator|(Identity a, Identity b) {
    return static_cast<unsigned>(a) | static_cast<unsigned>(b);
}
constexpr unsigned operator|(unsigned a, Identity b) { return a | static_cast<unsigned>(b); }

/// Runs the selected single-graph identities over every admissible edge
/// tuple of g (non-loop, pairwise distinct).
IdentityReport check_identities(const MultiGraph& g, unsigned families = static_cast<unsigned>(Identity::kAll));

/// Identities for G = H (+)_glue K: the cross product rule, the same-side rule
/// with y_glue := K^glue / K_glue - 1, and the same substitution for Phi.
IdentityReport check_two_sum_identities(const MultiGraph& h, const MultiGraph& k, const EdgeId& glue);

/// Identities for the direct sum G = H (+) K: Delta G = K^2 Delta H,
/// Phi G = K^2 Phi H, and Delta G = 0 across the factors.
IdentityReport check_direct_sum_identities(const MultiGraph& h, const MultiGraph& k);

struct Sample {
    RationalPoint point;
    Rational value;
};

struct RayleighReport {
    std::string graph_id;
    EdgeId e, f;
    Polynomial difference;
    std::vector<Sample> samples;
    std::size_t negative_coefficients = 0;

    Rational minimum() const;
    /// First sample with a negative value, if any.
    std::optional<Sample> counterexample() const;
    std::string to_text() const;
};

/// Point with every listed variable set to num/den, num and den uniform in
/// [1, 100].
RationalPoint random_positive_point(const std::vector<EdgeId>& names, std::mt19937_64& rng);

/// Evaluates Delta g{e,f} at all-ones and then at `trials` seeded random
/// positive rational points.
RayleighReport sample_nonnegativity(const MultiGraph& g, const EdgeId& e, const EdgeId& f,
                                    std::size_t trials, std::uint64_t seed);

}  // namespace forestsos
