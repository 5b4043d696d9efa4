#pragma once

// Test-only reference implementations. Nothing here calls into the library
// except for the MultiGraph value type and Polynomial arithmetic.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "forestsos/multigraph.hpp"
#include "forestsos/polynomial.hpp"
#include "forestsos/series_parallel.hpp"

namespace oracle {

using forestsos::EdgeId;
using forestsos::EdgeSet;
using forestsos::MultiGraph;
using forestsos::Polynomial;
using forestsos::Rational;

// ---- graph generation ----

/// Every multigraph with at most `max_edges` edges and `max_vertices`
/// vertices, no isolated vertices, one representative per isomorphism
/// class. Loops and parallel edges included. Edges are named a, b, c, ...
/// The empty graph is not included.
std::vector<MultiGraph> all_graphs(std::size_t max_edges, int max_vertices);

/// Canonical form under arbitrary vertex relabelling, ignoring edge names.
std::string unlabeled_form(const MultiGraph& g);

// ---- matroid basics, written from scratch ----

/// Rank of the edge subset by union-find.
std::size_t rank_of(const MultiGraph& g, const std::vector<std::size_t>& edges);
std::vector<std::size_t> bits(std::uint64_t mask);

/// Sum over acyclic subsets, by subset enumeration.
Polynomial forest_poly(const MultiGraph& g);
/// Sum over spanning trees, by subset enumeration.
Polynomial tree_poly(const MultiGraph& g);

/// Weighted matrix-tree theorem: determinant of the reduced Laplacian.
Rational tree_sum(const MultiGraph& g, const std::map<EdgeId, Rational>& weights);

/// Z_e Z_f - Z Z_ef computed by evaluating the four minors separately.
Polynomial delta_by_minors(const MultiGraph& g, const EdgeId& e, const EdgeId& f);

// ---- index sets by subset enumeration ----

struct Indexed {
    EdgeSet forest;
    EdgeSet cycle;
    friend auto operator<=>(const Indexed&, const Indexed&) = default;
};

/// outer set -> sorted list of (forest, cycle).
using IndexMap = std::map<EdgeSet, std::vector<Indexed>>;

IndexMap delta_index(const MultiGraph& g, const EdgeId& e, const EdgeId& f);
IndexMap phi_index(const MultiGraph& g, const EdgeId& e);

// ---- series-parallel reference ----

/// No K4 minor, decided by exhaustive deletion/contraction.
bool has_k4_minor(const MultiGraph& g);

/// Recipes with at most `max_extensions` extension steps from K3 and (K3)*.
/// `labelled` keeps one recipe per edge-name-preserving class of the
/// resulting graph; otherwise one per unlabelled class.
std::vector<forestsos::SpRecipe> recipes_up_to(std::size_t max_extensions, bool labelled = false);

}  // namespace oracle
