#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "forestsos/edge_set.hpp"

namespace forestsos {

struct Edge {
    EdgeId name;
    int u = 0;
    int v = 0;

    bool is_loop() const noexcept { return u == v; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Bit i stands for the edge at index i of a particular graph.
using EdgeMask = std::uint64_t;

inline constexpr std::size_t kMaxEdges = 64;

/// Multigraph with named edges; loops and parallel edges are allowed.
///
/// Vertices are anonymous integers `0..vertex_count()-1`. Only edge names
/// carry identity, so isomorphism in this library always means an
/// isomorphism that fixes every edge name. Values are immutable: every
/// structural operation returns a new graph.
class MultiGraph {
public:
    MultiGraph() = default;
    /// Throws InvalidArgument on duplicate names, bad endpoints or more
    /// than kMaxEdges edges.
    MultiGraph(int vertex_count, std::vector<Edge> edges);

    /// Triangle: a=(0,1), b=(1,2), c=(2,0).
    static MultiGraph k3(const EdgeId& a, const EdgeId& b, const EdgeId& c);
    /// Three parallel edges between vertices 0 and 1.
    static MultiGraph k3_star(const EdgeId& a, const EdgeId& b, const EdgeId& c);

    int vertex_count() const noexcept { return vertex_count_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Edge& edge(std::size_t index) const { return edges_.at(index); }
    const Edge& edge(const EdgeId& name) const { return edges_[index_of(name)]; }

    bool has_edge(const EdgeId& name) const { return index_.count(name) != 0; }
    std::optional<std::size_t> find(const EdgeId& name) const;
    /// Throws InvalidArgument for unknown names.
    std::size_t index_of(const EdgeId& name) const;

    EdgeSet edge_names() const;
    EdgeMask all_edges() const noexcept;
    EdgeMask mask_of(const EdgeSet& names) const;
    EdgeSet names_of(EdgeMask mask) const;

    /// Complete invariant under edge-name-preserving isomorphism: the sorted
    /// multiset of per-vertex incidence lists.
    std::string canonical_form() const;
    /// Short stable hash of canonical_form(), used as a graph id.
    std::string fingerprint() const;

    /// Structural equality: same vertex numbering and same edge sequence.
    friend bool operator==(const MultiGraph& a, const MultiGraph& b) {
        return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
    }

private:
    int vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::unordered_map<EdgeId, std::size_t> index_;
};

/// Edge-name-preserving isomorphism test.
bool isomorphic(const MultiGraph& a, const MultiGraph& b);

/// Vertex map taking `from` onto `to` (an edge-name-preserving
/// isomorphism), or nullopt when the graphs are not isomorphic.
std::optional<std::vector<int>> find_isomorphism(const MultiGraph& from, const MultiGraph& to);

MultiGraph delete_edge(const MultiGraph& g, const EdgeId& e);
MultiGraph delete_edges(const MultiGraph& g, const EdgeSet& edges);
/// Identifies the endpoints of `e` and removes it. The surviving vertex is
/// the smaller endpoint; higher vertex ids shift down by one. Loops are
/// rejected.
MultiGraph contract_edge(const MultiGraph& g, const EdgeId& e);
MultiGraph rename_edge(const MultiGraph& g, const EdgeId& from, const EdgeId& to);

/// Two-sum along `glue`: the first endpoint of `glue` in `k` is identified
/// with the first endpoint in `h`, the second with the second, then `glue`
/// is dropped. Vertices of `h` keep their ids; the remaining vertices of `k`
/// follow in order.
MultiGraph two_sum(const MultiGraph& h, const MultiGraph& k, const EdgeId& glue);

/// Disjoint union; the forest polynomial of the result is the product of
/// the factors' forest polynomials.
MultiGraph direct_sum(const MultiGraph& h, const MultiGraph& k);

// ---- matroid queries on edge subsets ----

std::size_t rank(const MultiGraph& g, EdgeMask mask);
inline std::size_t nullity(const MultiGraph& g, EdgeMask mask) {
    return static_cast<std::size_t>(__builtin_popcountll(mask)) - rank(g, mask);
}
bool is_forest(const MultiGraph& g, EdgeMask mask);
/// True when the endpoints of edge `index` are joined by a path in `mask`
/// (a loop is always spanned).
bool spans(const MultiGraph& g, EdgeMask mask, std::size_t index);
/// When `mask` contains exactly one cycle, returns that cycle.
std::optional<EdgeMask> unique_cycle(const MultiGraph& g, EdgeMask mask);
bool is_connected(const MultiGraph& g);

/// Every acyclic subset of `within` (default: all edges), ascending.
std::vector<EdgeMask> forest_masks(const MultiGraph& g, std::optional<EdgeMask> within = {});
/// Edge sets of all simple cycles: loops, parallel pairs and longer cycles.
/// Exponential in the number of cycles.
std::vector<EdgeMask> cycle_masks(const MultiGraph& g);

std::vector<EdgeSet> enumerate_forests(const MultiGraph& g);
std::vector<EdgeSet> enumerate_cycles(const MultiGraph& g);

/// Biconnected components as edge-index lists. Each loop and each bridge is
/// its own block. Blocks are ordered by their smallest edge index.
std::vector<std::vector<std::size_t>> blocks(const MultiGraph& g);

// ---- text format ----
//
//   # comment
//   vertices 3
//   edge e 0 1

MultiGraph parse_graph(std::string_view text);
MultiGraph read_graph_file(const std::string& path);
std::string format_graph(const MultiGraph& g);

}  // namespace forestsos
