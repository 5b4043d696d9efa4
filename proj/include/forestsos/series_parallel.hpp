#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "forestsos/multigraph.hpp"

namespace forestsos {

enum class SpBase { kK3, kK3Star };

struct SpStep {
    enum class Kind { kSeries, kParallel, kDelete, kContract };

    Kind kind = Kind::kSeries;
    /// Existing edge the step acts on.
    EdgeId edge;
    /// Series: `edge` is replaced by the path `first`, `second`, with `second`
    /// at the first endpoint of `edge`. Parallel: `first` is the new edge.
    EdgeId first;
    EdgeId second;

    static SpStep series(EdgeId edge, EdgeId a, EdgeId b) { return {Kind::kSeries, std::move(edge), std::move(a), std::move(b)}; }
    static SpStep parallel(EdgeId edge, EdgeId added) { return {Kind::kParallel, std::move(edge), std::move(added), {}}; }
    static SpStep remove(EdgeId edge) { return {Kind::kDelete, std::move(edge), {}, {}}; }
    static SpStep contract(EdgeId edge) { return {Kind::kContract, std::move(edge), {}, {}}; }

    bool is_extension() const noexcept { return kind == Kind::kSeries || kind == Kind::kParallel; }
    std::string to_string() const;
    friend bool operator==(const SpStep&, const SpStep&) = default;
};

/// Base graph, extensions, then deletions and contractions.
struct SpRecipe {
    SpBase base = SpBase::kK3;
    std::array<EdgeId, 3> base_edges;
    std::vector<SpStep> steps;

    std::size_t extension_count() const;
    /// Throws InvalidArgument when a minor step precedes an extension.
    void validate() const;
    std::string to_string() const;
    static SpRecipe parse(std::string_view text);
    friend bool operator==(const SpRecipe&, const SpRecipe&) = default;
};

MultiGraph base_graph(SpBase base, const std::array<EdgeId, 3>& names);
MultiGraph apply_step(const MultiGraph& g, const SpStep& step);
MultiGraph replay(const SpRecipe& recipe);

/// Fresh edge name of the form `<prefix><n>` not used by `g`.
EdgeId fresh_name(const MultiGraph& g, const std::string& prefix, std::size_t& counter);

/// One block of a decomposed graph: its recipe, and where each vertex of
/// the replayed recipe sits in the original graph.
struct SpPart {
    SpRecipe recipe;
    std::vector<int> vertex_map;
};

struct SpDecomposition {
    int vertex_count = 0;
    std::vector<SpPart> parts;

    std::string to_string() const;
};

/// Gluing the replayed parts at their mapped vertices.
MultiGraph replay(const SpDecomposition& d);

struct NotSeriesParallel {
    /// Edges of the irreducible 2-connected core found in one block.
    EdgeSet core;
};

/// Splits g into blocks and reduces each 2-connected block by series and
/// parallel reductions down to K3 or (K3)*. Bridges, loops and digons get
/// short recipes that end in minor steps.
std::variant<SpDecomposition, NotSeriesParallel> sp_decompose(const MultiGraph& g);

/// Random base, then a uniform number of extensions in [0, max_steps], each
/// chosen uniformly among the applicable series/parallel steps, then up to
/// `max_minors` uniformly chosen deletions or contractions without
/// exceeding `max_steps` in total. Edges are named e0, e1, ...
SpRecipe random_recipe(std::mt19937_64& rng, std::size_t max_steps, std::size_t max_minors);

}  // namespace forestsos
