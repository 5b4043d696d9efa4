#pragma once

#include <compare>
#include <initializer_list>
#include <string>
#include <vector>

namespace forestsos {

/// Edge label. Unique within one MultiGraph.
using EdgeId = std::string;

/// Sorted, duplicate-free set of edge names.
///
/// Ordering is canonical: smaller sets first, then lexicographic on the
/// sorted names. Every container of edge sets in the library is kept in
/// this order so that output is reproducible byte for byte.
class EdgeSet {
public:
    EdgeSet() = default;
    EdgeSet(std::initializer_list<EdgeId> names);
    explicit EdgeSet(std::vector<EdgeId> names);

    bool contains(const EdgeId& name) const;
    bool empty() const noexcept { return names_.empty(); }
    std::size_t size() const noexcept { return names_.size(); }

    const std::vector<EdgeId>& names() const noexcept { return names_; }
    auto begin() const noexcept { return names_.begin(); }
    auto end() const noexcept { return names_.end(); }

    EdgeSet with(const EdgeId& name) const;
    EdgeSet without(const EdgeId& name) const;

    bool is_subset_of(const EdgeSet& other) const;
    bool intersects(const EdgeSet& other) const;

    friend EdgeSet operator|(const EdgeSet& a, const EdgeSet& b);
    friend EdgeSet operator&(const EdgeSet& a, const EdgeSet& b);
    friend EdgeSet operator-(const EdgeSet& a, const EdgeSet& b);
    /// Symmetric difference.
    friend EdgeSet operator^(const EdgeSet& a, const EdgeSet& b);

    friend bool operator==(const EdgeSet&, const EdgeSet&) = default;
    friend std::strong_ordering operator<=>(const EdgeSet& a, const EdgeSet& b);

    /// `{a,b,c}`; the empty set prints as `{}`.
    std::string to_string() const;
    static EdgeSet parse(const std::string& text);

private:
    std::vector<EdgeId> names_;
};

/// True for names made of `[A-Za-z0-9_.]`, non-empty.
bool is_valid_edge_name(const std::string& name);

}  // namespace forestsos
