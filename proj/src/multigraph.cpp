#include "forestsos/multigraph.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "forestsos/error.hpp"

namespace forestsos {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    /// False when a and b were already joined.
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[b] = a;
        return true;
    }

private:
    std::vector<int> parent_;
};

std::vector<std::multiset<EdgeId>> incidence(const MultiGraph& g) {
    std::vector<std::multiset<EdgeId>> sig(static_cast<std::size_t>(g.vertex_count()));
    for (const auto& e : g.edges()) {
        sig[e.u].insert(e.name);
        sig[e.v].insert(e.name);
    }
    return sig;
}

std::string signature_text(const std::multiset<EdgeId>& s) {
    std::string out = "[";
    bool first = true;
    for (const auto& n : s) {
        if (!first) out += ',';
        out += n;
        first = false;
    }
    return out + "]";
}

}  // namespace

MultiGraph::MultiGraph(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
    if (vertex_count_ < 0) throw InvalidArgument("negative vertex count");
    if (edges_.size() > kMaxEdges)
        throw InvalidArgument("at most " + std::to_string(kMaxEdges) + " edges are supported");
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto& e = edges_[i];
        if (!is_valid_edge_name(e.name)) throw InvalidArgument("invalid edge name '" + e.name + "'");
        if (e.u < 0 || e.v < 0 || e.u >= vertex_count_ || e.v >= vertex_count_)
            throw InvalidArgument("edge " + e.name + " has an endpoint outside the vertex range");
        if (!index_.emplace(e.name, i).second)
            throw InvalidArgument("duplicate edge name '" + e.name + "'");
    }
}

MultiGraph MultiGraph::k3(const EdgeId& a, const EdgeId& b, const EdgeId& c) {
    return MultiGraph(3, {{a, 0, 1}, {b, 1, 2}, {c, 2, 0}});
}

MultiGraph MultiGraph::k3_star(const EdgeId& a, const EdgeId& b, const EdgeId& c) {
    return MultiGraph(2, {{a, 0, 1}, {b, 0, 1}, {c, 0, 1}});
}

std::optional<std::size_t> MultiGraph::find(const EdgeId& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t MultiGraph::index_of(const EdgeId& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw InvalidArgument("unknown edge '" + name + "'");
    return it->second;
}

EdgeSet MultiGraph::edge_names() const {
    std::vector<EdgeId> names;
    names.reserve(edges_.size());
    for (const auto& e : edges_) names.push_back(e.name);
    return EdgeSet(std::move(names));
}

EdgeMask MultiGraph::all_edges() const noexcept {
    return edges_.size() == 64 ? ~EdgeMask{0} : (EdgeMask{1} << edges_.size()) - 1;
}

EdgeMask MultiGraph::mask_of(const EdgeSet& names) const {
    EdgeMask mask = 0;
    for (const auto& n : names) mask |= EdgeMask{1} << index_of(n);
    return mask;
}

EdgeSet MultiGraph::names_of(EdgeMask mask) const {
    std::vector<EdgeId> names;
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (mask >> i & 1) names.push_back(edges_[i].name);
    return EdgeSet(std::move(names));
}

std::string MultiGraph::canonical_form() const {
    std::vector<std::string> sigs;
    for (const auto& s : incidence(*this)) sigs.push_back(signature_text(s));
    std::sort(sigs.begin(), sigs.end());
    std::string out;
    for (const auto& s : sigs) out += s;
    return out;
}

std::string MultiGraph::fingerprint() const {
    // FNV-1a, 64 bit.
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : canonical_form()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

bool isomorphic(const MultiGraph& a, const MultiGraph& b) {
    return a.vertex_count() == b.vertex_count() && a.canonical_form() == b.canonical_form();
}

std::optional<std::vector<int>> find_isomorphism(const MultiGraph& from, const MultiGraph& to) {
    if (!isomorphic(from, to)) return std::nullopt;
    // Vertices with equal incidence lists are interchangeable, so matching
    // signature classes in order gives a valid map.
    std::map<std::multiset<EdgeId>, std::vector<int>> targets;
    auto to_sig = incidence(to);
    for (int v = 0; v < to.vertex_count(); ++v) targets[to_sig[v]].push_back(v);
    for (auto& [sig, list] : targets) std::reverse(list.begin(), list.end());
    std::vector<int> map(static_cast<std::size_t>(from.vertex_count()), -1);
    auto from_sig = incidence(from);
    for (int v = 0; v < from.vertex_count(); ++v) {
        auto& list = targets[from_sig[v]];
        map[v] = list.back();
        list.pop_back();
    }
    return map;
}

MultiGraph delete_edge(const MultiGraph& g, const EdgeId& e) {
    auto idx = g.index_of(e);
    std::vector<Edge> edges;
    edges.reserve(g.edge_count() - 1);
    for (std::size_t i = 0; i < g.edge_count(); ++i)
        if (i != idx) edges.push_back(g.edge(i));
    return MultiGraph(g.vertex_count(), std::move(edges));
}

MultiGraph delete_edges(const MultiGraph& g, const EdgeSet& names) {
    EdgeMask drop = g.mask_of(names);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < g.edge_count(); ++i)
        if (!(drop >> i & 1)) edges.push_back(g.edge(i));
    return MultiGraph(g.vertex_count(), std::move(edges));
}

MultiGraph contract_edge(const MultiGraph& g, const EdgeId& e) {
    const Edge& target = g.edge(e);
    if (target.is_loop()) throw InvalidArgument("cannot contract loop '" + e + "'");
    int keep = std::min(target.u, target.v);
    int gone = std::max(target.u, target.v);
    auto relabel = [&](int x) {
        if (x == gone) return keep;
        return x > gone ? x - 1 : x;
    };
    std::vector<Edge> edges;
    edges.reserve(g.edge_count() - 1);
    for (const auto& edge : g.edges()) {
        if (edge.name == e) continue;
        edges.push_back({edge.name, relabel(edge.u), relabel(edge.v)});
    }
    return MultiGraph(g.vertex_count() - 1, std::move(edges));
}

MultiGraph rename_edge(const MultiGraph& g, const EdgeId& from, const EdgeId& to) {
    auto idx = g.index_of(from);
    if (from != to && g.has_edge(to)) throw InvalidArgument("edge '" + to + "' already exists");
    auto edges = g.edges();
    edges[idx].name = to;
    return MultiGraph(g.vertex_count(), std::move(edges));
}

MultiGraph two_sum(const MultiGraph& h, const MultiGraph& k, const EdgeId& glue) {
    if (!h.has_edge(glue) || !k.has_edge(glue))
        throw InvalidArgument("two-sum edge '" + glue + "' missing from a factor");
    const Edge& gh = h.edge(glue);
    const Edge& gk = k.edge(glue);
    if (gh.is_loop() || gk.is_loop()) throw InvalidArgument("two-sum along loop '" + glue + "'");
    for (const auto& e : k.edges())
        if (e.name != glue && h.has_edge(e.name))
            throw InvalidArgument("edge name '" + e.name + "' occurs in both two-sum factors");

    std::vector<int> map(static_cast<std::size_t>(k.vertex_count()), -1);
    map[gk.u] = gh.u;
    map[gk.v] = gh.v;
    int next = h.vertex_count();
    for (int v = 0; v < k.vertex_count(); ++v)
        if (map[v] < 0) map[v] = next++;

    std::vector<Edge> edges;
    for (const auto& e : h.edges())
        if (e.name != glue) edges.push_back(e);
    for (const auto& e : k.edges())
        if (e.name != glue) edges.push_back({e.name, map[e.u], map[e.v]});
    return MultiGraph(next, std::move(edges));
}

MultiGraph direct_sum(const MultiGraph& h, const MultiGraph& k) {
    std::vector<Edge> edges = h.edges();
    for (const auto& e : k.edges()) {
        if (h.has_edge(e.name))
            throw InvalidArgument("edge name '" + e.name + "' occurs in both direct-sum factors");
        edges.push_back({e.name, e.u + h.vertex_count(), e.v + h.vertex_count()});
    }
    return MultiGraph(h.vertex_count() + k.vertex_count(), std::move(edges));
}

std::size_t rank(const MultiGraph& g, EdgeMask mask) {
    DisjointSets sets(g.vertex_count());
    std::size_t r = 0;
    for (std::size_t i = 0; i < g.edge_count(); ++i)
        if (mask >> i & 1 && sets.unite(g.edge(i).u, g.edge(i).v)) ++r;
    return r;
}

bool is_forest(const MultiGraph& g, EdgeMask mask) {
    return rank(g, mask) == static_cast<std::size_t>(__builtin_popcountll(mask));
}

bool spans(const MultiGraph& g, EdgeMask mask, std::size_t index) {
    DisjointSets sets(g.vertex_count());
    for (std::size_t i = 0; i < g.edge_count(); ++i)
        if (mask >> i & 1) sets.unite(g.edge(i).u, g.edge(i).v);
    return sets.find(g.edge(index).u) == sets.find(g.edge(index).v);
}

std::optional<EdgeMask> unique_cycle(const MultiGraph& g, EdgeMask mask) {
    if (nullity(g, mask) != 1) return std::nullopt;
    // Peel degree-1 vertices; what survives of a unicyclic subgraph is its cycle.
    std::vector<int> degree(static_cast<std::size_t>(g.vertex_count()), 0);
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        if (!(mask >> i & 1)) continue;
        ++degree[g.edge(i).u];
        ++degree[g.edge(i).v];
    }
    EdgeMask rest = mask;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < g.edge_count(); ++i) {
            if (!(rest >> i & 1)) continue;
            const auto& e = g.edge(i);
            if (degree[e.u] == 1 || degree[e.v] == 1) {
                rest &= ~(EdgeMask{1} << i);
                --degree[e.u];
                --degree[e.v];
                changed = true;
            }
        }
    }
    return rest;
}

bool is_connected(const MultiGraph& g) {
    if (g.vertex_count() <= 1) return true;
    DisjointSets sets(g.vertex_count());
    int components = g.vertex_count();
    for (const auto& e : g.edges())
        if (sets.unite(e.u, e.v)) --components;
    return components == 1;
}

std::vector<EdgeMask> forest_masks(const MultiGraph& g, std::optional<EdgeMask> within) {
    EdgeMask allowed = within.value_or(g.all_edges()) & g.all_edges();
    std::vector<EdgeMask> out;
    // Backtracking over edge indices with a copied union-find per level.
    std::function<void(std::size_t, EdgeMask, const DisjointSets&)> walk =
        [&](std::size_t i, EdgeMask chosen, const DisjointSets& sets) {
            if (i == g.edge_count()) {
                out.push_back(chosen);
                return;
            }
            walk(i + 1, chosen, sets);
            if (!(allowed >> i & 1)) return;
            DisjointSets next = sets;
            if (next.unite(g.edge(i).u, g.edge(i).v)) walk(i + 1, chosen | EdgeMask{1} << i, next);
        };
    walk(0, 0, DisjointSets(g.vertex_count()));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<EdgeMask> cycle_masks(const MultiGraph& g) {
    std::set<EdgeMask> found;
    const int n = g.vertex_count();
    std::vector<std::vector<std::pair<int, std::size_t>>> adj(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const auto& e = g.edge(i);
        if (e.is_loop()) {
            found.insert(EdgeMask{1} << i);
            continue;
        }
        adj[e.u].push_back({e.v, i});
        adj[e.v].push_back({e.u, i});
    }
    // Each cycle is rooted at its smallest vertex; the path only visits
    // larger vertices before returning to the root.
    std::vector<char> on_path(static_cast<std::size_t>(n), 0);
    for (int root = 0; root < n; ++root) {
        std::function<void(int, EdgeMask, std::size_t)> extend = [&](int at, EdgeMask used,
                                                                     std::size_t first) {
            for (auto [next, idx] : adj[at]) {
                if (used >> idx & 1) continue;
                if (next == root) {
                    if (used != 0 && idx != first) found.insert(used | EdgeMask{1} << idx);
                    continue;
                }
                if (next < root || on_path[next]) continue;
                on_path[next] = 1;
                extend(next, used | EdgeMask{1} << idx, used == 0 ? idx : first);
                on_path[next] = 0;
            }
        };
        on_path[root] = 1;
        extend(root, 0, 0);
        on_path[root] = 0;
    }
    return {found.begin(), found.end()};
}

namespace {

std::vector<EdgeSet> to_sorted_sets(const MultiGraph& g, const std::vector<EdgeMask>& masks) {
    std::vector<EdgeSet> out;
    out.reserve(masks.size());
    for (auto m : masks) out.push_back(g.names_of(m));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<EdgeSet> enumerate_forests(const MultiGraph& g) {
    return to_sorted_sets(g, forest_masks(g));
}

std::vector<EdgeSet> enumerate_cycles(const MultiGraph& g) {
    return to_sorted_sets(g, cycle_masks(g));
}

std::vector<std::vector<std::size_t>> blocks(const MultiGraph& g) {
    const int n = g.vertex_count();
    std::vector<std::vector<std::pair<int, std::size_t>>> adj(static_cast<std::size_t>(n));
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const auto& e = g.edge(i);
        if (e.is_loop()) {
            out.push_back({i});
            continue;
        }
        adj[e.u].push_back({e.v, i});
        adj[e.v].push_back({e.u, i});
    }
    // Hopcroft-Tarjan with an edge stack; the parent *edge* is skipped so
    // that parallel edges form their own block.
    std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    std::vector<std::size_t> stack;
    int clock = 0;
    std::function<void(int, std::size_t)> dfs = [&](int v, std::size_t parent_edge) {
        disc[v] = low[v] = clock++;
        for (auto [w, idx] : adj[v]) {
            if (idx == parent_edge) continue;
            if (disc[w] < 0) {
                stack.push_back(idx);
                dfs(w, idx);
                low[v] = std::min(low[v], low[w]);
                if (low[w] >= disc[v]) {
                    std::vector<std::size_t> block;
                    while (true) {
                        auto top = stack.back();
                        stack.pop_back();
                        block.push_back(top);
                        if (top == idx) break;
                    }
                    std::sort(block.begin(), block.end());
                    out.push_back(std::move(block));
                }
            } else if (disc[w] < disc[v]) {
                stack.push_back(idx);
                low[v] = std::min(low[v], disc[w]);
            }
        }
    };
    for (int v = 0; v < n; ++v)
        if (disc[v] < 0) dfs(v, static_cast<std::size_t>(-1));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

MultiGraph parse_graph(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    std::optional<int> vertices;
    std::vector<Edge> edges;
    std::set<EdgeId> seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::string keyword;
        if (!(words >> keyword)) continue;
        if (keyword == "vertices") {
            long long n = -1;
            if (vertices) throw ParseError("repeated 'vertices' statement", line_no);
            if (!(words >> n) || n < 0) throw ParseError("'vertices' needs a nonnegative count", line_no);
            vertices = static_cast<int>(n);
        } else if (keyword == "edge") {
            if (!vertices) throw ParseError("'edge' before 'vertices'", line_no);
            std::string name;
            long long u = -1, v = -1;
            if (!(words >> name >> u >> v)) throw ParseError("expected 'edge <name> <u> <v>'", line_no);
            if (!is_valid_edge_name(name)) throw ParseError("invalid edge name '" + name + "'", line_no);
            if (!seen.insert(name).second) throw ParseError("duplicate edge name '" + name + "'", line_no);
            if (u < 0 || v < 0 || u >= *vertices || v >= *vertices)
                throw ParseError("vertex out of range in edge '" + name + "'", line_no);
            edges.push_back({name, static_cast<int>(u), static_cast<int>(v)});
        } else {
            throw ParseError("unknown statement '" + keyword + "'", line_no);
        }
        std::string extra;
        if (words >> extra) throw ParseError("trailing text '" + extra + "'", line_no);
    }
    if (!vertices) throw ParseError("missing 'vertices' statement");
    try {
        return MultiGraph(*vertices, std::move(edges));
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    }
}

MultiGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_graph(buffer.str());
}

std::string format_graph(const MultiGraph& g) {
    std::string out = "vertices " + std::to_string(g.vertex_count()) + "\n";
    for (const auto& e : g.edges())
        out += "edge " + e.name + " " + std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
    return out;
}

}  // namespace forestsos
