#include "forestsos/series_parallel.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

#include "forestsos/error.hpp"

namespace forestsos {

std::string SpStep::to_string() const {
    switch (kind) {
        case Kind::kSeries: return "series " + edge + " " + first + " " + second;
        case Kind::kParallel: return "parallel " + edge + " " + first;
        case Kind::kDelete: return "delete " + edge;
        case Kind::kContract: return "contract " + edge;
    }
    return {};
}

std::size_t SpRecipe::extension_count() const {
    return static_cast<std::size_t>(std::count_if(steps.begin(), steps.end(), [](const SpStep& s) { return s.is_extension(); }));
}

void SpRecipe::validate() const {
    bool minors = false;
    for (const auto& s : steps) {
        if (!s.is_extension()) minors = true;
        else if (minors) throw InvalidArgument("extension step '" + s.to_string() + "' follows a minor step");
    }
}

std::string SpRecipe::to_string() const {
    std::string out = std::string("base ") + (base == SpBase::kK3 ? "K3" : "K3*");
    for (const auto& n : base_edges) out += " " + n;
    out += '\n';
    for (const auto& s : steps) out += s.to_string() + '\n';
    return out;
}

SpRecipe SpRecipe::parse(std::string_view text) {
    SpRecipe r;
    bool have_base = false;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> words;
        for (std::string w; ls >> w;) words.push_back(w);
        if (words.empty()) continue;
        const std::string& cmd = words[0];
        auto want = [&](std::size_t n) {
            if (words.size() != n) throw ParseError("'" + cmd + "' expects " + std::to_string(n - 1) + " arguments", lineno);
            for (std::size_t i = 1; i < n; ++i)
                if (cmd != "base" || i > 1)
                    if (!is_valid_edge_name(words[i])) throw ParseError("invalid edge name '" + words[i] + "'", lineno);
        };
        if (cmd == "base") {
            if (have_base) throw ParseError("repeated base", lineno);
            want(5);
            if (words[1] == "K3") r.base = SpBase::kK3;
            else if (words[1] == "K3*") r.base = SpBase::kK3Star;
            else throw ParseError("unknown base '" + words[1] + "'", lineno);
            r.base_edges = {words[2], words[3], words[4]};
            have_base = true;
            continue;
        }
        if (!have_base) throw ParseError("step before base", lineno);
        if (cmd == "series") {
            want(4);
            r.steps.push_back(SpStep::series(words[1], words[2], words[3]));
        } else if (cmd == "parallel") {
            want(3);
            r.steps.push_back(SpStep::parallel(words[1], words[2]));
        } else if (cmd == "delete") {
            want(2);
            r.steps.push_back(SpStep::remove(words[1]));
        } else if (cmd == "contract") {
            want(2);
            r.steps.push_back(SpStep::contract(words[1]));
        } else {
            throw ParseError("unknown statement '" + cmd + "'", lineno);
        }
    }
    if (!have_base) throw ParseError("missing base");
    try {
        r.validate();
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    }
    return r;
}

MultiGraph base_graph(SpBase base, const std::array<EdgeId, 3>& names) {
    return base == SpBase::kK3 ? MultiGraph::k3(names[0], names[1], names[2])
                               : MultiGraph::k3_star(names[0], names[1], names[2]);
}

EdgeId fresh_name(const MultiGraph& g, const std::string& prefix, std::size_t& counter) {
    for (;;) {
        EdgeId name = prefix + std::to_string(counter++);
        if (!g.has_edge(name)) return name;
    }
}

MultiGraph apply_step(const MultiGraph& g, const SpStep& step) {
    if (!g.has_edge(step.edge)) throw InvalidArgument("step '" + step.to_string() + "' names unknown edge");
    switch (step.kind) {
        case SpStep::Kind::kSeries:
            return two_sum(g, MultiGraph::k3(step.edge, step.first, step.second), step.edge);
        case SpStep::Kind::kParallel: {
            const Edge& e = g.edge(step.edge);
            if (e.is_loop()) throw InvalidArgument("parallel extension of loop '" + step.edge + "'");
            if (g.has_edge(step.first)) throw InvalidArgument("edge '" + step.first + "' already exists");
            std::vector<Edge> edges = g.edges();
            edges.push_back({step.first, e.u, e.v});
            return MultiGraph(g.vertex_count(), std::move(edges));
        }
        case SpStep::Kind::kDelete: return delete_edge(g, step.edge);
        case SpStep::Kind::kContract: return contract_edge(g, step.edge);
    }
    return g;
}

MultiGraph replay(const SpRecipe& recipe) {
    recipe.validate();
    MultiGraph g = base_graph(recipe.base, recipe.base_edges);
    for (const auto& s : recipe.steps) g = apply_step(g, s);
    return g;
}

std::string SpDecomposition::to_string() const {
    std::ostringstream out;
    out << "vertices " << vertex_count << '\n';
    for (const auto& p : parts) {
        out << "part";
        for (int v : p.vertex_map) out << ' ' << v;
        out << '\n' << p.recipe.to_string() << "end\n";
    }
    return out.str();
}

MultiGraph replay(const SpDecomposition& d) {
    std::vector<Edge> edges;
    for (const auto& p : d.parts) {
        MultiGraph part = replay(p.recipe);
        if (p.vertex_map.size() != static_cast<std::size_t>(part.vertex_count()))
            throw InvalidArgument("vertex map does not match the replayed part");
        for (const auto& e : part.edges()) edges.push_back({e.name, p.vertex_map[e.u], p.vertex_map[e.v]});
    }
    return MultiGraph(d.vertex_count, std::move(edges));
}

namespace {

/// The subgraph on the given edges with its touched vertices renumbered
/// in increasing order; `original` receives the old vertex ids.
MultiGraph extract(const MultiGraph& g, const std::vector<std::size_t>& indices, std::vector<int>& original) {
    original.clear();
    for (auto i : indices) {
        original.push_back(g.edge(i).u);
        original.push_back(g.edge(i).v);
    }
    std::sort(original.begin(), original.end());
    original.erase(std::unique(original.begin(), original.end()), original.end());
    auto local = [&](int v) { return static_cast<int>(std::lower_bound(original.begin(), original.end(), v) - original.begin()); };
    std::vector<Edge> edges;
    for (auto i : indices) edges.push_back({g.edge(i).name, local(g.edge(i).u), local(g.edge(i).v)});
    return MultiGraph(static_cast<int>(original.size()), std::move(edges));
}

/// Removes vertex w, which must be isolated.
MultiGraph drop_vertex(const MultiGraph& g, int w) {
    std::vector<Edge> edges = g.edges();
    for (auto& e : edges) {
        if (e.u > w) --e.u;
        if (e.v > w) --e.v;
    }
    return MultiGraph(g.vertex_count() - 1, std::move(edges));
}

struct Reduction {
    SpStep step;  // the extension that undoes the reduction
    MultiGraph before;
};

/// Short recipes for the blocks that are too small to reduce.
std::optional<SpRecipe> small_block_recipe(const MultiGraph& b, std::size_t& counter) {
    SpRecipe r;
    r.base = SpBase::kK3Star;
    if (b.edge_count() == 1) {
        const Edge& e = b.edge(0);
        EdgeId t1 = fresh_name(b, "_t", counter);
        EdgeId t2 = fresh_name(b, "_t", counter);
        r.base_edges = {e.name, t1, t2};
        if (e.is_loop()) r.steps = {SpStep::contract(t1), SpStep::remove(t2)};
        else r.steps = {SpStep::remove(t1), SpStep::remove(t2)};
        return r;
    }
    if (b.edge_count() == 2) {
        EdgeId t = fresh_name(b, "_t", counter);
        r.base_edges = {b.edge(0).name, b.edge(1).name, t};
        r.steps = {SpStep::remove(t)};
        return r;
    }
    return std::nullopt;
}

std::variant<SpRecipe, NotSeriesParallel> reduce_block(const MultiGraph& block, std::size_t& counter) {
    if (auto r = small_block_recipe(block, counter)) return *r;

    std::vector<Reduction> trail;
    MultiGraph cur = block;
    while (cur.edge_count() > 3) {
        const auto& es = cur.edges();
        std::optional<Reduction> red;
        std::map<std::pair<int, int>, std::size_t> seen;
        for (std::size_t i = 0; i < es.size() && !red; ++i) {
            auto key = std::minmax(es[i].u, es[i].v);
            auto [it, fresh] = seen.emplace(key, i);
            if (!fresh) red = Reduction{SpStep::parallel(es[it->second].name, es[i].name), cur};
        }
        if (red) {
            cur = delete_edge(cur, red->step.first);
            trail.push_back(*red);
            continue;
        }
        std::vector<std::vector<std::size_t>> incident(static_cast<std::size_t>(cur.vertex_count()));
        for (std::size_t i = 0; i < es.size(); ++i) {
            incident[es[i].u].push_back(i);
            incident[es[i].v].push_back(i);
        }
        int w = -1;
        for (int v = 0; v < cur.vertex_count() && w < 0; ++v)
            if (incident[v].size() == 2) w = v;
        if (w < 0) return NotSeriesParallel{cur.edge_names()};

        const Edge& a = es[incident[w][0]];
        const Edge& b = es[incident[w][1]];
        int x = a.u == w ? a.v : a.u;
        int y = b.u == w ? b.v : b.u;
        EdgeId t = fresh_name(block, "_s", counter);
        while (cur.has_edge(t)) t = fresh_name(block, "_s", counter);
        // The orientation of `t` is fixed later against the replayed graph.
        trail.push_back({SpStep::series(t, a.name, b.name), cur});
        std::vector<Edge> next;
        for (const auto& e : es)
            if (e.name != a.name && e.name != b.name) next.push_back(e);
        next.push_back({t, x, y});
        cur = drop_vertex(MultiGraph(cur.vertex_count(), std::move(next)), w);
    }

    SpRecipe recipe;
    const auto& es = cur.edges();
    auto same_ends = [](const Edge& p, const Edge& q) { return std::minmax(p.u, p.v) == std::minmax(q.u, q.v); };
    recipe.base = same_ends(es[0], es[1]) && same_ends(es[1], es[2]) ? SpBase::kK3Star : SpBase::kK3;
    recipe.base_edges = {es[0].name, es[1].name, es[2].name};

    MultiGraph replayed = base_graph(recipe.base, recipe.base_edges);
    for (auto it = trail.rbegin(); it != trail.rend(); ++it) {
        SpStep step = it->step;
        MultiGraph next = apply_step(replayed, step);
        if (step.kind == SpStep::Kind::kSeries && !isomorphic(next, it->before)) {
            std::swap(step.first, step.second);
            next = apply_step(replayed, step);
        }
        if (!isomorphic(next, it->before)) throw Error("series-parallel replay diverged at '" + step.to_string() + "'");
        recipe.steps.push_back(step);
        replayed = std::move(next);
    }
    return recipe;
}

}  // namespace

std::variant<SpDecomposition, NotSeriesParallel> sp_decompose(const MultiGraph& g) {
    SpDecomposition d;
    d.vertex_count = g.vertex_count();
    std::size_t counter = 0;
    for (const auto& indices : blocks(g)) {
        std::vector<int> original;
        MultiGraph block = extract(g, indices, original);
        auto reduced = reduce_block(block, counter);
        if (auto* bad = std::get_if<NotSeriesParallel>(&reduced)) return *bad;
        SpPart part;
        part.recipe = std::get<SpRecipe>(reduced);
        MultiGraph replayed = replay(part.recipe);
        auto iso = find_isomorphism(replayed, block);
        if (!iso) throw Error("series-parallel replay does not reproduce block " + block.edge_names().to_string());
        for (int v : *iso) part.vertex_map.push_back(original[static_cast<std::size_t>(v)]);
        d.parts.push_back(std::move(part));
    }
    return d;
}

SpRecipe random_recipe(std::mt19937_64& rng, std::size_t max_steps, std::size_t max_minors) {
    auto below = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
    SpRecipe r;
    r.base = below(2) == 0 ? SpBase::kK3 : SpBase::kK3Star;
    r.base_edges = {"e0", "e1", "e2"};
    MultiGraph g = base_graph(r.base, r.base_edges);
    std::size_t next = 3;

    const std::size_t extensions = below(max_steps + 1);
    for (std::size_t i = 0; i < extensions; ++i) {
        // Applicable steps: series or parallel on any non-loop edge.
        std::vector<std::pair<SpStep::Kind, EdgeId>> options;
        for (const auto& e : g.edges()) {
            if (e.is_loop()) continue;
            options.emplace_back(SpStep::Kind::kSeries, e.name);
            options.emplace_back(SpStep::Kind::kParallel, e.name);
        }
        auto [kind, edge] = options[below(options.size())];
        SpStep s = kind == SpStep::Kind::kSeries
                       ? SpStep::series(edge, "e" + std::to_string(next), "e" + std::to_string(next + 1))
                       : SpStep::parallel(edge, "e" + std::to_string(next));
        next += kind == SpStep::Kind::kSeries ? 2 : 1;
        g = apply_step(g, s);
        r.steps.push_back(s);
    }

    const std::size_t minors = below(std::min(max_minors, max_steps - extensions) + 1);
    for (std::size_t i = 0; i < minors && g.edge_count() > 1; ++i) {
        std::vector<SpStep> options;
        for (const auto& e : g.edges()) {
            options.push_back(SpStep::remove(e.name));
            if (!e.is_loop()) options.push_back(SpStep::contract(e.name));
        }
        SpStep s = options[below(options.size())];
        g = apply_step(g, s);
        r.steps.push_back(s);
    }
    return r;
}

}  // namespace forestsos
