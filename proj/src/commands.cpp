#include "forestsos/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "forestsos/certificate.hpp"
#include "forestsos/error.hpp"
#include "forestsos/rayleigh.hpp"
#include "forestsos/series_parallel.hpp"
#include "forestsos/sign_search.hpp"
#include "forestsos/sp_construct.hpp"

namespace forestsos {

MultiGraph k33() {
    std::vector<Edge> edges;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) edges.push_back({"x" + std::to_string(i) + std::to_string(j), i, 3 + j});
    return MultiGraph(6, std::move(edges));
}

std::vector<K33Orbit> k33_report(std::size_t trials, std::uint64_t seed) {
    const MultiGraph g = k33();
    const Polynomial forests = forest_poly(g);
    const Polynomial trees = tree_poly(g);
    std::vector<K33Orbit> out;
    for (auto [name, e, f] : {std::tuple{"adjacent", "x00", "x01"}, std::tuple{"disjoint", "x00", "x11"}}) {
        K33Orbit o;
        o.name = name;
        o.e = e;
        o.f = f;
        o.delta_i = rayleigh_difference(forests, o.e, o.f);
        o.delta_b = rayleigh_difference(trees, o.e, o.f);
        o.negative_terms = negative_term_count(o.delta_i - o.delta_b);
        std::vector<EdgeId> names;
        for (const auto& edge : g.edges())
            if (edge.name != o.e && edge.name != o.f) names.push_back(edge.name);
        const RationalPoint ones = RationalPoint::ones(names);
        o.delta_i_at_ones = evaluate(o.delta_i, ones);
        o.delta_b_at_ones = evaluate(o.delta_b, ones);
        o.delta_i_minimum = o.delta_i_at_ones;
        o.samples = 1;
        std::mt19937_64 rng(seed);
        for (std::size_t t = 0; t < trials; ++t) {
            Rational v = evaluate(o.delta_i, random_positive_point(names, rng));
            if (v < o.delta_i_minimum) o.delta_i_minimum = v;
            ++o.samples;
        }
        out.push_back(std::move(o));
    }
    return out;
}

SurveyResult run_survey(const SurveyOptions& opts) {
    if (opts.count == 0) throw InvalidArgument("survey count must be at least 1");
    SurveyResult r;
    std::ostringstream out;
    std::mt19937_64 rng(opts.seed);
    out << "survey seed " << opts.seed << " count " << opts.count << " max_steps " << opts.max_steps << '\n';
    for (std::size_t i = 0; i < opts.count; ++i) {
        const SpRecipe recipe = random_recipe(rng, opts.max_steps, opts.max_minors);
        const MultiGraph g = replay(recipe);
        ++r.recipes;
        std::string failure;
        std::size_t pairs = 0;
        bool nonnegative = true;
        try {
            CertPair p = construct_from_recipe(recipe);
            p.verify_all(true);
            CertPair q = construct_all(g);
            pairs = q.delta.size();
            for (const auto& [ef, c] : q.delta) {
                auto rep = sample_nonnegativity(g, ef.first, ef.second, opts.trials, opts.seed + i);
                if (rep.counterexample()) nonnegative = false;
            }
        } catch (const Error& e) {
            failure = e.what();
        }
        const bool ok = failure.empty();
        if (ok) ++r.verified;
        if (nonnegative) ++r.nonnegative;
        out << "recipe " << i << " edges " << g.edge_count() << " pairs " << pairs << " steps " << recipe.steps.size()
            << " verified " << (ok ? "yes" : "no") << " nonnegative " << (nonnegative ? "yes" : "no") << '\n';
        if (!ok || !nonnegative) {
            out << "failure " << (ok ? "negative sample" : failure.substr(0, failure.find('\n'))) << '\n';
            if (!opts.dump_dir.empty()) {
                std::filesystem::create_directories(opts.dump_dir);
                std::ofstream(opts.dump_dir + "/survey_" + std::to_string(i) + ".graph")
                    << "# recipe\n# " << recipe.to_string().substr(0, recipe.to_string().size() - 1) << '\n'
                    << format_graph(g);
            }
        }
    }
    out << "verified " << r.verified << "/" << r.recipes << '\n';
    out << "nonnegative " << r.nonnegative << "/" << r.recipes << '\n';
    r.report = out.str();
    return r;
}

namespace {

std::vector<EdgeId> split_edges(const std::string& s) {
    std::vector<EdgeId> out;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

void require_edges(const MultiGraph& g, const std::vector<EdgeId>& edges, std::size_t lo, std::size_t hi) {
    if (edges.size() < lo || edges.size() > hi)
        throw InvalidArgument("--edges expects " + std::to_string(lo) + (lo == hi ? "" : "-" + std::to_string(hi)) +
                              " edge names");
    for (const auto& e : edges)
        if (!g.has_edge(e)) throw InvalidArgument("unknown edge '" + e + "'");
    if (edges.size() == 2 && edges[0] == edges[1]) throw InvalidArgument("edges must be distinct");
}

void write_or_append(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw InvalidArgument("cannot write '" + path + "'");
    f << text;
}

struct Config {
    std::string graph, edges, out, cert, format = "text";
    std::uint64_t seed = 0;
    std::size_t trials = 20;
    std::uint64_t budget = 10'000'000;
    std::size_t count = 100, steps = 6;
    std::uint64_t survey_seed = 7;
    std::size_t survey_trials = 5, k33_trials = 50;
    bool trees = false;
};

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
    CommandResult result;
    std::ostringstream out, err;
    Config cfg;

    CLI::App app{"Spanning-forest Rayleigh differences and sum-of-squares certificates", "forestsos"};
    app.require_subcommand(1);
    auto add_graph = [&](CLI::App* c) { c->add_option("--graph", cfg.graph, "graph file")->required(); };
    auto add_format = [&](CLI::App* c) {
        c->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text"}));
    };

    auto* poly = app.add_subcommand("poly", "forest (and spanning-tree) generating polynomial");
    add_graph(poly);
    poly->add_flag("--trees", cfg.trees, "also print the spanning-tree polynomial");
    add_format(poly);

    auto* delta_cmd = app.add_subcommand("delta", "Rayleigh difference with sampled nonnegativity");
    auto* phi_cmd = app.add_subcommand("phi", "Phi operator with sampled nonnegativity");
    for (auto* c : {delta_cmd, phi_cmd}) {
        add_graph(c);
        c->add_option("--edges", cfg.edges, "edge names, comma separated")->required();
        c->add_option("--seed", cfg.seed, "random seed");
        c->add_option("--trials", cfg.trials, "random sample points")->check(CLI::PositiveNumber);
        add_format(c);
    }

    auto* cert = app.add_subcommand("cert", "certificate construction, search and verification");
    cert->require_subcommand(1);
    auto* construct = cert->add_subcommand("construct", "build a certificate for a series-parallel graph");
    auto* search = cert->add_subcommand("search", "brute-force sign search");
    for (auto* c : {construct, search}) {
        add_graph(c);
        c->add_option("--edges", cfg.edges, "e,f for Delta or e for Phi")->required();
        c->add_option("--out", cfg.out, "write the certificate here instead of standard output");
        add_format(c);
    }
    search->add_option("--budget", cfg.budget, "maximum sign assignments (0 = unlimited)");
    auto* verify = cert->add_subcommand("verify", "check a certificate file against a graph");
    add_graph(verify);
    verify->add_option("--cert", cfg.cert, "certificate file")->required();
    add_format(verify);

    auto* survey = app.add_subcommand("survey", "random series-parallel recipes, constructed and verified");
    survey->add_option("--seed", cfg.survey_seed, "random seed")->capture_default_str();
    survey->add_option("--count", cfg.count, "number of recipes");
    survey->add_option("--steps", cfg.steps, "maximum recipe steps");
    survey->add_option("--trials", cfg.survey_trials, "sample points per pair")->capture_default_str();
    survey->add_option("--out", cfg.out, "directory for graphs of failing recipes");
    add_format(survey);

    auto* k33_cmd = app.add_subcommand("k33", "Delta I - Delta B on K_{3,3} for both edge-pair orbits");
    k33_cmd->add_option("--seed", cfg.seed, "random seed");
    k33_cmd->add_option("--trials", cfg.k33_trials, "random sample points")->capture_default_str();
    add_format(k33_cmd);

    auto* ident = app.add_subcommand("identities", "exact operator identities on one graph");
    add_graph(ident);
    add_format(ident);

    auto* sp = app.add_subcommand("sp", "series-parallel decomposition");
    add_graph(sp);
    add_format(sp);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        result.code = code == 0 ? kExitOk : kExitUsage;
        result.out = out.str();
        result.err = err.str();
        return result;
    }

    try {
        if (*poly) {
            MultiGraph g = read_graph_file(cfg.graph);
            out << "forest " << forest_poly(g) << '\n';
            if (cfg.trees) out << "trees " << tree_poly(g) << '\n';
        } else if (*delta_cmd) {
            MultiGraph g = read_graph_file(cfg.graph);
            auto edges = split_edges(cfg.edges);
            require_edges(g, edges, 2, 2);
            out << sample_nonnegativity(g, edges[0], edges[1], cfg.trials, cfg.seed).to_text();
        } else if (*phi_cmd) {
            MultiGraph g = read_graph_file(cfg.graph);
            auto edges = split_edges(cfg.edges);
            require_edges(g, edges, 1, 1);
            Polynomial p = phi(g, edges[0]);
            std::vector<EdgeId> names;
            for (const auto& e : g.edges())
                if (e.name != edges[0]) names.push_back(e.name);
            Rational min = evaluate(p, RationalPoint::ones(names));
            std::mt19937_64 rng(cfg.seed);
            for (std::size_t t = 0; t < cfg.trials; ++t) min = std::min(min, evaluate(p, random_positive_point(names, rng)));
            out << "graph " << g.fingerprint() << "\nedge " << edges[0] << "\nphi " << p << "\nnegative_coefficients "
                << negative_term_count(p) << "\nsamples " << cfg.trials + 1 << "\nminimum " << min.get_str() << '\n';
        } else if (*construct || *search) {
            MultiGraph g = read_graph_file(cfg.graph);
            auto edges = split_edges(cfg.edges);
            require_edges(g, edges, 1, 2);
            std::string text;
            if (*construct) {
                try {
                    text = edges.size() == 2 ? to_text(construct_delta(g, edges[0], edges[1]))
                                             : to_text(construct_phi(g, edges[0]));
                } catch (const NotSeriesParallelError& e) {
                    err << "error: NotSeriesParallel: " << e.what() << '\n';
                    result.code = kExitVerify;
                }
                if (result.code == kExitOk) {
                    write_or_append(cfg.out, text, out);
                    out << "verdict verified\n";
                }
            } else {
                SearchOptions so{cfg.budget};
                SearchStatus status;
                std::uint64_t nodes;
                if (edges.size() == 2) {
                    auto r = sign_search_delta(g, edges[0], edges[1], so);
                    status = r.status;
                    nodes = r.nodes;
                    if (r.cert) text = to_text(*r.cert);
                } else {
                    auto r = sign_search_phi(g, edges[0], so);
                    status = r.status;
                    nodes = r.nodes;
                    if (r.cert) text = to_text(*r.cert);
                }
                if (status == SearchStatus::kFound) write_or_append(cfg.out, text, out);
                out << "status " << to_string(status) << "\nnodes " << nodes << '\n';
                if (status == SearchStatus::kFound) out << "verdict verified\n";
                else result.code = status == SearchStatus::kBudget ? kExitBudget : kExitVerify;
            }
        } else if (*verify) {
            MultiGraph g = read_graph_file(cfg.graph);
            std::ifstream f(cfg.cert);
            if (!f) throw ParseError("cannot open certificate file '" + cfg.cert + "'");
            std::stringstream buf;
            buf << f.rdbuf();
            auto parsed = parse_certificate(buf.str());
            Verdict v;
            try {
                if (auto* d = std::get_if<DeltaCert>(&parsed)) v = verify_delta(g, d->e, d->f, *d);
                else {
                    const auto& p = std::get<PhiCert>(parsed);
                    v = verify_phi(g, p.e, p);
                }
            } catch (const InvalidArgument& e) {
                err << "error: " << e.what() << '\n';
                result.code = kExitVerify;
            }
            if (result.code == kExitOk) {
                out << v.to_text();
                if (!v.accepted()) result.code = kExitVerify;
            }
        } else if (*survey) {
            SurveyOptions so;
            so.seed = cfg.survey_seed;
            so.count = cfg.count;
            so.max_steps = cfg.steps;
            so.trials = cfg.survey_trials;
            so.dump_dir = cfg.out;
            SurveyResult r = run_survey(so);
            out << r.report;
            if (r.verified != r.recipes) result.code = kExitVerify;
        } else if (*k33_cmd) {
            const auto orbits = k33_report(cfg.k33_trials, cfg.seed);
            bool four = false;
            for (const auto& o : orbits) {
                out << "orbit " << o.name << " edges " << o.e << ' ' << o.f << '\n';
                out << "negative_terms " << o.negative_terms << '\n';
                out << "delta_i_at_ones " << o.delta_i_at_ones.get_str() << '\n';
                out << "delta_b_at_ones " << o.delta_b_at_ones.get_str() << '\n';
                out << "delta_i_samples " << o.samples << '\n';
                out << "delta_i_minimum " << o.delta_i_minimum.get_str() << '\n';
                four = four || o.negative_terms == 4;
            }
            out << "some_orbit_has_four_negative_terms " << (four ? "true" : "false") << '\n';
        } else if (*ident) {
            out << check_identities(read_graph_file(cfg.graph)).to_text();
        } else if (*sp) {
            MultiGraph g = read_graph_file(cfg.graph);
            auto d = sp_decompose(g);
            if (auto* bad = std::get_if<NotSeriesParallel>(&d)) {
                out << "not-series-parallel core " << bad->core.to_string() << '\n';
                result.code = kExitVerify;
            } else {
                out << std::get<SpDecomposition>(d).to_string();
            }
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        result.code = kExitParse;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        result.code = kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        result.code = kExitVerify;
    }
    result.out = out.str();
    result.err = err.str();
    return result;
}

}  // namespace forestsos
