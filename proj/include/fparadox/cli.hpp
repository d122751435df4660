#pragma once

// Command-line front end. run() is the whole program minus main(), so tests
// can drive every subcommand in-process.
//
// Exit codes: 0 all requested checks hold (or the search/enumeration finished),
// 1 a requested paradox or condition fails, 2 usage or input error,
// 3 a theorem-guaranteed check failed (internal error).

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fparadox/centrality.hpp"
#include "fparadox/conditions.hpp"
#include "fparadox/errors.hpp"
#include "fparadox/explore.hpp"
#include "fparadox/generators.hpp"
#include "fparadox/io.hpp"
#include "fparadox/paradox.hpp"

namespace fparadox::cli {

enum ExitCode : int { ok = 0, finding = 1, usage = 2, internal = 3 };

struct Options {
    std::string graph_path;
    std::string family;
    std::size_t n = 0, k = 0, m = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
    bool one_based = false;
    bool sum_duplicates = false;

    std::string measure = "degree";
    std::string direction;
    std::string mode;
    std::optional<double> alpha;
    double beta = 1.0;
    std::vector<double> coeffs;

    std::size_t max_k = 4;
    std::optional<std::size_t> r, s;
    bool counterexample = false;
    std::optional<double> epsilon;

    std::size_t grid = 20;
    std::size_t trials = 1000;
    std::optional<std::size_t> max_n;
    double tol = default_paradox_tol;
    double equality_tol = 1e-8;
    std::size_t threads = 1;

    std::string out_path;
    std::string format = "json";
};

namespace detail {

inline void add_graph_options(CLI::App* app, Options& o, bool required = true) {
    auto* group = app->add_option_group("graph", "graph source");
    group->add_option("--graph", o.graph_path, "edge-list file");
    group->add_option("--family", o.family, "generator family");
    if (required) group->require_option(1);
    app->add_option("--n", o.n, "node count");
    app->add_option("--k", o.k, "degree (k_regular_random) or clique size (clique_star)");
    app->add_option("--m", o.m, "attachment count (barabasi_albert) or leaf count (clique_star)");
    app->add_option("--p", o.p, "edge probability");
    app->add_option("--seed", o.seed, "random seed");
    app->add_flag("--one-based", o.one_based, "node ids start at 1 (input files and generated output)");
    app->add_flag("--sum-duplicates", o.sum_duplicates, "sum weights of repeated edges instead of rejecting");
}

inline void add_output_options(CLI::App* app, Options& o) {
    app->add_option("--out", o.out_path, "output file (relative paths resolve under $FPARADOX_OUT_DIR)");
    app->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app->add_option("--tol", o.tol, "verdict tolerance");
    app->add_option("--threads", o.threads, "worker threads (output is independent of this)");
}

inline FamilySpec family_spec(const Options& o) {
    return {parse_family(o.family), o.n, o.k, o.p, o.m, o.seed};
}

inline Graph load_graph(const Options& o) {
    if (!o.graph_path.empty()) {
        EdgeListOptions opts;
        if (o.one_based) opts.one_based = true;
        opts.sum_duplicates = o.sum_duplicates;
        return read_edge_list_file(o.graph_path, opts);
    }
    return make(family_spec(o));
}

inline CentralitySpec centrality_spec(const Graph& g, const Options& o) {
    CentralitySpec spec;
    spec.kind = parse_measure(o.measure);
    spec.direction = o.direction.empty() ? (g.directed() ? Direction::broadcast : Direction::undirected)
                                         : parse_direction(o.direction);
    spec.alpha = o.alpha;
    spec.beta = o.beta;
    if (!o.coeffs.empty()) spec.coeffs = SeriesCoefficients(o.coeffs);
    return spec;
}

/// Command line minus the thread count, which must not change the document.
inline std::vector<std::string> canonical_command(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--threads") {
            ++i;
            continue;
        }
        if (args[i].rfind("--threads=", 0) == 0) continue;
        out.push_back(args[i]);
    }
    return out;
}

inline void emit(const std::string& text, const Options& o, std::ostream& out) {
    if (o.out_path.empty()) {
        out << text;
        return;
    }
    std::string path = o.out_path;
    if (path.front() != '/') {
        if (const char* dir = std::getenv("FPARADOX_OUT_DIR"); dir && *dir) path = std::string(dir) + "/" + path;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw InputError("cannot write '" + path + "'");
    file << text;
}

} // namespace detail

/// Execute one command. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Friendship-paradox and walk-centrality toolkit", "fparadox"};
    app.require_subcommand(1);

    auto* generate = app.add_subcommand("generate", "write a generated graph as an edge list");
    detail::add_graph_options(generate, o);
    generate->add_option("--out", o.out_path, "output file");

    auto* centrality = app.add_subcommand("centrality", "compute a centrality vector");
    detail::add_graph_options(centrality, o);
    detail::add_output_options(centrality, o);

    auto* paradox = app.add_subcommand("paradox", "generalized friendship paradox for one measure");
    detail::add_graph_options(paradox, o);
    detail::add_output_options(paradox, o);

    for (auto* sub : {centrality, paradox}) {
        sub->add_option("--measure", o.measure, "degree|eigenvector|katz|total|odd|even|power_series");
        sub->add_option("--direction", o.direction, "undirected|broadcast|receive");
        sub->add_option("--alpha", o.alpha, "katz parameter (default 0.5/rho)");
        sub->add_option("--beta", o.beta, "total/odd/even parameter");
        sub->add_option("--coeffs", o.coeffs, "power-series coefficients c0,c1,...")->delimiter(',');
    }
    paradox->add_option("--mode", o.mode, "undirected|out|in (directed default: the pairing the measure is analysed with)");

    auto* directed_paradox = app.add_subcommand("directed-paradox", "the four directed degree paradoxes");
    detail::add_graph_options(directed_paradox, o);
    detail::add_output_options(directed_paradox, o);

    auto* conditions = app.add_subcommand("conditions", "walk-count and spectral sufficient conditions");
    detail::add_graph_options(conditions, o);
    detail::add_output_options(conditions, o);
    conditions->add_option("--max-k", o.max_k, "largest order checked");
    conditions->add_option("--r", o.r, "walk-inequality order r (with --s)");
    conditions->add_option("--s", o.s, "walk-inequality order s (with --r)");
    conditions->add_flag("--counterexample", o.counterexample, "build the (1, eps, 1) series counterexample");
    conditions->add_option("--epsilon", o.epsilon, "upper bound on the counterexample's c1");

    auto* sweep = app.add_subcommand("sweep", "Katz paradox gap over a grid of alpha");
    detail::add_graph_options(sweep, o);
    detail::add_output_options(sweep, o);
    sweep->add_option("--grid", o.grid, "grid size");

    auto* search = app.add_subcommand("search", "search for odd-order walk-inequality violations");
    detail::add_graph_options(search, o, false);
    detail::add_output_options(search, o);
    search->add_option("--r", o.r, "order r (default 2)");
    search->add_option("--s", o.s, "order s (default 1)");
    search->add_option("--trials", o.trials, "random trials");
    search->add_option("--max-n", o.max_n, "exhaustive search over connected graphs up to this size");
    search->add_flag("--counterexample", o.counterexample, "build a series counterexample from the first violator");

    auto* enumerate = app.add_subcommand("enumerate", "count connected labelled graphs");
    detail::add_output_options(enumerate, o);
    enumerate->add_option("--max-n", o.max_n, "largest node count (<= 7)");

    auto* suite = app.add_subcommand("suite", "seeded batch check of the guaranteed paradoxes");
    detail::add_graph_options(suite, o);
    detail::add_output_options(suite, o);
    suite->add_option("--trials", o.trials, "graphs to sample");
    suite->add_option("--equality-tol", o.equality_tol, "gap bound on regular graphs");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }

    ReportDocument doc;
    doc.provenance.command_line = detail::canonical_command(args);
    doc.provenance.tolerances["verdict"] = o.tol;
    int status = ok;

    try {
        if (!o.family.empty() && is_random(parse_family(o.family))) doc.provenance.seed = o.seed;
        if (generate->parsed()) {
            const Graph g = detail::load_graph(o);
            detail::emit(format_edge_list(g, o.one_based), o, out);
            return ok;
        }
        if (enumerate->parsed()) {
            EnumerationSummary e;
            e.max_n = o.max_n.value_or(5);
            for_each_connected(e.max_n, [&](const Graph& g) {
                ++e.counts[g.node_count()];
                ++e.total;
            });
            doc.reports.emplace_back(e);
        } else if (search->parsed()) {
            const std::size_t r = o.r.value_or(2), s = o.s.value_or(1);
            SearchOutcome outcome;
            if (o.max_n) {
                outcome = search_lagarias_violation_exhaustive(*o.max_n, r, s);
            } else {
                if (o.family.empty()) throw InputError("search needs --family or --max-n");
                doc.provenance.seed = o.seed;
                outcome = search_lagarias_violation(detail::family_spec(o), r, s, o.trials, o.threads);
            }
            doc.reports.emplace_back(outcome);
            if (o.counterexample && !outcome.violations.empty() && r == 2 && s == 1) {
                const Violation& v = outcome.violations.front();
                const Graph g = Graph::build(v.n, v.edges, false);
                doc.reports.emplace_back(build_power_series_counterexample(g, o.epsilon, o.tol));
            }
            if (o.format == "csv") {
                detail::emit(search_to_csv(outcome), o, out);
                return ok;
            }
        } else if (suite->parsed()) {
            if (o.family.empty()) throw InputError("suite needs --family");
            doc.provenance.seed = o.seed;
            doc.provenance.tolerances["equality"] = o.equality_tol;
            SuiteOptions opts;
            opts.tol = o.tol;
            opts.equality_tol = o.equality_tol;
            opts.threads = o.threads;
            doc.reports.emplace_back(random_theorem_suite(detail::family_spec(o), o.trials, opts));
        } else {
            const Graph g = detail::load_graph(o);
            doc.graph = summarize(g);
            if (centrality->parsed()) {
                doc.reports.emplace_back(compute(g, detail::centrality_spec(g, o)));
            } else if (paradox->parsed()) {
                const CentralitySpec spec = detail::centrality_spec(g, o);
                const NodeVector x = compute(g, spec);
                // Walk series pair broadcast with the out-degree paradox and receive with the in-degree one.
                // Perron vectors pair the other way: x_R with in-degrees, x_L with out-degrees.
                Mode mode = Mode::undirected;
                if (!o.mode.empty()) {
                    mode = parse_mode(o.mode);
                } else if (g.directed()) {
                    const bool receive = spec.direction == Direction::receive;
                    const bool flip = spec.kind == Measure::eigenvector;
                    mode = (receive != flip) ? Mode::in : Mode::out;
                }
                ParadoxReport rep = paradox_report(g, x, mode, o.tol);
                if (!rep.holds) status = finding;
                doc.reports.emplace_back(std::move(rep));
            } else if (directed_paradox->parsed()) {
                DirectedDegreeReport rep = directed_degree_report(g, o.tol);
                if (!rep.all_hold()) status = finding;
                doc.reports.emplace_back(std::move(rep));
            } else if (conditions->parsed()) {
                auto add = [&](ConditionReport rep) {
                    if (!rep.holds) status = finding;
                    doc.reports.emplace_back(std::move(rep));
                };
                if (o.r.has_value() != o.s.has_value()) throw InputError("--r and --s go together");
                if (!g.directed()) {
                    if (o.r) {
                        add(check_lagarias(g, *o.r, *o.s));
                    } else {
                        for (std::size_t k = 1; k <= o.max_k; ++k) add(check_suff1a(g, k));
                        for (std::size_t total = 2; total <= o.max_k; ++total) {
                            for (std::size_t s = 1; s <= total / 2; ++s) add(check_lagarias(g, total - s, s));
                        }
                    }
                    if (o.counterexample) doc.reports.emplace_back(build_power_series_counterexample(g, o.epsilon, o.tol));
                } else {
                    for (std::size_t k = 1; k <= o.max_k; ++k) add(check_suff1_directed(g, k));
                    if (is_strongly_connected(g)) {
                        add(check_spectral_directed(g, Side::left));
                        add(check_spectral_directed(g, Side::right));
                    }
                }
            } else if (sweep->parsed()) {
                SweepResult r = katz_alpha_sweep(g, o.grid, o.tol);
                if (!r.violations.empty()) status = finding;
                if (o.format == "csv") {
                    detail::emit(sweep_to_csv(r), o, out);
                    return status;
                }
                doc.reports.emplace_back(std::move(r));
            }
        }
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return internal;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }

    detail::emit(serialize(doc), o, out);
    return status;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, out, err);
}

} // namespace fparadox::cli
