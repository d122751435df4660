// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fparadox/fparadox.hpp"

using namespace fparadox;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (pass) detail << "first failure: " << what << "; ";
            pass = false;
        }
    }
};

Graph family(Family f, std::size_t n = 0, std::size_t k = 0, double p = 0.0, std::size_t m = 0, std::uint64_t seed = 0) {
    return make(FamilySpec{f, n, k, p, m, seed});
}

Graph fixture(const std::string& name) {
    return read_edge_list_file(std::string(FPARADOX_FIXTURE_DIR) + "/" + name);
}

// 500 connected ER graphs with p = 0.1 and n in 30..50.
const std::vector<Graph>& er_corpus() {
    static const std::vector<Graph> corpus = [] {
        std::vector<Graph> out;
        std::uint64_t seed = 1;
        for (std::size_t i = 0; out.size() < 500; ++i) {
            const std::size_t n = 30 + i % 21;
            for (;; ++seed) {
                Graph g = family(Family::erdos_renyi, n, 0, 0.1, 0, seed);
                if (is_connected(g)) {
                    out.push_back(std::move(g));
                    ++seed;
                    break;
                }
            }
        }
        return out;
    }();
    return corpus;
}

// 100 connected random k-regular graphs with k in 3..5 and n in 10..40.
const std::vector<Graph>& regular_corpus() {
    static const std::vector<Graph> corpus = [] {
        std::vector<Graph> out;
        std::uint64_t seed = 1;
        for (std::size_t i = 0; out.size() < 100; ++i) {
            const std::size_t k = 3 + i % 3;
            std::size_t n = 10 + (i * 7) % 31;
            if ((n * k) % 2 != 0) ++n;
            for (;; ++seed) {
                Graph g = family(Family::k_regular_random, n, k, 0.0, 0, seed);
                if (is_connected(g)) {
                    out.push_back(std::move(g));
                    ++seed;
                    break;
                }
            }
        }
        return out;
    }();
    return corpus;
}

// Undirected measure checked over the exhaustive, ER and regular corpora.
Outcome undirected_suite(const CentralitySpec& spec, const std::string& name) {
    Outcome o;
    double worst = 0.0, worst_regular = 0.0;
    std::size_t graphs = 0;
    auto check = [&](const Graph& g, const std::string& where) {
        const ParadoxReport r = paradox_report(g, compute(g, spec), Mode::undirected);
        worst = std::min(worst, r.gap);
        ++graphs;
        o.require(r.gap >= -1e-9, name + " gap " + std::to_string(r.gap) + " on " + where);
    };
    for_each_connected(6, [&](const Graph& g) {
        if (g.node_count() >= 2) check(g, "exhaustive n=" + std::to_string(g.node_count()));
    });
    for (const Graph& g : er_corpus()) check(g, "ER n=" + std::to_string(g.node_count()));
    for (const Graph& g : regular_corpus()) {
        const ParadoxReport r = paradox_report(g, compute(g, spec), Mode::undirected);
        worst_regular = std::max(worst_regular, std::fabs(r.gap));
        ++graphs;
        o.require(std::fabs(r.gap) <= 1e-8, name + " regular |gap| " + std::to_string(r.gap));
    }
    o.detail << graphs << " graphs, min gap " << worst << ", max regular |gap| " << worst_regular;
    return o;
}

Outcome criterion1() {
    Outcome o;
    const Graph g = family(Family::figure1);
    const auto t0 = Clock::now();
    const ParadoxReport r = paradox_report(g, degree_vector(g), Mode::undirected);
    const double ms = seconds_since(t0) * 1e3;
    o.require(r.exact.has_value(), "no exact averages");
    if (r.exact) {
        o.require(r.exact->node_average == Rational(16, 8), "node average " + r.exact->node_average.to_string());
        o.require(r.exact->neighbour_average == Rational(42, 16), "neighbour average " + r.exact->neighbour_average.to_string());
        o.detail << "node " << r.exact->node_average.to_string() << ", neighbour " << r.exact->neighbour_average.to_string();
    }
    o.require(ms < 1.0, "runtime " + std::to_string(ms) + " ms");
    o.detail << ", " << ms << " ms";
    return o;
}

CentralitySpec eigen_spec() {
    CentralitySpec spec;
    spec.kind = Measure::eigenvector;
    return spec;
}

Outcome criterion2() {
    const auto t0 = Clock::now();
    Outcome o = undirected_suite(eigen_spec(), "eigenvector");
    const double s = seconds_since(t0);
    o.require(s < 60.0, "runtime " + std::to_string(s) + " s");
    o.detail << ", " << s << " s";
    return o;
}

Outcome criterion3() {
    CentralitySpec spec;
    spec.kind = Measure::odd;
    spec.beta = 1.0;
    return undirected_suite(spec, "sinh");
}

Outcome criterion4() {
    Outcome o;
    double worst = 0.0, worst_rel = 0.0;
    for (const Graph& g : er_corpus()) {
        const double rho = spectral_radius(g);
        const double gap = katz_gap(g, 1e-3 / rho, rho);
        worst = std::min(worst, gap);
        o.require(gap >= -1e-9, "katz gap " + std::to_string(gap));
        const double alpha = 1e-4 / rho;
        const double slope = katz_gap_slope_at_zero(g);
        const double rel = std::fabs(katz_gap(g, alpha, rho) / alpha - slope) / std::fabs(slope);
        worst_rel = std::max(worst_rel, rel);
        o.require(rel <= 0.05, "slope mismatch " + std::to_string(rel));
    }
    const Graph f = family(Family::figure1);
    const double limit = katz_gap_slope_at_zero(f);
    o.require(std::fabs(limit - 0.625) <= 1e-12, "figure1 slope " + std::to_string(limit));
    const double rho = spectral_radius(f);
    const double finite = katz_gap(f, 1e-4 / rho, rho) / (1e-4 / rho);
    o.require(std::fabs(finite - 0.625) <= 0.05 * 0.625, "figure1 finite slope " + std::to_string(finite));
    o.detail << "min gap at 1e-3/rho " << worst << ", worst slope rel err " << worst_rel << ", figure1 slope "
             << limit << " (finite " << finite << ")";
    return o;
}

Outcome criterion5() {
    Outcome o;
    std::vector<Graph> graphs;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        graphs.push_back(family(Family::erdos_renyi_directed, 10 + seed % 21, 0, 0.15, 0, seed));
    }
    for (const char* name : {"hub_cycle10.edges", "three_node.edges", "star_out5.edges"}) graphs.push_back(fixture(name));
    std::size_t checked = 0;
    for (const Graph& g : graphs) {
        if (g.arc_count() == 0) continue;
        const DirectedDegreeReport r = directed_degree_report(g);
        ++checked;
        for (const ParadoxReport* p : {&r.out_out, &r.in_in}) {
            o.require(p->exact.has_value(), "missing exact gap");
            if (p->exact) o.require(p->exact->gap.sign() >= 0, "negative exact gap " + p->exact->gap.to_string());
            o.require(p->gap >= -1e-12, "negative gap");
        }
    }
    o.detail << checked << " digraphs";
    return o;
}

Outcome criterion6() {
    Outcome o;
    const Graph g = fixture("hub_cycle10.edges");
    const Rational term = first_order_in_degree_term_exact(g);
    o.require(term == Rational(-71, 10), "term " + term.to_string());
    const DirectedDegreeReport r = directed_degree_report(g);
    o.require(!r.out_in.holds, "out_in holds");
    o.require(!r.in_out.holds, "in_out holds");
    o.detail << "term " << term.to_string() << ", out_in gap " << r.out_in.gap << ", in_out gap " << r.in_out.gap;
    return o;
}

Outcome criterion7() {
    Outcome o;
    const Graph g = fixture("three_node.edges");
    const EigenResult right = dominant_eigenpair(g, Side::right);
    const EigenResult left = dominant_eigenpair(g, Side::left);
    o.require(std::fabs(right.eigenvalue - 1.324718) <= 1e-4, "lambda " + std::to_string(right.eigenvalue));
    o.require(right.eigenvalue < 4.0 / 3.0, "lambda not below mean degree");
    const ConditionReport cl = check_spectral_directed(g, Side::left);
    const ConditionReport cr = check_spectral_directed(g, Side::right);
    o.require(!cl.holds && !cr.holds, "spectral condition holds on a side");
    const double gap_left = paradox_report(g, left.vector, Mode::out).gap;
    const double gap_right = paradox_report(g, right.vector, Mode::in).gap;
    o.require(gap_left < 0.0, "x_L gap " + std::to_string(gap_left));
    o.require(gap_right < 0.0, "x_R gap " + std::to_string(gap_right));
    o.detail.precision(8);
    o.detail << "lambda " << right.eigenvalue << ", x_L out gap " << gap_left << ", x_R in gap " << gap_right;
    return o;
}

Outcome criterion8() {
    Outcome o;
    std::size_t checks = 0, exceptions = 0;
    for_each_connected(6, [&](const Graph& g) {
        if (g.node_count() < 2) return;
        for (std::size_t total = 2; total <= 8; total += 2) {
            for (std::size_t r = 1; r < total; ++r) {
                try {
                    const ConditionReport rep = check_lagarias(g, r, total - r);
                    ++checks;
                    o.require(rep.holds, "lagarias fails at (" + std::to_string(r) + "," + std::to_string(total - r) + ")");
                } catch (const std::exception& e) {
                    ++exceptions;
                    o.require(false, std::string("exception: ") + e.what());
                }
            }
        }
    });
    for (std::size_t m = 3; m <= 10; ++m) {
        const Graph s = family(Family::star_undirected, m + 1);
        const ConditionReport lag = check_lagarias(s, 2, 1);
        const ConditionReport suf = check_suff1a(s, 2);
        o.require(lag.exact && lag.exact->slack() == 0, "star lagarias slack nonzero at m=" + std::to_string(m));
        o.require(suf.exact && suf.exact->slack() == 0, "star suff1a slack nonzero at m=" + std::to_string(m));
    }
    o.detail << checks << " exact checks, " << exceptions << " exceptions, stars m=3..10 tight";
    return o;
}

Outcome criterion9() {
    Outcome o;
    const SearchOutcome found = search_lagarias_violation(FamilySpec{Family::clique_star, 0, 4, 0.0, 13, 0}, 2, 1, 1);
    o.require(!found.violations.empty(), "search found no violator");
    if (found.violations.empty()) return o;
    const Violation& v = found.violations.front();
    const Graph g = Graph::build(v.n, v.edges, false);
    const CounterexampleResult c = build_power_series_counterexample(g);
    o.require(c.coeffs.order() == 2 && c.coeffs[0] == 1.0 && c.coeffs[2] == 1.0, "coefficients not (1, eps, 1)");
    o.require(c.report.gap < 0.0, "reported gap not negative");
    const NodeVector x = series_action(g, c.coeffs);
    const ParadoxReport replay = paradox_report(g, x, Mode::undirected);
    o.require(replay.gap < 0.0 && !replay.holds, "replayed gap " + std::to_string(replay.gap));
    o.detail.precision(17);
    o.detail << "violator n=" << v.n << ", slack " << v.report.slack << ", eps " << c.epsilon << ", replayed gap "
             << replay.gap;
    return o;
}

std::string capture(const std::string& command) {
    std::string out;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return out;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    pclose(pipe);
    return out;
}

Outcome criterion10() {
    Outcome o;
    const std::string cli = FPARADOX_CLI_PATH;
    const std::vector<std::string> commands = {
        "suite --family erdos_renyi --n 25 --p 0.2 --seed 11 --trials 60",
        "suite --family erdos_renyi_directed --n 15 --p 0.2 --seed 5 --trials 60",
        "search --family erdos_renyi --n 12 --p 0.3 --seed 7 --trials 300",
        "paradox --family barabasi_albert --n 40 --m 2 --seed 3 --measure katz",
    };
    for (const std::string& args : commands) {
        const std::string base = capture(cli + " " + args + " --threads 1 2>/dev/null");
        o.require(!base.empty(), "no output from: " + args);
        for (const char* threads : {"1", "4", "4"}) {
            const std::string again = capture(cli + " " + args + " --threads " + threads + " 2>/dev/null");
            o.require(again == base, "output differs for: " + args + " --threads " + threads);
        }
    }
    o.detail << commands.size() << " commands x 4 runs byte-identical across --threads 1/4";
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 figure1 exact averages", criterion1},
        {"2 eigenvector paradox suite", criterion2},
        {"3 sinh paradox suite", criterion3},
        {"4 katz small-alpha paradox and slope", criterion4},
        {"5 directed out_out/in_in universals", criterion5},
        {"6 hub_cycle(10) mixed paradoxes", criterion6},
        {"7 three-node spectral counterexample", criterion7},
        {"8 walk-inequality soundness", criterion8},
        {"9 power-series counterexample pipeline", criterion9},
        {"10 CLI determinism", criterion10},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail.str() << std::endl;
    }
    std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " FAILED") << std::endl;
    return failed == 0 ? 0 : 1;
}
