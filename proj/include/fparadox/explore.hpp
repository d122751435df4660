#pragma once

// Search harnesses around the open questions: Katz alpha sweeps, searches for
// odd-order walk-inequality violators, the power-series counterexample
// construction, and seeded batch checks of the guaranteed paradoxes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fparadox/centrality.hpp"
#include "fparadox/conditions.hpp"
#include "fparadox/errors.hpp"
#include "fparadox/generators.hpp"
#include "fparadox/graph.hpp"
#include "fparadox/paradox.hpp"
#include "fparadox/prng.hpp"
#include "fparadox/spectral.hpp"

namespace fparadox {

// ---------------------------------------------------------------------------
// Katz alpha sweep
// ---------------------------------------------------------------------------

struct SweepResult {
    double spectral_radius = 0.0;
    std::vector<double> alphas;
    std::vector<double> gaps;
    double derivative_at_zero = 0.0;
    double min_gap = 0.0;
    double min_gap_alpha = 0.0;
    std::vector<double> violations; ///< alphas with gap < -tol
    double tol = default_paradox_tol;

    friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

/// Katz paradox gap at one alpha on an undirected graph, using a known rho.
inline double katz_gap(const Graph& g, double alpha, double rho, double tol = default_paradox_tol) {
    KatzOptions opts;
    opts.spectral_radius = rho;
    return paradox_report(g, katz_action(g, alpha, false, opts), Mode::undirected, tol).gap;
}

/// (d^T d - ||d||_1^2 / n) / ||d||_1: the slope of the Katz gap at alpha = 0.
inline double katz_gap_slope_at_zero(const Graph& g) {
    const NodeVector d = degree_vector(g);
    double dd = 0.0, s = 0.0;
    for (double v : d.values) {
        dd += v * v;
        s += v;
    }
    return (dd - s * s / static_cast<double>(g.node_count())) / s;
}

/// Gap at alpha_j = j / (grid_size + 1) / rho for j = 1..grid_size.
inline SweepResult katz_alpha_sweep(const Graph& g, std::size_t grid_size, double tol = default_paradox_tol) {
    if (g.directed()) throw InputError("katz_alpha_sweep needs an undirected graph");
    if (grid_size < 2) throw InputError("grid_size must be at least 2");
    if (!is_connected(g)) throw InputError("katz_alpha_sweep needs a connected graph");
    SweepResult r;
    r.tol = tol;
    r.spectral_radius = dominant_eigenpair(g).eigenvalue;
    const double step = 1.0 / (static_cast<double>(grid_size + 1) * r.spectral_radius);
    r.min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j <= grid_size; ++j) {
        const double alpha = static_cast<double>(j) * step;
        const double gap = katz_gap(g, alpha, r.spectral_radius, tol);
        r.alphas.push_back(alpha);
        r.gaps.push_back(gap);
        if (gap < r.min_gap) {
            r.min_gap = gap;
            r.min_gap_alpha = alpha;
        }
        if (gap < -tol) r.violations.push_back(alpha);
    }
    // Linear extrapolation of gap/alpha to alpha = 0 through the two smallest grid points.
    const double a1 = r.alphas[0], a2 = r.alphas[1];
    const double q1 = r.gaps[0] / a1, q2 = r.gaps[1] / a2;
    r.derivative_at_zero = (q1 * a2 - q2 * a1) / (a2 - a1);
    return r;
}

// ---------------------------------------------------------------------------
// Walk-inequality violation search
// ---------------------------------------------------------------------------

struct Violation {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::vector<Edge> edges;
    ConditionReport report;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct SearchOutcome {
    std::size_t trials = 0;
    std::size_t checked = 0;              ///< connected candidates actually tested
    std::size_t r = 0;
    std::size_t s = 0;
    std::vector<Violation> violations;    ///< sorted by trial index
    std::optional<double> min_slack;      ///< smallest slack, normalized by n * W_r * W_s
    std::optional<std::size_t> min_slack_trial;

    friend bool operator==(const SearchOutcome&, const SearchOutcome&) = default;
};

namespace detail {

inline void require_odd_order(std::size_t r, std::size_t s) {
    if (r < 1 || s < 1) throw InputError("orders r and s must be at least 1");
    if ((r + s) % 2 == 0) throw InputError("even order is theorem-guaranteed; search needs r + s odd");
}

struct TrialResult {
    bool checked = false;
    double normalized_slack = 0.0;
    std::optional<Violation> violation;
};

inline TrialResult check_candidate(const Graph& g, std::size_t trial, std::uint64_t seed, std::size_t r,
                                   std::size_t s) {
    TrialResult out;
    if (!is_connected(g)) return out;
    out.checked = true;
    ConditionReport rep = check_lagarias(g, r, s);
    out.normalized_slack = rep.rhs > 0.0 ? rep.slack / rep.rhs : rep.slack;
    if (!rep.holds) out.violation = Violation{trial, seed, g.node_count(), g.edges(), rep};
    return out;
}

inline void merge(SearchOutcome& out, std::size_t trial, const TrialResult& t) {
    if (!t.checked) return;
    ++out.checked;
    if (!out.min_slack || t.normalized_slack < *out.min_slack) {
        out.min_slack = t.normalized_slack;
        out.min_slack_trial = trial;
    }
    if (t.violation) out.violations.push_back(*t.violation);
}

/// Run `trials` independent tasks over `threads` workers; results land in trial order.
template <class Task>
std::vector<TrialResult> run_trials(std::size_t trials, std::size_t threads, Task task) {
    std::vector<TrialResult> results(trials);
    std::vector<std::exception_ptr> errors(trials);
    threads = std::max<std::size_t>(1, std::min(threads, trials));
    auto worker = [&](std::size_t offset) {
        for (std::size_t t = offset; t < trials; t += threads) {
            try {
                results[t] = task(t);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return results;
}

} // namespace detail

/**
 * Check n W_{r+s} >= W_r W_s on `trials` graphs from `family` (r + s odd).
 *
 * Trial t uses seed CounterRng::derive(family.seed, t). Disconnected samples
 * are counted as trials but not checked. Output is independent of `threads`.
 */
inline SearchOutcome search_lagarias_violation(const FamilySpec& family, std::size_t r, std::size_t s,
                                               std::size_t trials, std::size_t threads = 1) {
    detail::require_odd_order(r, s);
    if (is_directed_family(family.family)) throw InputError("search needs an undirected family");
    const auto results = detail::run_trials(trials, threads, [&](std::size_t t) {
        FamilySpec spec = family;
        spec.seed = CounterRng::derive(family.seed, t);
        std::optional<Graph> g;
        try {
            g = make(spec);
        } catch (const InputError&) {
            // Random samples can be degenerate (e.g. edgeless); count them as unchecked trials.
            if (!is_random(family.family)) throw;
            return detail::TrialResult{};
        }
        return detail::check_candidate(*g, t, spec.seed, r, s);
    });
    SearchOutcome out;
    out.trials = trials;
    out.r = r;
    out.s = s;
    for (std::size_t t = 0; t < trials; ++t) detail::merge(out, t, results[t]);
    return out;
}

/// Exhaustive variant over every connected graph with 2..max_n nodes; trial = enumeration index.
inline SearchOutcome search_lagarias_violation_exhaustive(std::size_t max_n, std::size_t r, std::size_t s) {
    detail::require_odd_order(r, s);
    SearchOutcome out;
    out.r = r;
    out.s = s;
    std::size_t index = 0;
    for_each_connected(max_n, [&](const Graph& g) {
        detail::merge(out, index, detail::check_candidate(g, index, 0, r, s));
        ++index;
    });
    out.trials = index;
    return out;
}

// ---------------------------------------------------------------------------
// Power-series counterexample
// ---------------------------------------------------------------------------

struct CounterexampleResult {
    SeriesCoefficients coeffs;
    ParadoxReport report;
    ConditionReport violation; ///< the failing suff1a(2) check on the input graph
    double epsilon = 0.0;
    std::size_t halvings = 0;

    friend bool operator==(const CounterexampleResult&, const CounterexampleResult&) = default;
};

/**
 * Coefficients (1, eps, 1) whose series centrality breaks the paradox on a graph
 * with n W_3 < W_2 W_1. The gap numerator is eps (W_2 - W_1^2/n) + (W_3 - W_2 W_1/n),
 * so eps starts at half the bound that keeps it negative and is halved until the
 * numerically computed gap is negative (at most 40 times).
 */
inline CounterexampleResult build_power_series_counterexample(const Graph& g, std::optional<double> epsilon = {},
                                                              double tol = default_paradox_tol) {
    if (g.directed()) throw InputError("counterexample construction needs an undirected graph");
    ConditionReport violation = check_suff1a(g, 2);
    if (violation.holds) {
        throw InputError("graph does not violate the length-3 walk inequality (slack " +
                         std::to_string(violation.slack) + "); no counterexample possible this way");
    }
    const double nd = static_cast<double>(g.node_count());
    const double w1 = walk_sum(g, 1);
    const double linear_term = walk_sum(g, 2) - w1 * w1 / nd;
    double eps = linear_term > 0.0 ? std::fabs(violation.slack) / (2.0 * linear_term) : 1.0;
    if (epsilon) {
        if (!(*epsilon > 0.0)) throw InputError("epsilon must be positive");
        eps = std::min(eps, *epsilon);
    }
    for (std::size_t halvings = 0; halvings <= 40; ++halvings, eps /= 2.0) {
        SeriesCoefficients coeffs({1.0, eps, 1.0});
        NodeVector x = series_action(g, coeffs);
        x.label = "power_series[1," + detail::format_number(eps) + ",1]";
        ParadoxReport report = paradox_report(g, x, Mode::undirected, tol);
        if (report.gap < 0.0 && !report.holds) {
            return {coeffs, report, violation, eps, halvings};
        }
        if (report.gap < 0.0 && report.holds) {
            // Negative but inside the tolerance band: the verdict would not show the failure.
            continue;
        }
    }
    throw InternalError("no epsilon produced a negative paradox gap after 40 halvings");
}

// ---------------------------------------------------------------------------
// Randomized theorem suite
// ---------------------------------------------------------------------------

struct SuiteFailure {
    std::size_t trial = 0;
    std::string check;
    double gap = 0.0;
    std::size_t n = 0;
    bool directed = false;
    std::vector<Edge> edges;

    friend bool operator==(const SuiteFailure&, const SuiteFailure&) = default;
};

struct SuiteSummary {
    std::string family;
    std::size_t trials = 0;
    std::size_t retries = 0; ///< samples discarded for being disconnected or empty
    std::map<std::string, std::size_t> checks;
    std::map<std::string, double> min_gap;
    std::vector<SuiteFailure> failures;
    double tol = default_paradox_tol;

    friend bool operator==(const SuiteSummary&, const SuiteSummary&) = default;
};

/// A guaranteed paradox failed during the suite; `dump` holds a replayable edge list.
class TheoremViolation : public InternalError {
public:
    TheoremViolation(const std::string& what, SuiteFailure failure) : InternalError(what), failure_(std::move(failure)) {}
    const SuiteFailure& failure() const noexcept { return failure_; }

private:
    SuiteFailure failure_;
};

struct SuiteOptions {
    double tol = default_paradox_tol;
    double equality_tol = 1e-8;   ///< |gap| bound on regular graphs
    double odd_beta = 1.0;
    double katz_fraction = 1e-3;  ///< alpha = katz_fraction / rho
    std::size_t max_retries = 10000;
    std::size_t threads = 1;
};

namespace detail {

struct SuiteTrial {
    std::size_t retries = 0;
    std::vector<std::pair<std::string, double>> gaps;
    std::optional<SuiteFailure> failure;
};

inline std::optional<Graph> sample(const FamilySpec& base, std::size_t trial, const SuiteOptions& options,
                                   std::size_t& retries) {
    const bool need_connected = !is_directed_family(base.family);
    for (std::size_t attempt = 0; attempt <= options.max_retries; ++attempt) {
        FamilySpec spec = base;
        spec.seed = CounterRng::derive(CounterRng::derive(base.seed, trial), attempt);
        if (!is_random(base.family) && attempt > 0) break;
        try {
            Graph g = make(spec);
            if (!need_connected || is_connected(g)) return g;
        } catch (const InputError&) {
            if (!is_random(base.family)) throw;
        }
        ++retries;
    }
    return std::nullopt;
}

inline SuiteTrial run_suite_trial(const Graph& g, std::size_t trial, const SuiteOptions& options) {
    SuiteTrial out;
    auto record = [&](const std::string& name, double gap, bool ok) {
        out.gaps.emplace_back(name, gap);
        if (!ok && !out.failure) out.failure = SuiteFailure{trial, name, gap, g.node_count(), g.directed(), g.edges()};
    };
    const double tol = options.tol;
    if (!g.directed()) {
        const bool regular = is_regular(g).has_value();
        auto check = [&](const std::string& name, const NodeVector& x) {
            const ParadoxReport p = paradox_report(g, x, Mode::undirected, tol);
            const bool ok = p.gap >= -tol && (!regular || std::fabs(p.gap) <= options.equality_tol);
            record(name, p.gap, ok);
        };
        check("classic_degree", degree_vector(g));
        const EigenResult eig = dominant_eigenpair(g);
        check("eigenvector", eig.vector);
        check("odd_sinh", odd_action(g, options.odd_beta));
        KatzOptions kopts;
        kopts.spectral_radius = eig.eigenvalue;
        check("katz_small_alpha", katz_action(g, options.katz_fraction / eig.eigenvalue, false, kopts));
    } else {
        const DirectedDegreeReport dr = directed_degree_report(g, tol);
        record("out_out_degree", dr.out_out.gap, dr.out_out.holds);
        record("in_in_degree", dr.in_in.gap, dr.in_in.holds);
        const double rho = spectral_radius(g);
        const double alpha = rho > 0.0 ? options.katz_fraction / rho : options.katz_fraction;
        KatzOptions kopts;
        kopts.spectral_radius = rho;
        const ParadoxReport out_mode = paradox_report(g, katz_action(g, alpha, false, kopts), Mode::out, tol);
        record("katz_broadcast_out", out_mode.gap, out_mode.holds);
        const ParadoxReport in_mode = paradox_report(g, katz_action(g, alpha, true, kopts), Mode::in, tol);
        record("katz_receive_in", in_mode.gap, in_mode.holds);
    }
    return out;
}

} // namespace detail

/**
 * Seeded batch check of the guaranteed paradoxes on one family.
 *
 * Undirected: classic degree, eigenvector, sinh and small-alpha Katz gaps are
 * nonnegative, and vanish on regular graphs. Directed: out-out and in-in degree
 * gaps plus the small-alpha broadcast/out and receive/in Katz gaps. Disconnected
 * undirected samples are redrawn. The first failure raises TheoremViolation.
 */
inline SuiteSummary random_theorem_suite(const FamilySpec& family, std::size_t trials, SuiteOptions options = {}) {
    std::vector<detail::SuiteTrial> results(trials);
    std::vector<std::exception_ptr> errors(trials);
    const std::size_t threads = std::max<std::size_t>(1, std::min(options.threads, trials));
    auto worker = [&](std::size_t offset) {
        for (std::size_t t = offset; t < trials; t += threads) {
            try {
                std::size_t retries = 0;
                auto g = detail::sample(family, t, options, retries);
                if (!g) throw InputError("no connected sample after " + std::to_string(retries) + " retries");
                results[t] = detail::run_suite_trial(*g, t, options);
                results[t].retries = retries;
            } catch (...) {
                errors[t] = std::current_exception();
            }
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }

    SuiteSummary summary;
    summary.family = to_string(family.family);
    summary.trials = trials;
    summary.tol = options.tol;
    for (std::size_t t = 0; t < trials; ++t) {
        if (errors[t]) std::rethrow_exception(errors[t]);
        summary.retries += results[t].retries;
        for (const auto& [name, gap] : results[t].gaps) {
            ++summary.checks[name];
            auto it = summary.min_gap.find(name);
            if (it == summary.min_gap.end() || gap < it->second) summary.min_gap[name] = gap;
        }
        if (results[t].failure) summary.failures.push_back(*results[t].failure);
    }
    if (!summary.failures.empty()) {
        const SuiteFailure& f = summary.failures.front();
        std::ostringstream dump;
        dump << "theorem check '" << f.check << "' failed on trial " << f.trial << " (gap " << f.gap << "); edges:";
        for (const Edge& e : f.edges) dump << ' ' << e.source << '-' << e.target;
        throw TheoremViolation(dump.str(), f);
    }
    return summary;
}

} // namespace fparadox
