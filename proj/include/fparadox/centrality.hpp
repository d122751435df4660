#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "fparadox/errors.hpp"
#include "fparadox/graph.hpp"
#include "fparadox/spectral.hpp"

namespace fparadox {

enum class Measure { degree, eigenvector, katz, total, odd, even, power_series };

/// undirected: plain A. broadcast: walks leaving a node (A). receive: walks arriving at a node (A^T).
enum class Direction { undirected, broadcast, receive };

inline const char* to_string(Measure m) {
    switch (m) {
    case Measure::degree: return "degree";
    case Measure::eigenvector: return "eigenvector";
    case Measure::katz: return "katz";
    case Measure::total: return "total";
    case Measure::odd: return "odd";
    case Measure::even: return "even";
    case Measure::power_series: return "power_series";
    }
    return "?";
}

inline const char* to_string(Direction d) {
    switch (d) {
    case Direction::undirected: return "undirected";
    case Direction::broadcast: return "broadcast";
    case Direction::receive: return "receive";
    }
    return "?";
}

inline Measure parse_measure(const std::string& s) {
    for (Measure m : {Measure::degree, Measure::eigenvector, Measure::katz, Measure::total, Measure::odd,
                      Measure::even, Measure::power_series}) {
        if (s == to_string(m)) return m;
    }
    if (s == "sinh") return Measure::odd;
    if (s == "cosh") return Measure::even;
    if (s == "exp") return Measure::total;
    throw InputError("unknown measure '" + s + "'");
}

inline Direction parse_direction(const std::string& s) {
    for (Direction d : {Direction::undirected, Direction::broadcast, Direction::receive}) {
        if (s == to_string(d)) return d;
    }
    throw InputError("unknown direction '" + s + "'");
}

struct CentralitySpec {
    Measure kind = Measure::degree;
    Direction direction = Direction::undirected;
    std::optional<double> alpha;      ///< katz; defaults to 0.5 / rho(A)
    double beta = 1.0;                ///< total, odd, even
    SeriesCoefficients coeffs;        ///< power_series
    double tol = 0.0;                 ///< 0 selects the kernel default
};

namespace detail {

inline void validate(const Graph& g, const CentralitySpec& spec) {
    if (g.directed() && spec.direction == Direction::undirected) {
        throw InputError("direction 'undirected' given for a directed graph; use broadcast or receive");
    }
    if (spec.alpha && !(*spec.alpha > 0.0)) throw InputError("alpha must be positive");
    if (!(spec.beta > 0.0)) throw InputError("beta must be positive");
    if (spec.tol < 0.0) throw InputError("tolerance must be positive");
    if (spec.kind == Measure::power_series && spec.coeffs.values().empty()) {
        throw InputError("power_series needs coefficients");
    }
}

inline std::string suffix(const Graph& g, Direction d) {
    return g.directed() ? std::string("[") + to_string(d) + "]" : std::string();
}

/// Broadcast-side computation on `g`; receive is obtained by calling this on the transpose.
inline NodeVector compute_broadcast(const Graph& g, const CentralitySpec& spec) {
    switch (spec.kind) {
    case Measure::degree: {
        NodeVector d = out_degree_vector(g);
        if (!g.directed()) d.label = "degree";
        return d;
    }
    case Measure::eigenvector: {
        EigenOptions opts;
        if (spec.tol > 0.0) opts.tol = spec.tol;
        return dominant_eigenpair(g, Side::right, opts).vector;
    }
    case Measure::katz: {
        KatzOptions opts;
        if (spec.tol > 0.0) opts.tol = spec.tol;
        const double rho = spectral_radius(g);
        opts.spectral_radius = rho;
        double alpha = 0.0;
        if (spec.alpha) {
            alpha = *spec.alpha;
        } else {
            alpha = rho > 0.0 ? 0.5 / rho : 0.5;
        }
        NodeVector x = katz_action(g, alpha, false, opts);
        x.label = "katz[alpha=" + format_number(alpha) + "]";
        return x;
    }
    case Measure::total:
        return exp_action(g, spec.beta, spec.tol > 0.0 ? spec.tol : default_series_tol);
    case Measure::odd:
        return odd_action(g, spec.beta, spec.tol > 0.0 ? spec.tol : default_series_tol);
    case Measure::even:
        return even_action(g, spec.beta, spec.tol > 0.0 ? spec.tol : default_series_tol);
    case Measure::power_series: {
        NodeVector x = series_action(g, spec.coeffs);
        std::string label = "power_series[";
        for (std::size_t k = 0; k < spec.coeffs.values().size(); ++k) {
            label += (k ? "," : "") + format_number(spec.coeffs[k]);
        }
        x.label = label + "]";
        return x;
    }
    }
    throw InputError("unknown centrality kind");
}

} // namespace detail

/**
 * Centrality vector for `spec` on `g`.
 *
 * Eigenvector output is normalized to one-norm n. Walk-based outputs are left
 * unnormalized. The receive direction is computed as the broadcast direction
 * of the transposed graph, so the two agree bit for bit.
 */
inline NodeVector compute(const Graph& g, const CentralitySpec& spec) {
    detail::validate(g, spec);
    if (spec.direction == Direction::receive && g.directed()) {
        NodeVector x = detail::compute_broadcast(g.transpose(), spec);
        if (spec.kind == Measure::degree) {
            x.label = "in_degree";
        } else if (spec.kind == Measure::eigenvector) {
            x.label = "eigenvector[left]";
        } else {
            x.label += "[receive]";
        }
        return x;
    }
    NodeVector x = detail::compute_broadcast(g, spec);
    if (g.directed() && spec.kind != Measure::degree && spec.kind != Measure::eigenvector) x.label += "[broadcast]";
    return x;
}

// ---------------------------------------------------------------------------
// Katz limit diagnostics
// ---------------------------------------------------------------------------

struct LimitDiagnostic {
    std::vector<double> alphas;
    std::vector<double> values; ///< deviation (degree limit) or cosine similarity (eigenvector limit)
    double extreme = 0.0;       ///< max deviation, or final similarity
    bool monotone = false;      ///< deviations strictly decreasing / similarities nondecreasing
};

namespace detail {

inline Graph oriented(const Graph& g, Direction direction) {
    if (g.directed() && direction == Direction::undirected) {
        throw InputError("direction 'undirected' given for a directed graph");
    }
    return (direction == Direction::receive && g.directed()) ? g.transpose() : g;
}

} // namespace detail

/// ||(x(alpha) - 1)/alpha - d||_inf / ||d||_inf per alpha, d the degree matching `direction`.
inline LimitDiagnostic katz_degree_limit_check(const Graph& g, Direction direction, const std::vector<double>& alphas) {
    if (alphas.empty()) throw InputError("need at least one alpha");
    const Graph h = detail::oriented(g, direction);
    const NodeVector d = out_degree_vector(h);
    const double dmax = detail::norm_inf(d.values);
    KatzOptions opts;
    opts.spectral_radius = spectral_radius(h);
    LimitDiagnostic out;
    out.alphas = alphas;
    for (double alpha : alphas) {
        const NodeVector x = katz_action(h, alpha, false, opts);
        double dev = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) dev = std::max(dev, std::fabs((x[i] - 1.0) / alpha - d[i]));
        out.values.push_back(dev / dmax);
    }
    out.extreme = *std::max_element(out.values.begin(), out.values.end());
    out.monotone = true;
    for (std::size_t i = 1; i < out.values.size(); ++i) out.monotone = out.monotone && out.values[i] < out.values[i - 1];
    return out;
}

inline double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
    double ab = 0.0, aa = 0.0, bb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ab += a[i] * b[i];
        aa += a[i] * a[i];
        bb += b[i] * b[i];
    }
    return ab / std::sqrt(aa * bb);
}

/// Cosine similarity between the Katz vector and the matching Perron vector per alpha.
/// Broadcast pairs with the right vector, receive with the left.
inline LimitDiagnostic katz_eigenvector_limit_check(const Graph& g, Direction direction,
                                                    const std::vector<double>& alphas) {
    if (alphas.empty()) throw InputError("need at least one alpha");
    const Graph h = detail::oriented(g, direction);
    const EigenResult eig = dominant_eigenpair(h, Side::right);
    KatzOptions opts;
    opts.spectral_radius = eig.eigenvalue;
    LimitDiagnostic out;
    out.alphas = alphas;
    for (double alpha : alphas) {
        const NodeVector x = katz_action(h, alpha, false, opts);
        out.values.push_back(cosine_similarity(x.values, eig.vector.values));
    }
    out.extreme = out.values.back();
    out.monotone = true;
    for (std::size_t i = 1; i < out.values.size(); ++i) {
        out.monotone = out.monotone && out.values[i] >= out.values[i - 1] - 1e-15;
    }
    return out;
}

} // namespace fparadox
