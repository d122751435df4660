#pragma once

// Friendship-paradox averages: node mean ||x||_1/n against the degree-weighted
// neighbour mean d^T x/||d||_1, with d the degree, out-degree or in-degree.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "fparadox/errors.hpp"
#include "fparadox/exact.hpp"
#include "fparadox/graph.hpp"

namespace fparadox {

enum class Mode { undirected, out, in };

inline const char* to_string(Mode m) {
    switch (m) {
    case Mode::undirected: return "undirected";
    case Mode::out: return "out";
    case Mode::in: return "in";
    }
    return "?";
}

inline Mode parse_mode(const std::string& s) {
    for (Mode m : {Mode::undirected, Mode::out, Mode::in}) {
        if (s == to_string(m)) return m;
    }
    throw InputError("unknown mode '" + s + "'");
}

inline constexpr double default_paradox_tol = 1e-9;

/// Exact averages, present when x and the weighting degrees are all integers.
struct ExactAverages {
    Rational node_average;
    Rational neighbour_average;
    Rational gap;

    friend bool operator==(const ExactAverages&, const ExactAverages&) = default;
};

struct ParadoxReport {
    Mode mode = Mode::undirected;
    std::string measure_label;
    double node_average = 0.0;
    double neighbour_average = 0.0;
    double gap = 0.0;             ///< neighbour_average - node_average
    double covariance_form = 0.0; ///< Cov(d, x) / mu_d, computed independently of gap
    bool holds = false;           ///< gap >= -tol (exact sign when `exact` is set)
    bool equality = false;        ///< |gap| <= tol (exact zero when `exact` is set)
    double tol = default_paradox_tol;
    std::optional<ExactAverages> exact;

    friend bool operator==(const ParadoxReport&, const ParadoxReport&) = default;
};

namespace detail {

inline void require_nonnegative(const NodeVector& x) {
    for (double v : x.values) {
        if (!std::isfinite(v)) throw InputError("attribute vector has a non-finite entry");
        if (v < 0.0) throw InputError("attribute vector has a negative entry; the paradox needs x >= 0");
    }
}

inline NodeVector weighting_degree(const Graph& g, Mode mode) {
    switch (mode) {
    case Mode::undirected: return degree_vector(g);
    case Mode::out: return out_degree_vector(g);
    case Mode::in: return in_degree_vector(g);
    }
    throw InputError("unknown mode");
}

inline void check_length(const Graph& g, const NodeVector& x) {
    if (x.size() != g.node_count()) throw InputError("attribute vector length does not match node count");
}

} // namespace detail

/// ||x||_1 / n for nonnegative x.
inline double node_average(const NodeVector& x) {
    if (x.size() == 0) throw InputError("empty attribute vector");
    detail::require_nonnegative(x);
    double s = 0.0;
    for (double v : x.values) s += v;
    return s / static_cast<double>(x.size());
}

/// d^T x / ||d||_1 with d chosen by `mode`. Mode undirected rejects directed graphs.
inline double neighbour_average(const Graph& g, const NodeVector& x, Mode mode) {
    detail::check_length(g, x);
    detail::require_nonnegative(x);
    const NodeVector d = detail::weighting_degree(g, mode);
    double dx = 0.0, dsum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        dx += d[i] * x[i];
        dsum += d[i];
    }
    return dx / dsum;
}

/// Full report with the gap, its covariance form and the verdicts.
inline ParadoxReport paradox_report(const Graph& g, const NodeVector& x, Mode mode, double tol = default_paradox_tol) {
    detail::check_length(g, x);
    if (!(tol >= 0.0)) throw InputError("tolerance must be nonnegative");
    const NodeVector d = detail::weighting_degree(g, mode);
    const std::size_t n = x.size();
    const double nd = static_cast<double>(n);

    ParadoxReport r;
    r.mode = mode;
    r.measure_label = x.label;
    r.tol = tol;
    r.node_average = node_average(x);
    r.neighbour_average = neighbour_average(g, x, mode);
    r.gap = r.neighbour_average - r.node_average;

    double mu_d = 0.0, mu_x = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mu_d += d[i];
        mu_x += x[i];
    }
    mu_d /= nd;
    mu_x /= nd;
    double cov = 0.0;
    for (std::size_t i = 0; i < n; ++i) cov += (d[i] - mu_d) * (x[i] - mu_x);
    cov /= nd;
    r.covariance_form = cov / mu_d;

    const double scale = std::max({1.0, std::fabs(r.node_average), std::fabs(r.neighbour_average)});
    if (std::fabs(r.gap - r.covariance_form) > 1e-9 * scale) {
        throw InternalError("gap and covariance form disagree: " + std::to_string(r.gap) + " vs " +
                            std::to_string(r.covariance_form));
    }

    const bool integral = std::all_of(x.values.begin(), x.values.end(), is_exact_integer) &&
                          std::all_of(d.values.begin(), d.values.end(), is_exact_integer);
    if (integral) {
        Int128 xsum = 0, dsum = 0, dx = 0;
        for (std::size_t i = 0; i < n; ++i) {
            xsum = checked_add(xsum, static_cast<Int128>(x[i]));
            dsum = checked_add(dsum, static_cast<Int128>(d[i]));
            dx = checked_add(dx, checked_mul(static_cast<Int128>(d[i]), static_cast<Int128>(x[i])));
        }
        ExactAverages e{Rational(xsum, static_cast<Int128>(n)), Rational(dx, dsum), Rational()};
        e.gap = e.neighbour_average - e.node_average;
        r.holds = e.gap.sign() >= 0;
        r.equality = e.gap.sign() == 0;
        r.node_average = e.node_average.to_double();
        r.neighbour_average = e.neighbour_average.to_double();
        r.gap = e.gap.to_double();
        r.exact = e;
    } else {
        r.holds = r.gap >= -tol;
        r.equality = std::fabs(r.gap) <= tol;
    }
    return r;
}

/// The four directed degree paradoxes. Keys are <weighting mode>_<attribute>:
/// out_in weights by out-degree and averages in-degree, and so on.
struct DirectedDegreeReport {
    ParadoxReport out_out;
    ParadoxReport in_in;
    ParadoxReport out_in;
    ParadoxReport in_out;
    double covariance = 0.0; ///< Cov(d_out, d_in)
    std::optional<Rational> covariance_exact;

    bool all_hold() const { return out_out.holds && in_in.holds && out_in.holds && in_out.holds; }

    friend bool operator==(const DirectedDegreeReport&, const DirectedDegreeReport&) = default;
};

inline DirectedDegreeReport directed_degree_report(const Graph& g, double tol = default_paradox_tol) {
    if (!g.directed()) {
        throw InputError("directed_degree_report needs a directed graph; use classic_friendship_paradox");
    }
    const NodeVector dout = out_degree_vector(g);
    const NodeVector din = in_degree_vector(g);
    DirectedDegreeReport r;
    r.out_out = paradox_report(g, dout, Mode::out, tol);
    r.in_in = paradox_report(g, din, Mode::in, tol);
    r.out_in = paradox_report(g, din, Mode::out, tol);
    r.in_out = paradox_report(g, dout, Mode::in, tol);

    const std::size_t n = g.node_count();
    const double nd = static_cast<double>(n);
    double mo = 0.0, mi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mo += dout[i];
        mi += din[i];
    }
    mo /= nd;
    mi /= nd;
    double cov = 0.0;
    for (std::size_t i = 0; i < n; ++i) cov += (dout[i] - mo) * (din[i] - mi);
    r.covariance = cov / nd;
    if (g.integral_weights()) {
        // n^2 Cov = n d_out^T d_in - ||d_out||_1 ||d_in||_1
        Int128 dot = 0, so = 0, si = 0;
        for (std::size_t i = 0; i < n; ++i) {
            dot = checked_add(dot, checked_mul(static_cast<Int128>(dout[i]), static_cast<Int128>(din[i])));
            so = checked_add(so, static_cast<Int128>(dout[i]));
            si = checked_add(si, static_cast<Int128>(din[i]));
        }
        const Int128 n128 = static_cast<Int128>(n);
        r.covariance_exact = Rational(checked_sub(checked_mul(n128, dot), checked_mul(so, si)), checked_mul(n128, n128));
    }

    if (!r.out_out.holds || !r.in_in.holds) {
        throw InternalError("out-out or in-in degree paradox failed; these hold on every directed graph");
    }
    return r;
}

/// d^T d/||d||_1 against ||d||_1/n on an undirected graph.
inline ParadoxReport classic_friendship_paradox(const Graph& g, double tol = default_paradox_tol) {
    if (g.directed()) throw InputError("classic_friendship_paradox needs an undirected graph; use directed_degree_report");
    return paradox_report(g, degree_vector(g), Mode::undirected, tol);
}

} // namespace fparadox
