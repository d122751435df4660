#pragma once

// Numeric kernels on the adjacency matrix: products, Perron eigenpairs, Katz
// solves, power-series actions and exact walk totals.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "fparadox/errors.hpp"
#include "fparadox/exact.hpp"
#include "fparadox/graph.hpp"

namespace fparadox {

enum class Side { left, right };

inline const char* to_string(Side s) { return s == Side::left ? "left" : "right"; }

struct EigenResult {
    double eigenvalue = 0.0;
    NodeVector vector; ///< positive, one-norm n
    Side side = Side::right;
    double residual = 0.0; ///< ||Ax - lambda x||_2 for the unit two-norm iterate
    std::size_t iterations = 0;
};

/// Nonnegative coefficients c_0..c_K of a truncated power series in A.
class SeriesCoefficients {
public:
    SeriesCoefficients() = default;
    explicit SeriesCoefficients(std::vector<double> values) : values_(std::move(values)) {
        if (values_.empty()) throw InputError("series needs at least one coefficient");
        bool positive = false;
        for (double c : values_) {
            if (!std::isfinite(c) || c < 0.0) throw InputError("series coefficients must be finite and nonnegative");
            positive = positive || c > 0.0;
        }
        if (!positive) throw InputError("series needs at least one positive coefficient");
    }

    std::span<const double> values() const noexcept { return values_; }
    std::size_t order() const noexcept { return values_.empty() ? 0 : values_.size() - 1; }
    double operator[](std::size_t k) const { return values_[k]; }

    friend bool operator==(const SeriesCoefficients&, const SeriesCoefficients&) = default;

private:
    std::vector<double> values_;
};

namespace detail {

inline double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline double norm_inf(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

inline bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

inline void multiply(const Graph& g, std::span<const double> v, bool transposed, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    const std::size_t n = g.node_count();
    if (!transposed || !g.directed()) {
        for (node i = 0; i < n; ++i) {
            double s = 0.0;
            for (const Arc& a : g.out_arcs(i)) s += a.weight * v[a.target];
            out[i] = s;
        }
    } else {
        for (node i = 0; i < n; ++i) {
            for (const Arc& a : g.out_arcs(i)) out[a.target] += a.weight * v[i];
        }
    }
}

inline std::string format_number(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

} // namespace detail

/// A v, or A^T v when `transposed`.
inline NodeVector apply(const Graph& g, const NodeVector& v, bool transposed = false) {
    if (v.size() != g.node_count()) throw InputError("vector length does not match node count");
    NodeVector out{std::vector<double>(g.node_count()), v.label};
    detail::multiply(g, v.values, transposed, out.values);
    return out;
}

// ---------------------------------------------------------------------------
// Dominant eigenpair
// ---------------------------------------------------------------------------

struct EigenOptions {
    double tol = 1e-10;
    std::size_t max_iter = 0; ///< 0 means 100 n + 1000
};

/**
 * Perron eigenpair of an irreducible adjacency matrix by shifted power iteration.
 *
 * The iteration runs on A + sI with s the mean arc weight (1 for unweighted
 * graphs). The shift makes the operator primitive, so bipartite and periodic
 * graphs converge. Left eigenvectors are right eigenvectors of the transpose.
 */
inline EigenResult dominant_eigenpair(const Graph& g, Side side = Side::right, EigenOptions options = {}) {
    if (!(options.tol > 0.0)) throw InputError("eigen tolerance must be positive");
    const bool irreducible = g.directed() ? is_strongly_connected(g) : is_connected(g);
    if (!irreducible) throw InputError("irreducibility required: graph is not (strongly) connected");
    if (side == Side::left && g.directed()) {
        EigenResult r = dominant_eigenpair(g.transpose(), Side::right, options);
        r.side = Side::left;
        r.vector.label = "eigenvector[left]";
        return r;
    }

    const std::size_t n = g.node_count();
    const std::size_t max_iter = options.max_iter ? options.max_iter : 100 * n + 1000;
    const double shift = g.total_weight() / static_cast<double>(g.arc_count());
    const double nd = static_cast<double>(n);

    std::vector<double> x(n), ax(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 / nd + static_cast<double>(i) / (nd * nd);
    {
        const double s = detail::norm2(x);
        for (double& xi : x) xi /= s;
    }

    double best_residual = std::numeric_limits<double>::infinity();
    std::vector<double> best = x;
    double lambda = 0.0;
    for (std::size_t iter = 1; iter <= max_iter; ++iter) {
        detail::multiply(g, x, false, ax);
        lambda = std::inner_product(x.begin(), x.end(), ax.begin(), 0.0);
        double r2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = ax[i] - lambda * x[i];
            r2 += r * r;
        }
        const double residual = std::sqrt(r2);
        if (residual < best_residual) {
            best_residual = residual;
            best = x;
        }
        if (residual <= options.tol) {
            EigenResult result;
            result.eigenvalue = lambda;
            result.side = side;
            result.residual = residual;
            result.iterations = iter;
            double sum = 0.0;
            for (double xi : x) sum += xi;
            result.vector.values.resize(n);
            for (std::size_t i = 0; i < n; ++i) result.vector.values[i] = x[i] * nd / sum;
            result.vector.label = g.directed() ? "eigenvector[right]" : "eigenvector";
            if (!(lambda > 0.0) ||
                std::any_of(result.vector.values.begin(), result.vector.values.end(), [](double v) { return !(v > 0.0); })) {
                throw ConvergenceError("power iteration produced a non-positive Perron vector", x, residual);
            }
            return result;
        }
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = ax[i] + shift * x[i];
            s += x[i] * x[i];
        }
        s = std::sqrt(s);
        for (double& xi : x) xi /= s;
    }
    throw ConvergenceError("power iteration did not converge in " + std::to_string(max_iter) +
                               " iterations (best residual " + detail::format_number(best_residual) + ")",
                           best, best_residual);
}

/// rho(A) for any graph: the largest Perron root over its nontrivial strongly connected components.
inline double spectral_radius(const Graph& g, EigenOptions options = {}) {
    if (!g.directed()) {
        // Undirected components are the strongly connected components.
        if (is_connected(g)) return dominant_eigenpair(g, Side::right, options).eigenvalue;
    }
    double rho = 0.0;
    for (const auto& component : strongly_connected_components(g)) {
        if (component.size() < 2) continue;
        auto sub = g.induced(component);
        if (!sub) continue;
        rho = std::max(rho, dominant_eigenpair(*sub, Side::right, options).eigenvalue);
    }
    return rho;
}

// ---------------------------------------------------------------------------
// Katz
// ---------------------------------------------------------------------------

struct KatzOptions {
    double tol = 1e-12;                    ///< relative residual ||(I - aA)x - 1||_2 / ||x||_2
    std::size_t max_iter = 10'000'000;
    std::optional<double> spectral_radius; ///< reuse a known rho(A) instead of recomputing
};

/// Relative margin applied to the computed rho when validating alpha.
inline constexpr double katz_rho_margin = 1e-9;

/// Largest admissible alpha given a computed spectral radius (infinite for nilpotent A).
inline double katz_alpha_limit(double rho) {
    return rho > 0.0 ? 1.0 / (rho * (1.0 + katz_rho_margin)) : std::numeric_limits<double>::infinity();
}

/// Katz vector x solving (I - alpha A) x = 1 by Neumann summation x <- 1 + alpha A x.
inline NodeVector katz_action(const Graph& g, double alpha, bool transposed = false, KatzOptions options = {}) {
    if (!(options.tol > 0.0)) throw InputError("katz tolerance must be positive");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InputError("katz alpha must be positive");
    const double rho = options.spectral_radius ? *options.spectral_radius : spectral_radius(g);
    if (!(alpha < katz_alpha_limit(rho))) {
        throw InputError("alpha exceeds 1/spectral-radius (alpha=" + detail::format_number(alpha) +
                         ", 1/rho=" + detail::format_number(rho > 0 ? 1.0 / rho : 0.0) + ")");
    }

    const std::size_t n = g.node_count();
    std::vector<double> x(n, 1.0), ax(n);
    for (std::size_t iter = 0; iter < options.max_iter; ++iter) {
        detail::multiply(g, x, transposed, ax);
        double diff2 = 0.0, norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double next = 1.0 + alpha * ax[i];
            // x - alpha A x - 1 is exactly the step size of the Neumann update.
            diff2 += (next - x[i]) * (next - x[i]);
            norm2 += next * next;
            x[i] = next;
        }
        if (!detail::all_finite(x)) throw ConvergenceError("katz iteration diverged", x, INFINITY);
        if (std::sqrt(diff2) <= options.tol * std::sqrt(norm2)) {
            std::ostringstream label;
            label << "katz[alpha=" << detail::format_number(alpha) << (transposed ? ",receive]" : "]");
            return {std::move(x), label.str()};
        }
    }
    detail::multiply(g, x, transposed, ax);
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) r2 += (x[i] - alpha * ax[i] - 1.0) * (x[i] - alpha * ax[i] - 1.0);
    throw ConvergenceError("katz iteration did not converge", x, std::sqrt(r2));
}

// ---------------------------------------------------------------------------
// Power series
// ---------------------------------------------------------------------------

/// x = sum_k c_k A^k 1 by Horner's rule.
inline NodeVector series_action(const Graph& g, const SeriesCoefficients& coeffs, bool transposed = false) {
    const auto c = coeffs.values();
    if (c.empty()) throw InputError("series needs at least one coefficient");
    const std::size_t n = g.node_count();
    std::vector<double> x(n, c.back()), ax(n);
    for (std::size_t k = c.size() - 1; k-- > 0;) {
        detail::multiply(g, x, transposed, ax);
        for (std::size_t i = 0; i < n; ++i) x[i] = ax[i] + c[k];
    }
    if (!detail::all_finite(x)) throw InputError("series action overflowed");
    return {std::move(x), transposed ? "power_series[receive]" : "power_series"};
}

struct TaylorParts {
    std::vector<double> even; ///< cosh(beta A) 1
    std::vector<double> odd;  ///< sinh(beta A) 1
};

namespace detail {

inline double max_row_sum(const Graph& g, bool transposed) {
    NodeVector d = transposed ? in_degree_vector(g) : out_degree_vector(g);
    return *std::max_element(d.values.begin(), d.values.end());
}

/// Taylor terms beta^k/k! A^k 1 split by parity. Stops once a term is below tol relative to
/// the sum of its parity and every later term is guaranteed smaller.
inline TaylorParts taylor_parts(const Graph& g, double beta, double tol, bool transposed) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw InputError("beta must be positive");
    if (!(tol > 0.0)) throw InputError("series tolerance must be positive");
    const std::size_t n = g.node_count();
    const double growth = beta * max_row_sum(g, transposed);
    TaylorParts parts{std::vector<double>(n, 1.0), std::vector<double>(n, 0.0)};
    std::vector<double> term(n, 1.0), next(n);
    for (std::size_t k = 1;; ++k) {
        multiply(g, term, transposed, next);
        const double scale = beta / static_cast<double>(k);
        for (std::size_t i = 0; i < n; ++i) term[i] = next[i] * scale;
        auto& acc = (k % 2 == 0) ? parts.even : parts.odd;
        for (std::size_t i = 0; i < n; ++i) acc[i] += term[i];
        if (!all_finite(acc)) throw InputError("matrix-function series overflowed; use a smaller beta");
        const double t = norm_inf(term);
        // Past k > beta * ||A||_inf the term norms decrease monotonically.
        if (static_cast<double>(k + 1) > growth &&
            t <= tol * std::min(norm_inf(parts.even), std::max(norm_inf(parts.odd), 1e-300))) {
            break;
        }
        if (t == 0.0) break;
    }
    return parts;
}

} // namespace detail

inline constexpr double default_series_tol = 1e-15;

/// exp(beta A) 1 (total communicability).
inline NodeVector exp_action(const Graph& g, double beta, double tol = default_series_tol, bool transposed = false) {
    auto parts = detail::taylor_parts(g, beta, tol, transposed);
    for (std::size_t i = 0; i < parts.even.size(); ++i) parts.even[i] += parts.odd[i];
    return {std::move(parts.even), "total[beta=" + detail::format_number(beta) + "]"};
}

/// sinh(beta A) 1.
inline NodeVector odd_action(const Graph& g, double beta, double tol = default_series_tol, bool transposed = false) {
    auto parts = detail::taylor_parts(g, beta, tol, transposed);
    return {std::move(parts.odd), "odd[beta=" + detail::format_number(beta) + "]"};
}

/// cosh(beta A) 1.
inline NodeVector even_action(const Graph& g, double beta, double tol = default_series_tol, bool transposed = false) {
    auto parts = detail::taylor_parts(g, beta, tol, transposed);
    return {std::move(parts.even), "even[beta=" + detail::format_number(beta) + "]"};
}

// ---------------------------------------------------------------------------
// Walk totals
// ---------------------------------------------------------------------------

namespace detail {

inline void require_integral(const Graph& g) {
    if (!g.integral_weights()) throw InputError("exact walk counts need integer edge weights");
}

inline std::vector<Int128> integer_multiply(const Graph& g, const std::vector<Int128>& v) {
    std::vector<Int128> out(g.node_count(), 0);
    for (node i = 0; i < g.node_count(); ++i) {
        Int128 s = 0;
        for (const Arc& a : g.out_arcs(i)) {
            s = checked_add(s, checked_mul(static_cast<Int128>(a.weight), v[a.target]));
        }
        out[i] = s;
    }
    return out;
}

inline std::vector<Int128> integer_power_action(const Graph& g, std::size_t k) {
    std::vector<Int128> x(g.node_count(), 1);
    for (std::size_t step = 0; step < k; ++step) x = integer_multiply(g, x);
    return x;
}

} // namespace detail

/// 1^T A^k 1, exact. Overflow raises OverflowError instead of wrapping.
inline Int128 walk_count(const Graph& g, std::size_t k) {
    detail::require_integral(g);
    Int128 total = 0;
    for (Int128 v : detail::integer_power_action(g, k)) total = checked_add(total, v);
    return total;
}

/// 1^T A^T A^k 1 = d_out^T (A^k 1), exact.
inline Int128 mixed_walk_count(const Graph& g, std::size_t k) {
    detail::require_integral(g);
    const auto x = detail::integer_power_action(g, k);
    const NodeVector d = out_degree_vector(g);
    Int128 total = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        total = checked_add(total, checked_mul(static_cast<Int128>(d[i]), x[i]));
    }
    return total;
}

/// 1^T A^k 1 in floating point; weighted walks are products of weights.
inline double walk_sum(const Graph& g, std::size_t k) {
    std::vector<double> x(g.node_count(), 1.0), ax(g.node_count());
    for (std::size_t step = 0; step < k; ++step) {
        detail::multiply(g, x, false, ax);
        x.swap(ax);
    }
    return std::accumulate(x.begin(), x.end(), 0.0);
}

inline double mixed_walk_sum(const Graph& g, std::size_t k) {
    std::vector<double> x(g.node_count(), 1.0), ax(g.node_count());
    for (std::size_t step = 0; step < k; ++step) {
        detail::multiply(g, x, false, ax);
        x.swap(ax);
    }
    const NodeVector d = out_degree_vector(g);
    return std::inner_product(d.values.begin(), d.values.end(), x.begin(), 0.0);
}

} // namespace fparadox
