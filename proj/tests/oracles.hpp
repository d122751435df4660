#pragma once

// Dense reference computations used to cross-check the sparse kernels.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "fparadox/fparadox.hpp"

namespace oracle {

using fparadox::Graph;

inline Eigen::MatrixXd dense(const Graph& g) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        for (const auto& arc : g.out_arcs(i)) a(i, arc.target) = arc.weight;
    }
    return a;
}

inline Eigen::VectorXd ones(const Graph& g) { return Eigen::VectorXd::Ones(static_cast<Eigen::Index>(g.node_count())); }

inline std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

/// Largest real eigenvalue and its positive eigenvector scaled to one-norm n.
struct Perron {
    double value = 0.0;
    std::vector<double> vector;
};

inline Perron perron(const Eigen::MatrixXd& a) {
    Perron p;
    Eigen::VectorXd v;
    if (a.isApprox(a.transpose())) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
        const auto last = a.rows() - 1;
        p.value = es.eigenvalues()(last);
        v = es.eigenvectors().col(last);
    } else {
        Eigen::EigenSolver<Eigen::MatrixXd> es(a);
        Eigen::Index best = 0;
        for (Eigen::Index i = 1; i < a.rows(); ++i) {
            if (es.eigenvalues()(i).real() > es.eigenvalues()(best).real()) best = i;
        }
        p.value = es.eigenvalues()(best).real();
        v = es.eigenvectors().col(best).real();
    }
    if (v.sum() < 0) v = -v;
    v *= static_cast<double>(a.rows()) / v.sum();
    p.vector = to_std(v);
    return p;
}

inline double spectral_radius(const Eigen::MatrixXd& a) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
    double r = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) r = std::max(r, std::abs(es.eigenvalues()(i)));
    return r;
}

inline std::vector<double> katz(const Graph& g, double alpha, bool transposed = false) {
    Eigen::MatrixXd a = dense(g);
    if (transposed) a.transposeInPlace();
    const auto n = a.rows();
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) - alpha * a;
    return to_std(m.partialPivLu().solve(Eigen::VectorXd::Ones(n)));
}

/// f(beta A) 1 for symmetric A through the eigendecomposition.
template <class F>
std::vector<double> symmetric_function(const Graph& g, double beta, F f) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(g));
    Eigen::VectorXd lam = es.eigenvalues().unaryExpr([&](double x) { return f(beta * x); });
    const Eigen::MatrixXd& q = es.eigenvectors();
    return to_std(q * lam.asDiagonal() * q.transpose() * ones(g));
}

inline std::vector<double> expm_action(const Graph& g, double beta) {
    return symmetric_function(g, beta, [](double x) { return std::exp(x); });
}

/// Sum over every walk of length k of the product of its arc weights, by depth-first enumeration.
inline double enumerate_walks(const Graph& g, std::size_t k) {
    double total = 0.0;
    auto rec = [&](auto&& self, std::size_t v, std::size_t left, double w) -> void {
        if (left == 0) {
            total += w;
            return;
        }
        for (const auto& arc : g.out_arcs(v)) self(self, arc.target, left - 1, w * arc.weight);
    };
    for (std::size_t i = 0; i < g.node_count(); ++i) rec(rec, i, k, 1.0);
    return total;
}

/// Neighbour average by listing each node's friends: the mean over all (node, friend) pairs of x[friend].
inline double neighbour_average_by_listing(const Graph& g, const std::vector<double>& x) {
    double sum = 0.0, pairs = 0.0;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        for (const auto& arc : g.out_arcs(i)) {
            sum += arc.weight * x[arc.target];
            pairs += arc.weight;
        }
    }
    return sum / pairs;
}

inline double max_rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::fabs(a[i] - b[i]) / std::max(1.0, std::fabs(b[i])));
    }
    return worst;
}

} // namespace oracle
