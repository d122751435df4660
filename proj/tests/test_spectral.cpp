#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "support.hpp"

using namespace fparadox;
using support::v;

TEST(Apply, Examples) {
    Graph f = support::figure1();
    EXPECT_EQ(apply(f, NodeVector{std::vector<double>(8, 1.0), ""}).values, v({4, 1, 1, 1, 3, 2, 3, 1}));
    EXPECT_EQ(apply(f, NodeVector{std::vector<double>(8, 0.0), ""}).values, std::vector<double>(8, 0.0));
    Graph t = support::three_node();
    EXPECT_EQ(apply(t, NodeVector{{1, 1, 1}, ""}, true).values, v({1, 1, 2}));
    EXPECT_THROW(apply(t, NodeVector{{1, 1}, ""}), InputError);
}

TEST(Apply, MatchesDenseProduct) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Graph g = support::family(Family::erdos_renyi_directed, 12, 0, 0.3, 0, seed);
        Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(12, 0.5, 3.0);
        NodeVector nv{oracle::to_std(x), ""};
        const auto a = oracle::dense(g);
        EXPECT_LT(oracle::max_rel_diff(apply(g, nv).values, oracle::to_std(a * x)), 1e-14);
        EXPECT_LT(oracle::max_rel_diff(apply(g, nv, true).values, oracle::to_std(a.transpose() * x)), 1e-14);
    }
}

TEST(Eigen, CycleIsRegular) {
    auto r = dominant_eigenpair(support::cycle(8));
    EXPECT_NEAR(r.eigenvalue, 2.0, 1e-9);
    for (double x : r.vector.values) EXPECT_NEAR(x, 1.0, 1e-8);
    EXPECT_LE(r.residual, 1e-10);
}

TEST(Eigen, StarMatchesDenseSolver) {
    Graph s = support::star(4);
    auto r = dominant_eigenpair(s);
    const auto o = oracle::perron(oracle::dense(s));
    EXPECT_NEAR(o.value, 2.0, 1e-12);
    EXPECT_NEAR(r.eigenvalue, 2.0, 1e-9);
    EXPECT_LT(oracle::max_rel_diff(r.vector.values, o.vector), 1e-8);
}

TEST(Eigen, BipartiteCycleConverges) {
    auto r = dominant_eigenpair(support::cycle(4));
    EXPECT_NEAR(r.eigenvalue, 2.0, 1e-10);
}

TEST(Eigen, ThreeNodeRootOfCubic) {
    Graph t = support::three_node();
    auto r = dominant_eigenpair(t, Side::right);
    auto l = dominant_eigenpair(t, Side::left);
    // Real root of x^3 - x - 1.
    const double plastic = std::cbrt((9 + std::sqrt(69.0)) / 18) + std::cbrt((9 - std::sqrt(69.0)) / 18);
    EXPECT_NEAR(r.eigenvalue, 1.3247, 1e-4);
    EXPECT_NEAR(r.eigenvalue, plastic, 1e-9);
    EXPECT_NEAR(l.eigenvalue, plastic, 1e-9);
    EXPECT_EQ(l.side, Side::left);
}

TEST(Eigen, LeftOnGraphEqualsRightOnTranspose) {
    Graph h = support::hub_cycle(7);
    auto l = dominant_eigenpair(h, Side::left);
    auto r = dominant_eigenpair(h.transpose(), Side::right);
    EXPECT_EQ(l.vector.values, r.vector.values);
    EXPECT_EQ(l.eigenvalue, r.eigenvalue);
}

TEST(Eigen, RejectsReducibleGraphs) {
    const std::vector<Edge> two = {{0, 1}, {2, 3}};
    try {
        dominant_eigenpair(Graph::build(4, two, false));
        FAIL();
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("irreducibility required"), std::string::npos);
    }
    EXPECT_THROW(dominant_eigenpair(support::family(Family::star_out, 5)), InputError);
}

TEST(Eigen, NonConvergenceCarriesBestIterate) {
    EigenOptions opts;
    opts.max_iter = 2;
    opts.tol = 1e-14;
    try {
        dominant_eigenpair(support::figure1(), Side::right, opts);
        FAIL();
    } catch (const ConvergenceError& e) {
        EXPECT_EQ(e.best_iterate().size(), 8u);
        EXPECT_GT(e.residual(), 0.0);
    }
}

TEST(Eigen, PropertiesOnRandomGraphs) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Graph g = support::family(Family::erdos_renyi, 20, 0, 0.25, 0, seed);
        if (!is_connected(g)) continue;
        auto r = dominant_eigenpair(g);
        const auto o = oracle::perron(oracle::dense(g));
        EXPECT_NEAR(r.eigenvalue, o.value, 1e-9 * o.value);
        EXPECT_LT(oracle::max_rel_diff(r.vector.values, o.vector), 1e-7);
        double norm1 = 0.0;
        for (double x : r.vector.values) {
            EXPECT_GT(x, 0.0);
            norm1 += x;
        }
        EXPECT_NEAR(norm1, 20.0, 1e-10);
        // lambda_1 is at least the mean degree.
        EXPECT_GE(r.eigenvalue, walk_sum(g, 1) / 20.0 - 1e-12);
    }
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Graph g = support::family(Family::erdos_renyi_directed, 15, 0, 0.3, 0, seed);
        if (!is_strongly_connected(g)) continue;
        const auto dout = out_degree_vector(g).values, din = in_degree_vector(g).values;
        for (Side side : {Side::left, Side::right}) {
            auto r = dominant_eigenpair(g, side);
            const auto& d = side == Side::right ? dout : din;
            EXPECT_GE(r.eigenvalue, *std::min_element(d.begin(), d.end()) - 1e-9);
            EXPECT_LE(r.eigenvalue, *std::max_element(d.begin(), d.end()) + 1e-9);
            auto a = oracle::dense(g);
            if (side == Side::left) a.transposeInPlace();
            const auto o = oracle::perron(a);
            EXPECT_NEAR(r.eigenvalue, o.value, 1e-9 * o.value);
            EXPECT_LT(oracle::max_rel_diff(r.vector.values, o.vector), 1e-6);
        }
    }
}

TEST(SpectralRadius, ReducibleAndAcyclic) {
    EXPECT_EQ(spectral_radius(support::family(Family::star_out, 5)), 0.0);
    // Triangle plus a pendant arc out of it and a separate 2-cycle.
    const std::vector<Edge> e = {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {4, 5}, {5, 4}};
    Graph g = Graph::build(6, e, true);
    EXPECT_NEAR(spectral_radius(g), oracle::spectral_radius(oracle::dense(g)), 1e-9);
    const std::vector<Edge> u = {{0, 1}, {2, 3}, {3, 4}, {4, 2}};
    Graph h = Graph::build(5, u, false);
    EXPECT_NEAR(spectral_radius(h), 2.0, 1e-9);
}

TEST(Katz, RegularClosedForm) {
    Graph c = support::cycle(7);
    for (double alpha : {0.05, 0.2, 0.45}) {
        auto x = katz_action(c, alpha);
        const double exact = 1.0 / (1.0 - 2.0 * alpha);
        // Residual tol relative to ||x||_2, amplified by ||(I - alpha A)^{-1}||_2.
        const double bound = 1e-12 * std::sqrt(7.0) * exact * exact;
        for (double xi : x.values) EXPECT_NEAR(xi, exact, bound);
    }
}

TEST(Katz, Figure1FirstOrderAndDenseSolve) {
    Graph f = support::figure1();
    auto x = katz_action(f, 0.1);
    const auto o = oracle::katz(f, 0.1);
    EXPECT_LT(oracle::max_rel_diff(x.values, o), 1e-11);
    const auto d = degree_vector(f).values;
    const auto a2 = series_action(f, SeriesCoefficients({0, 0, 1})).values;
    // (x - 1)/alpha - d = sum_{k>=2} alpha^{k-1} A^k 1; bound the tail geometrically by ||A||_inf = 4.
    const double bound = 0.1 * *std::max_element(a2.begin(), a2.end()) / (1.0 - 0.1 * 4.0);
    for (std::size_t i = 0; i < 8; ++i) {
        EXPECT_LE(std::fabs((x[i] - 1.0) / 0.1 - d[i]), bound);
        EXPECT_GE(x[i], 1.0);
    }
}

TEST(Katz, ResidualWithinTolerance) {
    Graph f = support::figure1();
    const double rho = spectral_radius(f);
    const double alpha = 0.9 / rho;
    auto x = katz_action(f, alpha);
    auto ax = apply(f, x);
    double r2 = 0.0, x2 = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
        r2 += std::pow(x[i] - alpha * ax[i] - 1.0, 2);
        x2 += x[i] * x[i];
    }
    EXPECT_LE(std::sqrt(r2), 1e-11 * std::sqrt(x2));
}

TEST(Katz, RejectsAlphaAtOrBeyondLimit) {
    Graph f = support::figure1();
    const double rho = spectral_radius(f);
    try {
        katz_action(f, 1.0 / rho);
        FAIL();
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("alpha exceeds 1/spectral-radius"), std::string::npos);
    }
    EXPECT_THROW(katz_action(f, 2.0 / rho), InputError);
    EXPECT_THROW(katz_action(f, 0.0), InputError);
    EXPECT_THROW(katz_action(f, -0.1), InputError);
    EXPECT_NO_THROW(katz_action(f, 0.99 / rho));
}

TEST(Katz, AcyclicGraphAcceptsAnyAlpha) {
    Graph s = support::family(Family::star_out, 4);
    auto x = katz_action(s, 10.0);
    EXPECT_EQ(x.values, v({31, 1, 1, 1}));
}

TEST(Katz, AgreesWithTruncatedGeometricSeries) {
    Graph g = support::family(Family::barabasi_albert, 30, 0, 0.0, 2, 7);
    const double rho = spectral_radius(g);
    const double alpha = 0.5 / rho;
    std::vector<double> c;
    for (int k = 0; k < 80; ++k) c.push_back(std::pow(alpha, k));
    auto series = series_action(g, SeriesCoefficients(c));
    EXPECT_LT(oracle::max_rel_diff(katz_action(g, alpha).values, series.values), 1e-11);
    EXPECT_LT(oracle::max_rel_diff(katz_action(g, alpha).values, oracle::katz(g, alpha)), 1e-11);
}

TEST(Katz, TransposedUsesInArcs) {
    Graph h = support::hub_cycle(6);
    const double alpha = 0.3 / spectral_radius(h);
    EXPECT_LT(oracle::max_rel_diff(katz_action(h, alpha, true).values, oracle::katz(h, alpha, true)), 1e-11);
    EXPECT_LT(oracle::max_rel_diff(katz_action(h, alpha, false).values, oracle::katz(h, alpha, false)), 1e-11);
}

TEST(Series, Examples) {
    Graph f = support::figure1();
    EXPECT_EQ(series_action(f, SeriesCoefficients({0, 1})).values, degree_vector(f).values);
    EXPECT_EQ(series_action(f, SeriesCoefficients({1})).values, std::vector<double>(8, 1.0));
    auto a2 = series_action(f, SeriesCoefficients({0, 0, 1})).values;
    double sum = 0;
    for (double x : a2) sum += x;
    EXPECT_EQ(sum, 42.0);
    EXPECT_THROW(SeriesCoefficients({1, -0.5}), InputError);
    EXPECT_THROW(SeriesCoefficients({0, 0}), InputError);
    EXPECT_THROW(SeriesCoefficients(std::vector<double>{}), InputError);
}

TEST(Taylor, RegularGraphGivesExponential) {
    Graph c = support::cycle(9);
    auto x = exp_action(c, 0.7);
    for (double xi : x.values) EXPECT_NEAR(xi / std::exp(1.4), 1.0, 1e-13);
    auto s = odd_action(c, 0.7);
    for (double xi : s.values) EXPECT_NEAR(xi / std::sinh(1.4), 1.0, 1e-13);
    auto ch = even_action(c, 0.7);
    for (double xi : ch.values) EXPECT_NEAR(xi / std::cosh(1.4), 1.0, 1e-13);
}

TEST(Taylor, ExpIsOddPlusEven) {
    Graph f = support::figure1();
    const double tol = 1e-14;
    auto e = exp_action(f, 1.3, tol), o = odd_action(f, 1.3, tol), c = even_action(f, 1.3, tol);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(e[i], o[i] + c[i], 2 * tol * e[i]);
}

TEST(Taylor, Figure1MatchesDenseExponential) {
    Graph f = support::figure1();
    EXPECT_LT(oracle::max_rel_diff(exp_action(f, 0.5).values, oracle::expm_action(f, 0.5)), 1e-8);
    const auto sinh_o = oracle::symmetric_function(f, 1.0, [](double x) { return std::sinh(x); });
    const auto cosh_o = oracle::symmetric_function(f, 1.0, [](double x) { return std::cosh(x); });
    EXPECT_LT(oracle::max_rel_diff(odd_action(f, 1.0).values, sinh_o), 1e-12);
    EXPECT_LT(oracle::max_rel_diff(even_action(f, 1.0).values, cosh_o), 1e-12);
}

TEST(Taylor, LargeBetaOnRandomGraphsMatchesDense) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Graph g = support::family(Family::erdos_renyi, 25, 0, 0.2, 0, seed);
        auto got = exp_action(g, 2.0).values;
        auto want = oracle::expm_action(g, 2.0);
        double worst = 0;
        for (std::size_t i = 0; i < got.size(); ++i) worst = std::max(worst, std::fabs(got[i] / want[i] - 1));
        EXPECT_LT(worst, 1e-10);
    }
}

TEST(Taylor, OverflowSuggestsSmallerBeta) {
    Graph k = support::family(Family::complete, 30);
    try {
        exp_action(k, 100.0);
        FAIL();
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("smaller beta"), std::string::npos);
    }
    EXPECT_THROW(exp_action(k, 0.0), InputError);
}

TEST(Walks, Figure1Totals) {
    Graph f = support::figure1();
    EXPECT_EQ(walk_count(f, 0), 8);
    EXPECT_EQ(walk_count(f, 1), 16);
    EXPECT_EQ(walk_count(f, 2), 42);
}

TEST(Walks, MatchBruteForceEnumeration) {
    auto check = [](const Graph& g) {
        for (std::size_t k = 0; k <= 5; ++k) {
            EXPECT_EQ(to_double(walk_count(g, k)), oracle::enumerate_walks(g, k));
            EXPECT_DOUBLE_EQ(walk_sum(g, k), oracle::enumerate_walks(g, k));
        }
    };
    check(support::figure1());
    check(support::hub_cycle(6));
    check(support::three_node());
    for_each_connected(5, check);
}

TEST(Walks, MixedCounts) {
    for (std::size_t k = 0; k <= 6; ++k) {
        EXPECT_EQ(mixed_walk_count(support::figure1(), k), walk_count(support::figure1(), k + 1));
        EXPECT_EQ(mixed_walk_count(support::directed_cycle(5), k), 5);
    }
    for (std::size_t n = 3; n <= 12; ++n) {
        const Graph h = support::hub_cycle(n);
        const auto a = oracle::dense(h);
        const Eigen::VectorXd one = oracle::ones(h);
        const double dense = one.dot(a.transpose() * a * one);
        const auto nn = static_cast<Int128>(n);
        EXPECT_EQ(to_double(mixed_walk_count(h, 1)), dense);
        EXPECT_EQ(mixed_walk_count(h, 1), (nn - 1) * (nn - 1) + (nn - 2) + 4);
        EXPECT_DOUBLE_EQ(mixed_walk_sum(h, 1), dense);
    }
    EXPECT_EQ(mixed_walk_count(support::hub_cycle(10), 1), 93);
}

TEST(Walks, OverflowIsReportedNotWrapped) {
    Graph k = support::family(Family::complete, 60);
    EXPECT_NO_THROW(walk_count(k, 15));
    try {
        walk_count(k, 40);
        FAIL();
    } catch (const OverflowError& e) {
        EXPECT_NE(std::string(e.what()).find("walk count overflow"), std::string::npos);
    }
}

TEST(Walks, WeightedRequiresFloatingPath) {
    auto edges = support::figure1().edges();
    for (auto& e : edges) e.weight = 0.5;
    Graph g = Graph::build(8, edges, false);
    EXPECT_THROW(walk_count(g, 2), InputError);
    EXPECT_DOUBLE_EQ(walk_sum(g, 2), 42.0 / 4);
    EXPECT_DOUBLE_EQ(walk_sum(g, 3), oracle::enumerate_walks(g, 3));
}

TEST(Walks, EvenOrderInequalityOnRandomGraphs) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Graph g = support::family(Family::erdos_renyi, 14, 0, 0.3, 0, seed);
        const Int128 n = 14;
        for (std::size_t r = 1; r <= 5; ++r) {
            for (std::size_t s = 1; s <= 5; ++s) {
                if ((r + s) % 2) continue;
                EXPECT_GE(n * walk_count(g, r + s), walk_count(g, r) * walk_count(g, s));
            }
        }
    }
}
