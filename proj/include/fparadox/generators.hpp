#pragma once

// Deterministic graph families: the worked examples, parametric families and
// seeded random models. Random families draw only from CounterRng, so a
// (family, parameters, seed) triple always yields the same edge set.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fparadox/errors.hpp"
#include "fparadox/graph.hpp"
#include "fparadox/prng.hpp"

namespace fparadox {

enum class Family {
    figure1,
    path,
    cycle,
    complete,
    star_undirected,
    star_out,
    star_in,
    hub_cycle,
    three_node,
    directed_cycle,
    clique_star,
    k_regular_random,
    erdos_renyi,
    erdos_renyi_directed,
    barabasi_albert,
    random_tree,
};

inline constexpr Family all_families[] = {
    Family::figure1,          Family::path,         Family::cycle,          Family::complete,
    Family::star_undirected,  Family::star_out,     Family::star_in,        Family::hub_cycle,
    Family::three_node,       Family::directed_cycle, Family::clique_star,  Family::k_regular_random,
    Family::erdos_renyi,      Family::erdos_renyi_directed, Family::barabasi_albert, Family::random_tree,
};

inline const char* to_string(Family f) {
    switch (f) {
    case Family::figure1: return "figure1";
    case Family::path: return "path";
    case Family::cycle: return "cycle";
    case Family::complete: return "complete";
    case Family::star_undirected: return "star_undirected";
    case Family::star_out: return "star_out";
    case Family::star_in: return "star_in";
    case Family::hub_cycle: return "hub_cycle";
    case Family::three_node: return "three_node";
    case Family::directed_cycle: return "directed_cycle";
    case Family::clique_star: return "clique_star";
    case Family::k_regular_random: return "k_regular_random";
    case Family::erdos_renyi: return "erdos_renyi";
    case Family::erdos_renyi_directed: return "erdos_renyi_directed";
    case Family::barabasi_albert: return "barabasi_albert";
    case Family::random_tree: return "random_tree";
    }
    return "?";
}

inline Family parse_family(const std::string& s) {
    for (Family f : all_families) {
        if (s == to_string(f)) return f;
    }
    throw InputError("unknown family '" + s + "'");
}

inline bool is_random(Family f) {
    return f == Family::k_regular_random || f == Family::erdos_renyi || f == Family::erdos_renyi_directed ||
           f == Family::barabasi_albert || f == Family::random_tree;
}

inline bool is_directed_family(Family f) {
    return f == Family::star_out || f == Family::star_in || f == Family::hub_cycle || f == Family::three_node ||
           f == Family::directed_cycle || f == Family::erdos_renyi_directed;
}

/// Family plus parameters. Unused parameters are ignored.
/// clique_star uses k for the clique size and m for the star's leaf count.
struct FamilySpec {
    Family family = Family::figure1;
    std::size_t n = 0;
    std::size_t k = 0;
    double p = 0.0;
    std::size_t m = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

namespace detail {

inline void require(bool ok, const std::string& message) {
    if (!ok) throw InputError(message);
}

inline Graph undirected(std::size_t n, const std::vector<Edge>& edges) { return Graph::build(n, edges, false); }
inline Graph directed(std::size_t n, const std::vector<Edge>& edges) { return Graph::build(n, edges, true); }

/// Pairing model with rejection of self-loops and multi-edges.
inline Graph k_regular(std::size_t n, std::size_t k, std::uint64_t seed) {
    require(k >= 1 && k < n, "k_regular_random needs 1 <= k < n");
    require((n * k) % 2 == 0, "k_regular_random needs n*k even");
    CounterRng rng(seed);
    std::vector<node> points;
    for (node v = 0; v < n; ++v) points.insert(points.end(), k, v);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        for (std::size_t i = points.size(); i > 1; --i) {
            std::swap(points[i - 1], points[rng.below(i)]);
        }
        std::set<std::pair<node, node>> seen;
        std::vector<Edge> edges;
        bool ok = true;
        for (std::size_t i = 0; i < points.size(); i += 2) {
            const node a = std::min(points[i], points[i + 1]);
            const node b = std::max(points[i], points[i + 1]);
            if (a == b || !seen.insert({a, b}).second) {
                ok = false;
                break;
            }
            edges.push_back({a, b, 1.0});
        }
        if (ok) return undirected(n, edges);
    }
    throw InputError("k_regular_random: pairing model rejected 100000 attempts; reduce k");
}

inline Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed, bool is_directed) {
    require(n >= 2, "erdos_renyi needs n >= 2");
    require(p > 0.0 && p <= 1.0, "erdos_renyi needs 0 < p <= 1");
    CounterRng rng(seed);
    std::vector<Edge> edges;
    for (node i = 0; i < n; ++i) {
        for (node j = is_directed ? 0 : i + 1; j < n; ++j) {
            if (i == j) continue;
            if (rng.uniform() < p) edges.push_back({i, j, 1.0});
        }
    }
    require(!edges.empty(), "erdos_renyi sample has no edges; choose another seed or larger p");
    return is_directed ? directed(n, edges) : undirected(n, edges);
}

/// Clique on m+1 nodes, then each new node attaches to m distinct nodes chosen proportionally to degree.
inline Graph barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed) {
    require(m >= 1 && n > m + 1, "barabasi_albert needs m >= 1 and n > m + 1");
    CounterRng rng(seed);
    std::vector<Edge> edges;
    std::vector<node> endpoints;
    for (node i = 0; i <= m; ++i) {
        for (node j = i + 1; j <= m; ++j) {
            edges.push_back({i, j, 1.0});
            endpoints.push_back(i);
            endpoints.push_back(j);
        }
    }
    for (node v = m + 1; v < n; ++v) {
        std::vector<node> targets;
        while (targets.size() < m) {
            const node t = endpoints[rng.below(endpoints.size())];
            if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
        }
        std::sort(targets.begin(), targets.end());
        for (node t : targets) {
            edges.push_back({t, v, 1.0});
            endpoints.push_back(t);
            endpoints.push_back(v);
        }
    }
    return undirected(n, edges);
}

/// Uniform labelled tree from a random Pruefer sequence.
inline Graph random_tree(std::size_t n, std::uint64_t seed) {
    require(n >= 2, "random_tree needs n >= 2");
    if (n == 2) return undirected(2, {{0, 1, 1.0}});
    CounterRng rng(seed);
    std::vector<node> code(n - 2);
    for (auto& c : code) c = rng.below(n);
    std::vector<std::size_t> degree(n, 1);
    for (node c : code) ++degree[c];
    std::set<node> leaves;
    for (node v = 0; v < n; ++v) {
        if (degree[v] == 1) leaves.insert(v);
    }
    std::vector<Edge> edges;
    for (node c : code) {
        const node leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        edges.push_back({std::min(leaf, c), std::max(leaf, c), 1.0});
        if (--degree[c] == 1) leaves.insert(c);
    }
    const node a = *leaves.begin();
    const node b = *std::next(leaves.begin());
    edges.push_back({a, b, 1.0});
    return undirected(n, edges);
}

} // namespace detail

/**
 * Build the graph described by `spec`.
 *
 * Node numbering is 0-based. hub_cycle(n) has arcs 0->j (j = 1..n-1),
 * i->i+1 (i = 1..n-2), n-1->0 and n-1->1, giving d_out = (n-1, 1, ..., 1, 2)
 * and d_in = (1, 2, ..., 2). clique_star(k, m) is K_k plus a star K_{1,m}
 * joined by one edge from clique node 0 to the first star leaf.
 */
inline Graph make(const FamilySpec& spec) {
    using detail::require;
    const std::size_t n = spec.n;
    std::vector<Edge> edges;
    switch (spec.family) {
    case Family::figure1:
        return detail::undirected(8, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {4, 5}, {4, 6}, {5, 6}, {6, 7}});
    case Family::path:
        require(n >= 2, "path needs n >= 2");
        for (node i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
        return detail::undirected(n, edges);
    case Family::cycle:
        require(n >= 3, "cycle needs n >= 3");
        for (node i = 0; i < n; ++i) edges.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
        return detail::undirected(n, edges);
    case Family::complete:
        require(n >= 2, "complete needs n >= 2");
        for (node i = 0; i < n; ++i) {
            for (node j = i + 1; j < n; ++j) edges.push_back({i, j});
        }
        return detail::undirected(n, edges);
    case Family::star_undirected:
    case Family::star_out:
    case Family::star_in:
        require(n >= 2, "star needs n >= 2 (hub plus n-1 leaves)");
        for (node j = 1; j < n; ++j) {
            edges.push_back(spec.family == Family::star_in ? Edge{j, 0} : Edge{0, j});
        }
        return spec.family == Family::star_undirected ? detail::undirected(n, edges) : detail::directed(n, edges);
    case Family::hub_cycle:
        require(n >= 3, "hub_cycle needs n >= 3");
        for (node j = 1; j < n; ++j) edges.push_back({0, j});
        for (node i = 1; i + 1 < n; ++i) edges.push_back({i, i + 1});
        edges.push_back({n - 1, 0});
        edges.push_back({n - 1, 1});
        return detail::directed(n, edges);
    case Family::three_node:
        return detail::directed(3, {{0, 1}, {0, 2}, {1, 2}, {2, 0}});
    case Family::directed_cycle:
        require(n >= 2, "directed_cycle needs n >= 2");
        for (node i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
        return detail::directed(n, edges);
    case Family::clique_star: {
        const std::size_t q = spec.k, m = spec.m;
        require(q >= 2 && m >= 1, "clique_star needs clique size k >= 2 and leaf count m >= 1");
        for (node i = 0; i < q; ++i) {
            for (node j = i + 1; j < q; ++j) edges.push_back({i, j});
        }
        const node hub = q;
        for (node j = 1; j <= m; ++j) edges.push_back({hub, hub + j});
        edges.push_back({0, hub + 1});
        return detail::undirected(q + m + 1, edges);
    }
    case Family::k_regular_random:
        return detail::k_regular(n, spec.k, spec.seed);
    case Family::erdos_renyi:
        return detail::erdos_renyi(n, spec.p, spec.seed, false);
    case Family::erdos_renyi_directed:
        return detail::erdos_renyi(n, spec.p, spec.seed, true);
    case Family::barabasi_albert:
        return detail::barabasi_albert(n, spec.m, spec.seed);
    case Family::random_tree:
        return detail::random_tree(n, spec.seed);
    }
    throw InputError("unknown family");
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration
// ---------------------------------------------------------------------------

inline constexpr std::size_t max_enumeration_nodes = 7;

/**
 * Every connected simple undirected labelled graph on 2..max_n nodes, once each.
 *
 * Graphs come out by node count, then by edge bitmask over the pairs (i<j) in
 * lexicographic order. Single consumer; call next() until it returns nullopt.
 */
class ConnectedGraphEnumerator {
public:
    explicit ConnectedGraphEnumerator(std::size_t max_n) : max_n_(max_n) {
        if (max_n > max_enumeration_nodes) {
            throw InputError("enumerate_connected supports max_n <= " + std::to_string(max_enumeration_nodes));
        }
        start(2);
    }

    std::optional<Graph> next() {
        while (n_ <= max_n_) {
            while (++mask_ < limit_) {
                if (connected(mask_)) return build(mask_);
            }
            start(n_ + 1);
        }
        return std::nullopt;
    }

private:
    void start(std::size_t n) {
        n_ = n;
        pairs_.clear();
        for (node i = 0; i < n; ++i) {
            for (node j = i + 1; j < n; ++j) pairs_.push_back({i, j});
        }
        mask_ = 0;
        limit_ = std::uint64_t{1} << pairs_.size();
    }

    bool connected(std::uint64_t mask) const {
        std::uint32_t parent[max_enumeration_nodes];
        for (std::uint32_t i = 0; i < n_; ++i) parent[i] = i;
        auto find = [&](std::uint32_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        std::size_t components = n_;
        for (std::size_t b = 0; b < pairs_.size(); ++b) {
            if (!(mask >> b & 1U)) continue;
            const auto a = find(static_cast<std::uint32_t>(pairs_[b].first));
            const auto c = find(static_cast<std::uint32_t>(pairs_[b].second));
            if (a != c) {
                parent[a] = c;
                --components;
            }
        }
        return components == 1;
    }

    Graph build(std::uint64_t mask) const {
        std::vector<Edge> edges;
        for (std::size_t b = 0; b < pairs_.size(); ++b) {
            if (mask >> b & 1U) edges.push_back({pairs_[b].first, pairs_[b].second, 1.0});
        }
        return Graph::build(n_, edges, false);
    }

    std::size_t max_n_;
    std::size_t n_ = 0;
    std::vector<std::pair<node, node>> pairs_;
    std::uint64_t mask_ = 0;
    std::uint64_t limit_ = 0;
};

inline ConnectedGraphEnumerator enumerate_connected(std::size_t max_n) { return ConnectedGraphEnumerator(max_n); }

/// Visit every connected graph with 2..max_n nodes.
template <class Fn>
void for_each_connected(std::size_t max_n, Fn&& fn) {
    auto it = enumerate_connected(max_n);
    while (auto g = it.next()) fn(*g);
}

} // namespace fparadox
