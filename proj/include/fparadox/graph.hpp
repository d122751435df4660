#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fparadox/errors.hpp"
#include "fparadox/exact.hpp"

namespace fparadox {

using node = std::size_t;

struct Edge {
    node source = 0;
    node target = 0;
    double weight = 1.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Arc {
    node target = 0;
    double weight = 1.0;

    friend bool operator==(const Arc&, const Arc&) = default;
};

/// Per-node real values with a free-form tag describing where they came from.
struct NodeVector {
    std::vector<double> values;
    std::string label;

    std::size_t size() const noexcept { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }

    friend bool operator==(const NodeVector&, const NodeVector&) = default;
};

enum class DuplicatePolicy { reject, sum };

/**
 * Immutable weighted graph in compressed sparse row form.
 *
 * Undirected graphs store both arc directions, so every kernel can treat the
 * adjacency matrix uniformly. Self-loops, nonpositive weights and empty edge
 * sets are rejected at construction.
 */
class Graph {
public:
    static Graph build(std::size_t n, std::span<const Edge> edges, bool directed,
                       DuplicatePolicy duplicates = DuplicatePolicy::reject) {
        if (n == 0) throw InputError("graph needs at least one node");
        if (edges.empty()) throw InputError("graph needs at least one edge");

        std::map<std::pair<node, node>, double> merged;
        for (const Edge& e : edges) {
            if (e.source >= n || e.target >= n) {
                throw InputError("edge (" + std::to_string(e.source) + "," + std::to_string(e.target) +
                                 ") out of range for n=" + std::to_string(n));
            }
            if (e.source == e.target) {
                throw InputError("self-loop at node " + std::to_string(e.source));
            }
            if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
                throw InputError("nonpositive or non-finite weight on edge (" + std::to_string(e.source) +
                                 "," + std::to_string(e.target) + ")");
            }
            auto key = directed ? std::pair{e.source, e.target}
                                : std::pair{std::min(e.source, e.target), std::max(e.source, e.target)};
            auto [it, inserted] = merged.emplace(key, e.weight);
            if (!inserted) {
                if (duplicates == DuplicatePolicy::reject) {
                    throw InputError("duplicate edge (" + std::to_string(e.source) + "," +
                                     std::to_string(e.target) + ")");
                }
                it->second += e.weight;
            }
        }

        std::vector<std::vector<Arc>> rows(n);
        for (const auto& [key, w] : merged) {
            rows[key.first].push_back({key.second, w});
            if (!directed) rows[key.second].push_back({key.first, w});
        }
        return Graph(n, directed, rows);
    }

    std::size_t node_count() const noexcept { return n_; }
    bool directed() const noexcept { return directed_; }

    /// Stored arcs; an undirected edge counts twice.
    std::size_t arc_count() const noexcept { return arcs_.size(); }

    /// Logical edges as supplied (undirected edges once).
    std::size_t edge_count() const noexcept { return directed_ ? arcs_.size() : arcs_.size() / 2; }

    std::span<const Arc> out_arcs(node i) const {
        return {arcs_.data() + offsets_[i], arcs_.data() + offsets_[i + 1]};
    }

    bool weighted() const noexcept {
        return std::any_of(arcs_.begin(), arcs_.end(), [](const Arc& a) { return a.weight != 1.0; });
    }

    /// All weights are integers that doubles carry exactly; exact walk arithmetic applies.
    bool integral_weights() const noexcept {
        return std::all_of(arcs_.begin(), arcs_.end(), [](const Arc& a) { return is_exact_integer(a.weight); });
    }

    /// Sum of a_ij over all ordered pairs.
    double total_weight() const noexcept {
        double s = 0.0;
        for (const Arc& a : arcs_) s += a.weight;
        return s;
    }

    /// Logical edge list: undirected edges appear once with source < target.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (node i = 0; i < n_; ++i) {
            for (const Arc& a : out_arcs(i)) {
                if (directed_ || i < a.target) out.push_back({i, a.target, a.weight});
            }
        }
        return out;
    }

    Graph transpose() const {
        if (!directed_) return *this;
        std::vector<std::vector<Arc>> rows(n_);
        for (node i = 0; i < n_; ++i) {
            for (const Arc& a : out_arcs(i)) rows[a.target].push_back({i, a.weight});
        }
        return Graph(n_, true, rows);
    }

    /// Subgraph induced by `nodes`, relabelled 0..k-1 in the given order. May be edgeless.
    std::optional<Graph> induced(std::span<const node> nodes) const {
        std::vector<std::ptrdiff_t> index(n_, -1);
        for (std::size_t k = 0; k < nodes.size(); ++k) index[nodes[k]] = static_cast<std::ptrdiff_t>(k);
        std::vector<std::vector<Arc>> rows(nodes.size());
        bool any = false;
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            for (const Arc& a : out_arcs(nodes[k])) {
                if (index[a.target] >= 0) {
                    rows[k].push_back({static_cast<node>(index[a.target]), a.weight});
                    any = true;
                }
            }
        }
        if (!any) return std::nullopt;
        return Graph(nodes.size(), directed_, rows);
    }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    Graph(std::size_t n, bool directed, std::vector<std::vector<Arc>>& rows) : n_(n), directed_(directed) {
        offsets_.assign(n + 1, 0);
        for (node i = 0; i < n; ++i) {
            std::sort(rows[i].begin(), rows[i].end(), [](const Arc& a, const Arc& b) { return a.target < b.target; });
            offsets_[i + 1] = offsets_[i] + rows[i].size();
        }
        arcs_.reserve(offsets_[n]);
        for (auto& row : rows) arcs_.insert(arcs_.end(), row.begin(), row.end());
    }

    std::size_t n_ = 0;
    bool directed_ = false;
    std::vector<std::size_t> offsets_;
    std::vector<Arc> arcs_;
};

// ---------------------------------------------------------------------------
// Degrees
// ---------------------------------------------------------------------------

inline NodeVector out_degree_vector(const Graph& g) {
    NodeVector d{std::vector<double>(g.node_count(), 0.0), "out_degree"};
    for (node i = 0; i < g.node_count(); ++i) {
        for (const Arc& a : g.out_arcs(i)) d.values[i] += a.weight;
    }
    return d;
}

inline NodeVector in_degree_vector(const Graph& g) {
    NodeVector d{std::vector<double>(g.node_count(), 0.0), "in_degree"};
    for (node i = 0; i < g.node_count(); ++i) {
        for (const Arc& a : g.out_arcs(i)) d.values[a.target] += a.weight;
    }
    return d;
}

/// d = A1 for an undirected graph.
inline NodeVector degree_vector(const Graph& g) {
    if (g.directed()) {
        throw InputError("degree_vector needs an undirected graph; use out_degree_vector or in_degree_vector");
    }
    NodeVector d = out_degree_vector(g);
    d.label = "degree";
    return d;
}

// ---------------------------------------------------------------------------
// Connectivity
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<char> reachable_from(const Graph& g, node start) {
    std::vector<char> seen(g.node_count(), 0);
    std::vector<node> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
        const node u = stack.back();
        stack.pop_back();
        for (const Arc& a : g.out_arcs(u)) {
            if (!seen[a.target]) {
                seen[a.target] = 1;
                stack.push_back(a.target);
            }
        }
    }
    return seen;
}

inline bool all_set(const std::vector<char>& flags) {
    return std::all_of(flags.begin(), flags.end(), [](char c) { return c != 0; });
}

} // namespace detail

/// Undirected connectivity; for a directed graph this is weak connectivity.
inline bool is_connected(const Graph& g) {
    if (!g.directed()) return detail::all_set(detail::reachable_from(g, 0));
    const std::size_t n = g.node_count();
    std::vector<node> parent(n);
    for (node i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](node x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t components = n;
    for (const Edge& e : g.edges()) {
        const node a = find(e.source), b = find(e.target);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components == 1;
}

inline bool is_strongly_connected(const Graph& g) {
    if (!detail::all_set(detail::reachable_from(g, 0))) return false;
    return detail::all_set(detail::reachable_from(g.transpose(), 0));
}

/// Strongly connected components (iterative Tarjan). Components come out in reverse topological order.
inline std::vector<std::vector<node>> strongly_connected_components(const Graph& g) {
    const std::size_t n = g.node_count();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unvisited), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<node> stack;
    std::vector<std::vector<node>> components;
    std::size_t counter = 0;

    struct Frame {
        node v;
        std::size_t next_arc;
    };
    for (node root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        std::vector<Frame> calls{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!calls.empty()) {
            Frame& f = calls.back();
            auto arcs = g.out_arcs(f.v);
            if (f.next_arc < arcs.size()) {
                const node w = arcs[f.next_arc++].target;
                if (index[w] == unvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    calls.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            const node v = f.v;
            calls.pop_back();
            if (!calls.empty()) low[calls.back().v] = std::min(low[calls.back().v], low[v]);
            if (low[v] == index[v]) {
                std::vector<node> component;
                node w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    component.push_back(w);
                } while (w != v);
                std::sort(component.begin(), component.end());
                components.push_back(std::move(component));
            }
        }
    }
    return components;
}

// ---------------------------------------------------------------------------
// Regularity
// ---------------------------------------------------------------------------

enum class Orientation { undirected, out, in };

/// Common degree if the selected degree vector is constant, otherwise nullopt.
/// Integral weights compare exactly; other weights use a 1e-12 relative tolerance.
inline std::optional<double> is_regular(const Graph& g, Orientation orientation = Orientation::undirected) {
    NodeVector d;
    switch (orientation) {
    case Orientation::undirected: d = degree_vector(g); break;
    case Orientation::out: d = out_degree_vector(g); break;
    case Orientation::in: d = in_degree_vector(g); break;
    }
    const auto [lo, hi] = std::minmax_element(d.values.begin(), d.values.end());
    if (g.integral_weights()) {
        if (*lo != *hi) return std::nullopt;
    } else if (*hi - *lo > 1e-12 * std::fabs(*hi)) {
        return std::nullopt;
    }
    return *hi;
}

} // namespace fparadox
