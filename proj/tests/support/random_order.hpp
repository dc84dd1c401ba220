#pragma once

// Random preorders/posets and brute-force order oracles for tests.

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cellsheaf/order.hpp"

namespace testsupport {

using cellsheaf::ElementIndex;
using cellsheaf::Poset;
using cellsheaf::PreOrder;
using IndexPairs = std::vector<std::pair<ElementIndex, ElementIndex>>;

inline std::vector<std::string> element_names(std::size_t n, const std::string& prefix = "e") {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
    return names;
}

/// Each pair i < j is a generator with the given probability, so the result
/// is always antisymmetric.
inline Poset random_poset(std::mt19937_64& rng, std::size_t n, double density = 0.35) {
    std::bernoulli_distribution keep(density);
    IndexPairs pairs;
    for (ElementIndex i = 0; i < n; ++i) {
        for (ElementIndex j = i + 1; j < n; ++j) {
            if (keep(rng)) pairs.emplace_back(i, j);
        }
    }
    // Shuffle labels so that input order is not always a linear extension.
    std::vector<ElementIndex> perm(n);
    for (ElementIndex i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (auto& [a, b] : pairs) {
        a = perm[a];
        b = perm[b];
    }
    return Poset(PreOrder::from_indices(element_names(n), pairs));
}

/// Generators in both directions, so cycles (and non-trivial classes) occur.
inline PreOrder random_preorder(std::mt19937_64& rng, std::size_t n, double density = 0.25) {
    std::bernoulli_distribution keep(density);
    IndexPairs pairs;
    for (ElementIndex i = 0; i < n; ++i) {
        for (ElementIndex j = 0; j < n; ++j) {
            if (i != j && keep(rng)) pairs.emplace_back(i, j);
        }
    }
    return PreOrder::from_indices(element_names(n), pairs);
}

/// Reachability by depth-first search from every vertex.
inline std::vector<std::vector<bool>> reachability(std::size_t n, const IndexPairs& edges) {
    std::vector<std::vector<ElementIndex>> adj(n);
    for (const auto& [a, b] : edges) adj[a].push_back(b);
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (ElementIndex s = 0; s < n; ++s) {
        std::vector<ElementIndex> stack{s};
        reach[s][s] = true;
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            for (auto w : adj[v]) {
                if (!reach[s][w]) {
                    reach[s][w] = true;
                    stack.push_back(w);
                }
            }
        }
    }
    return reach;
}

/// Tarjan's algorithm on the generating digraph; component ids per vertex.
inline std::vector<std::size_t> tarjan_components(std::size_t n, const IndexPairs& edges) {
    std::vector<std::vector<ElementIndex>> adj(n);
    for (const auto& [a, b] : edges) adj[a].push_back(b);
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unset), low(n, 0), comp(n, unset);
    std::vector<bool> on_stack(n, false);
    std::vector<ElementIndex> stack;
    std::size_t counter = 0, components = 0;
    std::function<void(ElementIndex)> visit = [&](ElementIndex v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (auto w : adj[v]) {
            if (index[w] == unset) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            while (true) {
                const auto w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp[w] = components;
                if (w == v) break;
            }
            ++components;
        }
    };
    for (ElementIndex v = 0; v < n; ++v) {
        if (index[v] == unset) visit(v);
    }
    return comp;
}

/// Every function from an m-set to a k-set, as image vectors.
inline std::vector<std::vector<ElementIndex>> all_functions(std::size_t m, std::size_t k) {
    std::vector<std::vector<ElementIndex>> out;
    if (k == 0) {
        if (m == 0) out.emplace_back();
        return out;
    }
    std::vector<ElementIndex> cur(m, 0);
    while (true) {
        out.push_back(cur);
        std::size_t i = 0;
        while (i < m && ++cur[i] == k) cur[i++] = 0;
        if (i == m) break;
    }
    return out;
}

} // namespace testsupport
