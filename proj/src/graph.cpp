#include "boolcsp/graph.hpp"

#include <algorithm>
#include <numeric>

#include "boolcsp/error.hpp"

namespace boolcsp {

ColoredGraph::ColoredGraph(std::size_t n, std::vector<Edge> edges, std::vector<std::uint32_t> colors)
    : edges_(std::move(edges)), colors_(std::move(colors)), adjacency_(n) {
    if (colors_.size() != n) throw Error(ErrorCode::structure, "color list length differs from vertex count");
    for (auto& [u, v] : edges_) {
        if (u >= n || v >= n) throw Error(ErrorCode::structure, "edge endpoint out of range");
        if (u == v) throw Error(ErrorCode::structure, "self-loop in a simple graph");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    for (const auto& [u, v] : edges_) {
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }
    for (auto& a : adjacency_) std::sort(a.begin(), a.end());
}

bool ColoredGraph::adjacent(std::uint32_t u, std::uint32_t v) const {
    return std::binary_search(adjacency_[u].begin(), adjacency_[u].end(), v);
}

namespace {

using Adjacency = std::vector<std::vector<std::uint32_t>>;

// Renumbers colors densely by rank of value.
std::vector<std::uint32_t> rank_colors(const std::vector<std::uint32_t>& colors) {
    std::vector<std::uint32_t> values = colors;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::vector<std::uint32_t> out(colors.size());
    for (std::size_t v = 0; v < colors.size(); ++v)
        out[v] = static_cast<std::uint32_t>(std::lower_bound(values.begin(), values.end(), colors[v]) - values.begin());
    return out;
}

std::vector<std::uint32_t> refine(const Adjacency& adj, const std::vector<std::uint32_t>& input) {
    std::vector<std::uint32_t> colors = rank_colors(input);
    const std::size_t n = colors.size();
    std::size_t classes = n ? *std::max_element(colors.begin(), colors.end()) + 1 : 0;
    std::vector<std::vector<std::uint32_t>> signature(n);
    std::vector<std::uint32_t> order(n);
    while (true) {
        for (std::size_t v = 0; v < n; ++v) {
            auto& sig = signature[v];
            sig.clear();
            sig.push_back(colors[v]);
            for (auto w : adj[v]) sig.push_back(colors[w]);
            std::sort(sig.begin() + 1, sig.end());
        }
        std::iota(order.begin(), order.end(), 0u);
        std::sort(order.begin(), order.end(),
                  [&](std::uint32_t a, std::uint32_t b) { return signature[a] < signature[b]; });
        std::vector<std::uint32_t> next(n);
        std::uint32_t id = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0 && signature[order[i]] != signature[order[i - 1]]) ++id;
            next[order[i]] = id;
        }
        const std::size_t next_classes = n ? id + 1 : 0;
        colors = std::move(next);
        if (next_classes == classes) break;
        classes = next_classes;
    }
    return colors;
}

Adjacency adjacency_of(const ColoredGraph& g) {
    Adjacency adj(g.size());
    for (std::uint32_t v = 0; v < g.size(); ++v) adj[v] = g.neighbors(v);
    return adj;
}

// Joint search over the disjoint union g1 + g2 so that both sides share one
// canonical color numbering.
class IsoSearch {
public:
    IsoSearch(const ColoredGraph& g1, const ColoredGraph& g2) : g1_(g1), g2_(g2), n_(g1.size()) {
        adj_.resize(2 * n_);
        for (std::uint32_t v = 0; v < n_; ++v) {
            adj_[v] = g1.neighbors(v);
            for (auto w : g2.neighbors(v)) adj_[n_ + v].push_back(static_cast<std::uint32_t>(n_ + w));
        }
    }

    std::optional<std::vector<std::uint32_t>> run() {
        std::vector<std::uint32_t> colors(2 * n_);
        for (std::uint32_t v = 0; v < n_; ++v) {
            colors[v] = g1_.color(v);
            colors[n_ + v] = g2_.color(v);
        }
        if (search(colors)) return mapping_;
        return std::nullopt;
    }

private:
    bool search(const std::vector<std::uint32_t>& input) {
        const auto colors = refine(adj_, input);
        const std::size_t classes = *std::max_element(colors.begin(), colors.end()) + 1;
        std::vector<std::size_t> left(classes, 0), right(classes, 0);
        for (std::size_t v = 0; v < n_; ++v) {
            ++left[colors[v]];
            ++right[colors[n_ + v]];
        }
        if (left != right) return false;

        // target cell: smallest non-singleton class, lowest color first
        std::size_t target = classes;
        for (std::size_t c = 0; c < classes; ++c)
            if (left[c] > 1 && (target == classes || left[c] < left[target])) target = c;

        if (target == classes) {
            std::vector<std::uint32_t> by_color(classes);
            for (std::uint32_t w = 0; w < n_; ++w) by_color[colors[n_ + w]] = w;
            mapping_.assign(n_, 0);
            for (std::uint32_t v = 0; v < n_; ++v) mapping_[v] = by_color[colors[v]];
            return is_isomorphism(g1_, g2_, mapping_);
        }

        std::uint32_t v = 0;
        while (colors[v] != target) ++v;
        const auto fresh = static_cast<std::uint32_t>(classes);
        for (std::uint32_t w = 0; w < n_; ++w) {
            if (colors[n_ + w] != target) continue;
            auto next = colors;
            next[v] = fresh;
            next[n_ + w] = fresh;
            if (search(next)) return true;
        }
        return false;
    }

    const ColoredGraph& g1_;
    const ColoredGraph& g2_;
    std::size_t n_;
    Adjacency adj_;
    std::vector<std::uint32_t> mapping_;
};

} // namespace

std::vector<std::uint32_t> refine_colors(const ColoredGraph& g) { return refine(adjacency_of(g), g.colors()); }

bool is_isomorphism(const ColoredGraph& g1, const ColoredGraph& g2, const std::vector<std::uint32_t>& mapping) {
    if (g1.size() != g2.size() || mapping.size() != g1.size() || g1.edges().size() != g2.edges().size())
        return false;
    std::vector<bool> used(g2.size(), false);
    for (std::uint32_t v = 0; v < mapping.size(); ++v) {
        const auto w = mapping[v];
        if (w >= g2.size() || used[w] || g1.color(v) != g2.color(w)) return false;
        used[w] = true;
    }
    // equal edge counts plus injectivity make edge preservation sufficient
    for (const auto& [u, v] : g1.edges())
        if (!g2.adjacent(mapping[u], mapping[v])) return false;
    return true;
}

std::optional<std::vector<std::uint32_t>> vcgi(const ColoredGraph& g1, const ColoredGraph& g2) {
    if (g1.size() != g2.size() || g1.edges().size() != g2.edges().size()) return std::nullopt;
    if (g1.size() == 0) return std::vector<std::uint32_t>{};
    return IsoSearch(g1, g2).run();
}

bool vcgi_bruteforce(const ColoredGraph& g1, const ColoredGraph& g2) {
    const std::size_t n = g1.size();
    if (n > kVcgiBruteforceMaxVertices || g2.size() > kVcgiBruteforceMaxVertices)
        throw Error(ErrorCode::resource, "brute-force VCGI is limited to 9 vertices");
    if (n != g2.size()) return false;
    std::vector<std::vector<bool>> adj1(n, std::vector<bool>(n)), adj2 = adj1;
    for (const auto& [u, v] : g1.edges()) adj1[u][v] = adj1[v][u] = true;
    for (const auto& [u, v] : g2.edges()) adj2[u][v] = adj2[v][u] = true;

    std::vector<std::uint32_t> image(n);
    std::vector<bool> used(n, false);
    auto extend = [&](auto&& self, std::size_t v) -> bool {
        if (v == n) return true;
        for (std::uint32_t w = 0; w < n; ++w) {
            if (used[w] || g1.color(v) != g2.color(w)) continue;
            bool ok = true;
            for (std::size_t u = 0; u < v && ok; ++u) ok = adj1[u][v] == adj2[image[u]][w];
            if (!ok) continue;
            used[w] = true;
            image[v] = w;
            if (self(self, v + 1)) return true;
            used[w] = false;
        }
        return false;
    };
    return extend(extend, 0);
}

} // namespace boolcsp
