#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace boolcsp {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

// Simple undirected graph with a color on every vertex.
class ColoredGraph {
public:
    ColoredGraph() = default;
    /// Edges are stored as sorted (min, max) pairs; duplicates collapse.
    /// Self-loops and out-of-range endpoints throw Error(structure).
    ColoredGraph(std::size_t n, std::vector<Edge> edges, std::vector<std::uint32_t> colors);

    std::size_t size() const { return colors_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::uint32_t>& colors() const { return colors_; }
    std::uint32_t color(std::uint32_t v) const { return colors_[v]; }
    const std::vector<std::uint32_t>& neighbors(std::uint32_t v) const { return adjacency_[v]; }
    bool adjacent(std::uint32_t u, std::uint32_t v) const;

    bool operator==(const ColoredGraph& other) const {
        return colors_ == other.colors_ && edges_ == other.edges_;
    }

private:
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> colors_;
    std::vector<std::vector<std::uint32_t>> adjacency_; // sorted
};

/// Coarsest stable refinement of the vertex coloring (1-dimensional
/// Weisfeiler-Leman). Classes are numbered 0.. in the order of their
/// (input color, neighbor color multiset) signatures, so isomorphic graphs
/// receive matching numberings.
std::vector<std::uint32_t> refine_colors(const ColoredGraph& g);

/// True iff `mapping` (vertex of g1 -> vertex of g2) is a color- and
/// adjacency-preserving bijection.
bool is_isomorphism(const ColoredGraph& g1, const ColoredGraph& g2, const std::vector<std::uint32_t>& mapping);

/// Color-preserving isomorphism by refinement and individualization
/// backtracking; the returned mapping is always verified.
std::optional<std::vector<std::uint32_t>> vcgi(const ColoredGraph& g1, const ColoredGraph& g2);

inline constexpr std::size_t kVcgiBruteforceMaxVertices = 9;

/// Tries color-class-respecting bijections one vertex at a time; at most
/// kVcgiBruteforceMaxVertices vertices.
bool vcgi_bruteforce(const ColoredGraph& g1, const ColoredGraph& g2);

} // namespace boolcsp
