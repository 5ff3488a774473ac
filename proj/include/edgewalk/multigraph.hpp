#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace edgewalk {

using Vertex = std::uint32_t;
using Point = std::uint32_t;

inline constexpr Point kNoPoint = 0xffffffffu;

/// Configuration-model multigraph. Every vertex v owns the contiguous block of
/// configuration points [first_point(v), first_point(v + 1)); the pairing is a
/// fixed-point-free involution on all points. A loop is a pair of points at the
/// same vertex and contributes 2 to its degree.
///
/// Graphs produced by the generator are r-regular (owner(p) == p / r). Graphs
/// built from explicit edge lists may be irregular; those are used for
/// contractions and small hand-made instances.
class Multigraph {
public:
    Multigraph() = default;

    /// Builds from per-vertex point offsets (size n + 1) and a pairing. Throws
    /// std::invalid_argument if the pairing is not a perfect matching.
    Multigraph(std::vector<std::uint32_t> offsets, std::vector<Point> mate);

    /// Uniform configuration-model pairing on rn points (Fisher-Yates shuffle,
    /// consecutive entries paired). Throws std::invalid_argument when rn is odd
    /// or n, r is zero.
    static Multigraph configuration_model(std::uint32_t n, std::uint32_t r, std::uint64_t seed);

    /// Points are assigned to each vertex in order of appearance in `edges`.
    static Multigraph from_edges(std::uint32_t n, std::span<const std::pair<Vertex, Vertex>> edges);

    std::uint32_t vertex_count() const noexcept { return static_cast<std::uint32_t>(offsets_.size()) - 1; }
    std::uint32_t point_count() const noexcept { return static_cast<std::uint32_t>(mate_.size()); }
    std::uint32_t edge_count() const noexcept { return point_count() / 2; }

    /// Common degree, or 0 if the graph is irregular.
    std::uint32_t regular_degree() const noexcept { return regular_degree_; }
    bool is_regular() const noexcept { return regular_degree_ != 0 || vertex_count() == 0; }

    std::uint32_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
    Point first_point(Vertex v) const { return offsets_[v]; }
    Point end_point(Vertex v) const { return offsets_[v + 1]; }
    Point mate(Point p) const { return mate_[p]; }
    Vertex owner(Point p) const { return owner_[p]; }

    const std::vector<Point>& pairing() const noexcept { return mate_; }
    const std::vector<std::uint32_t>& offsets() const noexcept { return offsets_; }

    /// One (u, v) per edge in order of its smaller point; u owns that point.
    std::vector<std::pair<Vertex, Vertex>> edges() const;
    /// Edges as (min, max) vertex pairs, sorted. Equal for graphs that differ
    /// only in point labelling.
    std::vector<std::pair<Vertex, Vertex>> edge_multiset() const;

private:
    std::vector<std::uint32_t> offsets_{0};
    std::vector<Point> mate_;
    std::vector<Vertex> owner_;
    std::uint32_t regular_degree_ = 0;
};

struct ContractedGraph {
    Multigraph graph;
    Vertex supernode = 0;
    std::vector<Vertex> members;     // contracted set S in the base graph, sorted
    std::vector<Vertex> vertex_map;  // base vertex -> vertex of `graph`
};

bool is_simple(const Multigraph& g);

/// Number of distinct cycles of length <= omega, cycles taken as edge sets.
/// A loop is a 1-cycle and every pair of parallel edges is a 2-cycle.
std::uint64_t count_short_cycles(const Multigraph& g, unsigned omega);

/// Quotient graph with S merged into one supernode (the last vertex); every
/// edge is retained, edges inside S become supernode loops.
ContractedGraph contract(const Multigraph& g, std::span<const Vertex> s);

/// Vertices at distance exactly d from S, sorted.
std::vector<Vertex> sphere(const Multigraph& g, std::span<const Vertex> s, unsigned d);

/// Multi-source BFS distances from S; unreachable vertices (or those beyond
/// max_depth) get UINT32_MAX.
std::vector<std::uint32_t> distances_from(const Multigraph& g, std::span<const Vertex> s,
                                          std::uint32_t max_depth = 0xffffffffu);

bool is_connected(const Multigraph& g);

/// Edge-list text: header "n r" (r = 0 for irregular graphs) then one "u v"
/// line per edge, sorted. Loops are written as "u u".
void write_edge_list(std::ostream& out, const Multigraph& g);
Multigraph read_edge_list(std::istream& in);

}  // namespace edgewalk
