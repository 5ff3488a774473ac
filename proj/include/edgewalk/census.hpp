#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "edgewalk/multigraph.hpp"
#include "edgewalk/walk.hpp"

namespace edgewalk {

/// Colour census after the t-th distinct edge has been traversed.
/// Edges are red / green / blue when traversed 0 / 1 / >= 2 times. A vertex is
/// green when it has exactly one red point and every other point lies on a
/// green edge.
struct ColourSnapshot {
    std::uint64_t t = 0;
    double delta = 0.0;                 // 1 - 2t/(rn)
    std::vector<std::uint64_t> x;       // x[i] = X_i, i = 0..r
    std::uint64_t x1_green = 0;
    std::uint64_t x1_blue = 0;
    std::uint64_t z = 0;                // X_1^b + X_2 + ... + X_r
    std::uint64_t phi = 0;              // green edges
    double links = 0.0;                 // (r - 1)/2 * X_1^g

    std::uint64_t unvisited_vertices() const { return x.back(); }
};

/// Incremental colouring of a walk, fed one traversal at a time. Works on any
/// point layout (per-vertex point offsets).
class CensusTracker {
public:
    CensusTracker(std::vector<std::uint32_t> offsets, std::uint32_t r);

    /// One walk step from point p to its mate q.
    void traverse(Point p, Point q);

    ColourSnapshot snapshot() const;

    std::uint32_t red_points(Vertex v) const { return red_[v]; }
    bool is_green(Vertex v) const { return red_[v] == 1 && blue_points_[v] == 0; }
    std::uint64_t edges_found() const noexcept { return edges_found_; }
    std::uint64_t phi() const noexcept { return phi_; }
    std::uint64_t x(std::uint32_t i) const { return x_[i]; }
    std::uint64_t x1_green() const noexcept { return x1_green_; }
    Vertex owner(Point p) const { return owner_[p]; }
    std::uint32_t visits(Point p) const { return point_visits_[p]; }

private:
    void remove(Vertex v);
    void add(Vertex v);

    std::vector<std::uint32_t> offsets_;
    std::vector<Vertex> owner_;
    std::uint32_t r_;
    std::vector<std::uint32_t> red_;
    std::vector<std::uint32_t> blue_points_;
    std::vector<std::uint32_t> point_visits_;
    std::vector<std::uint64_t> x_;
    std::uint64_t x1_green_ = 0;
    std::uint64_t phi_ = 0;
    std::uint64_t edges_found_ = 0;
    std::uint64_t points_total_ = 0;
};

/// Per-vertex point offsets of the r-regular layout used in exposure mode.
std::vector<std::uint32_t> regular_offsets(std::uint32_t n, std::uint32_t r);

/// Census at milestone t of an exposure-mode record (needs the trajectory).
/// t = 0 is the empty census. Throws std::out_of_range for t > edges discovered.
ColourSnapshot colour_snapshot(const WalkRecord& record, std::uint64_t t);
/// Same for a walk on a fixed graph.
ColourSnapshot colour_snapshot(const WalkRecord& record, const Multigraph& g, std::uint64_t t);

/// Census at several milestones in one replay; ts must be increasing.
std::vector<ColourSnapshot> colour_snapshots(const WalkRecord& record, const std::vector<std::uint32_t>& offsets,
                                             std::span<const std::uint64_t> ts);

/// Vertices with at least one red point at milestone t (the set X-bar).
std::vector<Vertex> unvisited_edge_vertices(const WalkRecord& record, const std::vector<std::uint32_t>& offsets,
                                            std::uint64_t t);

using HistoryVector = std::vector<std::uint8_t>;

/// Entry j is the number of previously unused points of v consumed at the j-th
/// visit that consumed any. A visit is an (arrival, departure) pair at v; the
/// start contributes a departure-only visit and the last arrival an
/// arrival-only one.
std::vector<HistoryVector> history_vectors(const WalkRecord& record, const std::vector<std::uint32_t>& offsets,
                                           std::uint64_t t);

/// All vectors over {1, 2} with sum <= r - 1, including the empty vector and
/// excluding (2, ..., 2) of length (r - 1)/2. Throws for even r.
std::vector<HistoryVector> enumerate_L(std::uint32_t r);
bool in_L(const HistoryVector& l, std::uint32_t r);

struct DeltaSchedule {
    double delta[5];
    std::uint64_t t[5];
};

/// delta_0 = 1/ln ln n, delta_1 = ln^{-1/2} n, delta_2 = ln^{-2} n,
/// delta_3 = n^{-3/4}, delta_4 = ln n / n; t_i = floor((1 - delta_i) rn/2).
DeltaSchedule delta_schedule(std::uint32_t n, std::uint32_t r);

/// floor((1 - delta) rn / 2), clamped to [0, rn/2].
std::uint64_t t_for_delta(std::uint32_t n, std::uint32_t r, double delta);
double delta_for_t(std::uint32_t n, std::uint32_t r, std::uint64_t t);

/// (1 - m/n) prod_{s=0}^{t} (1 - rm/(rn - 2s - 1)); 0 once a factor is <= 0.
double exact_unvisited_probability(std::uint32_t n, std::uint32_t r, std::uint64_t t, std::uint32_t m);

struct PhiIncrementFit {
    std::uint64_t samples = 0;
    double p_plus_one = 0.0;          // empirical P(increment == +1)
    double p_plus_one_se = 0.0;
    double p_plus_one_predicted = 0.0;  // mean of 1 - X_1/(rn - 2t)
    /// For k = 1..kmax: empirical P(drop >= k) and mean of (1 - L/Phi)^(k-1),
    /// where drop = 1 - (Phi(t+1) - Phi(t)).
    std::vector<double> tail_empirical;
    std::vector<double> tail_geometric;
};

/// Pools Phi increments over t in [t_lo, t_hi) across records (exposure mode).
/// Each sample runs from the departure of edge t to the departure of edge
/// t + 1; the +1 prediction is the exact chance that edge t lands on a point
/// whose vertex is left without red points.
PhiIncrementFit phi_increment_fit(std::span<const WalkRecord> records, std::uint64_t t_lo, std::uint64_t t_hi,
                                  unsigned kmax = 10);

/// Census CSV: seed,t,delta,X0..Xr,X1g,X1b,Z,Phi,L
void write_census_header(std::ostream& out, std::uint32_t r);
void write_census_row(std::ostream& out, std::uint64_t seed, const ColourSnapshot& s);

}  // namespace edgewalk
