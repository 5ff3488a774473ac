#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edgewalk/multigraph.hpp"
#include "edgewalk/rng.hpp"

namespace edgewalk {

enum class WalkMode { biased, simple, non_backtracking };

std::string_view to_string(WalkMode mode);
WalkMode parse_walk_mode(std::string_view text);

struct StopCondition {
    enum class Kind { edges, vertices, cover };
    Kind kind = Kind::cover;
    std::uint64_t target = 0;

    static StopCondition cover() { return {Kind::cover, 0}; }
    static StopCondition edges(std::uint64_t t) { return {Kind::edges, t}; }
    static StopCondition vertices(std::uint64_t s) { return {Kind::vertices, s}; }
};

/// "cover", "edges:T" or "vertices:S".
StopCondition parse_stop_condition(std::string_view text);

struct WalkOptions {
    WalkMode mode = WalkMode::biased;
    StopCondition stop = StopCondition::cover();
    std::uint64_t seed = 0;
    bool record_trajectory = true;
    /// Runs longer than budget_factor * n * ln n steps are cut off and flagged.
    double budget_factor = 50.0;
};

enum class StopReason { reached, trapped, budget };

/// Outcome of one walk. Time is counted in walk steps (edge traversals).
/// The trajectory lists configuration points in (departure, arrival) pairs:
/// x_{2k} is the point used to leave the k-th vertex and x_{2k+1} its mate.
struct WalkRecord {
    WalkMode mode = WalkMode::biased;
    bool exposure = false;
    std::uint32_t n = 0;
    std::uint32_t r = 0;
    std::uint64_t seed = 0;
    Vertex start_vertex = 0;

    std::vector<Point> trajectory;
    /// milestones[t - 1] = C(t), the number of steps taken before the step
    /// that traverses the t-th distinct edge.
    std::vector<std::uint64_t> milestones;
    /// vertex_milestones[s - 1] = steps taken when the s-th distinct vertex is
    /// first occupied (the start vertex at 0).
    std::vector<std::uint64_t> vertex_milestones;
    /// Indexed by discovery order; counts traversals up to the end of the run.
    std::vector<std::uint32_t> edge_visits;
    /// First traversal of each discovered edge as (departure, arrival) points.
    std::vector<std::pair<Point, Point>> discovered_edges;
    /// Exposure mode only: partial matching exposed by the walk (kNoPoint for
    /// points never paired).
    std::vector<Point> pairing;

    std::uint64_t steps = 0;
    std::optional<std::uint64_t> vertex_cover;  // C_V
    std::optional<std::uint64_t> edge_cover;    // C_E
    StopReason stop_reason = StopReason::reached;

    bool stopped_by_gap() const noexcept { return stop_reason != StopReason::reached; }
    std::uint64_t edges_discovered() const noexcept { return milestones.size(); }
    std::uint64_t vertices_seen() const noexcept { return vertex_milestones.size(); }

    /// C(t) for 1 <= t <= edges_discovered(); throws std::out_of_range.
    std::uint64_t milestone(std::uint64_t t) const;
};

/// Lazily exposed uniform matching on a fixed set of configuration points.
class Exposure {
public:
    explicit Exposure(std::uint32_t point_count);

    /// Pairs the free point `current` with a partner drawn uniformly from the
    /// other free points. Returns nullopt when no partner is left.
    std::optional<Point> expose(Point current, Rng& rng);

    /// Pairs all remaining free points uniformly.
    void complete(Rng& rng);

    bool is_free(Point p) const { return mate_[p] == kNoPoint; }
    Point mate(Point p) const { return mate_[p]; }
    std::uint32_t free_count() const noexcept { return static_cast<std::uint32_t>(free_.size()); }
    std::uint32_t point_count() const noexcept { return static_cast<std::uint32_t>(mate_.size()); }
    const std::vector<Point>& pairing() const noexcept { return mate_; }

private:
    void remove_free(Point p);

    std::vector<Point> mate_;
    std::vector<Point> free_;
    std::vector<std::uint32_t> free_pos_;
};

/// Per-vertex sets of red points (points on unvisited edges), kept as a
/// prefix of each vertex's slot block so a uniform red point is O(1).
class RedPointSets {
public:
    explicit RedPointSets(const std::vector<std::uint32_t>& offsets);

    std::uint32_t red_count(Vertex v) const { return count_[v]; }
    bool is_red(Point p) const { return pos_[p] < offsets_[owner_[p]] + count_[owner_[p]]; }
    /// The i-th red point of v, 0 <= i < red_count(v).
    Point red_point(Vertex v, std::uint32_t i) const { return slot_[offsets_[v] + i]; }
    void mark_visited(Point p);
    Vertex owner(Point p) const { return owner_[p]; }

private:
    std::vector<std::uint32_t> offsets_;
    std::vector<Vertex> owner_;
    std::vector<Point> slot_;
    std::vector<std::uint32_t> pos_;
    std::vector<std::uint32_t> count_;
};

struct Move {
    Point departure;
    Point arrival;
    bool new_edge;
};

/// Biased step: a uniformly random red point of `v` if one exists, otherwise a
/// uniformly random point of `v`. Marks the traversed edge visited.
Move step_biased(const Multigraph& g, RedPointSets& red, Vertex v, Rng& rng);

/// Fixed-graph walk. The start vertex is uniform.
WalkRecord run_walk(const Multigraph& g, const WalkOptions& options);

/// Walk on the configuration model with the pairing exposed on the fly. The
/// start point is uniform over all rn points.
WalkRecord run_walk_exposure(std::uint32_t n, std::uint32_t r, const WalkOptions& options);

/// Rebuilds a record from an explicit point trajectory on the configuration
/// model (exposure semantics). Throws std::invalid_argument if the trajectory
/// is not a consistent walk.
WalkRecord replay_exposure_walk(std::uint32_t n, std::uint32_t r, std::span<const Point> trajectory,
                                WalkMode mode = WalkMode::biased);

/// C(t + 1) - C(t); throws std::out_of_range unless 1 <= t < edges_discovered().
std::uint64_t increment_sample(const WalkRecord& record, std::uint64_t t);

/// Number of trajectory points up to and including the arrival of edge t.
std::size_t trajectory_length_at(const WalkRecord& record, std::uint64_t t);

/// Export: header "mode n r seed", then one "t C(t)" line per milestone and,
/// when requested, a "trajectory" line followed by the points.
void write_walk_record(std::ostream& out, const WalkRecord& record, bool include_trajectory = false);

}  // namespace edgewalk
