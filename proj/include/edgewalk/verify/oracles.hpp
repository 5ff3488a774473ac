#pragma once

// Slow, independent reference computations used by the tests and the
// acceptance suite. None of these share code paths with the library routines
// they check.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "edgewalk/multigraph.hpp"

namespace edgewalk::verify {

/// E_pi[H(v)] by first-step analysis: h(v) = 0, h(u) = 1 + sum_w P(u, w) h(w),
/// averaged over the degree-proportional stationary law.
double first_step_stationary_hitting(const Multigraph& g, Vertex v);

/// Every perfect matching of `points` points, as mate arrays, in a canonical
/// order ((points - 1)!! of them).
std::vector<std::vector<Point>> all_matchings(std::uint32_t points);

/// Position of `mate` in all_matchings(mate.size()).
class MatchingIndex {
public:
    explicit MatchingIndex(std::uint32_t points);
    std::size_t size() const { return index_.size(); }
    /// Throws std::out_of_range for a mate array that is not a perfect matching.
    std::size_t operator()(const std::vector<Point>& mate) const { return index_.at(mate); }

private:
    std::map<std::vector<Point>, std::size_t> index_;
};

struct EnumeratedWalk {
    std::vector<Point> trajectory;
    double probability = 0.0;
};

struct WalkSpace {
    std::vector<EnumeratedWalk> walks;
    double trapped_mass = 0.0;    // closed component with no red point left
    double truncated_mass = 0.0;  // cut by the blue-step limit
};

/// All biased exposure-mode walk prefixes on rn points ending with the
/// arrival of the t-th distinct edge, with their probabilities computed branch
/// by branch.
WalkSpace enumerate_biased_walks(std::uint32_t n, std::uint32_t r, std::uint64_t t, unsigned max_blue_steps = 12);

/// Cycles of length <= omega by testing every edge subset of that size.
std::uint64_t brute_force_cycle_count(const Multigraph& g, unsigned omega);

/// Walks of length ell avoiding A, by depth-first enumeration over points.
std::uint64_t explicit_avoiding_walks(const Multigraph& g, std::span<const Vertex> a, unsigned ell);

/// Idealised return sum at a supernode surrounded by (r-1)-ary trees: the walk
/// stays put with probability stay and otherwise moves into a tree, where each
/// vertex has one edge towards the supernode.
double tree_return_sum(std::uint32_t r, double stay, unsigned omega);

}  // namespace edgewalk::verify
