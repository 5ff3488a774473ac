#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "edgewalk/multigraph.hpp"
#include "edgewalk/walk.hpp"

namespace edgewalk {

/// A walk prefix W(t) with its green links spliced out.
///
/// A green link is a pair (x_{2i+1}, x_{2i+2}) of consecutive once-visited
/// points at a green vertex, flanked by once-visited x_{2i} and x_{2i+3}.
/// Removing it merges the steps (x_{2i}, x_{2i+1}) and (x_{2i+2}, x_{2i+3})
/// into one step (x_{2i}, x_{2i+3}).
struct EquivalenceClass {
    std::uint32_t n = 0;
    std::uint32_t r = 0;
    std::uint64_t t = 0;
    std::vector<Point> contracted;
    /// Links in walk order; link_hosts[j] is the contracted step (pair index)
    /// that contained link j.
    std::vector<std::pair<Point, Point>> links;
    std::vector<std::uint32_t> link_hosts;
    /// Contracted steps whose two points are visited once: the urns.
    std::vector<std::uint32_t> green_steps;
    /// Set when a link's quadruple starts at x_0.
    bool link_at_start = false;

    std::size_t phi() const { return green_steps.size(); }

    /// Link multiset in a canonical (sorted) order.
    std::vector<std::pair<Point, Point>> link_set() const;

    /// Same contracted walk and same set of links; the order in which the
    /// links occur does not matter.
    bool operator==(const EquivalenceClass& other) const {
        return contracted == other.contracted && link_set() == other.link_set();
    }
};

EquivalenceClass extract_class(const WalkRecord& record, std::uint64_t t);

/// Re-inserts every link at its recorded host; returns the point trajectory.
std::vector<Point> reconstruct_trajectory(const EquivalenceClass& cls);

/// Exponents i_2..i_r (index k) of the intra-vertex choices and the log of
///   (1/rn) prod_k k^{-i_k} prod_{s=0}^{t-1} 1/(rn - 2s - 1).
struct WalkProbabilityBreakdown {
    std::vector<std::uint64_t> i;
    std::uint64_t t = 0;
    double log_probability = 0.0;
};

/// Exact probability of the biased walk prefix W(t) on the configuration
/// model. Throws std::invalid_argument for fixed-graph records or prefixes
/// that are not biased walks.
WalkProbabilityBreakdown walk_log_probability(const WalkRecord& record, std::uint64_t t);

/// Sprinkles the links, in recorded order, into uniformly chosen current green
/// steps (Polya urn) and replays the result. Throws std::invalid_argument if
/// there are links but no green step.
WalkRecord resample_walk(const EquivalenceClass& cls, std::uint64_t seed);

/// Unordered pairs of link vertices within graph distance omega of each other.
std::uint64_t close_link_pairs(const Multigraph& g, std::span<const Vertex> link_vertices, unsigned omega);

/// Vertex of each link.
std::vector<Vertex> link_vertices(const EquivalenceClass& cls);

/// Graph induced by the record's exposed pairing, with the remaining points
/// matched uniformly using `seed`.
Multigraph complete_exposed_graph(const WalkRecord& record, std::uint64_t seed);

/// Debug dump: contracted sequence on one line, then "p q host" per link.
void write_class(std::ostream& out, const EquivalenceClass& cls);

}  // namespace edgewalk
