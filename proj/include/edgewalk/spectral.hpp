#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "edgewalk/multigraph.hpp"

namespace edgewalk {

enum class EigenMethod { automatic, dense, power };

struct SpectralReport {
    double lambda2 = 0.0;  // second largest |eigenvalue| of the transition matrix
    double gap = 1.0;
    std::string method;    // "dense" or "power"
    bool disconnected = false;
    std::uint32_t iterations = 0;
    double tolerance = 0.0;
};

/// Transition matrix P(u, v) = (points of u paired into v) / deg(u); a loop
/// contributes 2/deg(u) to P(u, u). Dense for n <= 2000 under `automatic`.
/// Disconnected graphs report lambda2 = 1. A single vertex reports 0.
/// Power iteration throws std::runtime_error if it fails to converge.
SpectralReport second_eigenvalue(const Multigraph& g, EigenMethod method = EigenMethod::automatic,
                                 double tolerance = 1e-10, std::uint32_t max_iterations = 100000);

/// E_pi[H(v)] = Z_vv / pi_v via the fundamental matrix (I - P + Pi)^{-1}.
/// Throws std::invalid_argument for disconnected graphs.
double stationary_hitting_exact(const Multigraph& g, Vertex target);
/// Hitting time of a set: contract S, then the supernode formula.
double stationary_hitting_exact(const Multigraph& g, std::span<const Vertex> target);

/// Monte Carlo E[H(S)] from a start drawn from pi.
struct MonteCarloEstimate {
    double mean = 0.0;
    double se = 0.0;
    std::uint64_t trials = 0;
};
MonteCarloEstimate stationary_hitting_mc(const Multigraph& g, std::span<const Vertex> target, std::uint64_t trials,
                                         std::uint64_t seed);

/// n / ((1 - lambda2) |S|). Throws std::invalid_argument when lambda2 >= 1.
double hitting_upper_bound(double n, double set_size, double lambda2);

/// (r / (r - 2)) n / |S|.
double predicted_root_hitting(double n, double r, double set_size);

struct RootSetReport {
    std::uint64_t size = 0;
    std::uint64_t internal_edges = 0;
    std::uint64_t short_path_count = 0;
    unsigned order = 0;
    bool size_ok = false;
    bool internal_ok = false;
    bool paths_ok = false;
    bool verdict = false;
};

/// Checks |S| >= l^5, internal edges in [|S|/2, (1/2 + l^-3)|S|], and at most
/// |S|/l^3 paths of length <= l between S-vertices whose interior avoids S and
/// that use no edge inside S.
RootSetReport root_set_check(const Multigraph& g, std::span<const Vertex> s, unsigned ell);

/// Default order max(3, floor(ln ln n)).
unsigned default_root_order(std::uint32_t n);

/// sum_{tau=0}^{omega} P_s^{(tau)}(s) at the supernode, by vector iteration.
double return_probability_sum(const ContractedGraph& gc, unsigned omega);
double return_probability_sum(const Multigraph& g, Vertex s, unsigned omega);

/// Start uniform in R, walk until hitting S minus the start vertex. Returns
/// ending frequencies (summing to 1) keyed by vertex.
std::map<Vertex, double> exit_distribution(const Multigraph& g, std::span<const Vertex> r_set,
                                           std::span<const Vertex> s_set, std::uint64_t trials, std::uint64_t seed);

/// P_y(T_A < T_y^+) for the simple walk, by an exact linear solve. y must not
/// be in A.
double escape_probability(const Multigraph& g, Vertex y, std::span<const Vertex> a);

/// (1 - c) n ((1 - c) r + c lambda_adj)^ell.
double aks_avoidance_bound(double n, double r, double lambda_adj, double c, unsigned ell);
/// Geometric-sum hitting bound 2 (1 - c) n / (|X_1| c (1 - lambda)).
double aks_hitting_bound(double n, double x1_size, double c, double lambda);

/// Number of walks of length ell (ell + 1 vertices, all outside A), counted
/// with point multiplicity, by transfer matrix.
double avoiding_walk_count(const Multigraph& g, std::span<const Vertex> a, unsigned ell);

/// Report CSVs.
void write_spectral_header(std::ostream& out);
void write_spectral_row(std::ostream& out, const std::string& graph_id, const SpectralReport& rep);

struct HittingRow {
    std::string graph_id;
    std::uint64_t set_size = 0;
    double exact = 0.0;
    double mc_mean = 0.0;
    double mc_se = 0.0;
    double bound = 0.0;
    double predicted = 0.0;
};
void write_hitting_header(std::ostream& out);
void write_hitting_row(std::ostream& out, const HittingRow& row);

}  // namespace edgewalk
