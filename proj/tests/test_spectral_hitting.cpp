#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <numbers>
#include <set>
#include <sstream>

#include "edgewalk/rng.hpp"
#include "edgewalk/spectral.hpp"
#include "edgewalk/verify/oracles.hpp"

using namespace edgewalk;
using Edges = std::vector<std::pair<Vertex, Vertex>>;

namespace {

const Edges kK4{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

Multigraph cycle_graph(std::uint32_t n) {
    Edges e;
    for (Vertex v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
    return Multigraph::from_edges(n, e);
}

Multigraph connected_graph(std::uint32_t n, std::uint32_t r, std::uint64_t seed) {
    for (std::uint64_t k = 0;; ++k) {
        auto g = Multigraph::configuration_model(n, r, derive_seed(seed, k));
        if (is_connected(g)) return g;
    }
}

std::vector<Vertex> random_subset(std::uint32_t n, std::uint32_t k, Rng& rng) {
    std::set<Vertex> s;
    while (s.size() < k) s.insert(uniform_below(rng, n));
    return {s.begin(), s.end()};
}

bool ball_is_tree(const Multigraph& g, std::span<const Vertex> s, std::uint32_t radius) {
    const auto dist = distances_from(g, s, radius);
    std::uint64_t vertices = 0, edges = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) vertices += dist[v] != 0xffffffffu;
    for (const auto& [u, w] : g.edges()) edges += dist[u] != 0xffffffffu && dist[w] != 0xffffffffu;
    return edges + 1 == vertices;
}

}  // namespace

TEST_CASE("second eigenvalue examples") {
    const auto k4 = Multigraph::from_edges(4, kK4);
    CHECK(second_eigenvalue(k4, EigenMethod::dense).lambda2 == doctest::Approx(1.0 / 3));
    CHECK(second_eigenvalue(k4, EigenMethod::power).lambda2 == doctest::Approx(1.0 / 3).epsilon(1e-6));
    CHECK(second_eigenvalue(cycle_graph(5)).lambda2 == doctest::Approx(std::abs(std::cos(4 * std::numbers::pi / 5))));
    CHECK(second_eigenvalue(Multigraph::from_edges(1, Edges{{0, 0}})).lambda2 == 0.0);

    Edges two_triangles{{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}};
    const auto split = second_eigenvalue(Multigraph::from_edges(6, two_triangles));
    CHECK(split.disconnected);
    CHECK(split.lambda2 == 1.0);
}

TEST_CASE("dense and power iteration agree") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto g = connected_graph(100 + 50 * static_cast<std::uint32_t>(seed), 3, seed);
        const auto dense = second_eigenvalue(g, EigenMethod::dense);
        const auto power = second_eigenvalue(g, EigenMethod::power);
        CHECK(dense.method == "dense");
        CHECK(power.method == "power");
        CHECK(std::abs(dense.lambda2 - power.lambda2) <= 1e-6);
        CHECK(dense.gap == doctest::Approx(1 - dense.lambda2));
    }
}

TEST_CASE("random cubic graphs have a spectral gap") {
    std::vector<double> lambdas;
    for (std::uint64_t seed = 0; seed < 11; ++seed) {
        const auto g = Multigraph::configuration_model(1000, 3, seed);
        if (!is_connected(g)) continue;
        lambdas.push_back(second_eigenvalue(g).lambda2);
    }
    REQUIRE(lambdas.size() >= 9);
    for (double l : lambdas) CHECK(l <= 0.99);
    std::nth_element(lambdas.begin(), lambdas.begin() + lambdas.size() / 2, lambdas.end());
    CHECK(lambdas[lambdas.size() / 2] <= 2 * std::sqrt(2.0) / 3 + 0.02);
}

TEST_CASE("stationary hitting: examples") {
    CHECK(stationary_hitting_exact(Multigraph::from_edges(1, Edges{{0, 0}, {0, 0}}), Vertex{0}) == doctest::Approx(0.0));
    const auto k4 = Multigraph::from_edges(4, kK4);
    for (Vertex v = 0; v < 4; ++v) CHECK(stationary_hitting_exact(k4, v) == doctest::Approx(9.0 / 4));
    Edges two{{0, 1}, {0, 1}, {0, 1}, {2, 3}, {2, 3}, {2, 3}};
    CHECK_THROWS_AS(stationary_hitting_exact(Multigraph::from_edges(4, two), Vertex{0}), std::invalid_argument);
}

TEST_CASE("fundamental matrix agrees with first-step analysis") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const std::uint32_t r = 3 + seed % 3;
        std::uint32_t n = 4 + seed % 27;
        if ((n * r) % 2) ++n;
        const auto g = connected_graph(n, r, seed);
        const Vertex v = static_cast<Vertex>(seed % n);
        const double a = stationary_hitting_exact(g, v);
        const double b = verify::first_step_stationary_hitting(g, v);
        CAPTURE(seed);
        CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, b));
    }
}

TEST_CASE("stationary hitting matches Monte Carlo") {
    auto rng = make_rng(5);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const auto g = connected_graph(20 + 2 * static_cast<std::uint32_t>(seed), 3, seed);
        const auto s = random_subset(g.vertex_count(), 1 + seed, rng);
        const double exact = stationary_hitting_exact(g, s);
        const auto mc = stationary_hitting_mc(g, s, 100000, seed);
        CAPTURE(seed);
        CHECK(std::abs(mc.mean - exact) <= 3 * mc.se);
    }
}

TEST_CASE("hitting upper bound") {
    CHECK(hitting_upper_bound(50, 50, 0.0) == doctest::Approx(1.0));
    CHECK(hitting_upper_bound(1e5, 1e3, 0.99) == doctest::Approx(1e4));
    CHECK_THROWS_AS(hitting_upper_bound(10, 1, 1.0), std::invalid_argument);
    auto rng = make_rng(8);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto g = connected_graph(10 + 4 * static_cast<std::uint32_t>(seed % 48), 3, seed);
        const auto lambda = second_eigenvalue(g).lambda2;
        const auto s = random_subset(g.vertex_count(), 1 + uniform_below<std::uint32_t>(rng, g.vertex_count() / 4), rng);
        CHECK(stationary_hitting_exact(g, s) <= hitting_upper_bound(g.vertex_count(), s.size(), lambda) + 1e-9);
    }
}

TEST_CASE("predicted root hitting") {
    CHECK(predicted_root_hitting(1e5, 5, 1e3) == doctest::Approx(500.0 / 3));
    CHECK(predicted_root_hitting(900, 3, 30) == doctest::Approx(90.0));
    CHECK(default_root_order(100) == 3);
    CHECK(default_root_order(100000000) == 3);
}

TEST_CASE("root set: too small") {
    const auto g = Multigraph::configuration_model(10000, 3, 1);
    const Vertex s[] = {g.owner(0), g.owner(g.mate(0))};
    const auto rep = root_set_check(g, s, 2);
    CHECK_FALSE(rep.size_ok);
    CHECK_FALSE(rep.verdict);
    CHECK(rep.order == 2);
}

TEST_CASE("root set: spread matching passes all clauses") {
    const unsigned ell = 2;
    const auto g = Multigraph::configuration_model(20000, 3, 4);
    std::vector<char> blocked(g.vertex_count(), 0);
    std::vector<Vertex> s;
    for (Point p = 0; p < g.point_count() && s.size() < 32; p += 97) {
        const Vertex a = g.owner(p), b = g.owner(g.mate(p));
        if (a == b || blocked[a] || blocked[b]) continue;
        const Vertex pair[] = {a, b};
        if (!ball_is_tree(g, pair, ell)) continue;
        const auto dist = distances_from(g, pair, 2 * ell);
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            if (dist[v] != 0xffffffffu) blocked[v] = 1;
        s.push_back(a);
        s.push_back(b);
    }
    REQUIRE(s.size() == 32);
    const auto rep = root_set_check(g, s, ell);
    CHECK(rep.size == 32);
    CHECK(rep.internal_edges == 16);
    CHECK(rep.short_path_count == 0);
    CHECK(rep.verdict);

    // Dropping one endpoint leaves fewer internal edges than half the set.
    std::vector<Vertex> lonely(s.begin(), s.begin() + 31);
    CHECK_FALSE(root_set_check(g, lonely, ell).internal_ok);
}

TEST_CASE("return sums") {
    const auto g = Multigraph::configuration_model(40, 3, 2);
    std::vector<Vertex> all(40);
    for (Vertex v = 0; v < 40; ++v) all[v] = v;
    const auto gc = contract(g, all);
    for (unsigned omega : {0u, 1u, 5u, 20u}) CHECK(return_probability_sum(gc, omega) == doctest::Approx(omega + 1.0));

    // Single edge: returns at every even time.
    const auto edge = Multigraph::from_edges(2, Edges{{0, 1}});
    CHECK(return_probability_sum(edge, 0, 4) == doctest::Approx(3.0));
    // Triangle: P^tau(0, 0) = 1/3 + (2/3)(-1/2)^tau.
    double expected = 0.0;
    for (int tau = 0; tau <= 9; ++tau) expected += 1.0 / 3 + 2.0 / 3 * std::pow(-0.5, tau);
    CHECK(return_probability_sum(cycle_graph(3), 0, 9) == doctest::Approx(expected));
}

TEST_CASE("return sums at tree-like vertices equal the tree recursion") {
    const auto g = Multigraph::configuration_model(100000, 3, 12);
    const unsigned omega = 10;
    int checked = 0;
    for (Vertex v = 0; v < g.vertex_count() && checked < 5; v += 997) {
        const Vertex s[] = {v};
        if (!ball_is_tree(g, s, omega / 2 + 1)) continue;
        ++checked;
        CHECK(return_probability_sum(g, v, omega) == doctest::Approx(verify::tree_return_sum(3, 0.0, omega)).epsilon(1e-12));
    }
    CHECK(checked == 5);
    CHECK(verify::tree_return_sum(3, 1.0, 7) == doctest::Approx(8.0));
}

TEST_CASE("exit distribution") {
    const auto g = connected_graph(200, 3, 3);
    std::vector<Vertex> all(200);
    for (Vertex v = 0; v < 200; ++v) all[v] = v;
    const auto freq = exit_distribution(g, all, all, 20000, 1);
    double total = 0.0, top = 0.0;
    for (const auto& [v, f] : freq) {
        total += f;
        top = std::max(top, f);
    }
    CHECK(total == doctest::Approx(1.0));
    CHECK(top * 200 <= 3.0 + 1.0);

    auto rng = make_rng(2);
    const auto s = random_subset(200, 30, rng);
    const std::vector<Vertex> r_set(s.begin(), s.begin() + 10);
    for (const auto& [v, f] : exit_distribution(g, r_set, s, 5000, 2)) CHECK(std::binary_search(s.begin(), s.end(), v));
    CHECK_THROWS(exit_distribution(g, r_set, s, 0, 2));
}

TEST_CASE("escape probability is at least half the gap") {
    auto rng = make_rng(13);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto g = connected_graph(10 + 4 * static_cast<std::uint32_t>(seed % 48), 3, seed + 100);
        const double gap = 1 - second_eigenvalue(g).lambda2;
        auto a = random_subset(g.vertex_count(), 1 + uniform_below<std::uint32_t>(rng, 5), rng);
        Vertex y = uniform_below(rng, g.vertex_count());
        while (std::binary_search(a.begin(), a.end(), y)) y = uniform_below(rng, g.vertex_count());
        CHECK(escape_probability(g, y, a) >= gap / 2 - 1e-12);
    }
    // Path 0-1-2 with A = {2}: from 1, escape needs one step right; from 0 it
    // needs 0 -> 1 -> 2, and 1 -> 0 returns first.
    const auto path = Multigraph::from_edges(3, Edges{{0, 1}, {1, 2}});
    const Vertex a[] = {2};
    CHECK(escape_probability(path, 1, a) == doctest::Approx(0.5));
    CHECK(escape_probability(path, 0, a) == doctest::Approx(0.5));
}

TEST_CASE("avoiding walks and the AKS bound") {
    CHECK(aks_avoidance_bound(100, 3, 0.0, 1 - 1e-12, 5) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(aks_avoidance_bound(10, 3, 1.0, 0.5, 2) == doctest::Approx(5 * 2.0 * 2.0));
    CHECK(aks_hitting_bound(100, 10, 0.5, 0.5) == doctest::Approx(2 * 0.5 * 100 / (10 * 0.5 * 0.5)));

    auto rng = make_rng(21);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::uint32_t n = 6 + 2 * (seed % 5);
        const auto g = connected_graph(n, 3, seed);
        const double lambda_adj = 3 * second_eigenvalue(g, EigenMethod::dense).lambda2;
        const auto a = random_subset(n, 1 + uniform_below<std::uint32_t>(rng, n / 2), rng);
        const double c = static_cast<double>(a.size()) / n;
        for (unsigned ell = 1; ell <= 10; ++ell) {
            const double count = avoiding_walk_count(g, a, ell);
            if (ell <= 5) CHECK(count == static_cast<double>(verify::explicit_avoiding_walks(g, a, ell)));
            CHECK(count <= aks_avoidance_bound(n, 3, lambda_adj, c, ell) * (1 + 1e-9));
        }
    }
}

TEST_CASE("report csv") {
    std::ostringstream out;
    write_spectral_header(out);
    write_spectral_row(out, "k4", second_eigenvalue(Multigraph::from_edges(4, kK4)));
    std::istringstream in(out.str());
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "graph_id,method,lambda2,gap");
    CHECK(row.rfind("k4,dense,", 0) == 0);

    std::ostringstream hit;
    write_hitting_header(hit);
    write_hitting_row(hit, HittingRow{"g", 3, 1.5, 1.4, 0.1, 2.0, 1.8});
    CHECK(hit.str().rfind("graph_id,set_size,exact,mc_mean,mc_se,bound,predicted\ng,3,", 0) == 0);
}
