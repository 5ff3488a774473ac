#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <numeric>
#include <sstream>

#include "edgewalk/multigraph.hpp"
#include "edgewalk/rng.hpp"
#include "edgewalk/spectral.hpp"
#include "edgewalk/verify/oracles.hpp"

using namespace edgewalk;
using Edges = std::vector<std::pair<Vertex, Vertex>>;

namespace {

Multigraph cycle_graph(std::uint32_t n) {
    Edges e;
    for (Vertex v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
    return Multigraph::from_edges(n, e);
}

void check_pairing(const Multigraph& g) {
    for (Point p = 0; p < g.point_count(); ++p) {
        REQUIRE(g.mate(p) != p);
        REQUIRE(g.mate(g.mate(p)) == p);
    }
}

}  // namespace

TEST_CASE("generator: two vertices of degree three") {
    const auto g = Multigraph::configuration_model(2, 3, 7);
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 3);
    CHECK(g.degree(0) + g.degree(1) == 6);
    check_pairing(g);
}

TEST_CASE("generator rejects odd rn and zero sizes") {
    CHECK_THROWS_AS(Multigraph::configuration_model(3, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(Multigraph::configuration_model(0, 3, 1), std::invalid_argument);
}

TEST_CASE("generator invariants over many seeds") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const std::uint32_t n = 2 + 2 * (seed % 40), r = 3 + seed % 3;
        if ((n * r) % 2) continue;
        const auto g = Multigraph::configuration_model(n, r, seed);
        check_pairing(g);
        CHECK(g.regular_degree() == r);
        CHECK(g.edge_count() == n * r / 2);
        for (Vertex v = 0; v < n; ++v) CHECK(g.degree(v) == r);
        for (Point p = 0; p < g.point_count(); ++p) CHECK(g.owner(p) == p / r);
    }
}

TEST_CASE("generator is seed-deterministic") {
    const auto a = Multigraph::configuration_model(500, 3, 42);
    const auto b = Multigraph::configuration_model(500, 3, 42);
    const auto c = Multigraph::configuration_model(500, 3, 43);
    CHECK(a.pairing() == b.pairing());
    CHECK(a.pairing() != c.pairing());
}

TEST_CASE("simple outcomes are not rare for n=100, r=3") {
    int simple = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) simple += is_simple(Multigraph::configuration_model(100, 3, seed));
    CHECK(simple / 1000.0 >= 0.05);
}

TEST_CASE("is_simple examples") {
    CHECK_FALSE(is_simple(Multigraph::from_edges(1, Edges{{0, 0}})));
    CHECK_FALSE(is_simple(Multigraph::from_edges(2, Edges{{0, 1}, {0, 1}, {0, 1}})));
    CHECK(is_simple(cycle_graph(3)));
}

TEST_CASE("short cycle examples") {
    CHECK(count_short_cycles(cycle_graph(5), 5) == 1);
    CHECK(count_short_cycles(cycle_graph(5), 4) == 0);
    const Edges tree{{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}, {2, 6}};
    CHECK(count_short_cycles(Multigraph::from_edges(7, tree), 7) == 0);
    // A loop, and three parallel edges giving three 2-cycles.
    CHECK(count_short_cycles(Multigraph::from_edges(1, Edges{{0, 0}}), 3) == 1);
    CHECK(count_short_cycles(Multigraph::from_edges(2, Edges{{0, 1}, {0, 1}, {0, 1}}), 2) == 3);
    // K4 has 4 triangles and 3 four-cycles.
    const Edges k4{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    CHECK(count_short_cycles(Multigraph::from_edges(4, k4), 3) == 4);
    CHECK(count_short_cycles(Multigraph::from_edges(4, k4), 4) == 7);
}

TEST_CASE("cycle counter matches subset enumeration on small graphs") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const std::uint32_t r = 3 + seed % 2;
        const std::uint32_t n = r == 3 ? 4 + 2 * (seed % 5) : 3 + seed % 10;
        if ((n * r) % 2) continue;
        const auto g = Multigraph::configuration_model(n, r, seed);
        for (unsigned omega : {1u, 2u, 3u, 4u, 5u}) {
            CAPTURE(seed);
            CAPTURE(omega);
            CHECK(count_short_cycles(g, omega) == verify::brute_force_cycle_count(g, omega));
        }
    }
}

TEST_CASE("short cycles in random cubic graphs stay few") {
    std::vector<double> counts;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
        counts.push_back(static_cast<double>(count_short_cycles(Multigraph::configuration_model(1000, 3, seed), 4)));
    const double mean = std::accumulate(counts.begin(), counts.end(), 0.0) / counts.size();
    std::nth_element(counts.begin(), counts.begin() + 100, counts.end());
    CHECK(mean <= 4 * 81);
    CHECK(counts[100] <= 50);
}

TEST_CASE("contracting one vertex changes nothing") {
    const auto g = Multigraph::configuration_model(20, 3, 5);
    const Vertex s[] = {7};
    const auto gc = contract(g, s);
    CHECK(gc.graph.vertex_count() == g.vertex_count());
    auto mapped = g.edges();
    for (auto& [a, b] : mapped) {
        a = gc.vertex_map[a];
        b = gc.vertex_map[b];
        if (a > b) std::swap(a, b);
    }
    std::sort(mapped.begin(), mapped.end());
    CHECK(mapped == gc.graph.edge_multiset());
}

TEST_CASE("contracting an edge of a triangle") {
    const Vertex s[] = {0, 1};
    const auto gc = contract(cycle_graph(3), s);
    CHECK(gc.graph.vertex_count() == 2);
    const Vertex sn = gc.supernode;
    const Vertex other = 1 - sn;
    const Edges expected{{std::min(other, sn), std::max(other, sn)}, {std::min(other, sn), std::max(other, sn)}, {sn, sn}};
    auto sorted = expected;
    std::sort(sorted.begin(), sorted.end());
    CHECK(gc.graph.edge_multiset() == sorted);
}

TEST_CASE("contraction invariants") {
    auto rng = make_rng(11);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto g = Multigraph::configuration_model(60, 3, seed);
        std::vector<Vertex> s;
        for (Vertex v = 0; v < 60; ++v)
            if (uniform_unit(rng) < 0.2) s.push_back(v);
        if (s.empty()) s.push_back(0);
        const auto gc = contract(g, s);
        std::uint32_t internal = 0, loops = 0;
        for (const auto& [a, b] : g.edges()) {
            const bool ia = std::find(s.begin(), s.end(), a) != s.end();
            const bool ib = std::find(s.begin(), s.end(), b) != s.end();
            internal += ia && ib;
        }
        for (const auto& [a, b] : gc.graph.edges()) loops += a == gc.supernode && b == gc.supernode;
        CHECK(gc.graph.edge_count() == g.edge_count());
        CHECK(gc.graph.degree(gc.supernode) == 3 * s.size());
        CHECK(loops == internal);
    }
    CHECK_THROWS_AS(contract(cycle_graph(4), std::span<const Vertex>{}), std::invalid_argument);
}

TEST_CASE("contraction does not increase the second eigenvalue") {
    auto rng = make_rng(3);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const std::uint32_t n = 20 + 2 * (seed % 80);
        const auto g = Multigraph::configuration_model(n, 3, seed);
        if (!is_connected(g)) continue;
        std::vector<Vertex> s;
        const std::uint32_t k = 1 + uniform_below<std::uint32_t>(rng, n / 3);
        for (std::uint32_t i = 0; i < k; ++i) s.push_back(uniform_below(rng, n));
        const auto gc = contract(g, s);
        CHECK(second_eigenvalue(gc.graph).lambda2 <= second_eigenvalue(g).lambda2 + 1e-9);
    }
}

TEST_CASE("spheres") {
    const auto g = Multigraph::configuration_model(50, 3, 9);
    const Vertex s[] = {3, 17};
    const auto n0 = sphere(g, s, 0);
    CHECK(n0 == std::vector<Vertex>{3, 17});

    const auto path = Multigraph::from_edges(3, Edges{{0, 1}, {1, 2}});
    const Vertex a[] = {0};
    CHECK(sphere(path, a, 2) == std::vector<Vertex>{2});
    CHECK(sphere(path, a, 3).empty());
}

TEST_CASE("spheres grow like (r-1)^d around a matched pair in a tree-like region") {
    const auto g = Multigraph::configuration_model(200000, 3, 21);
    int checked = 0;
    for (Point p = 0; p < g.point_count() && checked < 20; p += 301) {
        const Vertex a = g.owner(p), b = g.owner(g.mate(p));
        if (a == b) continue;
        const Vertex s[] = {a, b};
        // The radius-3 ball is a tree when it has one edge fewer than vertices.
        const auto dist = distances_from(g, s, 3);
        std::uint64_t vertices = 0, edges = 0;
        for (Vertex v = 0; v < g.vertex_count(); ++v) vertices += dist[v] != 0xffffffffu;
        for (const auto& [u, w] : g.edges()) edges += dist[u] != 0xffffffffu && dist[w] != 0xffffffffu;
        if (edges + 1 != vertices) continue;
        ++checked;
        for (unsigned d = 1; d <= 3; ++d) CHECK(sphere(g, s, d).size() == (2u << d));
    }
    CHECK(checked == 20);
}

TEST_CASE("edge list round trip") {
    const auto g = Multigraph::configuration_model(30, 3, 77);
    std::stringstream ss;
    write_edge_list(ss, g);
    std::string header;
    std::getline(ss, header);
    CHECK(header == "30 3");
    ss.seekg(0);
    const auto h = read_edge_list(ss);
    CHECK(h.vertex_count() == 30);
    CHECK(h.edge_multiset() == g.edge_multiset());

    std::stringstream loop;
    write_edge_list(loop, Multigraph::from_edges(1, Edges{{0, 0}}));
    CHECK(loop.str().find("0 0") != std::string::npos);
}
