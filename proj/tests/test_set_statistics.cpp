#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <numeric>
#include <sstream>

#include "edgewalk/census.hpp"
#include "edgewalk/stats.hpp"
#include "edgewalk/verify/oracles.hpp"

using namespace edgewalk;
using Edges = std::vector<std::pair<Vertex, Vertex>>;

namespace {

WalkOptions biased(StopCondition stop, std::uint64_t seed) {
    WalkOptions o;
    o.stop = stop;
    o.seed = seed;
    return o;
}

void check_census_identities(const ColourSnapshot& s, std::uint32_t n, std::uint32_t r) {
    std::uint64_t weighted = 0, total = 0;
    for (std::uint32_t i = 0; i <= r; ++i) {
        weighted += i * s.x[i];
        total += s.x[i];
    }
    CHECK(total == n);
    CHECK(weighted == static_cast<std::uint64_t>(r) * n - 2 * s.t);
    CHECK(s.x1_green + s.x1_blue == s.x[1]);
    CHECK(s.z == s.x1_blue + std::accumulate(s.x.begin() + 2, s.x.end(), std::uint64_t{0}));
    CHECK(s.links == doctest::Approx((r - 1) / 2.0 * s.x1_green));
    CHECK(s.delta == doctest::Approx(delta_for_t(n, r, s.t)));
}

}  // namespace

TEST_CASE("census identities on fixed graphs and exposure walks") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::uint32_t r = seed % 2 ? 3 : 5, n = 400;
        const auto g = Multigraph::configuration_model(n, r, seed);
        const auto fixed = run_walk(g, biased(StopCondition::cover(), seed));
        const auto exposed = run_walk_exposure(n, r, biased(StopCondition::cover(), seed));
        for (std::uint64_t t = 1; t <= fixed.edges_discovered(); t += 37) check_census_identities(colour_snapshot(fixed, g, t), n, r);
        for (std::uint64_t t = 1; t <= exposed.edges_discovered(); t += 37) check_census_identities(colour_snapshot(exposed, t), n, r);
    }
}

TEST_CASE("full edge cover leaves nothing unvisited") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto rec = run_walk_exposure(300, 3, biased(StopCondition::cover(), seed));
        REQUIRE(rec.edge_cover);
        const auto s = colour_snapshot(rec, 450);
        CHECK(s.x[0] == 300);
        CHECK(s.z == 0);
        CHECK(s.x1_green == 0);
        CHECK(s.delta == 0.0);
    }
}

TEST_CASE("snapshot range") {
    const auto rec = run_walk_exposure(50, 3, biased(StopCondition::edges(10), 1));
    const auto empty = colour_snapshot(rec, 0);
    CHECK(empty.x[3] == 50);
    CHECK(empty.delta == 1.0);
    CHECK_THROWS_AS(colour_snapshot(rec, 11), std::out_of_range);
}

TEST_CASE("snapshot at several times equals separate snapshots") {
    const auto rec = run_walk_exposure(500, 3, biased(StopCondition::cover(), 4));
    const std::uint64_t ts[] = {1, 100, 600, 749, 750};
    const auto many = colour_snapshots(rec, regular_offsets(500, 3), ts);
    REQUIRE(many.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        const auto one = colour_snapshot(rec, ts[i]);
        CHECK(many[i].x == one.x);
        CHECK(many[i].phi == one.phi);
        CHECK(many[i].x1_green == one.x1_green);
    }
}

TEST_CASE("history vectors: unvisited vertices and a pass-through") {
    // Cubic layout on 4 vertices. Walk: 0 -> 3 (vertex 1), leave by 4 -> 6
    // (vertex 2). Vertex 1 was entered once and left by a fresh point.
    const Point traj[] = {0, 3, 4, 6};
    const auto rec = replay_exposure_walk(4, 3, traj);
    const auto h = history_vectors(rec, regular_offsets(4, 3), 2);
    CHECK(h[1] == HistoryVector{2});
    CHECK(h[3].empty());
    CHECK(h[0] == HistoryVector{1});
    CHECK(h[2] == HistoryVector{1});
    CHECK_FALSE(in_L(h[1], 3));
    const auto s = colour_snapshot(rec, 2);
    CHECK(s.x1_green == 1);
    CHECK(s.x[3] == 1);
}

TEST_CASE("history vectors partition Z") {
    // A vector in L marks exactly the vertices of Z, except the start vertex
    // when the walk is currently sitting on it: its departure-only first visit
    // makes it look like a vertex entered from a used edge.
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const std::uint32_t r = seed % 3 == 0 ? 5 : 3, n = 300;
        const auto offsets = regular_offsets(n, r);
        const auto rec = run_walk_exposure(n, r, biased(StopCondition::cover(), seed));
        for (std::uint64_t t = 1; t <= rec.edges_discovered(); t += 11) {
            const auto h = history_vectors(rec, offsets, t);
            const auto s = colour_snapshot(rec, t);
            const Vertex start = rec.trajectory[0] / r;
            const Vertex here = rec.trajectory[trajectory_length_at(rec, t) - 1] / r;
            std::uint64_t in = 0, used_points = 0;
            for (Vertex v = 0; v < n; ++v) {
                std::uint32_t sum = 0;
                for (auto e : h[v]) sum += e;
                CHECK(sum <= r);
                used_points += sum;
                in += in_L(h[v], r);
            }
            CHECK(used_points == 2 * t);
            CAPTURE(seed);
            CAPTURE(t);
            if (in != s.z) {
                CHECK(in == s.z + 1);
                CHECK(start == here);
                CHECK(in_L(h[start], r));
            }
        }
    }
}

TEST_CASE("history vector sum fixes the census class") {
    const std::uint32_t n = 200, r = 3;
    const auto rec = run_walk_exposure(n, r, biased(StopCondition::edges(200), 9));
    const auto h = history_vectors(rec, regular_offsets(n, r), 200);
    std::vector<std::uint64_t> x(r + 1, 0);
    for (Vertex v = 0; v < n; ++v) {
        std::uint32_t sum = 0;
        for (auto e : h[v]) sum += e;
        ++x[r - sum];
    }
    CHECK(x == colour_snapshot(rec, 200).x);
}

TEST_CASE("enumerate_L") {
    const auto l3 = enumerate_L(3);
    CHECK(l3.size() == 3);
    CHECK(std::find(l3.begin(), l3.end(), HistoryVector{}) != l3.end());
    CHECK(std::find(l3.begin(), l3.end(), HistoryVector{1}) != l3.end());
    CHECK(std::find(l3.begin(), l3.end(), HistoryVector{1, 1}) != l3.end());
    const auto l5 = enumerate_L(5);
    CHECK(l5.size() == 11);
    for (const auto& l : l5) CHECK(std::accumulate(l.begin(), l.end(), 0u) <= 4);
    CHECK(std::find(l5.begin(), l5.end(), HistoryVector{2, 2}) == l5.end());
    CHECK_THROWS_AS(enumerate_L(4), std::invalid_argument);
    CHECK_FALSE(in_L(HistoryVector{3}, 5));
}

TEST_CASE("delta schedule") {
    CHECK(delta_schedule(15, 3).delta[0] == doctest::Approx(1.0).epsilon(0.01));
    CHECK(delta_schedule(10000, 3).t[1] == 10057);
    // n^{-3/4} only drops below ln n / n once n exceeds about 5500.
    CHECK(delta_schedule(1000, 3).delta[3] < delta_schedule(1000, 3).delta[4]);
    for (std::uint32_t n : {10000u, 100000u, 1000000u, 10000000u}) {
        const auto s = delta_schedule(n, 3);
        for (int i = 0; i < 4; ++i) {
            CHECK(s.delta[i] > s.delta[i + 1]);
            CHECK(s.t[i] <= s.t[i + 1]);
        }
    }
    CHECK(t_for_delta(10, 3, 0.0) == 15);
    CHECK(t_for_delta(10, 3, 1.0) == 0);
    CHECK(t_for_delta(10, 3, 2.0) == 0);
    CHECK_THROWS_AS(delta_schedule(2, 3), std::invalid_argument);
}

TEST_CASE("exact unvisited probability: closed forms") {
    CHECK(exact_unvisited_probability(10000, 3, 0, 1) == doctest::Approx(0.999800006666889).epsilon(1e-12));
    // n = 2, r = 4: 3/14 after one exposure step and 3/70 after two.
    CHECK(exact_unvisited_probability(2, 4, 0, 1) == doctest::Approx(3.0 / 14));
    CHECK(exact_unvisited_probability(2, 4, 1, 1) == doctest::Approx(3.0 / 70));
    CHECK(exact_unvisited_probability(2, 4, 2, 1) == 0.0);
    CHECK(exact_unvisited_probability(10, 3, 20, 5) == 0.0);
    const double d = 0.01;
    const auto t = t_for_delta(1000000, 3, d);
    CHECK(exact_unvisited_probability(1000000, 3, t, 1) / std::pow(d, 1.5) == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("exact unvisited probability matches complete walk enumeration") {
    // The product over s = 0..t is the law after t + 1 edges. Larger t would
    // let the walk close off its component before the next exposure.
    for (std::uint64_t t : {0u, 1u}) {
        const auto space = verify::enumerate_biased_walks(2, 4, t + 1);
        CHECK(space.trapped_mass == 0.0);
        CHECK(space.truncated_mass == 0.0);
        double expected = 0.0;
        for (const auto& w : space.walks) {
            const auto rec = replay_exposure_walk(2, 4, w.trajectory);
            expected += w.probability * static_cast<double>(colour_snapshot(rec, t + 1).x[4]);
        }
        CAPTURE(t);
        CHECK(expected == doctest::Approx(2 * exact_unvisited_probability(2, 4, t, 1)).epsilon(1e-12));
    }
    // rn = 10 with r = 5.
    for (std::uint64_t t : {0u, 1u}) {
        const auto space = verify::enumerate_biased_walks(2, 5, t + 1);
        double expected = 0.0;
        for (const auto& w : space.walks)
            expected += w.probability * colour_snapshot(replay_exposure_walk(2, 5, w.trajectory), t + 1).x[5];
        CHECK(expected == doctest::Approx(2 * exact_unvisited_probability(2, 5, t, 1)).epsilon(1e-12));
    }
}

TEST_CASE("exact unvisited probability against Monte Carlo") {
    const std::uint32_t n = 2000, r = 3;
    const auto t = t_for_delta(n, r, 0.05);
    std::vector<double> xr;
    for (std::uint64_t seed = 0; seed < 2000; ++seed) {
        auto o = biased(StopCondition::edges(t + 1), derive_seed(99, seed));
        const auto rec = run_walk_exposure(n, r, o);
        xr.push_back(static_cast<double>(colour_snapshot(rec, t + 1).x[r]));
    }
    const auto m = mean_se(xr);
    const double predicted = n * exact_unvisited_probability(n, r, t, 1);
    CHECK(std::abs(m.mean - predicted) <= 3 * m.se);
}

TEST_CASE("green vertices only disappear late in runs with empty Z") {
    const std::uint32_t n = 10000, r = 3;
    const auto sched = delta_schedule(n, r);
    int used = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto rec = run_walk_exposure(n, r, biased(StopCondition::cover(), seed));
        if (rec.edges_discovered() < n * r / 2) continue;
        std::vector<std::uint64_t> ts;
        for (std::uint64_t t = sched.t[3]; t <= rec.edges_discovered(); ++t) ts.push_back(t);
        const auto snaps = colour_snapshots(rec, regular_offsets(n, r), ts);
        if (snaps.front().z != 0) continue;
        ++used;
        for (std::size_t i = 1; i < snaps.size(); ++i) CHECK(snaps[i].x1_green <= snaps[i - 1].x1_green);
    }
    CHECK(used > 0);
}

TEST_CASE("phi increments") {
    const std::uint32_t n = 20000, r = 3;
    std::vector<WalkRecord> recs;
    for (std::uint64_t seed = 0; seed < 60; ++seed) recs.push_back(run_walk_exposure(n, r, biased(StopCondition::cover(), seed)));
    const auto lo = t_for_delta(n, r, 0.02), hi = t_for_delta(n, r, 0.01);
    const auto fit = phi_increment_fit(recs, lo, hi);
    CHECK(fit.samples > 10000);
    CHECK(std::abs(fit.p_plus_one - fit.p_plus_one_predicted) <= 3 * fit.p_plus_one_se + 1e-9);
    REQUIRE(fit.tail_empirical.size() == 10);
    for (std::size_t k = 1; k < fit.tail_empirical.size(); ++k) CHECK(fit.tail_empirical[k] <= fit.tail_empirical[k - 1]);
    CHECK_THROWS(phi_increment_fit(recs, hi, hi));
}

TEST_CASE("census csv") {
    std::ostringstream out;
    write_census_header(out, 3);
    CHECK(out.str() == "seed,t,delta,X0,X1,X2,X3,X1g,X1b,Z,Phi,L\n");
    const auto rec = run_walk_exposure(20, 3, biased(StopCondition::edges(5), 1));
    write_census_row(out, 7, colour_snapshot(rec, 5));
    std::string header, row;
    std::istringstream in(out.str());
    std::getline(in, header);
    std::getline(in, row);
    CHECK(row.rfind("7,5,", 0) == 0);
    CHECK(std::count(row.begin(), row.end(), ',') == 11);
}
