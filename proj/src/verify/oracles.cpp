#include "edgewalk/verify/oracles.hpp"

#include <Eigen/Dense>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace edgewalk::verify {

double first_step_stationary_hitting(const Multigraph& g, Vertex v) {
    const std::uint32_t n = g.vertex_count();
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [a, b] : g.edges()) {
        if (a == b) {
            p(a, a) += 2.0 / g.degree(a);
        } else {
            p(a, b) += 1.0 / g.degree(a);
            p(b, a) += 1.0 / g.degree(b);
        }
    }
    // Unknowns: h(u) for u != v, indexed by skipping v.
    std::vector<Vertex> idx;
    for (Vertex u = 0; u < n; ++u)
        if (u != v) idx.push_back(u);
    const auto m = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) a(i, j) -= p(idx[i], idx[j]);
    const Eigen::VectorXd h = a.fullPivLu().solve(Eigen::VectorXd::Ones(m));
    double total = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) total += g.degree(idx[i]) * h(i);
    return total / g.point_count();
}

std::vector<std::vector<Point>> all_matchings(std::uint32_t points) {
    if (points % 2) throw std::invalid_argument("all_matchings: odd point count");
    std::vector<std::vector<Point>> out;
    std::vector<Point> mate(points, kNoPoint);
    std::function<void()> rec = [&] {
        Point first = 0;
        while (first < points && mate[first] != kNoPoint) ++first;
        if (first == points) {
            out.push_back(mate);
            return;
        }
        for (Point q = first + 1; q < points; ++q) {
            if (mate[q] != kNoPoint) continue;
            mate[first] = q;
            mate[q] = first;
            rec();
            mate[first] = mate[q] = kNoPoint;
        }
    };
    rec();
    return out;
}

MatchingIndex::MatchingIndex(std::uint32_t points) {
    auto all = all_matchings(points);
    for (std::size_t i = 0; i < all.size(); ++i) index_.emplace(std::move(all[i]), i);
}

namespace {

struct Enumerator {
    std::uint32_t n, r, points;
    std::uint64_t t;
    unsigned max_blue;
    std::vector<Point> mate;
    std::vector<Point> traj;
    WalkSpace out;

    std::uint32_t free_count() const {
        std::uint32_t c = 0;
        for (Point p = 0; p < points; ++p) c += mate[p] == kNoPoint;
        return c;
    }

    bool closed_without_red(Vertex v) const {
        std::vector<char> seen(n, 0);
        std::vector<Vertex> stack{v};
        seen[v] = 1;
        while (!stack.empty()) {
            const Vertex u = stack.back();
            stack.pop_back();
            for (Point p = u * r; p < (u + 1) * r; ++p) {
                if (mate[p] == kNoPoint) return false;
                const Vertex w = mate[p] / r;
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        return true;
    }

    // Pair the free point p with each free partner in turn.
    void expose_from(Point p, double prob, std::uint64_t edges, unsigned blue) {
        const double choices = free_count() - 1;
        traj.push_back(p);
        for (Point q = 0; q < points; ++q) {
            if (q == p || mate[q] != kNoPoint) continue;
            mate[p] = q;
            mate[q] = p;
            traj.push_back(q);
            arrive(q / r, prob / choices, edges + 1, blue);
            traj.pop_back();
            mate[p] = mate[q] = kNoPoint;
        }
        traj.pop_back();
    }

    void arrive(Vertex v, double prob, std::uint64_t edges, unsigned blue) {
        if (edges == t) {
            out.walks.push_back({traj, prob});
            return;
        }
        std::vector<Point> red;
        for (Point p = v * r; p < (v + 1) * r; ++p)
            if (mate[p] == kNoPoint) red.push_back(p);
        if (!red.empty()) {
            for (Point p : red) expose_from(p, prob / red.size(), edges, blue);
            return;
        }
        if (closed_without_red(v)) {
            out.trapped_mass += prob;
            return;
        }
        if (blue == max_blue) {
            out.truncated_mass += prob;
            return;
        }
        for (Point p = v * r; p < (v + 1) * r; ++p) {
            traj.push_back(p);
            traj.push_back(mate[p]);
            arrive(mate[p] / r, prob / r, edges, blue + 1);
            traj.pop_back();
            traj.pop_back();
        }
    }
};

}  // namespace

WalkSpace enumerate_biased_walks(std::uint32_t n, std::uint32_t r, std::uint64_t t, unsigned max_blue_steps) {
    const std::uint32_t points = n * r;
    if (points % 2 || points == 0) throw std::invalid_argument("enumerate_biased_walks: rn must be even and positive");
    if (t == 0 || 2 * t > points) throw std::invalid_argument("enumerate_biased_walks: t out of range");
    Enumerator e{n, r, points, t, max_blue_steps, std::vector<Point>(points, kNoPoint), {}, {}};
    for (Point p0 = 0; p0 < points; ++p0) e.expose_from(p0, 1.0 / points, 0, 0);
    return std::move(e.out);
}

std::uint64_t brute_force_cycle_count(const Multigraph& g, unsigned omega) {
    const auto edges = g.edges();
    const std::uint32_t n = g.vertex_count();
    std::vector<std::size_t> chosen;
    std::uint64_t count = 0;

    auto is_cycle = [&] {
        std::vector<unsigned> deg(n, 0);
        std::vector<Vertex> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<Vertex(Vertex)> find = [&](Vertex x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
        for (auto i : chosen) {
            const auto [a, b] = edges[i];
            deg[a] += 1;
            deg[b] += 1;
            parent[find(a)] = find(b);
        }
        Vertex root = n;
        for (Vertex v = 0; v < n; ++v) {
            if (deg[v] == 0) continue;
            if (deg[v] != 2) return false;
            if (root == n) root = find(v);
            else if (find(v) != root) return false;
        }
        return true;
    };

    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (!chosen.empty() && is_cycle()) ++count;
        if (chosen.size() == omega) return;
        for (std::size_t i = from; i < edges.size(); ++i) {
            chosen.push_back(i);
            rec(i + 1);
            chosen.pop_back();
        }
    };
    rec(0);
    return count;
}

std::uint64_t explicit_avoiding_walks(const Multigraph& g, std::span<const Vertex> a, unsigned ell) {
    std::vector<char> blocked(g.vertex_count(), 0);
    for (Vertex v : a) blocked.at(v) = 1;
    std::function<std::uint64_t(Vertex, unsigned)> rec = [&](Vertex v, unsigned left) -> std::uint64_t {
        if (left == 0) return 1;
        std::uint64_t total = 0;
        for (Point p = g.first_point(v); p < g.end_point(v); ++p) {
            const Vertex w = g.owner(g.mate(p));
            if (!blocked[w]) total += rec(w, left - 1);
        }
        return total;
    };
    std::uint64_t total = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!blocked[v]) total += rec(v, ell);
    return total;
}

double tree_return_sum(std::uint32_t r, double stay, unsigned omega) {
    std::vector<double> mass(omega + 2, 0.0), next(omega + 2, 0.0);
    mass[0] = 1.0;
    double sum = 1.0;
    const double up = 1.0 / r;
    for (unsigned tau = 1; tau <= omega; ++tau) {
        std::fill(next.begin(), next.end(), 0.0);
        next[0] += mass[0] * stay;
        next[1] += mass[0] * (1.0 - stay);
        for (unsigned d = 1; d + 1 < mass.size(); ++d) {
            next[d - 1] += mass[d] * up;
            next[d + 1] += mass[d] * (1.0 - up);
        }
        mass.swap(next);
        sum += mass[0];
    }
    return sum;
}

}  // namespace edgewalk::verify
