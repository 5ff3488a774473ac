#include "edgewalk/sprinkling.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <ostream>
#include <stdexcept>

#include "edgewalk/census.hpp"
#include "edgewalk/rng.hpp"

namespace edgewalk {

std::vector<std::pair<Point, Point>> EquivalenceClass::link_set() const {
    auto out = links;
    std::sort(out.begin(), out.end());
    return out;
}

EquivalenceClass extract_class(const WalkRecord& record, std::uint64_t t) {
    if (record.r == 0) throw std::invalid_argument("extract_class: record has no regular layout");
    const std::size_t k = trajectory_length_at(record, t);
    const auto& x = record.trajectory;
    CensusTracker tracker(regular_offsets(record.n, record.r), record.r);
    for (std::size_t pos = 0; pos < k; pos += 2) tracker.traverse(x[pos], x[pos + 1]);
    auto once = [&](Point p) { return tracker.visits(p) == 1; };

    EquivalenceClass cls;
    cls.n = record.n;
    cls.r = record.r;
    cls.t = t;
    cls.contracted.reserve(k);
    std::size_t j = 0;
    while (j < k) {
        const bool link = j % 2 == 1 && j + 2 < k && once(x[j - 1]) && once(x[j]) && once(x[j + 1]) &&
                          once(x[j + 2]) && tracker.is_green(x[j] / record.r);
        if (link) {
            cls.links.emplace_back(x[j], x[j + 1]);
            cls.link_hosts.push_back(static_cast<std::uint32_t>((cls.contracted.size() - 1) / 2));
            if (j == 1) cls.link_at_start = true;
            j += 2;
            continue;
        }
        cls.contracted.push_back(x[j]);
        ++j;
    }
    for (std::size_t m = 0; 2 * m + 1 < cls.contracted.size(); ++m)
        if (once(cls.contracted[2 * m]) && once(cls.contracted[2 * m + 1]))
            cls.green_steps.push_back(static_cast<std::uint32_t>(m));
    return cls;
}

std::vector<Point> reconstruct_trajectory(const EquivalenceClass& cls) {
    std::vector<Point> out;
    out.reserve(cls.contracted.size() + 2 * cls.links.size());
    std::size_t next_link = 0;
    for (std::size_t m = 0; 2 * m + 1 < cls.contracted.size(); ++m) {
        out.push_back(cls.contracted[2 * m]);
        while (next_link < cls.links.size() && cls.link_hosts[next_link] == m) {
            out.push_back(cls.links[next_link].first);
            out.push_back(cls.links[next_link].second);
            ++next_link;
        }
        out.push_back(cls.contracted[2 * m + 1]);
    }
    return out;
}

WalkProbabilityBreakdown walk_log_probability(const WalkRecord& record, std::uint64_t t) {
    if (!record.exposure) throw std::invalid_argument("walk_log_probability: exposure-mode records only");
    const std::uint32_t r = record.r;
    const double rn = static_cast<double>(record.n) * r;
    const std::size_t k = trajectory_length_at(record, t);
    const auto& x = record.trajectory;

    std::vector<std::uint32_t> red(record.n, r);
    std::vector<char> used(record.n * r, 0);
    WalkProbabilityBreakdown out;
    out.i.assign(r + 1, 0);
    out.t = t;
    double log_p = -std::log(rn);
    std::uint64_t exposures = 0;
    for (std::size_t pos = 0; pos < k; pos += 2) {
        const Point p = x[pos];
        const Point q = x[pos + 1];
        const Vertex v = p / r;
        if (pos > 0) {
            const std::uint32_t c = red[v];
            if (c > 0) {
                if (used[p]) throw std::invalid_argument("walk_log_probability: not a biased walk");
                if (c >= 2) {
                    ++out.i[c];
                    log_p -= std::log(static_cast<double>(c));
                }
            } else {
                ++out.i[r];
                log_p -= std::log(static_cast<double>(r));
            }
        }
        if (!used[p]) {
            log_p -= std::log(rn - 2.0 * static_cast<double>(exposures) - 1.0);
            ++exposures;
            used[p] = used[q] = 1;
            --red[v];
            --red[q / r];
        }
    }
    out.log_probability = log_p;
    return out;
}

WalkRecord resample_walk(const EquivalenceClass& cls, std::uint64_t seed) {
    if (!cls.links.empty() && cls.green_steps.empty())
        throw std::invalid_argument("resample_walk: links present but no green step to host them");
    // Singly linked list over walk points; an urn is identified by the node of
    // its departure point.
    std::vector<Point> point(cls.contracted);
    std::vector<std::uint32_t> next(point.size());
    constexpr std::uint32_t end = 0xffffffffu;
    for (std::size_t i = 0; i < point.size(); ++i) next[i] = i + 1 < point.size() ? static_cast<std::uint32_t>(i + 1) : end;
    std::vector<std::uint32_t> urns;
    urns.reserve(cls.green_steps.size() + cls.links.size());
    for (auto m : cls.green_steps) urns.push_back(2 * m);

    auto rng = make_rng(seed);
    for (const auto& [p, q] : cls.links) {
        const std::uint32_t a = urns[uniform_below(rng, urns.size())];
        const std::uint32_t b = next[a];
        const auto np = static_cast<std::uint32_t>(point.size());
        point.push_back(p);
        point.push_back(q);
        next.push_back(np + 1);
        next.push_back(b);
        next[a] = np;
        urns.push_back(np + 1);
    }
    std::vector<Point> trajectory;
    trajectory.reserve(point.size());
    for (std::uint32_t i = point.empty() ? end : 0; i != end; i = next[i]) trajectory.push_back(point[i]);
    auto rec = replay_exposure_walk(cls.n, cls.r, trajectory, WalkMode::biased);
    rec.seed = seed;
    return rec;
}

std::vector<Vertex> link_vertices(const EquivalenceClass& cls) {
    std::vector<Vertex> out;
    out.reserve(cls.links.size());
    for (const auto& link : cls.links) out.push_back(link.first / cls.r);
    return out;
}

std::uint64_t close_link_pairs(const Multigraph& g, std::span<const Vertex> link_vertices, unsigned omega) {
    const std::uint32_t n = g.vertex_count();
    std::vector<std::uint32_t> count(n, 0);
    for (Vertex v : link_vertices) ++count.at(v);

    constexpr std::uint32_t unseen = 0xffffffffu;
    std::vector<std::uint32_t> dist(n, unseen);
    std::vector<Vertex> touched;
    std::deque<Vertex> queue;
    std::uint64_t ordered = 0;
    for (Vertex s = 0; s < n; ++s) {
        if (count[s] == 0) continue;
        std::uint64_t near = 0;
        dist[s] = 0;
        touched.push_back(s);
        queue.push_back(s);
        while (!queue.empty()) {
            const Vertex v = queue.front();
            queue.pop_front();
            near += count[v];
            if (dist[v] == omega) continue;
            for (Point p = g.first_point(v); p < g.end_point(v); ++p) {
                const Vertex w = g.owner(g.mate(p));
                if (dist[w] != unseen) continue;
                dist[w] = dist[v] + 1;
                touched.push_back(w);
                queue.push_back(w);
            }
        }
        for (Vertex v : touched) dist[v] = unseen;
        touched.clear();
        ordered += count[s] * (near - 1);
    }
    return ordered / 2;
}

Multigraph complete_exposed_graph(const WalkRecord& record, std::uint64_t seed) {
    const std::uint32_t points = record.n * record.r;
    if (record.pairing.size() != points) throw std::invalid_argument("complete_exposed_graph: no exposed pairing");
    std::vector<Point> mate = record.pairing;
    std::vector<Point> free;
    for (Point p = 0; p < points; ++p)
        if (mate[p] == kNoPoint) free.push_back(p);
    auto rng = make_rng(seed);
    for (std::size_t i = free.size(); i > 1; --i) std::swap(free[i - 1], free[uniform_below<std::size_t>(rng, i)]);
    for (std::size_t i = 0; i + 1 < free.size(); i += 2) {
        mate[free[i]] = free[i + 1];
        mate[free[i + 1]] = free[i];
    }
    return Multigraph(regular_offsets(record.n, record.r), std::move(mate));
}

void write_class(std::ostream& out, const EquivalenceClass& cls) {
    for (std::size_t i = 0; i < cls.contracted.size(); ++i)
        out << cls.contracted[i] << (i + 1 == cls.contracted.size() ? "" : " ");
    out << '\n';
    for (std::size_t j = 0; j < cls.links.size(); ++j)
        out << cls.links[j].first << ' ' << cls.links[j].second << ' ' << cls.link_hosts[j] << '\n';
}

}  // namespace edgewalk
