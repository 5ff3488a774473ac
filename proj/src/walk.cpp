#include "edgewalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <ostream>
#include <stdexcept>
#include <string>

namespace edgewalk {

std::string_view to_string(WalkMode mode) {
    switch (mode) {
        case WalkMode::biased: return "biased";
        case WalkMode::simple: return "simple";
        case WalkMode::non_backtracking: return "nonbacktracking";
    }
    return "unknown";
}

WalkMode parse_walk_mode(std::string_view text) {
    if (text == "biased") return WalkMode::biased;
    if (text == "simple") return WalkMode::simple;
    if (text == "nonbacktracking" || text == "non-backtracking" || text == "non_backtracking")
        return WalkMode::non_backtracking;
    throw std::invalid_argument("unknown walk mode '" + std::string(text) + "'");
}

StopCondition parse_stop_condition(std::string_view text) {
    if (text == "cover") return StopCondition::cover();
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("bad stop condition '" + std::string(text) + "'");
    const auto kind = text.substr(0, colon);
    const auto value = std::stoull(std::string(text.substr(colon + 1)));
    if (kind == "edges") return StopCondition::edges(value);
    if (kind == "vertices") return StopCondition::vertices(value);
    throw std::invalid_argument("bad stop condition '" + std::string(text) + "'");
}

std::uint64_t WalkRecord::milestone(std::uint64_t t) const {
    if (t == 0 || t > milestones.size()) throw std::out_of_range("milestone: t outside recorded range");
    return milestones[t - 1];
}

Exposure::Exposure(std::uint32_t point_count)
    : mate_(point_count, kNoPoint), free_(point_count), free_pos_(point_count) {
    for (Point p = 0; p < point_count; ++p) {
        free_[p] = p;
        free_pos_[p] = p;
    }
}

void Exposure::remove_free(Point p) {
    const std::uint32_t i = free_pos_[p];
    const Point last = free_.back();
    free_[i] = last;
    free_pos_[last] = i;
    free_.pop_back();
}

std::optional<Point> Exposure::expose(Point current, Rng& rng) {
    if (!is_free(current)) throw std::logic_error("expose: point already paired");
    if (free_.size() < 2) return std::nullopt;
    remove_free(current);
    const Point partner = free_[uniform_below<std::size_t>(rng, free_.size())];
    remove_free(partner);
    mate_[current] = partner;
    mate_[partner] = current;
    return partner;
}

void Exposure::complete(Rng& rng) {
    while (free_.size() >= 2) expose(free_.back(), rng);
}

RedPointSets::RedPointSets(const std::vector<std::uint32_t>& offsets)
    : offsets_(offsets), owner_(offsets.back()), slot_(offsets.back()), pos_(offsets.back()),
      count_(offsets.size() - 1) {
    for (Vertex v = 0; v + 1 < offsets_.size(); ++v) {
        count_[v] = offsets_[v + 1] - offsets_[v];
        for (Point p = offsets_[v]; p < offsets_[v + 1]; ++p) owner_[p] = v;
    }
    for (Point p = 0; p < slot_.size(); ++p) {
        slot_[p] = p;
        pos_[p] = p;
    }
}

void RedPointSets::mark_visited(Point p) {
    const Vertex v = owner_[p];
    const std::uint32_t i = pos_[p];
    const std::uint32_t end = offsets_[v] + count_[v];
    if (i >= end) return;
    const Point last = slot_[end - 1];
    slot_[i] = last;
    pos_[last] = i;
    slot_[end - 1] = p;
    pos_[p] = end - 1;
    --count_[v];
}

namespace {

Point choose_biased(const RedPointSets& red, Point first, std::uint32_t degree, Vertex v, Rng& rng) {
    const std::uint32_t k = red.red_count(v);
    if (k > 0) return red.red_point(v, uniform_below(rng, k));
    return first + uniform_below(rng, degree);
}

}  // namespace

Move step_biased(const Multigraph& g, RedPointSets& red, Vertex v, Rng& rng) {
    const Point p = choose_biased(red, g.first_point(v), g.degree(v), v, rng);
    const bool fresh = red.is_red(p);
    const Point q = g.mate(p);
    if (fresh) {
        red.mark_visited(p);
        red.mark_visited(q);
    }
    return {p, q, fresh};
}

namespace {

struct FixedSource {
    const Multigraph& g;
    Point partner(Point p, bool, Rng&) const { return g.mate(p); }
    bool paired(Point) const { return true; }
    Point known_mate(Point p) const { return g.mate(p); }
};

struct ExposureSource {
    Exposure& exposure;
    Point partner(Point p, bool fresh, Rng& rng) const {
        if (!fresh) return exposure.mate(p);
        return *exposure.expose(p, rng);
    }
    bool paired(Point p) const { return !exposure.is_free(p); }
    Point known_mate(Point p) const { return exposure.mate(p); }
};

bool stop_reached(const StopCondition& stop, const WalkRecord& rec, std::uint64_t total_edges,
                  std::uint32_t n) {
    switch (stop.kind) {
        case StopCondition::Kind::edges: return rec.edges_discovered() >= stop.target;
        case StopCondition::Kind::vertices: return rec.vertices_seen() >= stop.target;
        case StopCondition::Kind::cover:
            return rec.edges_discovered() >= total_edges && rec.vertices_seen() >= n;
    }
    return true;
}

std::uint64_t step_budget(double factor, std::uint32_t n, std::uint32_t points) {
    const double nominal = factor * n * std::log(std::max<double>(n, 1.0));
    return std::max<std::uint64_t>(static_cast<std::uint64_t>(nominal), 100ULL * points);
}

// The walk is trapped when nothing reachable from v, through edges it could
// still traverse, carries a red point.
template <class Source>
bool trapped(const std::vector<std::uint32_t>& offsets, const RedPointSets& red, const Source& source,
             Vertex v) {
    std::vector<char> seen(offsets.size() - 1, 0);
    std::deque<Vertex> queue{v};
    seen[v] = 1;
    while (!queue.empty()) {
        const Vertex u = queue.front();
        queue.pop_front();
        if (red.red_count(u) > 0) return false;
        for (Point p = offsets[u]; p < offsets[u + 1]; ++p) {
            if (!source.paired(p)) continue;
            const Vertex w = red.owner(source.known_mate(p));
            if (!seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
        }
    }
    return true;
}

template <class Source>
void walk_kernel(const std::vector<std::uint32_t>& offsets, Source& source, Vertex start,
                 const WalkOptions& options, Rng& rng, WalkRecord& rec) {
    const auto n = static_cast<std::uint32_t>(offsets.size() - 1);
    const std::uint32_t points = offsets.back();
    const std::uint64_t total_edges = points / 2;
    const std::uint64_t budget = step_budget(options.budget_factor, n, points);
    const std::uint64_t trap_check_interval = 4ULL * n + 64;

    RedPointSets red(offsets);
    std::vector<std::uint32_t> edge_of_point(points, kNoPoint);
    std::vector<char> seen(n, 0);

    rec.start_vertex = start;
    seen[start] = 1;
    rec.vertex_milestones.push_back(0);
    if (n == 1) rec.vertex_cover = 0;

    Vertex v = start;
    Point arrival = kNoPoint;
    std::uint64_t blue_run = 0;

    while (!stop_reached(options.stop, rec, total_edges, n)) {
        const Point first = offsets[v];
        const std::uint32_t degree = offsets[v + 1] - first;
        Point p = kNoPoint;
        switch (options.mode) {
            case WalkMode::biased: p = choose_biased(red, first, degree, v, rng); break;
            case WalkMode::simple: p = first + uniform_below(rng, degree); break;
            case WalkMode::non_backtracking: {
                // Exclude the edge just used; for a loop that is both of its points.
                const Point loop_end =
                    (arrival != kNoPoint && red.owner(source.known_mate(arrival)) == v) ? source.known_mate(arrival)
                                                                                          : kNoPoint;
                const std::uint32_t excluded = (arrival != kNoPoint) + (loop_end != kNoPoint);
                if (excluded >= degree) {
                    p = first + uniform_below(rng, degree);
                    break;
                }
                do {
                    p = first + uniform_below(rng, degree);
                } while (p == arrival || p == loop_end);
                break;
            }
        }

        const bool fresh = red.is_red(p);
        const Point q = source.partner(p, fresh, rng);
        if (fresh) {
            red.mark_visited(p);
            red.mark_visited(q);
            const auto id = static_cast<std::uint32_t>(rec.discovered_edges.size());
            edge_of_point[p] = id;
            edge_of_point[q] = id;
            rec.milestones.push_back(rec.steps);
            rec.discovered_edges.emplace_back(p, q);
            rec.edge_visits.push_back(0);
        }
        ++rec.edge_visits[edge_of_point[p]];
        if (options.record_trajectory) {
            rec.trajectory.push_back(p);
            rec.trajectory.push_back(q);
        }
        ++rec.steps;

        const Vertex w = red.owner(q);
        if (!seen[w]) {
            seen[w] = 1;
            rec.vertex_milestones.push_back(rec.steps);
            if (rec.vertex_milestones.size() == n) rec.vertex_cover = rec.steps;
        }
        if (fresh && rec.discovered_edges.size() == total_edges) rec.edge_cover = rec.steps;
        v = w;
        arrival = q;

        if (rec.steps >= budget && !stop_reached(options.stop, rec, total_edges, n)) {
            rec.stop_reason = StopReason::budget;
            break;
        }
        if (red.red_count(v) == 0) {
            if (++blue_run % trap_check_interval == 0 && trapped(offsets, red, source, v) &&
                !stop_reached(options.stop, rec, total_edges, n)) {
                rec.stop_reason = StopReason::trapped;
                break;
            }
        } else {
            blue_run = 0;
        }
    }
}

}  // namespace

WalkRecord run_walk(const Multigraph& g, const WalkOptions& options) {
    if (g.vertex_count() == 0) throw std::invalid_argument("run_walk: empty graph");
    WalkRecord rec;
    rec.mode = options.mode;
    rec.exposure = false;
    rec.n = g.vertex_count();
    rec.r = g.regular_degree();
    rec.seed = options.seed;
    auto rng = make_rng(options.seed);
    const Vertex start = uniform_below(rng, g.vertex_count());
    FixedSource source{g};
    walk_kernel(g.offsets(), source, start, options, rng, rec);
    return rec;
}

WalkRecord run_walk_exposure(std::uint32_t n, std::uint32_t r, const WalkOptions& options) {
    if (n == 0 || r == 0) throw std::invalid_argument("run_walk_exposure: n and r must be positive");
    if ((std::uint64_t{n} * r) % 2 != 0) throw std::invalid_argument("run_walk_exposure: rn must be even");
    WalkRecord rec;
    rec.mode = options.mode;
    rec.exposure = true;
    rec.n = n;
    rec.r = r;
    rec.seed = options.seed;
    std::vector<std::uint32_t> offsets(n + 1);
    for (std::uint32_t v = 0; v <= n; ++v) offsets[v] = v * r;
    auto rng = make_rng(options.seed);
    // A uniform start point is a uniform start vertex followed by a uniform
    // choice among its r (all red) points, which the kernel makes itself.
    const Vertex start = uniform_below(rng, n);
    Exposure exposure(n * r);
    ExposureSource source{exposure};
    walk_kernel(offsets, source, start, options, rng, rec);
    rec.pairing = exposure.pairing();
    return rec;
}

WalkRecord replay_exposure_walk(std::uint32_t n, std::uint32_t r, std::span<const Point> trajectory,
                                WalkMode mode) {
    if (trajectory.size() % 2 != 0) throw std::invalid_argument("replay: trajectory must have even length");
    const std::uint32_t points = n * r;
    WalkRecord rec;
    rec.mode = mode;
    rec.exposure = true;
    rec.n = n;
    rec.r = r;
    rec.pairing.assign(points, kNoPoint);
    if (trajectory.empty()) return rec;

    std::vector<std::uint32_t> offsets(n + 1);
    for (std::uint32_t v = 0; v <= n; ++v) offsets[v] = v * r;
    RedPointSets red(offsets);
    std::vector<std::uint32_t> edge_of_point(points, kNoPoint);
    std::vector<char> seen(n, 0);

    Vertex v = trajectory[0] / r;
    rec.start_vertex = v;
    seen[v] = 1;
    rec.vertex_milestones.push_back(0);
    Point arrival = kNoPoint;
    for (std::size_t i = 0; i < trajectory.size(); i += 2) {
        const Point p = trajectory[i];
        const Point q = trajectory[i + 1];
        if (p >= points || q >= points || p / r != v) throw std::invalid_argument("replay: departure not at current vertex");
        const bool fresh = rec.pairing[p] == kNoPoint;
        if (mode == WalkMode::biased && !fresh && red.red_count(v) > 0)
            throw std::invalid_argument("replay: biased walk ignored an unvisited edge");
        if (mode == WalkMode::non_backtracking && arrival != kNoPoint && (p == arrival || p == rec.pairing[arrival]) &&
            r > 2)
            throw std::invalid_argument("replay: non-backtracking walk reused its edge");
        if (fresh) {
            if (q == p || rec.pairing[q] != kNoPoint) throw std::invalid_argument("replay: invalid exposure partner");
            rec.pairing[p] = q;
            rec.pairing[q] = p;
            red.mark_visited(p);
            red.mark_visited(q);
            const auto id = static_cast<std::uint32_t>(rec.discovered_edges.size());
            edge_of_point[p] = id;
            edge_of_point[q] = id;
            rec.milestones.push_back(rec.steps);
            rec.discovered_edges.emplace_back(p, q);
            rec.edge_visits.push_back(0);
        } else if (rec.pairing[p] != q) {
            throw std::invalid_argument("replay: traversal disagrees with exposed pairing");
        }
        ++rec.edge_visits[edge_of_point[p]];
        rec.trajectory.push_back(p);
        rec.trajectory.push_back(q);
        ++rec.steps;
        v = q / r;
        arrival = q;
        if (!seen[v]) {
            seen[v] = 1;
            rec.vertex_milestones.push_back(rec.steps);
            if (rec.vertex_milestones.size() == n) rec.vertex_cover = rec.steps;
        }
        if (fresh && rec.discovered_edges.size() == points / 2) rec.edge_cover = rec.steps;
    }
    return rec;
}

std::uint64_t increment_sample(const WalkRecord& record, std::uint64_t t) {
    if (t == 0 || t + 1 > record.edges_discovered())
        throw std::out_of_range("increment_sample: t + 1 beyond recorded milestones");
    return record.milestones[t] - record.milestones[t - 1];
}

std::size_t trajectory_length_at(const WalkRecord& record, std::uint64_t t) {
    if (t == 0) return 0;
    const std::size_t length = 2 * (record.milestone(t) + 1);
    if (length > record.trajectory.size()) throw std::out_of_range("trajectory not recorded up to edge t");
    return length;
}

void write_walk_record(std::ostream& out, const WalkRecord& record, bool include_trajectory) {
    out << to_string(record.mode) << ' ' << record.n << ' ' << record.r << ' ' << record.seed << '\n';
    for (std::size_t t = 0; t < record.milestones.size(); ++t) out << (t + 1) << ' ' << record.milestones[t] << '\n';
    if (include_trajectory) {
        out << "trajectory " << record.trajectory.size() << '\n';
        for (std::size_t i = 0; i < record.trajectory.size(); ++i)
            out << record.trajectory[i] << (i + 1 == record.trajectory.size() ? '\n' : ' ');
    }
}

}  // namespace edgewalk
