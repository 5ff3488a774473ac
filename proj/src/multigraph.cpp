#include "edgewalk/multigraph.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "edgewalk/rng.hpp"

namespace edgewalk {

Multigraph::Multigraph(std::vector<std::uint32_t> offsets, std::vector<Point> mate)
    : offsets_(std::move(offsets)), mate_(std::move(mate)) {
    if (offsets_.empty() || offsets_.front() != 0 || offsets_.back() != mate_.size())
        throw std::invalid_argument("Multigraph: offsets do not cover the point set");
    const auto points = static_cast<Point>(mate_.size());
    for (Point p = 0; p < points; ++p) {
        const Point q = mate_[p];
        if (q >= points || q == p || mate_[q] != p)
            throw std::invalid_argument("Multigraph: pairing is not a fixed-point-free involution");
    }
    owner_.resize(points);
    const std::uint32_t n = vertex_count();
    std::uint32_t common = n > 0 ? degree(0) : 0;
    for (Vertex v = 0; v < n; ++v) {
        if (offsets_[v + 1] < offsets_[v]) throw std::invalid_argument("Multigraph: offsets must be non-decreasing");
        if (degree(v) != common) common = 0;
        std::fill(owner_.begin() + offsets_[v], owner_.begin() + offsets_[v + 1], v);
    }
    regular_degree_ = common;
}

Multigraph Multigraph::configuration_model(std::uint32_t n, std::uint32_t r, std::uint64_t seed) {
    if (n == 0 || r == 0) throw std::invalid_argument("configuration_model: n and r must be positive");
    const std::uint64_t total = std::uint64_t{n} * r;
    if (total % 2 != 0) throw std::invalid_argument("configuration_model: rn must be even");
    if (total >= kNoPoint) throw std::invalid_argument("configuration_model: too many points");

    std::vector<Point> order(total);
    std::iota(order.begin(), order.end(), Point{0});
    auto rng = make_rng(seed);
    for (std::size_t i = order.size() - 1; i > 0; --i) {
        const auto j = uniform_below<std::size_t>(rng, i + 1);
        std::swap(order[i], order[j]);
    }
    std::vector<Point> mate(total);
    for (std::size_t i = 0; i < order.size(); i += 2) {
        mate[order[i]] = order[i + 1];
        mate[order[i + 1]] = order[i];
    }
    std::vector<std::uint32_t> offsets(n + 1);
    for (std::uint32_t v = 0; v <= n; ++v) offsets[v] = v * r;
    return Multigraph(std::move(offsets), std::move(mate));
}

Multigraph Multigraph::from_edges(std::uint32_t n, std::span<const std::pair<Vertex, Vertex>> edges) {
    std::vector<std::uint32_t> offsets(n + 1, 0);
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n) throw std::invalid_argument("from_edges: vertex out of range");
        ++offsets[u + 1];
        ++offsets[v + 1];
    }
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
    std::vector<Point> mate(offsets.back());
    for (const auto& [u, v] : edges) {
        const Point p = cursor[u]++;
        const Point q = cursor[v]++;
        mate[p] = q;
        mate[q] = p;
    }
    return Multigraph(std::move(offsets), std::move(mate));
}

std::vector<std::pair<Vertex, Vertex>> Multigraph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edge_count());
    for (Point p = 0; p < point_count(); ++p)
        if (p < mate_[p]) out.emplace_back(owner_[p], owner_[mate_[p]]);
    return out;
}

std::vector<std::pair<Vertex, Vertex>> Multigraph::edge_multiset() const {
    auto out = edges();
    for (auto& [u, v] : out)
        if (u > v) std::swap(u, v);
    std::sort(out.begin(), out.end());
    return out;
}

bool is_simple(const Multigraph& g) {
    std::vector<Vertex> seen_from(g.vertex_count(), kNoPoint);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        for (Point p = g.first_point(v); p < g.end_point(v); ++p) {
            const Vertex w = g.owner(g.mate(p));
            if (w == v || seen_from[w] == v) return false;
            seen_from[w] = v;
        }
    }
    return true;
}

namespace {

struct CycleSearch {
    const Multigraph& g;
    unsigned omega;
    Vertex start = 0;
    std::vector<char> on_path;
    std::uint64_t closed = 0;

    // `arrival` is the point through which we entered `v`; `length` counts the
    // edges on the current path.
    void extend(Vertex v, Point arrival, unsigned length) {
        for (Point p = g.first_point(v); p < g.end_point(v); ++p) {
            if (p == arrival) continue;
            const Point q = g.mate(p);
            const Vertex w = g.owner(q);
            if (w == v) continue;
            if (w == start) {
                if (length >= 2 && length + 1 <= omega) ++closed;
                continue;
            }
            if (w < start || on_path[w] || length + 1 >= omega) continue;
            on_path[w] = 1;
            extend(w, q, length + 1);
            on_path[w] = 0;
        }
    }
};

}  // namespace

std::uint64_t count_short_cycles(const Multigraph& g, unsigned omega) {
    if (omega == 0) return 0;
    std::uint64_t loops = 0;
    for (Point p = 0; p < g.point_count(); ++p)
        if (p < g.mate(p) && g.owner(p) == g.owner(g.mate(p))) ++loops;
    if (omega == 1) return loops;

    std::uint64_t digons = 0;
    auto edges = g.edge_multiset();
    for (std::size_t i = 0; i < edges.size();) {
        std::size_t j = i;
        while (j < edges.size() && edges[j] == edges[i]) ++j;
        const std::uint64_t m = j - i;
        if (edges[i].first != edges[i].second) digons += m * (m - 1) / 2;
        i = j;
    }
    if (omega == 2) return loops + digons;

    CycleSearch search{g, omega, 0, std::vector<char>(g.vertex_count(), 0), 0};
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        search.start = s;
        search.on_path[s] = 1;
        search.extend(s, kNoPoint, 0);
        search.on_path[s] = 0;
    }
    // Every cycle of length >= 3 is found once per orientation.
    return loops + digons + search.closed / 2;
}

namespace {

std::vector<Vertex> normalized_set(const Multigraph& g, std::span<const Vertex> s) {
    std::vector<Vertex> out(s.begin(), s.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (!out.empty() && out.back() >= g.vertex_count()) throw std::invalid_argument("vertex out of range");
    return out;
}

}  // namespace

ContractedGraph contract(const Multigraph& g, std::span<const Vertex> s) {
    auto members = normalized_set(g, s);
    if (members.empty()) throw std::invalid_argument("contract: the contracted set must be nonempty");
    const std::uint32_t n = g.vertex_count();
    std::vector<char> in_set(n, 0);
    for (Vertex v : members) in_set[v] = 1;

    const auto supernode = static_cast<Vertex>(n - members.size());
    std::vector<Vertex> map(n);
    Vertex next = 0;
    for (Vertex v = 0; v < n; ++v) map[v] = in_set[v] ? supernode : next++;

    auto edges = g.edges();
    for (auto& [u, v] : edges) {
        u = map[u];
        v = map[v];
    }
    ContractedGraph out;
    out.graph = Multigraph::from_edges(supernode + 1, edges);
    out.supernode = supernode;
    out.members = std::move(members);
    out.vertex_map = std::move(map);
    return out;
}

std::vector<std::uint32_t> distances_from(const Multigraph& g, std::span<const Vertex> s,
                                          std::uint32_t max_depth) {
    constexpr std::uint32_t unreached = 0xffffffffu;
    std::vector<std::uint32_t> dist(g.vertex_count(), unreached);
    std::deque<Vertex> queue;
    for (Vertex v : s) {
        if (v >= g.vertex_count()) throw std::invalid_argument("vertex out of range");
        if (dist[v] != 0) {
            dist[v] = 0;
            queue.push_back(v);
        }
    }
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        if (dist[v] >= max_depth) continue;
        for (Point p = g.first_point(v); p < g.end_point(v); ++p) {
            const Vertex w = g.owner(g.mate(p));
            if (dist[w] == unreached) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

std::vector<Vertex> sphere(const Multigraph& g, std::span<const Vertex> s, unsigned d) {
    const auto dist = distances_from(g, s, d);
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (dist[v] == d) out.push_back(v);
    return out;
}

bool is_connected(const Multigraph& g) {
    if (g.vertex_count() == 0) return true;
    const Vertex root = 0;
    const auto dist = distances_from(g, std::span<const Vertex>(&root, 1));
    return std::none_of(dist.begin(), dist.end(), [](std::uint32_t d) { return d == 0xffffffffu; });
}

void write_edge_list(std::ostream& out, const Multigraph& g) {
    out << g.vertex_count() << ' ' << g.regular_degree() << '\n';
    for (const auto& [u, v] : g.edge_multiset()) out << u << ' ' << v << '\n';
}

Multigraph read_edge_list(std::istream& in) {
    std::string line;
    std::uint64_t n = 0, r = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream header(line);
        if (!(header >> n >> r)) throw std::invalid_argument("edge list: malformed header");
        break;
    }
    std::vector<std::pair<Vertex, Vertex>> edges;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::uint64_t u = 0, v = 0;
        if (!(row >> u >> v)) throw std::invalid_argument("edge list: malformed line '" + line + "'");
        if (u >= n || v >= n) throw std::invalid_argument("edge list: vertex out of range");
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    auto g = Multigraph::from_edges(static_cast<std::uint32_t>(n), edges);
    if (r != 0)
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            if (g.degree(v) != r) throw std::invalid_argument("edge list: degree does not match header");
    return g;
}

}  // namespace edgewalk
