#include "edgewalk/census.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace edgewalk {

CensusTracker::CensusTracker(std::vector<std::uint32_t> offsets, std::uint32_t r)
    : offsets_(std::move(offsets)), r_(r) {
    const auto n = static_cast<std::uint32_t>(offsets_.size() - 1);
    points_total_ = offsets_.back();
    owner_.resize(points_total_);
    red_.resize(n);
    blue_points_.assign(n, 0);
    point_visits_.assign(points_total_, 0);
    x_.assign(r_ + 1, 0);
    for (Vertex v = 0; v < n; ++v) {
        const std::uint32_t d = offsets_[v + 1] - offsets_[v];
        if (d > r_) throw std::invalid_argument("CensusTracker: degree above r");
        red_[v] = d;
        ++x_[d];
        for (Point p = offsets_[v]; p < offsets_[v + 1]; ++p) owner_[p] = v;
    }
}

void CensusTracker::remove(Vertex v) {
    --x_[red_[v]];
    if (is_green(v)) --x1_green_;
}

void CensusTracker::add(Vertex v) {
    ++x_[red_[v]];
    if (is_green(v)) ++x1_green_;
}

void CensusTracker::traverse(Point p, Point q) {
    const Vertex a = owner_[p];
    const Vertex b = owner_[q];
    remove(a);
    if (b != a) remove(b);
    const std::uint32_t before = point_visits_[p];
    if (before == 0) {
        --red_[a];
        --red_[b];
        ++phi_;
        ++edges_found_;
    } else if (before == 1) {
        --phi_;
        ++blue_points_[a];
        ++blue_points_[b];
    }
    ++point_visits_[p];
    ++point_visits_[q];
    add(a);
    if (b != a) add(b);
}

ColourSnapshot CensusTracker::snapshot() const {
    ColourSnapshot s;
    s.t = edges_found_;
    s.delta = points_total_ ? 1.0 - 2.0 * static_cast<double>(edges_found_) / static_cast<double>(points_total_) : 0.0;
    s.x = x_;
    s.x1_green = x1_green_;
    s.x1_blue = x_.size() > 1 ? x_[1] - x1_green_ : 0;
    s.z = s.x1_blue;
    for (std::size_t i = 2; i < x_.size(); ++i) s.z += x_[i];
    s.phi = phi_;
    s.links = 0.5 * (static_cast<double>(r_) - 1.0) * static_cast<double>(x1_green_);
    return s;
}

std::vector<std::uint32_t> regular_offsets(std::uint32_t n, std::uint32_t r) {
    std::vector<std::uint32_t> offsets(n + 1);
    for (std::uint32_t v = 0; v <= n; ++v) offsets[v] = v * r;
    return offsets;
}

namespace {

std::uint32_t max_degree(const std::vector<std::uint32_t>& offsets) {
    std::uint32_t d = 0;
    for (std::size_t v = 0; v + 1 < offsets.size(); ++v) d = std::max(d, offsets[v + 1] - offsets[v]);
    return d;
}

}  // namespace

std::vector<ColourSnapshot> colour_snapshots(const WalkRecord& record, const std::vector<std::uint32_t>& offsets,
                                             std::span<const std::uint64_t> ts) {
    CensusTracker tracker(offsets, record.r ? record.r : max_degree(offsets));
    std::vector<ColourSnapshot> out;
    out.reserve(ts.size());
    std::size_t pos = 0;
    for (const std::uint64_t t : ts) {
        if (!out.empty() && t < out.back().t) throw std::invalid_argument("colour_snapshots: times must increase");
        const std::size_t end = trajectory_length_at(record, t);
        for (; pos < end; pos += 2) tracker.traverse(record.trajectory[pos], record.trajectory[pos + 1]);
        out.push_back(tracker.snapshot());
    }
    return out;
}

ColourSnapshot colour_snapshot(const WalkRecord& record, std::uint64_t t) {
    const std::uint64_t ts[] = {t};
    return colour_snapshots(record, regular_offsets(record.n, record.r), ts).front();
}

ColourSnapshot colour_snapshot(const WalkRecord& record, const Multigraph& g, std::uint64_t t) {
    const std::uint64_t ts[] = {t};
    return colour_snapshots(record, g.offsets(), ts).front();
}

std::vector<Vertex> unvisited_edge_vertices(const WalkRecord& record, const std::vector<std::uint32_t>& offsets,
                                            std::uint64_t t) {
    CensusTracker tracker(offsets, record.r ? record.r : max_degree(offsets));
    const std::size_t end = trajectory_length_at(record, t);
    for (std::size_t pos = 0; pos < end; pos += 2) tracker.traverse(record.trajectory[pos], record.trajectory[pos + 1]);
    std::vector<Vertex> out;
    for (Vertex v = 0; v + 1 < offsets.size(); ++v)
        if (tracker.red_points(v) > 0) out.push_back(v);
    return out;
}

std::vector<HistoryVector> history_vectors(const WalkRecord& record, const std::vector<std::uint32_t>& offsets,
                                           std::uint64_t t) {
    const auto n = offsets.size() - 1;
    std::vector<Vertex> owner(offsets.back());
    for (Vertex v = 0; v < n; ++v)
        for (Point p = offsets[v]; p < offsets[v + 1]; ++p) owner[p] = v;

    std::vector<HistoryVector> out(n);
    const std::size_t end = trajectory_length_at(record, t);
    if (end == 0) return out;
    std::vector<char> used(offsets.back(), 0);
    auto consume = [&](Point p) -> std::uint8_t {
        if (used[p]) return 0;
        used[p] = 1;
        return 1;
    };
    const auto& x = record.trajectory;
    // Points are consumed in pairs: departure x_{2k}, arrival x_{2k+1}. A visit
    // is x_{2k+1} together with x_{2k+2}.
    if (const std::uint8_t c = consume(x[0])) out[owner[x[0]]].push_back(c);
    for (std::size_t i = 1; i < end; i += 2) {
        std::uint8_t c = consume(x[i]);
        if (i + 1 < end) c += consume(x[i + 1]);
        if (c) out[owner[x[i]]].push_back(c);
    }
    return out;
}

namespace {

void extend_L(std::uint32_t budget, HistoryVector& cur, std::vector<HistoryVector>& out) {
    out.push_back(cur);
    for (std::uint8_t step : {std::uint8_t{1}, std::uint8_t{2}}) {
        if (step > budget) continue;
        cur.push_back(step);
        extend_L(budget - step, cur, out);
        cur.pop_back();
    }
}

}  // namespace

bool in_L(const HistoryVector& l, std::uint32_t r) {
    std::uint32_t sum = 0;
    bool all_two = true;
    for (auto e : l) {
        if (e != 1 && e != 2) return false;
        sum += e;
        all_two = all_two && e == 2;
    }
    if (sum > r - 1) return false;
    return !(all_two && 2 * l.size() == r - 1);
}

std::vector<HistoryVector> enumerate_L(std::uint32_t r) {
    if (r < 3 || r % 2 == 0) throw std::invalid_argument("enumerate_L: r must be odd and at least 3");
    std::vector<HistoryVector> all;
    HistoryVector cur;
    extend_L(r - 1, cur, all);
    std::erase_if(all, [r](const HistoryVector& l) { return !in_L(l, r); });
    return all;
}

std::uint64_t t_for_delta(std::uint32_t n, std::uint32_t r, double delta) {
    const double half = 0.5 * static_cast<double>(n) * r;
    const double t = std::floor((1.0 - delta) * half);
    return static_cast<std::uint64_t>(std::clamp(t, 0.0, half));
}

double delta_for_t(std::uint32_t n, std::uint32_t r, std::uint64_t t) {
    return 1.0 - 2.0 * static_cast<double>(t) / (static_cast<double>(n) * r);
}

DeltaSchedule delta_schedule(std::uint32_t n, std::uint32_t r) {
    if (n < 3) throw std::invalid_argument("delta_schedule: n must be at least 3");
    const double ln = std::log(static_cast<double>(n));
    DeltaSchedule s{};
    s.delta[0] = 1.0 / std::log(ln);
    s.delta[1] = 1.0 / std::sqrt(ln);
    s.delta[2] = 1.0 / (ln * ln);
    s.delta[3] = std::pow(static_cast<double>(n), -0.75);
    s.delta[4] = ln / n;
    for (int i = 0; i < 5; ++i) s.t[i] = t_for_delta(n, r, s.delta[i]);
    return s;
}

double exact_unvisited_probability(std::uint32_t n, std::uint32_t r, std::uint64_t t, std::uint32_t m) {
    if (m == 0 || m > n) throw std::invalid_argument("exact_unvisited_probability: need 1 <= m <= n");
    if (m == n) return 0.0;
    const double rn = static_cast<double>(n) * r;
    double log_p = std::log1p(-static_cast<double>(m) / n);
    for (std::uint64_t s = 0; s <= t; ++s) {
        const double free = rn - 2.0 * static_cast<double>(s) - 1.0;
        const double ratio = static_cast<double>(r) * m / free;
        if (free <= 0.0 || ratio >= 1.0) return 0.0;
        log_p += std::log1p(-ratio);
    }
    return std::exp(log_p);
}

PhiIncrementFit phi_increment_fit(std::span<const WalkRecord> records, std::uint64_t t_lo, std::uint64_t t_hi,
                                  unsigned kmax) {
    if (t_hi <= t_lo) throw std::invalid_argument("phi_increment_fit: empty window");
    PhiIncrementFit fit;
    fit.tail_empirical.assign(kmax, 0.0);
    fit.tail_geometric.assign(kmax, 0.0);
    std::uint64_t plus_one = 0;
    double predicted = 0.0;

    for (const auto& rec : records) {
        if (!rec.exposure) throw std::invalid_argument("phi_increment_fit: exposure-mode records only");
        if (rec.edges_discovered() < t_hi || rec.trajectory.size() < 2 * (rec.milestone(t_hi) + 1))
            throw std::invalid_argument("phi_increment_fit: record does not cover the window");
        CensusTracker tracker(regular_offsets(rec.n, rec.r), rec.r);
        const double rn = static_cast<double>(rec.n) * rec.r;
        const double half_r = 0.5 * (rec.r - 1.0);

        bool open = false;
        double phi_start = 0.0, p_ok = 0.0, survive = 0.0;
        const std::size_t end = 2 * (rec.milestone(t_hi) + 1);
        for (std::size_t pos = 0; pos < end; pos += 2) {
            const Point p = rec.trajectory[pos];
            if (tracker.visits(p) == 0) {
                const std::uint64_t t = tracker.edges_found() + 1;
                const double phi = static_cast<double>(tracker.phi());
                if (open) {
                    const double delta_phi = phi - phi_start;
                    const double drop = 1.0 - delta_phi;
                    ++fit.samples;
                    if (delta_phi == 1.0) ++plus_one;
                    predicted += p_ok;
                    double geo = 1.0;
                    for (unsigned k = 1; k <= kmax; ++k) {
                        if (drop >= k) fit.tail_empirical[k - 1] += 1.0;
                        fit.tail_geometric[k - 1] += geo;
                        geo *= survive;
                    }
                    open = false;
                }
                if (t >= t_lo && t < t_hi) {
                    const std::uint32_t cur_red = tracker.red_points(tracker.owner(p));
                    const double bad = static_cast<double>(tracker.x(1)) - (cur_red == 1) + (cur_red == 2);
                    const double others = rn - 2.0 * static_cast<double>(t) + 1.0;
                    p_ok = 1.0 - bad / others;
                    const double links = half_r * static_cast<double>(tracker.x1_green());
                    survive = phi > 0.0 ? std::max(0.0, 1.0 - links / phi) : 0.0;
                    phi_start = phi;
                    open = true;
                }
            }
            tracker.traverse(p, rec.trajectory[pos + 1]);
        }
    }
    if (fit.samples == 0) throw std::invalid_argument("phi_increment_fit: no samples in window");
    const double s = static_cast<double>(fit.samples);
    fit.p_plus_one = static_cast<double>(plus_one) / s;
    fit.p_plus_one_se = std::sqrt(fit.p_plus_one * (1.0 - fit.p_plus_one) / s);
    fit.p_plus_one_predicted = predicted / s;
    for (unsigned k = 0; k < kmax; ++k) {
        fit.tail_empirical[k] /= s;
        fit.tail_geometric[k] /= s;
    }
    return fit;
}

void write_census_header(std::ostream& out, std::uint32_t r) {
    out << "seed,t,delta";
    for (std::uint32_t i = 0; i <= r; ++i) out << ",X" << i;
    out << ",X1g,X1b,Z,Phi,L\n";
}

void write_census_row(std::ostream& out, std::uint64_t seed, const ColourSnapshot& s) {
    out << seed << ',' << s.t << ',' << s.delta;
    for (auto v : s.x) out << ',' << v;
    out << ',' << s.x1_green << ',' << s.x1_blue << ',' << s.z << ',' << s.phi << ',' << s.links << '\n';
}

}  // namespace edgewalk
