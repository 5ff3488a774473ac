#include "edgewalk/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "edgewalk/rng.hpp"

namespace edgewalk {

namespace {

constexpr std::uint32_t kDenseLimit = 2000;

Eigen::MatrixXd symmetric_transition(const Multigraph& g) {
    const std::uint32_t n = g.vertex_count();
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
    for (Point p = 0; p < g.point_count(); ++p) s(g.owner(p), g.owner(g.mate(p))) += 1.0;
    Eigen::VectorXd inv_sqrt(n);
    for (Vertex v = 0; v < n; ++v) inv_sqrt[v] = 1.0 / std::sqrt(static_cast<double>(g.degree(v)));
    return inv_sqrt.asDiagonal() * s * inv_sqrt.asDiagonal();
}

// y = D^{-1/2} A D^{-1/2} x without forming the matrix.
void apply_symmetric(const Multigraph& g, const std::vector<double>& inv_sqrt, const Eigen::VectorXd& x,
                     Eigen::VectorXd& y) {
    y.setZero();
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        double acc = 0.0;
        for (Point p = g.first_point(v); p < g.end_point(v); ++p) {
            const Vertex w = g.owner(g.mate(p));
            acc += inv_sqrt[w] * x[w];
        }
        y[v] = inv_sqrt[v] * acc;
    }
}

SpectralReport power_lambda2(const Multigraph& g, double tolerance, std::uint32_t max_iterations) {
    const std::uint32_t n = g.vertex_count();
    std::vector<double> inv_sqrt(n);
    Eigen::VectorXd top(n);
    for (Vertex v = 0; v < n; ++v) {
        inv_sqrt[v] = 1.0 / std::sqrt(static_cast<double>(g.degree(v)));
        top[v] = std::sqrt(static_cast<double>(g.degree(v)));
    }
    top.normalize();

    auto rng = make_rng(0x5eed5eedULL + n);
    Eigen::VectorXd x(n), y(n), z(n);
    for (Vertex v = 0; v < n; ++v) x[v] = uniform_unit(rng) - 0.5;
    x -= top.dot(x) * top;
    x.normalize();

    // Iterate with S^2 so that +lambda and -lambda of equal modulus do not
    // make the estimate oscillate.
    double mu = 0.0, prev_change = 0.0;
    SpectralReport rep;
    rep.method = "power";
    rep.tolerance = tolerance;
    for (std::uint32_t it = 1; it <= max_iterations; ++it) {
        apply_symmetric(g, inv_sqrt, x, y);
        y -= top.dot(y) * top;
        apply_symmetric(g, inv_sqrt, y, z);
        z -= top.dot(z) * top;
        const double next = x.dot(z);  // Rayleigh quotient of S^2, |x| = 1
        const double norm = z.norm();
        if (norm == 0.0) {
            rep.lambda2 = 0.0;
            rep.gap = 1.0;
            rep.iterations = it;
            return rep;
        }
        x = z / norm;
        const double change = std::abs(next - mu);
        mu = next;
        if (it > 3 && prev_change > 0.0) {
            const double ratio = std::min(change / prev_change, 0.999999);
            if (change * ratio / (1.0 - ratio) < tolerance * std::max(mu, 1e-300) || change == 0.0) {
                rep.lambda2 = std::sqrt(std::max(mu, 0.0));
                rep.gap = 1.0 - rep.lambda2;
                rep.iterations = it;
                return rep;
            }
        }
        prev_change = change;
    }
    throw std::runtime_error("second_eigenvalue: power iteration did not converge");
}

void require_connected(const Multigraph& g, const char* who) {
    if (!is_connected(g)) throw std::invalid_argument(std::string(who) + ": graph is disconnected");
}

}  // namespace

SpectralReport second_eigenvalue(const Multigraph& g, EigenMethod method, double tolerance,
                                 std::uint32_t max_iterations) {
    const std::uint32_t n = g.vertex_count();
    SpectralReport rep;
    rep.tolerance = tolerance;
    if (n <= 1) {
        rep.method = "dense";
        return rep;
    }
    if (!is_connected(g)) {
        rep.method = method == EigenMethod::power ? "power" : "dense";
        rep.lambda2 = 1.0;
        rep.gap = 0.0;
        rep.disconnected = true;
        return rep;
    }
    if (method == EigenMethod::power || (method == EigenMethod::automatic && n > kDenseLimit))
        return power_lambda2(g, tolerance, max_iterations);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric_transition(g), Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();  // ascending
    rep.method = "dense";
    rep.lambda2 = std::min(1.0, std::max(std::abs(ev[n - 2]), std::abs(ev[0])));
    rep.gap = 1.0 - rep.lambda2;
    return rep;
}

double stationary_hitting_exact(const Multigraph& g, Vertex target) {
    const std::uint32_t n = g.vertex_count();
    if (target >= n) throw std::invalid_argument("stationary_hitting_exact: vertex out of range");
    require_connected(g, "stationary_hitting_exact");
    if (n > 4 * kDenseLimit) throw std::invalid_argument("stationary_hitting_exact: graph too large for dense solve");

    const double total = g.point_count();
    Eigen::VectorXd pi(n);
    for (Vertex v = 0; v < n; ++v) pi[v] = g.degree(v) / total;
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
    for (Vertex u = 0; u < n; ++u) {
        const double w = 1.0 / g.degree(u);
        for (Point p = g.first_point(u); p < g.end_point(u); ++p) m(u, g.owner(g.mate(p))) -= w;
    }
    m.rowwise() += pi.transpose();
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e[target] = 1.0;
    const Eigen::VectorXd y = m.partialPivLu().solve(e);
    const double z_vv = y[target] - pi[target];
    return z_vv / pi[target];
}

double stationary_hitting_exact(const Multigraph& g, std::span<const Vertex> target) {
    if (target.size() == 1) return stationary_hitting_exact(g, target[0]);
    const auto gc = contract(g, target);
    return stationary_hitting_exact(gc.graph, gc.supernode);
}

MonteCarloEstimate stationary_hitting_mc(const Multigraph& g, std::span<const Vertex> target, std::uint64_t trials,
                                         std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("stationary_hitting_mc: trials must be positive");
    require_connected(g, "stationary_hitting_mc");
    std::vector<char> in_target(g.vertex_count(), 0);
    for (Vertex v : target) in_target.at(v) = 1;
    auto rng = make_rng(seed);
    double sum = 0.0, sum_sq = 0.0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        Vertex v = g.owner(uniform_below(rng, g.point_count()));
        std::uint64_t steps = 0;
        while (!in_target[v]) {
            v = g.owner(g.mate(g.first_point(v) + uniform_below(rng, g.degree(v))));
            ++steps;
        }
        sum += static_cast<double>(steps);
        sum_sq += static_cast<double>(steps) * static_cast<double>(steps);
    }
    MonteCarloEstimate est;
    est.trials = trials;
    est.mean = sum / trials;
    const double var = trials > 1 ? (sum_sq - trials * est.mean * est.mean) / (trials - 1) : 0.0;
    est.se = std::sqrt(std::max(var, 0.0) / trials);
    return est;
}

double hitting_upper_bound(double n, double set_size, double lambda2) {
    if (lambda2 >= 1.0) throw std::invalid_argument("hitting_upper_bound: lambda2 must be below 1");
    if (set_size <= 0.0) throw std::invalid_argument("hitting_upper_bound: empty set");
    return n / ((1.0 - lambda2) * set_size);
}

double predicted_root_hitting(double n, double r, double set_size) {
    if (r < 3.0) throw std::invalid_argument("predicted_root_hitting: r must be at least 3");
    return r / (r - 2.0) * n / set_size;
}

unsigned default_root_order(std::uint32_t n) {
    const double lnln = std::log(std::log(std::max<double>(n, 3.0)));
    return std::max(3u, static_cast<unsigned>(std::floor(lnln)));
}

namespace {

struct PathCounter {
    const Multigraph& g;
    const std::vector<char>& in_set;
    unsigned ell;
    std::vector<char> on_path;
    std::uint64_t found = 0;

    void extend(Vertex v, Point arrival, unsigned length) {
        for (Point p = g.first_point(v); p < g.end_point(v); ++p) {
            if (p == arrival) continue;
            const Point q = g.mate(p);
            const Vertex w = g.owner(q);
            if (in_set[v] && in_set[w]) continue;  // edge inside S
            if (in_set[w]) {
                ++found;
                continue;
            }
            if (on_path[w] || length + 1 >= ell) continue;
            on_path[w] = 1;
            extend(w, q, length + 1);
            on_path[w] = 0;
        }
    }
};

}  // namespace

RootSetReport root_set_check(const Multigraph& g, std::span<const Vertex> s, unsigned ell) {
    if (ell < 2) throw std::invalid_argument("root_set_check: order must be at least 2");
    std::vector<char> in_set(g.vertex_count(), 0);
    std::uint64_t size = 0;
    for (Vertex v : s)
        if (!in_set.at(v)) {
            in_set[v] = 1;
            ++size;
        }
    RootSetReport rep;
    rep.size = size;
    rep.order = ell;
    for (Point p = 0; p < g.point_count(); ++p)
        if (p < g.mate(p) && in_set[g.owner(p)] && in_set[g.owner(g.mate(p))]) ++rep.internal_edges;

    PathCounter counter{g, in_set, ell, std::vector<char>(g.vertex_count(), 0), 0};
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        if (!in_set[u]) continue;
        counter.extend(u, kNoPoint, 0);
    }
    // Each path is found once from each end.
    rep.short_path_count = counter.found / 2;

    const double l = ell;
    const double sz = static_cast<double>(size);
    rep.size_ok = sz >= std::pow(l, 5);
    rep.internal_ok = rep.internal_edges >= sz / 2.0 && rep.internal_edges <= (0.5 + std::pow(l, -3)) * sz;
    rep.paths_ok = static_cast<double>(rep.short_path_count) <= sz / std::pow(l, 3);
    rep.verdict = rep.size_ok && rep.internal_ok && rep.paths_ok;
    return rep;
}

double return_probability_sum(const Multigraph& g, Vertex s, unsigned omega) {
    const std::uint32_t n = g.vertex_count();
    if (s >= n) throw std::invalid_argument("return_probability_sum: vertex out of range");
    std::vector<double> x(n, 0.0), y(n, 0.0);
    x[s] = 1.0;
    double sum = 1.0;
    for (unsigned tau = 1; tau <= omega; ++tau) {
        std::fill(y.begin(), y.end(), 0.0);
        for (Vertex v = 0; v < n; ++v) {
            if (x[v] == 0.0) continue;
            const double share = x[v] / g.degree(v);
            for (Point p = g.first_point(v); p < g.end_point(v); ++p) y[g.owner(g.mate(p))] += share;
        }
        std::swap(x, y);
        sum += x[s];
    }
    return sum;
}

double return_probability_sum(const ContractedGraph& gc, unsigned omega) {
    return return_probability_sum(gc.graph, gc.supernode, omega);
}

std::map<Vertex, double> exit_distribution(const Multigraph& g, std::span<const Vertex> r_set,
                                           std::span<const Vertex> s_set, std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("exit_distribution: trials must be positive");
    if (r_set.empty()) throw std::invalid_argument("exit_distribution: R is empty");
    std::vector<char> in_s(g.vertex_count(), 0);
    for (Vertex v : s_set) in_s.at(v) = 1;
    for (Vertex v : r_set)
        if (!in_s.at(v)) throw std::invalid_argument("exit_distribution: R must be a subset of S");
    if (s_set.size() < 2) throw std::invalid_argument("exit_distribution: S minus the start is empty");
    require_connected(g, "exit_distribution");

    auto rng = make_rng(seed);
    std::map<Vertex, double> freq;
    for (std::uint64_t i = 0; i < trials; ++i) {
        const Vertex y = r_set[uniform_below(rng, r_set.size())];
        Vertex v = y;
        do {
            v = g.owner(g.mate(g.first_point(v) + uniform_below(rng, g.degree(v))));
        } while (!in_s[v] || v == y);
        freq[v] += 1.0;
    }
    for (auto& [v, f] : freq) f /= static_cast<double>(trials);
    return freq;
}

double escape_probability(const Multigraph& g, Vertex y, std::span<const Vertex> a) {
    const std::uint32_t n = g.vertex_count();
    std::vector<int> kind(n, 0);  // 0 free, 1 in A, 2 = y
    for (Vertex v : a) kind.at(v) = 1;
    if (kind.at(y) == 1) throw std::invalid_argument("escape_probability: y must lie outside A");
    if (a.empty()) return 0.0;
    kind[y] = 2;

    std::vector<int> index(n, -1);
    int unknowns = 0;
    for (Vertex v = 0; v < n; ++v)
        if (kind[v] == 0) index[v] = unknowns++;

    // h(u) = P_u(hit A before y) on the free vertices.
    Eigen::VectorXd h;
    if (unknowns > 0) {
        std::vector<Eigen::Triplet<double>> entries;
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(unknowns);
        for (Vertex u = 0; u < n; ++u) {
            if (index[u] < 0) continue;
            entries.emplace_back(index[u], index[u], 1.0);
            const double w = 1.0 / g.degree(u);
            for (Point p = g.first_point(u); p < g.end_point(u); ++p) {
                const Vertex v = g.owner(g.mate(p));
                if (kind[v] == 1) rhs[index[u]] += w;
                else if (kind[v] == 0) entries.emplace_back(index[u], index[v], -w);
            }
        }
        Eigen::SparseMatrix<double> m(unknowns, unknowns);
        m.setFromTriplets(entries.begin(), entries.end());
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.compute(m);
        if (lu.info() != Eigen::Success) throw std::invalid_argument("escape_probability: singular system");
        h = lu.solve(rhs);
    }
    double escape = 0.0;
    const double w = 1.0 / g.degree(y);
    for (Point p = g.first_point(y); p < g.end_point(y); ++p) {
        const Vertex v = g.owner(g.mate(p));
        if (kind[v] == 1) escape += w;
        else if (kind[v] == 0) escape += w * h[index[v]];
    }
    return escape;
}

double aks_avoidance_bound(double n, double r, double lambda_adj, double c, unsigned ell) {
    if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("aks_avoidance_bound: c must lie in (0, 1)");
    return (1.0 - c) * n * std::pow((1.0 - c) * r + c * lambda_adj, ell);
}

double aks_hitting_bound(double n, double x1_size, double c, double lambda) {
    if (!(c > 0.0 && c < 1.0) || lambda >= 1.0 || x1_size <= 0.0)
        throw std::invalid_argument("aks_hitting_bound: invalid parameters");
    return 2.0 * (1.0 - c) * n / (x1_size * c * (1.0 - lambda));
}

double avoiding_walk_count(const Multigraph& g, std::span<const Vertex> a, unsigned ell) {
    const std::uint32_t n = g.vertex_count();
    std::vector<char> blocked(n, 0);
    for (Vertex v : a) blocked.at(v) = 1;
    std::vector<double> c(n), next(n);
    for (Vertex v = 0; v < n; ++v) c[v] = blocked[v] ? 0.0 : 1.0;
    for (unsigned k = 0; k < ell; ++k) {
        for (Vertex v = 0; v < n; ++v) {
            double acc = 0.0;
            if (!blocked[v])
                for (Point p = g.first_point(v); p < g.end_point(v); ++p) acc += c[g.owner(g.mate(p))];
            next[v] = acc;
        }
        std::swap(c, next);
    }
    double total = 0.0;
    for (double x : c) total += x;
    return total;
}

void write_spectral_header(std::ostream& out) { out << "graph_id,method,lambda2,gap\n"; }

void write_spectral_row(std::ostream& out, const std::string& graph_id, const SpectralReport& rep) {
    out << graph_id << ',' << rep.method << ',' << rep.lambda2 << ',' << rep.gap << '\n';
}

void write_hitting_header(std::ostream& out) { out << "graph_id,set_size,exact,mc_mean,mc_se,bound,predicted\n"; }

void write_hitting_row(std::ostream& out, const HittingRow& row) {
    out << row.graph_id << ',' << row.set_size << ',' << row.exact << ',' << row.mc_mean << ',' << row.mc_se << ','
        << row.bound << ',' << row.predicted << '\n';
}

}  // namespace edgewalk
