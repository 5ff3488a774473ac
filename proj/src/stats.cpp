#include "edgewalk/stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace edgewalk {

MeanSe mean_se(std::span<const double> xs) {
    MeanSe out;
    out.count = xs.size();
    if (xs.empty()) return out;
    double sum = 0.0;
    for (double x : xs) sum += x;
    out.mean = sum / xs.size();
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - out.mean) * (x - out.mean);
        out.sd = std::sqrt(ss / (xs.size() - 1));
        out.se = out.sd / std::sqrt(static_cast<double>(xs.size()));
    }
    return out;
}

double chi_square_p(double statistic, double df) {
    if (df <= 0.0) throw std::invalid_argument("chi_square_p: df must be positive");
    if (statistic <= 0.0) return 1.0;
    return boost::math::gamma_q(df / 2.0, statistic / 2.0);
}

ChiSquare chi_square_fit(std::span<const std::uint64_t> counts, std::span<const double> probabilities) {
    if (counts.size() != probabilities.size() || counts.size() < 2)
        throw std::invalid_argument("chi_square_fit: need matching sizes and at least two cells");
    double total = 0.0;
    for (auto c : counts) total += static_cast<double>(c);
    ChiSquare out;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double expected = total * probabilities[i];
        if (expected <= 0.0) throw std::invalid_argument("chi_square_fit: empty expected cell");
        const double d = static_cast<double>(counts[i]) - expected;
        out.statistic += d * d / expected;
    }
    out.df = static_cast<double>(counts.size() - 1);
    out.p_value = chi_square_p(out.statistic, out.df);
    return out;
}

ChiSquare chi_square_uniform(std::span<const std::uint64_t> counts) {
    std::vector<double> p(counts.size(), 1.0 / static_cast<double>(counts.size()));
    return chi_square_fit(counts, p);
}

double kolmogorov_q(double x) {
    if (x <= 0.0) return 1.0;
    if (x < 0.2) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        sum += (k % 2 ? 1.0 : -1.0) * term;
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KolmogorovSmirnov ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double na = x.size(), nb = y.size();
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v) ++i;
        while (j < y.size() && y[j] == v) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    KolmogorovSmirnov out;
    out.statistic = d;
    const double ne = std::sqrt(na * nb / (na + nb));
    out.p_value = kolmogorov_q((ne + 0.12 + 0.11 / ne) * d);
    return out;
}

}  // namespace edgewalk
