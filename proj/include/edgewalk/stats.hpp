#pragma once

#include <cstdint>
#include <span>

namespace edgewalk {

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
    double sd = 0.0;
    std::uint64_t count = 0;
};

MeanSe mean_se(std::span<const double> xs);

struct ChiSquare {
    double statistic = 0.0;
    double df = 0.0;
    double p_value = 1.0;
};

/// Upper tail of the chi-square distribution.
double chi_square_p(double statistic, double df);

/// Goodness of fit of counts against equal cell probabilities.
ChiSquare chi_square_uniform(std::span<const std::uint64_t> counts);

/// Goodness of fit against given cell probabilities (summing to 1).
ChiSquare chi_square_fit(std::span<const std::uint64_t> counts, std::span<const double> probabilities);

struct KolmogorovSmirnov {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// Two-sample test with the asymptotic Kolmogorov distribution (with the
/// usual small-sample correction to the scaling).
KolmogorovSmirnov ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Upper tail Q(x) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 x^2).
double kolmogorov_q(double x);

}  // namespace edgewalk
