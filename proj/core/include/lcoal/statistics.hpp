#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lcoal/limits.hpp"

namespace lcoal {

/// sup |F_N - F| over the real line, where F_N is the empirical CDF. Both one-
/// sided gaps are taken at every sample point, so ties and atoms of F are
/// handled: with F evaluated right-continuously, D = max_i max(i/N - F(x_(i)),
/// F(x_(i)-) - (i-1)/N) and `cdf_left` gives F(x-). When `cdf_left` is empty F
/// is taken to be continuous.
double ks_distance(std::span<const double> sample, const std::function<double(double)>& cdf,
                   const std::function<double(double)>& cdf_left = {});

struct TwoSampleKs {
  double distance;
  double p_value;  // asymptotic Kolmogorov approximation
};

TwoSampleKs ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Kolmogorov survival function Q(x) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 x^2).
double kolmogorov_survival(double x);

/// {0.1, 0.2, ..., 2.0}.
std::vector<double> default_cf_grid();

/// max over the grid of |empirical CF - cf(t)|.
double cf_distance(std::span<const double> sample,
                   const std::function<std::complex<double>(double)>& cf,
                   std::span<const double> grid);

/// |empirical k-th moment / ml_moment(k) - 1| for k = 1..k_max, k_max <= 4.
std::vector<double> moment_errors(std::span<const double> sample, const MittagLefflerRef& ref,
                                  int k_max);

/// Half the l1 distance between two probability vectors on a common index
/// set; the shorter vector is padded with zeros.
double total_variation(std::span<const double> p, std::span<const double> q);

/// Empirical pmf of integer values 0..max_value (larger values are dropped
/// from the histogram but still counted in the denominator).
std::vector<double> empirical_pmf(std::span<const double> sample, std::int64_t max_value);

struct MeanSe {
  double mean;
  double standard_error;
  double variance;  // unbiased
};

MeanSe mean_and_se(std::span<const double> sample);

}  // namespace lcoal
