#include "lcoal/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lcoal {

double ks_distance(std::span<const double> sample, const std::function<double(double)>& cdf,
                   const std::function<double(double)>& cdf_left) {
  if (sample.empty()) throw std::invalid_argument("ks_distance needs a non-empty sample");
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < x.size()) {
    std::size_t j = i;
    while (j < x.size() && x[j] == x[i]) ++j;
    // F_N jumps from i/N to j/N at x[i].
    const double right = cdf(x[i]);
    const double left = cdf_left ? cdf_left(x[i]) : right;
    d = std::max({d, static_cast<double>(j) / n - right, left - static_cast<double>(i) / n});
    i = j;
  }
  return d;
}

double kolmogorov_survival(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 0.2) return 1.0;  // Q(0.2) > 1 - 1e-12 and the series converges slowly below
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * x * x);
    sum += (j % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

TwoSampleKs ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample needs non-empty samples");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size()), ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() || j < y.size()) {
    const double v = (j == y.size() || (i < x.size() && x[i] <= y[j])) ? x[i] : y[j];
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  const double ne = std::sqrt(nx * ny / (nx + ny));
  return {d, kolmogorov_survival((ne + 0.12 + 0.11 / ne) * d)};
}

std::vector<double> default_cf_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 20; ++i) grid.push_back(0.1 * i);
  return grid;
}

double cf_distance(std::span<const double> sample,
                   const std::function<std::complex<double>(double)>& cf,
                   std::span<const double> grid) {
  if (sample.empty() || grid.empty()) {
    throw std::invalid_argument("cf_distance needs a non-empty sample and grid");
  }
  double d = 0.0;
  for (const double t : grid) {
    double re = 0.0, im = 0.0;
    for (const double x : sample) {
      re += std::cos(t * x);
      im += std::sin(t * x);
    }
    const auto n = static_cast<double>(sample.size());
    d = std::max(d, std::abs(std::complex<double>(re / n, im / n) - cf(t)));
  }
  return d;
}

std::vector<double> moment_errors(std::span<const double> sample, const MittagLefflerRef& ref,
                                  int k_max) {
  if (k_max < 0 || k_max > 4) throw std::invalid_argument("moment_errors supports k_max <= 4");
  std::vector<double> errors;
  if (k_max == 0) return errors;
  if (sample.empty()) throw std::invalid_argument("moment_errors needs a non-empty sample");
  for (int k = 1; k <= k_max; ++k) {
    double acc = 0.0;
    for (const double x : sample) acc += std::pow(x, k);
    const double empirical = acc / static_cast<double>(sample.size());
    errors.push_back(std::abs(empirical / ml_moment(ref, k) - 1.0));
  }
  return errors;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  const std::size_t n = std::max(p.size(), q.size());
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = i < p.size() ? p[i] : 0.0;
    const double b = i < q.size() ? q[i] : 0.0;
    s += std::abs(a - b);
  }
  return 0.5 * s;
}

std::vector<double> empirical_pmf(std::span<const double> sample, std::int64_t max_value) {
  std::vector<double> pmf(static_cast<std::size_t>(max_value + 1), 0.0);
  if (sample.empty()) return pmf;
  const double w = 1.0 / static_cast<double>(sample.size());
  for (const double x : sample) {
    if (x >= 0.0 && x <= static_cast<double>(max_value)) {
      pmf[static_cast<std::size_t>(std::llround(x))] += w;
    }
  }
  return pmf;
}

MeanSe mean_and_se(std::span<const double> sample) {
  if (sample.size() < 2) throw std::invalid_argument("mean_and_se needs two or more values");
  const double n = static_cast<double>(sample.size());
  double mean = 0.0;
  for (const double x : sample) mean += x;
  mean /= n;
  double ss = 0.0;
  for (const double x : sample) ss += (x - mean) * (x - mean);
  const double var = ss / (n - 1.0);
  return {mean, std::sqrt(var / n), var};
}

}  // namespace lcoal
