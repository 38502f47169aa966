#include "predterms/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "predterms/errors.hpp"

namespace predterms {

double sample_sd(const Eigen::VectorXd& v) {
  const Eigen::Index n = v.size();
  if (n < 2) return 0.0;
  double mean = v.mean();
  return std::sqrt((v.array() - mean).square().sum() / static_cast<double>(n - 1));
}

double sample_sd(const std::vector<double>& v) {
  return sample_sd(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
}

double pearson(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::ArrayXd da = a.array() - a.mean();
  Eigen::ArrayXd db = b.array() - b.mean();
  double denom = std::sqrt(da.square().sum() * db.square().sum());
  if (denom == 0.0) return 0.0;
  return (da * db).sum() / denom;
}

double quantile_type7(std::vector<double> values, double p) {
  if (values.empty()) throw DataError("quantile of empty sample");
  std::sort(values.begin(), values.end());
  if (p <= 0.0) return values.front();
  if (p >= 1.0) return values.back();
  double h = (static_cast<double>(values.size()) - 1.0) * p;
  auto lo = static_cast<std::size_t>(std::floor(h));
  double frac = h - static_cast<double>(lo);
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

int histogram_bin_count(std::size_t n) {
  if (n <= 1) return 1;
  return static_cast<int>(std::ceil(std::log2(static_cast<double>(n)) - 1e-12)) + 1;
}

Histogram histogram(const std::vector<double>& values, int bins) {
  if (values.empty()) throw DataError("histogram of empty sample");
  if (bins < 1) bins = 1;
  auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
  double mn = *mn_it, mx = *mx_it;
  Histogram h;
  if (mn == mx) {
    h.edges = {mn, mx};
    h.counts = {values.size()};
    return h;
  }
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) {
    h.edges[static_cast<std::size_t>(i)] = mn + (mx - mn) * static_cast<double>(i) / bins;
  }
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double v : values) {
    auto idx = static_cast<std::size_t>((v - mn) / (mx - mn) * bins);
    if (idx >= static_cast<std::size_t>(bins)) idx = static_cast<std::size_t>(bins) - 1;
    ++h.counts[idx];
  }
  return h;
}

double default_bandwidth(const std::vector<double>& values) {
  double sd = sample_sd(values);
  if (sd == 0.0) throw PlotError("density requires at least two distinct values");
  double iqr = quantile_type7(values, 0.75) - quantile_type7(values, 0.25);
  double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
  return 0.9 * spread * std::pow(static_cast<double>(values.size()), -0.2);
}

DensityCurve density_curve(const std::vector<double>& values, double bandwidth, int points) {
  if (bandwidth <= 0.0 || !std::isfinite(bandwidth)) {
    throw PlotError("density bandwidth must be positive");
  }
  if (points < 2) throw PlotError("density needs at least two sample points");
  auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
  if (values.empty() || *mn_it == *mx_it) {
    throw PlotError("density requires at least two distinct values");
  }
  double lo = *mn_it - 3.0 * bandwidth;
  double hi = *mx_it + 3.0 * bandwidth;
  const double norm = 1.0 / (static_cast<double>(values.size()) * bandwidth *
                             std::sqrt(2.0 * std::numbers::pi));
  DensityCurve c;
  c.x.resize(static_cast<std::size_t>(points));
  c.y.resize(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    double g = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
    double s = 0.0;
    for (double v : values) {
      double z = (g - v) / bandwidth;
      s += std::exp(-0.5 * z * z);
    }
    c.x[static_cast<std::size_t>(i)] = g;
    c.y[static_cast<std::size_t>(i)] = norm * s;
  }
  return c;
}

}  // namespace predterms
