#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

namespace predterms {

/// Standard deviation with n-1 denominator; 0 when fewer than two values.
double sample_sd(const Eigen::VectorXd& v);
double sample_sd(const std::vector<double>& v);

double pearson(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Linear-interpolation quantile on order statistics (R type 7).
double quantile_type7(std::vector<double> values, double p);

/// Sturges rule: ceil(log2 n) + 1.
int histogram_bin_count(std::size_t n);

struct Histogram {
  std::vector<double> edges;        // bins + 1 (degenerate: both equal)
  std::vector<std::size_t> counts;  // sums to n
};

Histogram histogram(const std::vector<double>& values, int bins);

/// Normal-reference bandwidth 0.9 * min(sd, IQR/1.34) * n^(-1/5); falls
/// back to sd when the IQR is zero. Throws when every value is identical.
double default_bandwidth(const std::vector<double>& values);

struct DensityCurve {
  std::vector<double> x, y;
};

/// Gaussian kernel density sampled at `points` equispaced positions over
/// [min - 3h, max + 3h].
DensityCurve density_curve(const std::vector<double>& values, double bandwidth,
                           int points = 512);

}  // namespace predterms
