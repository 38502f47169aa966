#include "predterms/predscor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numeric>

#include "predterms/errors.hpp"
#include "predterms/stats.hpp"

namespace predterms {

TermCovariance term_covariance(const PredictionTerms& pt) {
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < pt.names.size(); ++j) {
    if (pt.stdevs[j] > 0.0) {
      keep.push_back(j);
    } else {
      std::cerr << "predterms: warning: prediction term '" << pt.names[j]
                << "' is constant and was left out of predscor\n";
    }
  }
  if (keep.size() < 2) throw PlotError("predscor needs at least two nonconstant prediction terms");

  const auto n = pt.F.rows();
  TermCovariance tc;
  const auto p = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXd X(n, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    tc.names.push_back(pt.names[keep[static_cast<std::size_t>(j)]]);
    tc.stdevs.push_back(pt.stdevs[keep[static_cast<std::size_t>(j)]]);
    X.col(j) = pt.F.col(static_cast<Eigen::Index>(keep[static_cast<std::size_t>(j)]));
  }
  Eigen::MatrixXd centered = X.rowwise() - X.colwise().mean();
  tc.cov = centered.transpose() * centered / static_cast<double>(n - 1);
  tc.cor.resize(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) {
      tc.cor(i, j) = tc.cov(i, j) / (tc.stdevs[static_cast<std::size_t>(i)] *
                                     tc.stdevs[static_cast<std::size_t>(j)]);
    }
  }
  return tc;
}

std::string diverging_color(double correlation) {
  double a = std::clamp(correlation, -1.0, 1.0);
  int other = static_cast<int>(std::lround(255.0 * (1.0 - std::fabs(a))));
  char buf[8];
  if (a >= 0.0) {
    std::snprintf(buf, sizeof buf, "#FF%02X%02X", other, other);
  } else {
    std::snprintf(buf, sizeof buf, "#%02X%02XFF", other, other);
  }
  return buf;
}

PredscorScene layout_predscor(const TermCovariance& tc, const PredscorOptions& options) {
  const std::size_t p = tc.names.size();
  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (options.sort_by_stdev) {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return tc.stdevs[a] > tc.stdevs[b]; });
  }

  double max_sd = *std::max_element(tc.stdevs.begin(), tc.stdevs.end());
  auto side_frac = [&](std::size_t j) {
    if (options.classic) return 1.0;
    double rel = tc.stdevs[j] / max_sd;
    return options.cell_area == CellArea::Variance ? rel : std::sqrt(rel);
  };

  PredscorScene scene;
  for (std::size_t i = 0; i < p; ++i) scene.names.push_back(tc.names[order[i]]);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      CorCell cell;
      cell.row = i;
      cell.col = j;
      cell.diagonal = i == j;
      cell.height_frac = side_frac(order[i]);
      cell.width_frac = side_frac(order[j]);
      double r = tc.cor(static_cast<Eigen::Index>(order[i]), static_cast<Eigen::Index>(order[j]));
      cell.value = options.absolute_correlations ? std::fabs(r) : r;
      cell.fill = cell.diagonal ? "#000000" : diverging_color(cell.value);
      scene.cells.push_back(std::move(cell));
    }
  }
  return scene;
}

}  // namespace predterms
