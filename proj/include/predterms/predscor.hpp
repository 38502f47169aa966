#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "predterms/scene.hpp"
#include "predterms/style.hpp"

namespace predterms {

struct TermCovariance {
  std::vector<std::string> names;  // nonconstant terms, model order
  std::vector<double> stdevs;
  Eigen::MatrixXd cov;  // sample covariance, n-1 denominator
  Eigen::MatrixXd cor;
};

/// Covariance of the prediction-term columns. Constant terms are dropped
/// with a warning on stderr; fewer than two remaining terms is an error.
TermCovariance term_covariance(const PredictionTerms& pt);

enum class CellArea { Variance, Stdev };

struct PredscorOptions {
  bool sort_by_stdev = true;
  bool absolute_correlations = false;
  CellArea cell_area = CellArea::Variance;
  bool classic = false;  // equal cell sizes
};

PredscorScene layout_predscor(const TermCovariance& tc, const PredscorOptions& options);

/// White at 0, pure red at +1, pure blue at -1, linear in RGB.
std::string diverging_color(double correlation);

}  // namespace predterms
