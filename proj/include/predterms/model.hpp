#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "predterms/design.hpp"
#include "predterms/formula.hpp"

namespace predterms {

enum class LinkKind { Identity, Logit };

/// One design-column coefficient with the training mean of its column.
/// The stored means are the centering constants for prediction terms, so
/// out-of-sample cases can be explained without the training data.
struct FittedCoef {
  std::string column;
  std::string level;  // dummy level for main categorical columns
  double value = 0.0;
  double train_mean = 0.0;
};

struct FittedTerm {
  ModelTerm term;
  std::vector<FittedCoef> coefs;
};

struct FittedModel {
  LinkKind link = LinkKind::Identity;
  ResponseSpec response;
  double intercept = 0.0;
  std::vector<FittedTerm> terms;
  std::map<std::string, std::vector<std::string>> levels;
  int iterations = 0;
  bool converged = true;

  /// Mean of the uncentered total prediction over the training data,
  /// equal to intercept + sum_j b_j * mean_j.
  double centercept() const;
  std::size_t coef_count() const;
};

/// A prediction-time case: numeric columns map to doubles, level-based
/// columns to their level string.
using CaseValue = std::variant<double, std::string>;
using CaseValues = std::map<std::string, CaseValue>;

FittedModel fit_ols(const DesignMatrix& dm, const Eigen::VectorXd& y, const TermPlan& plan);

struct LogisticOptions {
  int max_iterations = 25;
  double coef_tolerance = 1e-8;
  double deviance_tolerance = 1e-8;
};

FittedModel fit_logistic(const DesignMatrix& dm, const Eigen::VectorXd& y, const TermPlan& plan,
                         const LogisticOptions& options = {});

double linear_predictor(const FittedModel& m, const CaseValues& row);

/// Per-term design values for one case, in the model's column layout.
/// Used by both linear_predictor and the prediction-term decomposition.
std::vector<std::vector<double>> case_design_values(const FittedModel& m, const CaseValues& row);

double inverse_link(LinkKind link, double eta);

CaseValues case_from_row(const FittedModel& m, const Dataset& ds, std::size_t row);

}  // namespace predterms
