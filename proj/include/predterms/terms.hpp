#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "predterms/model.hpp"

namespace predterms {

enum class TermDirection { Up, Down, NoArrow };

/// Fitted predictions decomposed into centered per-term contributions.
/// Column j of F is f_j in linear-predictor units: it averages zero over
/// the training rows, and row sums plus the centercept recover the linear
/// predictor.
struct PredictionTerms {
  Eigen::MatrixXd F;                       // n x p
  std::vector<std::string> names;          // model term order
  std::vector<double> stdevs;              // n-1 denominator
  std::vector<TermDirection> directions;
  double centercept = 0.0;                 // frozen at fit time
  Eigen::VectorXd total;                   // row sums of F
  double total_stdev = 0.0;
  std::vector<std::size_t> display_order;  // decreasing stdev, ties by model order
  std::string response;                    // display label, e.g. "GPM" or "1/MPG"
};

PredictionTerms compute_terms(const FittedModel& m, const Dataset& ds);

TermDirection term_direction(const ModelTerm& term, const std::vector<FittedCoef>& coefs);

/// The first min(max_terms, p) indices of the display order.
std::vector<std::size_t> order_terms(const PredictionTerms& pt, std::size_t max_terms);

/// One case pulled apart: term values against the training means, their
/// sum, and the total prediction on both scales.
struct CaseExplanation {
  std::vector<std::string> names;  // model term order
  std::vector<double> values;      // f_j(case)
  std::vector<int> signs;          // +1 above average, -1 below, 0 neutral
  double sum = 0.0;
  double centercept = 0.0;
  double total_linear = 0.0;   // sum + centercept
  double response_units = 0.0; // inverse link of total_linear
  std::string response;        // display label
  std::string provenance;      // "case 7" or "supplied case"
};

/// Out-of-sample: the record must cover every model column with known
/// levels. Centering constants come from the stored training means.
CaseExplanation explain_case(const FittedModel& m, const CaseValues& row);

/// In-sample: row is a 0-based index into ds.
CaseExplanation explain_case(const FittedModel& m, const Dataset& ds, std::size_t row);

std::string print_term_table(const PredictionTerms& pt);
std::string print_case_table(const CaseExplanation& ce);

}  // namespace predterms
