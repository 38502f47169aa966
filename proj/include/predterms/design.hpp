#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "predterms/dataset.hpp"
#include "predterms/formula.hpp"

namespace predterms {

struct DesignColumn {
  std::string name;   // e.g. "accel", "driveFront", "accel:torque"
  int term = 0;       // owning term index in the plan
  std::string level;  // dummy level for main categorical columns, else empty
};

/// Treatment-coded design matrix, without an intercept column.
struct DesignMatrix {
  Eigen::MatrixXd X;                        // n x k
  std::vector<DesignColumn> columns;        // k descriptors
  std::vector<std::vector<int>> groups;     // per-term column indices
  std::map<std::string, std::vector<std::string>> levels;  // categorical columns used
};

DesignMatrix build_design(const Dataset& ds, const TermPlan& plan);

/// Response vector with the plan's transform applied.
Eigen::VectorXd extract_response(const Dataset& ds, const ResponseSpec& response);

}  // namespace predterms
