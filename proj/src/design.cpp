#include "predterms/design.hpp"

#include <cmath>

#include "predterms/errors.hpp"

namespace predterms {

namespace {

// Expanded value columns for one factor: a single column for numeric,
// L-1 dummies against the first (reference) level otherwise.
struct FactorBlock {
  std::vector<Eigen::VectorXd> cols;
  std::vector<std::string> names;
  std::vector<std::string> dummy_levels;  // empty strings for numeric
};

Eigen::VectorXd numeric_values(const Dataset& ds, const FactorRef& f) {
  const Column& c = ds.col(f.column);
  const std::size_t n = ds.n_rows();
  Eigen::VectorXd v(n);
  for (std::size_t i = 0; i < n; ++i) {
    double x = c.numeric[i];
    if (f.log) {
      if (!(x > 0.0)) {
        throw ModelError("log of non-positive value in column '" + f.column + "' (row " +
                         std::to_string(i + 1) + ")");
      }
      x = std::log(x);
    }
    v[i] = x;
  }
  return v;
}

FactorBlock expand_factor(const Dataset& ds, const FactorRef& f, ColumnKind kind,
                          std::map<std::string, std::vector<std::string>>& levels_out) {
  FactorBlock block;
  if (kind == ColumnKind::Numeric) {
    block.cols.push_back(numeric_values(ds, f));
    block.names.push_back(f.name());
    block.dummy_levels.push_back("");
    return block;
  }
  const Column& c = ds.col(f.column);
  auto levels = c.levels();
  if (levels.size() < 2) {
    throw ModelError("categorical column '" + f.column + "' has fewer than 2 levels");
  }
  levels_out[f.column] = levels;
  const std::size_t n = ds.n_rows();
  for (std::size_t li = 1; li < levels.size(); ++li) {  // levels[0] is the reference
    Eigen::VectorXd d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = c.text[i] == levels[li] ? 1.0 : 0.0;
    block.cols.push_back(std::move(d));
    block.names.push_back(f.column + levels[li]);
    block.dummy_levels.push_back(levels[li]);
  }
  return block;
}

}  // namespace

DesignMatrix build_design(const Dataset& ds, const TermPlan& plan) {
  const std::size_t n = ds.n_rows();
  DesignMatrix dm;
  std::vector<Eigen::VectorXd> cols;

  for (std::size_t ti = 0; ti < plan.terms.size(); ++ti) {
    const ModelTerm& term = plan.terms[ti];
    std::vector<int> group;

    if (term.kind == TermKind::Interaction) {
      FactorBlock a = expand_factor(ds, term.factors[0], term.factor_kinds[0], dm.levels);
      FactorBlock b = expand_factor(ds, term.factors[1], term.factor_kinds[1], dm.levels);
      for (std::size_t i = 0; i < a.cols.size(); ++i) {
        for (std::size_t j = 0; j < b.cols.size(); ++j) {
          group.push_back(static_cast<int>(cols.size()));
          cols.push_back(a.cols[i].cwiseProduct(b.cols[j]));
          dm.columns.push_back({a.names[i] + ":" + b.names[j], static_cast<int>(ti), ""});
        }
      }
    } else {
      FactorBlock a = expand_factor(ds, term.factors[0], term.factor_kinds[0], dm.levels);
      for (std::size_t i = 0; i < a.cols.size(); ++i) {
        group.push_back(static_cast<int>(cols.size()));
        cols.push_back(std::move(a.cols[i]));
        dm.columns.push_back({a.names[i], static_cast<int>(ti), a.dummy_levels[i]});
      }
    }
    dm.groups.push_back(std::move(group));
  }

  dm.X.resize(n, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) dm.X.col(j) = cols[j];
  return dm;
}

Eigen::VectorXd extract_response(const Dataset& ds, const ResponseSpec& response) {
  const Column& c = ds.col(response.column);
  const std::size_t n = ds.n_rows();
  Eigen::VectorXd y(n);
  if (c.kind == ColumnKind::Logical) {
    if (response.transform != ResponseTransform::None) {
      throw ModelError("response transform requires a numeric response");
    }
    for (std::size_t i = 0; i < n; ++i) y[i] = c.text[i] == "TRUE" ? 1.0 : 0.0;
    return y;
  }
  if (c.kind != ColumnKind::Numeric) {
    throw ModelError("response column '" + response.column + "' is not numeric");
  }
  for (std::size_t i = 0; i < n; ++i) {
    double v = c.numeric[i];
    switch (response.transform) {
      case ResponseTransform::None: break;
      case ResponseTransform::Log:
        if (!(v > 0.0)) {
          throw ModelError("log of non-positive response value (row " + std::to_string(i + 1) +
                           ")");
        }
        v = std::log(v);
        break;
      case ResponseTransform::Reciprocal:
        if (v == 0.0) {
          throw ModelError("reciprocal of zero response value (row " + std::to_string(i + 1) +
                           ")");
        }
        v = 1.0 / v;
        break;
    }
    y[i] = v;
  }
  return y;
}

}  // namespace predterms
