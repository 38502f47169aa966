#include "predterms/model.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "predterms/errors.hpp"

namespace predterms {

double FittedModel::centercept() const {
  double c = intercept;
  for (const auto& t : terms) {
    for (const auto& coef : t.coefs) c += coef.value * coef.train_mean;
  }
  return c;
}

std::size_t FittedModel::coef_count() const {
  std::size_t k = 0;
  for (const auto& t : terms) k += t.coefs.size();
  return k;
}

double inverse_link(LinkKind link, double eta) {
  if (link == LinkKind::Identity) return eta;
  // exp(-|eta|) form avoids overflow at extreme eta
  if (eta >= 0.0) {
    return 1.0 / (1.0 + std::exp(-eta));
  }
  double e = std::exp(eta);
  return e / (1.0 + e);
}

namespace {

FittedModel assemble(const DesignMatrix& dm, const TermPlan& plan, LinkKind link,
                     double intercept, const Eigen::VectorXd& beta, int iterations,
                     bool converged) {
  FittedModel m;
  m.link = link;
  m.response = plan.response;
  m.intercept = intercept;
  m.levels = dm.levels;
  m.iterations = iterations;
  m.converged = converged;
  Eigen::VectorXd means = dm.X.colwise().mean();
  for (std::size_t ti = 0; ti < plan.terms.size(); ++ti) {
    FittedTerm ft;
    ft.term = plan.terms[ti];
    for (int j : dm.groups[ti]) {
      ft.coefs.push_back({dm.columns[j].name, dm.columns[j].level, beta[j], means[j]});
    }
    m.terms.push_back(std::move(ft));
  }
  return m;
}

[[noreturn]] void throw_aliased(const DesignMatrix& dm,
                                const Eigen::ColPivHouseholderQR<Eigen::MatrixXd>& qr,
                                int offset) {
  // Columns permuted beyond the numerical rank are linear combinations of
  // the ones before them.
  std::string names;
  auto perm = qr.colsPermutation().indices();
  for (int i = qr.rank(); i < perm.size(); ++i) {
    int col = perm[i] - offset;  // offset 1 when an intercept column was prepended
    if (col < 0) continue;
    if (!names.empty()) names += ", ";
    names += dm.columns[col].name;
  }
  throw ModelError("design matrix is rank deficient; aliased columns: " + names);
}

double logit(double p) { return std::log(p / (1.0 - p)); }

// -2 * Bernoulli log-likelihood, computed from eta for stability.
double deviance(const Eigen::VectorXd& y, const Eigen::VectorXd& eta) {
  double dev = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    double e = eta[i];
    // log(1 + exp(e)) without overflow
    double log1pe = e > 0.0 ? e + std::log1p(std::exp(-e)) : std::log1p(std::exp(e));
    dev += -2.0 * (y[i] * e - log1pe);
  }
  return dev;
}

}  // namespace

FittedModel fit_ols(const DesignMatrix& dm, const Eigen::VectorXd& y, const TermPlan& plan) {
  const Eigen::Index n = dm.X.rows();
  const Eigen::Index k = dm.X.cols();
  if (y.size() != n) throw ModelError("response length does not match design rows");
  if (n <= k + 1) {
    throw ModelError("underdetermined fit: " + std::to_string(n) + " rows for " +
                     std::to_string(k + 1) + " coefficients");
  }

  // Orthogonal factorization of the column-centered design; the intercept
  // is recovered from the means afterwards.
  Eigen::RowVectorXd xmeans = dm.X.colwise().mean();
  Eigen::MatrixXd Xc = dm.X.rowwise() - xmeans;
  double ymean = y.mean();
  Eigen::VectorXd yc = y.array() - ymean;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Xc);
  if (qr.rank() < k) throw_aliased(dm, qr, 0);
  Eigen::VectorXd beta = qr.solve(yc);
  double intercept = ymean - xmeans.dot(beta);

  return assemble(dm, plan, LinkKind::Identity, intercept, beta, 1, true);
}

FittedModel fit_logistic(const DesignMatrix& dm, const Eigen::VectorXd& y, const TermPlan& plan,
                         const LogisticOptions& options) {
  const Eigen::Index n = dm.X.rows();
  const Eigen::Index k = dm.X.cols();
  if (y.size() != n) throw ModelError("response length does not match design rows");
  if (n <= k + 1) {
    throw ModelError("underdetermined fit: " + std::to_string(n) + " rows for " +
                     std::to_string(k + 1) + " coefficients");
  }
  Eigen::Index ones = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (y[i] != 0.0 && y[i] != 1.0) {
      throw ModelError("binary response required; found value " + std::to_string(y[i]));
    }
    if (y[i] == 1.0) ++ones;
  }
  if (ones == 0 || ones == n) throw ModelError("one-class response: cannot fit logistic model");

  Eigen::MatrixXd D(n, k + 1);
  D.col(0).setOnes();
  D.rightCols(k) = dm.X;
  {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(D);
    if (qr.rank() < k + 1) throw_aliased(dm, qr, 1);
  }

  // IRLS from the intercept-only fit.
  Eigen::VectorXd coef = Eigen::VectorXd::Zero(k + 1);
  coef[0] = logit(static_cast<double>(ones) / static_cast<double>(n));

  Eigen::VectorXd eta = D * coef;
  double dev = deviance(y, eta);
  bool converged = false;
  int iter = 0;
  while (iter < options.max_iterations) {
    ++iter;
    Eigen::VectorXd p(n), sw(n), zw(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      p[i] = inverse_link(LinkKind::Logit, eta[i]);
      double w = std::max(p[i] * (1.0 - p[i]), 1e-12);
      sw[i] = std::sqrt(w);
      // sqrt(w) * working response, assembled directly to avoid dividing by w
      zw[i] = sw[i] * eta[i] + (y[i] - p[i]) / sw[i];
    }
    Eigen::MatrixXd Dw = sw.asDiagonal() * D;
    Eigen::VectorXd next = Dw.householderQr().solve(zw);

    double max_change = (next - coef).cwiseAbs().maxCoeff();
    coef = next;
    eta = D * coef;
    double new_dev = deviance(y, eta);
    double rel_dev = std::abs(new_dev - dev) / (std::abs(dev) + 0.1);
    dev = new_dev;
    if (max_change < options.coef_tolerance || rel_dev < options.deviance_tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    std::cerr << "warning: IRLS did not converge in " << options.max_iterations
              << " iterations (suspected separation)\n";
  }

  return assemble(dm, plan, LinkKind::Logit, coef[0], coef.tail(k), iter, converged);
}

namespace {

std::string categorical_token(const std::string& column, const CaseValue& v, ColumnKind kind) {
  if (std::holds_alternative<std::string>(v)) {
    std::string s = std::get<std::string>(v);
    if (kind == ColumnKind::Logical) {
      if (s == "true") s = "TRUE";
      if (s == "false") s = "FALSE";
    }
    return s;
  }
  // Numeric value supplied for a level-based column (e.g. a forced-
  // categorical integer code): use the plain token form.
  double d = std::get<double>(v);
  if (d == std::floor(d) && std::abs(d) < 1e15) {
    return std::to_string(static_cast<long long>(d));
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", d);
  (void)column;
  return buf;
}

// Per-factor design values for one case, mirroring expand_factor.
std::vector<double> case_factor_values(const FittedModel& m, const CaseValues& row,
                                       const FactorRef& f, ColumnKind kind) {
  auto it = row.find(f.column);
  if (it == row.end()) throw ModelError("case is missing column '" + f.column + "'");
  if (kind == ColumnKind::Numeric) {
    if (!std::holds_alternative<double>(it->second)) {
      throw ModelError("column '" + f.column + "': expected a numeric value");
    }
    double x = std::get<double>(it->second);
    if (f.log) {
      if (!(x > 0.0)) throw ModelError("log of non-positive value in column '" + f.column + "'");
      x = std::log(x);
    }
    return {x};
  }
  std::string token = categorical_token(f.column, it->second, kind);
  auto lv = m.levels.find(f.column);
  if (lv == m.levels.end()) throw ModelError("no level map for column '" + f.column + "'");
  const auto& levels = lv->second;
  if (std::find(levels.begin(), levels.end(), token) == levels.end()) {
    throw ModelError("unseen level '" + token + "' for column '" + f.column + "'");
  }
  std::vector<double> dummies;
  for (std::size_t li = 1; li < levels.size(); ++li) {
    dummies.push_back(token == levels[li] ? 1.0 : 0.0);
  }
  return dummies;
}

}  // namespace

std::vector<std::vector<double>> case_design_values(const FittedModel& m, const CaseValues& row) {
  std::vector<std::vector<double>> out;
  out.reserve(m.terms.size());
  for (const auto& ft : m.terms) {
    const ModelTerm& t = ft.term;
    std::vector<double> vals;
    if (t.kind == TermKind::Interaction) {
      auto a = case_factor_values(m, row, t.factors[0], t.factor_kinds[0]);
      auto b = case_factor_values(m, row, t.factors[1], t.factor_kinds[1]);
      for (double va : a) {
        for (double vb : b) vals.push_back(va * vb);
      }
    } else {
      vals = case_factor_values(m, row, t.factors[0], t.factor_kinds[0]);
    }
    if (vals.size() != ft.coefs.size()) {
      throw ModelError("case/model mismatch for term '" + t.name + "'");
    }
    out.push_back(std::move(vals));
  }
  return out;
}

double linear_predictor(const FittedModel& m, const CaseValues& row) {
  auto design = case_design_values(m, row);
  double eta = m.intercept;
  for (std::size_t ti = 0; ti < m.terms.size(); ++ti) {
    const auto& coefs = m.terms[ti].coefs;
    for (std::size_t j = 0; j < coefs.size(); ++j) eta += coefs[j].value * design[ti][j];
  }
  return eta;
}

CaseValues case_from_row(const FittedModel& m, const Dataset& ds, std::size_t row) {
  if (row >= ds.n_rows()) {
    throw DataError("case index " + std::to_string(row + 1) + " out of range (dataset has " +
                    std::to_string(ds.n_rows()) + " rows)");
  }
  CaseValues values;
  for (const auto& ft : m.terms) {
    for (const auto& f : ft.term.factors) {
      const Column& c = ds.col(f.column);
      if (c.is_missing(row)) {
        throw DataError("case row " + std::to_string(row + 1) + " has a missing value in '" +
                        f.column + "'");
      }
      if (c.kind == ColumnKind::Numeric) {
        values[f.column] = c.numeric[row];
      } else {
        values[f.column] = c.text[row];
      }
    }
  }
  return values;
}

}  // namespace predterms
