#include "predterms/terms.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>

#include "predterms/stats.hpp"
#include "predterms/textfmt.hpp"

namespace predterms {

namespace {

// f_j for one case: each term's design values minus the stored training
// means, weighted by the coefficients. compute_terms and explain_case both
// go through here, so an in-sample explanation reproduces the matching row
// of F bit for bit.
std::vector<double> term_values(const FittedModel& m, const CaseValues& row) {
  auto design = case_design_values(m, row);
  std::vector<double> f(m.terms.size(), 0.0);
  for (std::size_t j = 0; j < m.terms.size(); ++j) {
    const auto& coefs = m.terms[j].coefs;
    double s = 0.0;
    for (std::size_t c = 0; c < coefs.size(); ++c) {
      s += coefs[c].value * (design[j][c] - coefs[c].train_mean);
    }
    f[j] = s;
  }
  return f;
}

std::string pad_left(const std::string& s, std::size_t width) {
  if (s.size() >= width) return s;
  return std::string(width - s.size(), ' ') + s;
}

}  // namespace

TermDirection term_direction(const ModelTerm& term, const std::vector<FittedCoef>& coefs) {
  if (term.kind != TermKind::MainNumeric) return TermDirection::NoArrow;
  double b = coefs.empty() ? 0.0 : coefs.front().value;
  if (b > 0.0) return TermDirection::Up;
  if (b < 0.0) return TermDirection::Down;
  return TermDirection::NoArrow;
}

PredictionTerms compute_terms(const FittedModel& m, const Dataset& ds) {
  const std::size_t n = ds.n_rows();
  const std::size_t p = m.terms.size();

  PredictionTerms pt;
  pt.response = m.response.display;
  pt.centercept = m.centercept();
  pt.names.reserve(p);
  for (const auto& ft : m.terms) pt.names.push_back(ft.term.name);

  pt.F.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  for (std::size_t r = 0; r < n; ++r) {
    auto f = term_values(m, case_from_row(m, ds, r));
    for (std::size_t j = 0; j < p; ++j) pt.F(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = f[j];
  }
  pt.total = pt.F.rowwise().sum();
  pt.total_stdev = sample_sd(pt.total);

  pt.stdevs.resize(p);
  pt.directions.resize(p);
  for (std::size_t j = 0; j < p; ++j) {
    pt.stdevs[j] = sample_sd(pt.F.col(static_cast<Eigen::Index>(j)));
    // A constant contribution carries no direction, whatever its slope.
    pt.directions[j] = pt.stdevs[j] == 0.0
                           ? TermDirection::NoArrow
                           : term_direction(m.terms[j].term, m.terms[j].coefs);
  }

  pt.display_order.resize(p);
  std::iota(pt.display_order.begin(), pt.display_order.end(), std::size_t{0});
  std::stable_sort(pt.display_order.begin(), pt.display_order.end(),
                   [&](std::size_t a, std::size_t b) { return pt.stdevs[a] > pt.stdevs[b]; });
  return pt;
}

std::vector<std::size_t> order_terms(const PredictionTerms& pt, std::size_t max_terms) {
  std::vector<std::size_t> order = pt.display_order;
  if (order.size() > max_terms) order.resize(max_terms);
  return order;
}

CaseExplanation explain_case(const FittedModel& m, const CaseValues& row) {
  CaseExplanation ce;
  ce.response = m.response.display;
  ce.provenance = "supplied case";
  for (const auto& ft : m.terms) ce.names.push_back(ft.term.name);
  ce.values = term_values(m, row);
  ce.signs.reserve(ce.values.size());
  for (double v : ce.values) ce.signs.push_back(v > 0.0 ? 1 : v < 0.0 ? -1 : 0);
  ce.sum = std::accumulate(ce.values.begin(), ce.values.end(), 0.0);
  ce.centercept = m.centercept();
  ce.total_linear = ce.sum + ce.centercept;
  ce.response_units = inverse_link(m.link, ce.total_linear);
  return ce;
}

CaseExplanation explain_case(const FittedModel& m, const Dataset& ds, std::size_t row) {
  CaseExplanation ce = explain_case(m, case_from_row(m, ds, row));
  ce.provenance = "case " + (row < ds.row_ids.size() ? ds.row_ids[row] : std::to_string(row + 1));
  return ce;
}

std::string print_term_table(const PredictionTerms& pt) {
  const std::string header_label = "prediction term";
  const std::size_t p = pt.names.size();
  if (p == 0) {
    return pad_left(header_label, header_label.size() + 1) + " " + "stdev up/down\n";
  }

  const std::string total_label = "Total prediction of " + pt.response;
  std::vector<double> vals(p);
  int decimals = 0;
  for (std::size_t j = 0; j < p; ++j) {
    vals[j] = signif(pt.stdevs[j], 4);
    decimals = std::max(decimals, signif4_decimals(vals[j]));
  }
  double total_val = signif(pt.total_stdev, 4);
  decimals = std::max(decimals, signif4_decimals(total_val));

  std::vector<std::string> val_text(p);
  std::size_t wlab = std::max(header_label.size(), total_label.size());
  std::size_t wval = std::string("stdev").size();
  for (std::size_t j = 0; j < p; ++j) {
    val_text[j] = fixed(vals[j], decimals);
    wlab = std::max(wlab, pt.names[j].size());
    wval = std::max(wval, val_text[j].size());
  }
  std::string total_text = fixed(total_val, decimals);
  wval = std::max(wval, total_text.size());
  ++wlab;  // one leading space before the widest label

  std::string out = pad_left(header_label, wlab) + " " + pad_left("stdev", wval) + " up/down\n";
  for (std::size_t j = 0; j < p; ++j) {
    const char* dir = pt.directions[j] == TermDirection::Up     ? "up"
                      : pt.directions[j] == TermDirection::Down ? "down"
                                                                : "";
    out += pad_left(pt.names[j], wlab) + " " + pad_left(val_text[j], wval) + " " +
           pad_left(dir, 7) + "\n";
  }
  out += pad_left(total_label, wlab) + " " + pad_left(total_text, wval) + "\n";
  return out;
}

std::string print_case_table(const CaseExplanation& ce) {
  auto signed_text = [](double v) {
    std::string s = fixed(v, 5);
    if (!s.empty() && s[0] != '-') s.insert(s.begin(), '+');
    return s;
  };

  std::vector<std::string> labels = ce.names;
  labels.push_back("SUM");
  labels.push_back("centercept");
  labels.push_back("Total linear prediction of " + ce.response);
  labels.push_back("Total prediction of " + ce.response + " in response units");

  std::vector<std::string> values;
  values.reserve(labels.size());
  for (double v : ce.values) values.push_back(signed_text(v));
  values.push_back(signed_text(ce.sum));
  values.push_back(fixed(ce.centercept, 5));
  values.push_back(fixed(ce.total_linear, 5));
  values.push_back(fixed(ce.response_units, 5));

  const std::string header_label = "prediction term";
  std::size_t wlab = header_label.size();
  for (const auto& l : labels) wlab = std::max(wlab, l.size());
  ++wlab;
  std::size_t wval = std::string("value").size();
  for (const auto& v : values) wval = std::max(wval, v.size());

  std::string out = pad_left(header_label, wlab) + " " + pad_left("value", wval) + "\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out += pad_left(labels[i], wlab) + " " + pad_left(values[i], wval) + "\n";
  }
  return out;
}

}  // namespace predterms
