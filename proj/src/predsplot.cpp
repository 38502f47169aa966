#include "predterms/predsplot.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "predterms/errors.hpp"
#include "predterms/stats.hpp"
#include "predterms/textfmt.hpp"

namespace predterms {

namespace {

int step_decimals(double step) {
  int e = static_cast<int>(std::floor(std::log10(step) + 1e-9));
  return std::max(0, -e);
}

std::vector<double> column_of(const Eigen::MatrixXd& F, std::size_t j) {
  Eigen::VectorXd c = F.col(static_cast<Eigen::Index>(j));
  return std::vector<double>(c.data(), c.data() + c.size());
}

std::size_t distinct_count(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
}

// Horizontal bars, one per distinct value, length proportional to
// frequency. Labels: original numeric values for a numeric main effect,
// levels for a categorical one, nothing for interactions.
void fill_bars(SceneAxis& ax, const ModelTerm& term, const Dataset& ds,
               const std::vector<double>& fv) {
  struct Group {
    double position = 0.0;
    std::size_t count = 0;
  };
  std::map<std::string, Group> groups;  // label -> bar
  std::vector<std::string> order;       // first-seen keys, re-sorted below

  const bool numeric_main = term.kind == TermKind::MainNumeric;
  const bool categorical_main = term.kind == TermKind::MainCategorical;
  const Column* src = term.kind == TermKind::Interaction ? nullptr : &ds.col(term.factors[0].column);

  for (std::size_t r = 0; r < fv.size(); ++r) {
    std::string key;
    if (numeric_main) {
      key = shortest(src->numeric[r]);
    } else if (categorical_main) {
      key = src->text[r];
    } else {
      key = shortest(fv[r]);
    }
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) {
      it->second.position = fv[r];
      order.push_back(key);
    }
    ++it->second.count;
  }
  std::sort(order.begin(), order.end(), [&](const std::string& a, const std::string& b) {
    return groups[a].position < groups[b].position;
  });

  std::size_t max_count = 1;
  for (const auto& [key, g] : groups) max_count = std::max(max_count, g.count);
  for (const auto& key : order) {
    const Group& g = groups[key];
    LevelBar bar;
    bar.position = g.position;
    bar.fraction = static_cast<double>(g.count) / static_cast<double>(max_count);
    if (term.kind != TermKind::Interaction) bar.label = key;
    ax.bars.push_back(std::move(bar));
  }
  ax.lo = ax.bars.front().position;
  ax.hi = ax.bars.back().position;
}

void fill_histogram(SceneAxis& ax, const std::vector<double>& fv) {
  Histogram h = histogram(fv, histogram_bin_count(fv.size()));
  std::size_t max_count = 1;
  for (auto c : h.counts) max_count = std::max(max_count, c);
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    ax.hist.push_back({h.edges[i], h.edges[i + 1],
                       static_cast<double>(h.counts[i]) / static_cast<double>(max_count)});
  }
  ax.lo = h.edges.front();
  ax.hi = h.edges.back();
}

void fill_density(SceneAxis& ax, const std::vector<double>& fv, double bandwidth) {
  double bw = bandwidth > 0.0 ? bandwidth : default_bandwidth(fv);
  DensityCurve c = density_curve(fv, bw);
  double max_y = *std::max_element(c.y.begin(), c.y.end());
  ax.curve.reserve(c.x.size());
  for (std::size_t i = 0; i < c.x.size(); ++i) {
    ax.curve.push_back({c.x[i], c.y[i] / max_y});
  }
  ax.lo = c.x.front();
  ax.hi = c.x.back();
}

// Tick labels on a numeric main-effect axis show the original input values;
// their positions run through the term's transform and slope, so log-term
// ticks are not equally spaced.
void fill_numeric_ticks(SceneAxis& ax, const FittedTerm& ft, const Dataset& ds) {
  const Column& col = ds.col(ft.term.factors[0].column);
  double mn = col.numeric[0], mx = col.numeric[0];
  for (double v : col.numeric) {
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  const double b = ft.coefs[0].value;
  const double mean = ft.coefs[0].train_mean;
  const bool log_term = ft.term.factors[0].log;
  for (AxisTick t : nice_ticks(mn, mx)) {
    double x = t.position;
    if (log_term && x <= 0.0) continue;
    t.position = b * ((log_term ? std::log(x) : x) - mean);
    ax.ticks.push_back(std::move(t));
  }
}

SceneAxis axis_for_term(const FittedModel& m, const Dataset& ds, const PredictionTerms& pt,
                        std::size_t j, const Style& style, const PlotOptions& options,
                        bool grey) {
  SceneAxis ax;
  const FittedTerm& ft = m.terms[j];
  ax.name = ft.term.name;
  ax.direction = pt.directions[j];
  if (grey) {
    ax.color = style.neutral_color;
  } else {
    ax.color = ax.direction == TermDirection::Up     ? style.up_color
               : ax.direction == TermDirection::Down ? style.down_color
                                                     : style.neutral_color;
  }

  std::vector<double> fv = column_of(pt.F, j);
  if (distinct_count(fv) <= static_cast<std::size_t>(style.bars_threshold)) {
    ax.glyph = GlyphKind::Bars;
    fill_bars(ax, ft.term, ds, fv);
  } else if (options.display == DistStyle::Density) {
    ax.glyph = GlyphKind::Density;
    fill_density(ax, fv, options.bandwidth);
  } else {
    ax.glyph = GlyphKind::Histogram;
    fill_histogram(ax, fv);
  }
  if (ft.term.kind == TermKind::MainNumeric && ax.glyph != GlyphKind::Bars) {
    fill_numeric_ticks(ax, ft, ds);
  }
  return ax;
}

SceneAxis total_axis(const PredictionTerms& pt, const Style& style, const PlotOptions& options) {
  SceneAxis ax;
  ax.name = "total";
  ax.color = style.neutral_color;
  std::vector<double> fv(pt.total.data(), pt.total.data() + pt.total.size());
  if (distinct_count(fv) <= static_cast<std::size_t>(style.bars_threshold)) {
    ax.glyph = GlyphKind::Bars;
    std::map<double, std::size_t> groups;
    for (double v : fv) ++groups[v];
    std::size_t max_count = 1;
    for (const auto& [pos, n] : groups) max_count = std::max(max_count, n);
    for (const auto& [pos, n] : groups) {
      ax.bars.push_back({pos, static_cast<double>(n) / static_cast<double>(max_count), ""});
    }
    ax.lo = ax.bars.front().position;
    ax.hi = ax.bars.back().position;
  } else if (options.display == DistStyle::Density) {
    ax.glyph = GlyphKind::Density;
    fill_density(ax, fv, options.bandwidth);
  } else {
    ax.glyph = GlyphKind::Histogram;
    fill_histogram(ax, fv);
  }
  return ax;
}

void include_extent(double& lo, double& hi, const SceneAxis& ax) {
  lo = std::min(lo, ax.lo + ax.offset);
  hi = std::max(hi, ax.hi + ax.offset);
  if (ax.has_marker) {
    lo = std::min(lo, ax.marker + ax.offset);
    hi = std::max(hi, ax.marker + ax.offset);
  }
}

double logit(double p) { return std::log(p / (1.0 - p)); }

// Shared-scale ticks and response-unit labels on the right border. For the
// logit link the label values are probabilities, so they are not equally
// spaced on the linear scale.
void finish_scale(PredsplotScene& scene, const FittedModel& m, const PlotOptions& options) {
  scene.left_ticks.clear();
  scene.right_ticks.clear();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& ax : scene.axes) include_extent(lo, hi, ax);
  if (options.full_total_axis || scene.total.has_marker) {
    if (options.full_total_axis) {
      include_extent(lo, hi, scene.total);
    } else {
      lo = std::min(lo, scene.total.marker);
      hi = std::max(hi, scene.total.marker);
    }
  }
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  double pad = 0.02 * (hi - lo);
  scene.y_min = lo - pad;
  scene.y_max = hi + pad;

  scene.left_ticks = nice_ticks(scene.y_min, scene.y_max);

  const double cc = m.centercept();
  if (m.link == LinkKind::Logit) {
    static const double probs[] = {0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5,
                                   0.6,  0.7,  0.8, 0.9, 0.95, 0.99};
    for (double p : probs) {
      double pos = logit(p) - cc;
      if (pos < scene.y_min || pos > scene.y_max) continue;
      scene.right_ticks.push_back({pos, shortest(p)});
    }
  } else {
    for (AxisTick t : nice_ticks(scene.y_min + cc, scene.y_max + cc)) {
      t.position -= cc;
      scene.right_ticks.push_back(std::move(t));
    }
  }
}

void check_case(const PredictionTerms& pt, const CaseExplanation& ce) {
  if (ce.names != pt.names) throw PlotError("case/model mismatch");
}

void add_markers(PredsplotScene& scene, const std::vector<std::size_t>& order,
                 const CaseExplanation& ce, const Style& style) {
  for (std::size_t k = 0; k < order.size(); ++k) {
    SceneAxis& ax = scene.axes[k];
    ax.has_marker = true;
    ax.marker = ce.values[order[k]];
    int s = ce.signs[order[k]];
    ax.marker_color = s > 0 ? style.case_above : s < 0 ? style.case_below : style.neutral_color;
  }
  scene.total.has_marker = true;
  scene.total.marker = ce.sum;
  scene.total.marker_color = ce.sum > 0.0   ? style.case_above
                             : ce.sum < 0.0 ? style.case_below
                                            : style.neutral_color;
}

}  // namespace

std::vector<AxisTick> nice_ticks(double lo, double hi, int target) {
  std::vector<AxisTick> out;
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) return out;
  double raw = (hi - lo) / std::max(1, target);
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double norm = raw / mag;
  double step = norm < 1.5 ? mag : norm < 3.0 ? 2.0 * mag : norm < 7.0 ? 5.0 * mag : 10.0 * mag;
  int decimals = step_decimals(step);
  double first = std::ceil(lo / step - 1e-9) * step;
  for (double v = first; v <= hi + step * 1e-9; v += step) {
    double vv = std::fabs(v) < step * 1e-9 ? 0.0 : v;
    out.push_back({vv, fixed(vv, decimals)});
  }
  return out;
}

PredsplotScene layout_overall(const FittedModel& m, const Dataset& ds,
                              const PredictionTerms& pt, const Style& style,
                              const PlotOptions& options) {
  auto order = order_terms(pt, options.max_terms);
  if (order.empty()) throw PlotError("no prediction terms to display");

  PredsplotScene scene;
  scene.title = options.title;
  scene.axes.reserve(order.size());
  for (std::size_t idx : order) {
    scene.axes.push_back(axis_for_term(m, ds, pt, idx, style, options, /*grey=*/false));
  }
  scene.total = total_axis(pt, style, options);
  finish_scale(scene, m, options);
  return scene;
}

PredsplotScene layout_case(const FittedModel& m, const Dataset& ds, const PredictionTerms& pt,
                           const CaseExplanation& ce, const Style& style,
                           const PlotOptions& options, bool profile) {
  check_case(pt, ce);
  auto order = order_terms(pt, options.max_terms);
  if (order.empty()) throw PlotError("no prediction terms to display");

  PredsplotScene scene;
  scene.title = options.title;
  scene.profile = profile;
  for (std::size_t idx : order) {
    scene.axes.push_back(axis_for_term(m, ds, pt, idx, style, options, /*grey=*/true));
  }
  scene.total = total_axis(pt, style, options);
  add_markers(scene, order, ce, style);
  finish_scale(scene, m, options);
  return scene;
}

PredsplotScene layout_staircase(const FittedModel& m, const Dataset& ds,
                                const PredictionTerms& pt, const CaseExplanation& ce,
                                const Style& style, const PlotOptions& options) {
  check_case(pt, ce);
  PredsplotScene scene = layout_case(m, ds, pt, ce, style, options, /*profile=*/false);

  // Cumulative offsets run over all terms in display order, hidden terms
  // last, so truncating the display never moves the visible staircase and
  // the final cumulative value is still SUM.
  auto order = order_terms(pt, options.max_terms);
  double cum = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    scene.axes[k].offset = cum;
    cum += ce.values[order[k]];
  }
  finish_scale(scene, m, options);
  return scene;
}

}  // namespace predterms
