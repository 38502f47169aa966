#pragma once

#include <limits>
#include <string>
#include <vector>

#include "predterms/scene.hpp"
#include "predterms/style.hpp"

namespace predterms {

enum class DistStyle { Histogram, Density };

struct PlotOptions {
  DistStyle display = DistStyle::Histogram;
  double bandwidth = 0.0;  // 0 = normal-reference rule per axis
  std::size_t max_terms = std::numeric_limits<std::size_t>::max();
  bool full_total_axis = false;
  std::string title;
};

/// Round tick positions covering [lo, hi]: step 1/2/5 x 10^k, labels with
/// the decimals the step calls for.
std::vector<AxisTick> nice_ticks(double lo, double hi, int target = 5);

PredsplotScene layout_overall(const FittedModel& m, const Dataset& ds,
                              const PredictionTerms& pt, const Style& style,
                              const PlotOptions& options);

PredsplotScene layout_case(const FittedModel& m, const Dataset& ds, const PredictionTerms& pt,
                           const CaseExplanation& ce, const Style& style,
                           const PlotOptions& options, bool profile);

PredsplotScene layout_staircase(const FittedModel& m, const Dataset& ds,
                                const PredictionTerms& pt, const CaseExplanation& ce,
                                const Style& style, const PlotOptions& options);

}  // namespace predterms
