#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "predterms/terms.hpp"

namespace predterms {

enum class GlyphKind { Histogram, Bars, Density };

/// A labeled position on some axis, in the units of that axis.
struct AxisTick {
  double position = 0.0;
  std::string label;
};

struct HistBar {
  double lo = 0.0, hi = 0.0;  // bin span in term units
  double fraction = 0.0;      // bar length as share of the glyph width
};

struct LevelBar {
  double position = 0.0;
  double fraction = 0.0;
  std::string label;  // level or original value; empty for interactions
};

struct CurvePoint {
  double position = 0.0;
  double fraction = 0.0;
};

/// One vertical axis of the predictions plot. All geometry is stored in
/// term-local units; `offset` (staircase shift) is added by the renderer,
/// so cumulative placement stays inspectable.
struct SceneAxis {
  std::string name;
  GlyphKind glyph = GlyphKind::Histogram;
  std::vector<HistBar> hist;
  std::vector<LevelBar> bars;
  std::vector<CurvePoint> curve;
  std::vector<AxisTick> ticks;  // original-unit labels, numeric mains only
  std::string color;
  TermDirection direction = TermDirection::NoArrow;
  double offset = 0.0;
  double lo = 0.0, hi = 0.0;  // axis line extent (term units)
  bool has_marker = false;
  double marker = 0.0;
  std::string marker_color;
};

struct PredsplotScene {
  std::string title;
  std::vector<SceneAxis> axes;  // displayed terms, decreasing stdev
  SceneAxis total;              // rightmost axis
  std::vector<AxisTick> left_ticks;   // shared linear-predictor scale
  std::vector<AxisTick> right_ticks;  // response units through the inverse link
  double y_min = 0.0, y_max = 0.0;    // shared vertical range
  bool profile = false;               // broken line through the term markers
};

struct CorCell {
  std::size_t row = 0, col = 0;   // grid position in display order
  double width_frac = 1.0;        // of one grid cell
  double height_frac = 1.0;
  double value = 0.0;             // correlation as displayed (may be |r|)
  std::string fill;
  bool diagonal = false;
};

struct PredscorScene {
  std::string title;
  std::vector<std::string> names;  // row/column labels in display order
  std::vector<CorCell> cells;      // p*p entries
};

using PlotScene = std::variant<PredsplotScene, PredscorScene>;

}  // namespace predterms
