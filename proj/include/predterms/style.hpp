#pragma once

#include <string>

namespace predterms {

/// Colors and geometry for the SVG displays. Everything here can be
/// overridden through a JSON object {"key": value, ...}.
struct Style {
  double width = 900.0;
  double height = 560.0;
  double margin_left = 70.0;
  double margin_right = 78.0;
  double margin_top = 52.0;
  double margin_bottom = 58.0;

  std::string up_color = "#2E8B57";       // numeric term, positive slope
  std::string down_color = "#8B5A2B";     // numeric term, negative slope
  std::string neutral_color = "#9B9B9B";  // categorical / logical / interaction
  std::string case_above = "#DD3333";     // marker above the term average
  std::string case_below = "#3366CC";     // marker below
  std::string profile_color = "#BBBBBB";  // broken line through case markers
  std::string axis_color = "#444444";
  std::string text_color = "#000000";
  std::string background = "#FFFFFF";
  std::string font_family = "Helvetica, Arial, sans-serif";

  double glyph_width = 52.0;    // longest bar / widest density bulge, px
  double marker_radius = 4.5;
  double tick_length = 4.0;
  double font_size = 12.0;
  double title_size = 15.0;
  double bar_thickness = 3.0;   // level bars, px
  double line_width = 1.0;

  int bars_threshold = 8;       // <= this many distinct values draws bars
  double min_cell_side = 2.0;   // smallest rendered predscor cell, px
};

Style default_style();

/// Apply overrides from a JSON object; unknown keys and wrong types are
/// reported as errors so typos do not pass silently.
void apply_style_json(Style& style, const std::string& json_text);

}  // namespace predterms
