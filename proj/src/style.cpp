#include "predterms/style.hpp"

#include <functional>
#include <json.hpp>
#include <map>

#include "predterms/errors.hpp"

namespace predterms {

Style default_style() { return {}; }

void apply_style_json(Style& style, const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("style JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DataError("style JSON must be an object");

  std::map<std::string, std::function<void(const nlohmann::json&)>> setters;
  auto num = [&](const char* key, double& field) {
    setters[key] = [key, &field](const nlohmann::json& v) {
      if (!v.is_number()) throw DataError(std::string("style key '") + key + "' must be a number");
      field = v.get<double>();
    };
  };
  auto str = [&](const char* key, std::string& field) {
    setters[key] = [key, &field](const nlohmann::json& v) {
      if (!v.is_string()) throw DataError(std::string("style key '") + key + "' must be a string");
      field = v.get<std::string>();
    };
  };
  auto integer = [&](const char* key, int& field) {
    setters[key] = [key, &field](const nlohmann::json& v) {
      if (!v.is_number_integer()) {
        throw DataError(std::string("style key '") + key + "' must be an integer");
      }
      field = v.get<int>();
    };
  };

  num("width", style.width);
  num("height", style.height);
  num("margin_left", style.margin_left);
  num("margin_right", style.margin_right);
  num("margin_top", style.margin_top);
  num("margin_bottom", style.margin_bottom);
  str("up_color", style.up_color);
  str("down_color", style.down_color);
  str("neutral_color", style.neutral_color);
  str("case_above", style.case_above);
  str("case_below", style.case_below);
  str("profile_color", style.profile_color);
  str("axis_color", style.axis_color);
  str("text_color", style.text_color);
  str("background", style.background);
  str("font_family", style.font_family);
  num("glyph_width", style.glyph_width);
  num("marker_radius", style.marker_radius);
  num("tick_length", style.tick_length);
  num("font_size", style.font_size);
  num("title_size", style.title_size);
  num("bar_thickness", style.bar_thickness);
  num("line_width", style.line_width);
  integer("bars_threshold", style.bars_threshold);
  num("min_cell_side", style.min_cell_side);

  for (auto it = doc.begin(); it != doc.end(); ++it) {
    auto s = setters.find(it.key());
    if (s == setters.end()) throw DataError("unknown style key '" + it.key() + "'");
    s->second(it.value());
  }
}

}  // namespace predterms
