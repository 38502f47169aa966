#include "predterms/case_json.hpp"

#include <charconv>
#include <json.hpp>
#include <map>
#include <set>

#include "predterms/errors.hpp"

namespace predterms {

CaseValues parse_case_json(const std::string& text, const FittedModel& m) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("case JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DataError("case JSON must be an object of column values");

  std::map<std::string, ColumnKind> kinds;
  for (const auto& ft : m.terms) {
    for (std::size_t i = 0; i < ft.term.factors.size(); ++i) {
      kinds[ft.term.factors[i].column] = ft.term.factor_kinds[i];
    }
  }

  CaseValues values;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    auto kind = kinds.find(it.key());
    if (kind == kinds.end()) throw DataError("unknown column '" + it.key() + "' in case");
    const nlohmann::json& v = it.value();
    if (kind->second == ColumnKind::Numeric) {
      if (v.is_number()) {
        values[it.key()] = v.get<double>();
      } else if (v.is_string()) {
        const std::string s = v.get<std::string>();
        double d = 0.0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), d);
        if (ec != std::errc{} || p != s.data() + s.size()) {
          throw DataError("column '" + it.key() + "': cannot parse '" + s + "' as a number");
        }
        values[it.key()] = d;
      } else {
        throw DataError("column '" + it.key() + "' expects a number");
      }
    } else {
      if (v.is_string()) {
        values[it.key()] = v.get<std::string>();
      } else if (v.is_boolean()) {
        values[it.key()] = std::string(v.get<bool>() ? "TRUE" : "FALSE");
      } else if (v.is_number()) {
        values[it.key()] = v.get<double>();  // integer codes; tokenized downstream
      } else {
        throw DataError("column '" + it.key() + "' expects a level");
      }
    }
  }

  std::set<std::string> missing;
  for (const auto& [col, kind] : kinds) {
    if (!values.count(col)) missing.insert(col);
  }
  if (!missing.empty()) {
    std::string msg = "case is missing columns:";
    for (const auto& col : missing) msg += " " + col;
    throw DataError(msg);
  }

  // Validates levels and numeric ranges (e.g. log terms) up front.
  case_design_values(m, values);
  return values;
}

}  // namespace predterms
