#include "predterms/model_json.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "predterms/errors.hpp"

namespace predterms {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

std::string kind_name(TermKind k) {
  switch (k) {
    case TermKind::MainNumeric: return "main_numeric";
    case TermKind::MainCategorical: return "main_categorical";
    case TermKind::Interaction: return "interaction";
  }
  return "?";
}

TermKind kind_from(const std::string& s) {
  if (s == "main_numeric") return TermKind::MainNumeric;
  if (s == "main_categorical") return TermKind::MainCategorical;
  if (s == "interaction") return TermKind::Interaction;
  throw ModelError("model JSON: unknown term kind '" + s + "'");
}

std::string column_kind_name(ColumnKind k) { return to_string(k); }

ColumnKind column_kind_from(const std::string& s) {
  if (s == "numeric") return ColumnKind::Numeric;
  if (s == "categorical") return ColumnKind::Categorical;
  if (s == "logical") return ColumnKind::Logical;
  if (s == "character") return ColumnKind::Character;
  throw ModelError("model JSON: unknown column kind '" + s + "'");
}

std::string transform_name(ResponseTransform t) {
  switch (t) {
    case ResponseTransform::None: return "none";
    case ResponseTransform::Log: return "log";
    case ResponseTransform::Reciprocal: return "reciprocal";
  }
  return "?";
}

ResponseTransform transform_from(const std::string& s) {
  if (s == "none") return ResponseTransform::None;
  if (s == "log") return ResponseTransform::Log;
  if (s == "reciprocal") return ResponseTransform::Reciprocal;
  throw ModelError("model JSON: unknown response transform '" + s + "'");
}

const json& require(const json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end()) throw ModelError(std::string("model JSON missing field '") + field + "'");
  return *it;
}

}  // namespace

std::string save_model(const FittedModel& m) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["link"] = m.link == LinkKind::Identity ? "identity" : "logit";
  doc["response"] = {{"column", m.response.column},
                     {"transform", transform_name(m.response.transform)},
                     {"display", m.response.display}};
  doc["intercept"] = m.intercept;
  doc["iterations"] = m.iterations;
  doc["converged"] = m.converged;

  json terms = json::array();
  for (const auto& ft : m.terms) {
    json t;
    t["name"] = ft.term.name;
    t["kind"] = kind_name(ft.term.kind);
    json cols = json::array(), trans = json::array(), kinds = json::array();
    for (std::size_t i = 0; i < ft.term.factors.size(); ++i) {
      cols.push_back(ft.term.factors[i].column);
      trans.push_back(ft.term.factors[i].log ? "log" : "none");
      kinds.push_back(column_kind_name(ft.term.factor_kinds[i]));
    }
    t["columns"] = cols;
    t["transforms"] = trans;
    t["column_kinds"] = kinds;
    json levels = json::object();
    for (std::size_t i = 0; i < ft.term.factors.size(); ++i) {
      auto it = m.levels.find(ft.term.factors[i].column);
      if (it != m.levels.end()) levels[it->first] = it->second;
    }
    if (!levels.empty()) t["levels"] = levels;
    json coefs = json::array();
    for (const auto& c : ft.coefs) {
      json jc = {{"column", c.column}, {"value", c.value}, {"train_mean", c.train_mean}};
      if (!c.level.empty()) jc["level"] = c.level;
      coefs.push_back(jc);
    }
    t["coef"] = coefs;
    terms.push_back(t);
  }
  doc["terms"] = terms;
  return doc.dump(2) + "\n";
}

FittedModel load_model(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("malformed model JSON: ") + e.what());
  }
  int version = require(doc, "schema_version").get<int>();
  if (version != kSchemaVersion) {
    throw ModelError("unsupported model schema_version " + std::to_string(version));
  }

  FittedModel m;
  std::string link = require(doc, "link").get<std::string>();
  if (link == "identity") {
    m.link = LinkKind::Identity;
  } else if (link == "logit") {
    m.link = LinkKind::Logit;
  } else {
    throw ModelError("model JSON: unknown link '" + link + "'");
  }
  const json& resp = require(doc, "response");
  m.response.column = require(resp, "column").get<std::string>();
  m.response.transform = transform_from(require(resp, "transform").get<std::string>());
  m.response.display = require(resp, "display").get<std::string>();
  m.intercept = require(doc, "intercept").get<double>();
  m.iterations = doc.value("iterations", 0);
  m.converged = doc.value("converged", true);

  for (const auto& t : require(doc, "terms")) {
    FittedTerm ft;
    ft.term.name = require(t, "name").get<std::string>();
    ft.term.kind = kind_from(require(t, "kind").get<std::string>());
    const json& cols = require(t, "columns");
    const json& trans = require(t, "transforms");
    const json& kinds = require(t, "column_kinds");
    if (cols.size() != trans.size() || cols.size() != kinds.size()) {
      throw ModelError("model JSON: columns/transforms/column_kinds length mismatch");
    }
    for (std::size_t i = 0; i < cols.size(); ++i) {
      ft.term.factors.push_back(
          {cols[i].get<std::string>(), trans[i].get<std::string>() == "log"});
      ft.term.factor_kinds.push_back(column_kind_from(kinds[i].get<std::string>()));
    }
    if (t.contains("levels")) {
      for (auto it = t["levels"].begin(); it != t["levels"].end(); ++it) {
        m.levels[it.key()] = it.value().get<std::vector<std::string>>();
      }
    }
    for (const auto& c : require(t, "coef")) {
      FittedCoef fc;
      fc.column = require(c, "column").get<std::string>();
      fc.level = c.value("level", "");
      fc.value = require(c, "value").get<double>();
      fc.train_mean = require(c, "train_mean").get<double>();
      ft.coefs.push_back(std::move(fc));
    }
    m.terms.push_back(std::move(ft));
  }
  return m;
}

void save_model_file(const FittedModel& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ModelError("cannot write '" + path + "'");
  out << save_model(m);
}

FittedModel load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_model(ss.str());
}

}  // namespace predterms
