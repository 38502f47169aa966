#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "predterms/dataset.hpp"

namespace predterms {

enum class ResponseTransform { None, Log, Reciprocal };

/// One column reference inside a term, with an optional log transform.
struct FactorRef {
  std::string column;
  bool log = false;

  std::string name() const { return log ? "log(" + column + ")" : column; }
  bool operator==(const FactorRef&) const = default;
};

/// A model term as written: one factor (main effect) or two (interaction).
struct TermAST {
  std::vector<FactorRef> factors;

  std::string name() const;
  bool operator==(const TermAST&) const = default;
};

/// Parsed formula, prior to schema binding.
///
/// Grammar:
///   formula  := response '~' term ('+' term)*
///   response := 'log' '(' ident ')' | '1' '/' ident | ident
///   term     := factor (':' factor)?
///   factor   := 'log' '(' ident ')' | ident
struct FormulaAST {
  std::string response_column;
  ResponseTransform response_transform = ResponseTransform::None;
  std::vector<TermAST> terms;

  std::string response_name() const;
  /// Canonical text; reparsing it yields an equal AST.
  std::string pretty() const;
  bool operator==(const FormulaAST&) const = default;
};

FormulaAST parse_formula(std::string_view text);

enum class TermKind { MainNumeric, MainCategorical, Interaction };

struct ModelTerm {
  TermKind kind;
  std::string name;
  std::vector<FactorRef> factors;
  std::vector<ColumnKind> factor_kinds;
};

struct ResponseSpec {
  std::string column;
  ResponseTransform transform = ResponseTransform::None;
  /// Display string, e.g. "GPM", "1/MPG", "log(price)".
  std::string display;
};

/// Validated formula bound against a dataset schema.
struct TermPlan {
  ResponseSpec response;
  std::vector<ModelTerm> terms;

  /// All dataset columns the plan touches (response first).
  std::vector<std::string> required_columns() const;
};

using Schema = std::map<std::string, ColumnKind>;

TermPlan bind_schema(const FormulaAST& ast, const Schema& schema);

Schema schema_of(const Dataset& ds);

}  // namespace predterms
