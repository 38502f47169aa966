#include "predterms/formula.hpp"

#include <cctype>
#include <set>

#include "predterms/errors.hpp"

namespace predterms {

std::string TermAST::name() const {
  std::string s = factors[0].name();
  for (std::size_t i = 1; i < factors.size(); ++i) s += ":" + factors[i].name();
  return s;
}

std::string FormulaAST::response_name() const {
  switch (response_transform) {
    case ResponseTransform::None: return response_column;
    case ResponseTransform::Log: return "log(" + response_column + ")";
    case ResponseTransform::Reciprocal: return "1/" + response_column;
  }
  return response_column;
}

std::string FormulaAST::pretty() const {
  std::string s = response_name() + " ~ ";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) s += " + ";
    s += terms[i].name();
  }
  return s;
}

namespace {

struct Lexer {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }
  // Single-char punctuation, or an identifier starting with letter/_/.
  bool peek_char(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }
  bool accept_char(char c) {
    if (!peek_char(c)) return false;
    ++pos;
    return true;
  }
  void expect_char(char c, const std::string& expected) {
    skip_ws();
    if (!accept_char(c)) fail(expected);
  }
  [[noreturn]] void fail(const std::string& expected) {
    skip_ws();
    std::string got = pos < text.size() ? "'" + std::string(1, text[pos]) + "'" : "end of input";
    throw FormulaError("formula syntax error at offset " + std::to_string(pos) + ": expected " +
                           expected + ", got " + got,
                       pos);
  }
  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '.';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
  }
  std::string expect_ident(const std::string& expected) {
    skip_ws();
    if (pos >= text.size() || !ident_start(text[pos])) fail(expected);
    std::size_t start = pos;
    while (pos < text.size() && ident_char(text[pos])) ++pos;
    return std::string(text.substr(start, pos - start));
  }
};

// factor := 'log' '(' ident ')' | ident
FactorRef parse_factor(Lexer& lex) {
  std::string id = lex.expect_ident("a variable name or 'log('");
  if (id == "log" && lex.peek_char('(')) {
    lex.accept_char('(');
    FactorRef f{lex.expect_ident("a variable name"), true};
    lex.expect_char(')', "')'");
    return f;
  }
  return {id, false};
}

}  // namespace

FormulaAST parse_formula(std::string_view text) {
  Lexer lex{text};
  if (lex.at_end()) throw FormulaError("empty formula", 0);

  FormulaAST ast;
  // response := 'log' '(' ident ')' | '1' '/' ident | ident
  lex.skip_ws();
  if (lex.peek_char('1')) {
    lex.accept_char('1');
    lex.expect_char('/', "'/' after '1'");
    ast.response_column = lex.expect_ident("a variable name after '1/'");
    ast.response_transform = ResponseTransform::Reciprocal;
  } else {
    FactorRef r = parse_factor(lex);
    ast.response_column = r.column;
    ast.response_transform = r.log ? ResponseTransform::Log : ResponseTransform::None;
  }
  lex.expect_char('~', "'~'");

  std::set<std::string> seen;
  while (true) {
    TermAST term;
    term.factors.push_back(parse_factor(lex));
    if (lex.accept_char(':')) term.factors.push_back(parse_factor(lex));
    if (!seen.insert(term.name()).second) {
      throw FormulaError("duplicate term '" + term.name() + "'", lex.pos);
    }
    ast.terms.push_back(std::move(term));
    if (lex.at_end()) break;
    lex.expect_char('+', "'+' or end of formula");
  }
  return ast;
}

Schema schema_of(const Dataset& ds) {
  Schema s;
  for (const auto& name : ds.names()) s[name] = ds.col(name).kind;
  return s;
}

std::vector<std::string> TermPlan::required_columns() const {
  std::vector<std::string> out{response.column};
  std::set<std::string> seen{response.column};
  for (const auto& t : terms) {
    for (const auto& f : t.factors) {
      if (seen.insert(f.column).second) out.push_back(f.column);
    }
  }
  return out;
}

TermPlan bind_schema(const FormulaAST& ast, const Schema& schema) {
  auto kind_of = [&](const std::string& col) {
    auto it = schema.find(col);
    if (it == schema.end()) throw FormulaError("unknown column '" + col + "'");
    return it->second;
  };

  TermPlan plan;
  ColumnKind resp_kind = kind_of(ast.response_column);
  if (resp_kind == ColumnKind::Categorical || resp_kind == ColumnKind::Character) {
    throw FormulaError("response '" + ast.response_column + "' is " + to_string(resp_kind) +
                       "; a numeric (or logical 0/1) response is required");
  }
  if (ast.response_transform != ResponseTransform::None && resp_kind != ColumnKind::Numeric) {
    throw FormulaError("response transform requires a numeric response");
  }
  plan.response = {ast.response_column, ast.response_transform, ast.response_name()};

  for (const auto& t : ast.terms) {
    ModelTerm mt;
    mt.name = t.name();
    mt.factors = t.factors;
    for (const auto& f : t.factors) {
      if (f.column == ast.response_column) {
        throw FormulaError("term '" + mt.name + "' references the response column");
      }
      ColumnKind k = kind_of(f.column);
      if (f.log && k != ColumnKind::Numeric) {
        throw FormulaError("log() applied to " + to_string(k) + " column '" + f.column + "'");
      }
      mt.factor_kinds.push_back(k);
    }
    if (t.factors.size() == 1) {
      mt.kind = mt.factor_kinds[0] == ColumnKind::Numeric ? TermKind::MainNumeric
                                                          : TermKind::MainCategorical;
    } else {
      if (t.factors[0].column == t.factors[1].column) {
        throw FormulaError("interaction '" + mt.name + "' repeats column '" +
                           t.factors[0].column + "'");
      }
      mt.kind = TermKind::Interaction;
    }
    plan.terms.push_back(std::move(mt));
  }
  return plan;
}

}  // namespace predterms
