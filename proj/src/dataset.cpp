#include "predterms/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <set>
#include <sstream>

#include "predterms/errors.hpp"

namespace predterms {

namespace {

bool is_missing_token(const std::string& s) { return s.empty() || s == "NA"; }

bool is_logical_token(const std::string& s) {
  return s == "TRUE" || s == "FALSE" || s == "true" || s == "false";
}

bool parse_double(const std::string& s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && (*first == '+')) ++first;  // from_chars rejects '+'
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) return false;
  return std::isfinite(out);
}

}  // namespace

std::string to_string(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::Numeric: return "numeric";
    case ColumnKind::Categorical: return "categorical";
    case ColumnKind::Logical: return "logical";
    case ColumnKind::Character: return "character";
  }
  return "?";
}

std::vector<std::string> Column::levels() const {
  std::set<std::string> distinct;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!is_missing(i)) distinct.insert(text[i]);
  }
  return {distinct.begin(), distinct.end()};
}

const Column& Dataset::col(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw DataError("unknown column '" + name + "'");
  return cols_[it->second];
}

void Dataset::add_column(const std::string& name, Column column) {
  if (index_.count(name)) throw DataError("duplicate column name '" + name + "'");
  if (have_rows_ && column.size() != n_rows_) {
    throw DataError("column '" + name + "' has " + std::to_string(column.size()) +
                    " rows, expected " + std::to_string(n_rows_));
  }
  n_rows_ = column.size();
  have_rows_ = true;
  index_[name] = cols_.size();
  names_.push_back(name);
  cols_.push_back(std::move(column));
}

void Dataset::force_categorical(const std::string& name) {
  auto it = index_.find(name);
  if (it == index_.end()) throw DataError("unknown column '" + name + "'");
  Column& c = cols_[it->second];
  c.kind = ColumnKind::Categorical;
  c.numeric.clear();
}

ColumnKind infer_column_kind(const std::vector<std::string>& tokens,
                             const std::vector<std::uint8_t>& missing) {
  bool all_numeric = true;
  bool all_logical = true;
  bool any_value = false;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (missing[i]) continue;
    any_value = true;
    double v;
    if (all_numeric && !parse_double(tokens[i], v)) all_numeric = false;
    if (all_logical && !is_logical_token(tokens[i])) all_logical = false;
    if (!all_numeric && !all_logical) break;
  }
  if (!any_value) return ColumnKind::Character;
  if (all_numeric) return ColumnKind::Numeric;
  if (all_logical) return ColumnKind::Logical;
  return ColumnKind::Character;
}

namespace {

// RFC 4180-ish: quoted fields may contain the delimiter, doubled quotes
// and line breaks.
std::vector<std::vector<std::string>> parse_csv(std::istream& in, char delim) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool row_started = false;
  char ch;
  while (in.get(ch)) {
    if (in_quotes) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get(ch);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(ch);
      }
      continue;
    }
    if (ch == '"' && field.empty()) {
      in_quotes = true;
      row_started = true;
    } else if (ch == delim) {
      row.push_back(std::move(field));
      field.clear();
      row_started = true;
    } else if (ch == '\n' || ch == '\r') {
      if (ch == '\r' && in.peek() == '\n') in.get(ch);
      if (row_started || !field.empty()) {
        row.push_back(std::move(field));
        field.clear();
        rows.push_back(std::move(row));
        row.clear();
        row_started = false;
      }
    } else {
      field.push_back(ch);
      row_started = true;
    }
  }
  if (in_quotes) throw DataError("unterminated quoted field at end of input");
  if (row_started || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Dataset read_csv(std::istream& in, const CsvOptions& options) {
  auto rows = parse_csv(in, options.delimiter);
  if (rows.empty()) throw DataError("empty CSV input");

  std::vector<std::string> header;
  std::size_t first_data = 0;
  if (options.header) {
    header = rows[0];
    first_data = 1;
    std::set<std::string> seen;
    for (const auto& h : header) {
      if (!seen.insert(h).second) throw DataError("duplicate header name '" + h + "'");
    }
  } else {
    for (std::size_t j = 0; j < rows[0].size(); ++j) header.push_back("V" + std::to_string(j + 1));
  }
  const std::size_t k = header.size();
  const std::size_t n = rows.size() - first_data;

  for (std::size_t i = first_data; i < rows.size(); ++i) {
    if (rows[i].size() != k) {
      throw DataError("ragged row " + std::to_string(i + 1) + ": has " +
                      std::to_string(rows[i].size()) + " fields, expected " + std::to_string(k));
    }
  }

  Dataset ds;
  for (std::size_t j = 0; j < k; ++j) {
    Column c;
    c.text.reserve(n);
    c.missing.reserve(n);
    for (std::size_t i = first_data; i < rows.size(); ++i) {
      c.missing.push_back(is_missing_token(rows[i][j]) ? 1 : 0);
      c.text.push_back(std::move(rows[i][j]));
    }
    c.kind = infer_column_kind(c.text, c.missing);
    if (c.kind == ColumnKind::Numeric) {
      c.numeric.resize(n, std::numeric_limits<double>::quiet_NaN());
      for (std::size_t i = 0; i < n; ++i) {
        if (!c.missing[i]) parse_double(c.text[i], c.numeric[i]);
      }
    } else if (c.kind == ColumnKind::Logical) {
      for (std::size_t i = 0; i < n; ++i) {
        if (c.missing[i]) continue;
        c.text[i] = (c.text[i] == "TRUE" || c.text[i] == "true") ? "TRUE" : "FALSE";
      }
    }

    if (header[j] == options.id_column) {
      ds.row_ids.assign(c.text.begin(), c.text.end());
    } else {
      ds.add_column(header[j], std::move(c));
    }
  }
  if (!options.id_column.empty() && ds.row_ids.empty()) {
    throw DataError("id column '" + options.id_column + "' not found");
  }
  for (const auto& name : options.force_categorical) ds.force_categorical(name);
  return ds;
}

Dataset read_csv_file(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  return read_csv(in, options);
}

std::pair<Dataset, std::size_t> complete_cases(const Dataset& ds,
                                               const std::vector<std::string>& needed) {
  std::vector<const Column*> cols;
  cols.reserve(needed.size());
  for (const auto& name : needed) cols.push_back(&ds.col(name));

  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < ds.n_rows(); ++i) {
    bool ok = true;
    for (const Column* c : cols) {
      if (c->is_missing(i)) {
        ok = false;
        break;
      }
    }
    if (ok) keep.push_back(i);
  }
  if (keep.empty()) throw DataError("no complete cases for the requested columns");

  Dataset out;
  for (const auto& name : ds.names()) {
    const Column& src = ds.col(name);
    Column c;
    c.kind = src.kind;
    c.text.reserve(keep.size());
    c.missing.reserve(keep.size());
    if (src.kind == ColumnKind::Numeric) c.numeric.reserve(keep.size());
    for (std::size_t i : keep) {
      c.text.push_back(src.text[i]);
      c.missing.push_back(src.missing[i]);
      if (src.kind == ColumnKind::Numeric) c.numeric.push_back(src.numeric[i]);
    }
    out.add_column(name, std::move(c));
  }
  if (!ds.row_ids.empty()) {
    out.row_ids.reserve(keep.size());
    for (std::size_t i : keep) out.row_ids.push_back(ds.row_ids[i]);
  }
  return {std::move(out), ds.n_rows() - keep.size()};
}

}  // namespace predterms
