#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace predterms {

enum class ColumnKind { Numeric, Categorical, Logical, Character };

std::string to_string(ColumnKind kind);

/// One typed column. Raw tokens are kept for every kind; `numeric` is
/// populated only when kind == Numeric (missing entries hold NaN and are
/// flagged in `missing`).
struct Column {
  ColumnKind kind = ColumnKind::Character;
  std::vector<std::string> text;
  std::vector<double> numeric;
  std::vector<std::uint8_t> missing;

  std::size_t size() const { return missing.size(); }
  bool is_missing(std::size_t row) const { return missing[row] != 0; }

  /// Sorted distinct non-missing tokens. Meaningful for the three
  /// level-based kinds; Logical always yields {"FALSE","TRUE"} order.
  std::vector<std::string> levels() const;
};

/// Immutable-after-load columnar table with optional row identifiers.
class Dataset {
 public:
  std::size_t n_rows() const { return n_rows_; }
  const std::vector<std::string>& names() const { return names_; }
  bool has(const std::string& name) const { return index_.count(name) != 0; }
  const Column& col(const std::string& name) const;

  void add_column(const std::string& name, Column column);

  /// Reinterpret a column as Categorical, keeping its raw tokens as levels.
  void force_categorical(const std::string& name);

  std::vector<std::string> row_ids;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Column> cols_;
  std::size_t n_rows_ = 0;
  bool have_rows_ = false;
};

struct CsvOptions {
  char delimiter = ',';
  bool header = true;
  std::string id_column;                        // moved into Dataset::row_ids
  std::vector<std::string> force_categorical;  // kind overrides
};

/// Decide a column's kind from its raw tokens. Total: never throws.
ColumnKind infer_column_kind(const std::vector<std::string>& tokens,
                             const std::vector<std::uint8_t>& missing);

Dataset read_csv(std::istream& in, const CsvOptions& options = {});
Dataset read_csv_file(const std::string& path, const CsvOptions& options = {});

/// Rows with no missing value in any of `needed`. Returns the filtered
/// dataset and the number of dropped rows. Throws DataError if nothing
/// survives.
std::pair<Dataset, std::size_t> complete_cases(
    const Dataset& ds, const std::vector<std::string>& needed);

}  // namespace predterms
