#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace predterms {

/// Problems with input data: CSV structure, missing columns, degenerate
/// selections. CLI maps these to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Formula syntax or binding failure. Carries the byte offset into the
/// formula text where parsing stopped (npos for binding errors).
class FormulaError : public std::runtime_error {
 public:
  static constexpr std::size_t no_offset = static_cast<std::size_t>(-1);

  FormulaError(const std::string& what, std::size_t offset = no_offset)
      : std::runtime_error(what), offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Fitting and prediction failures: rank deficiency, unseen levels,
/// invalid responses, model file schema problems.
class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

/// Scene construction / rendering failures.
class PlotError : public std::runtime_error {
 public:
  explicit PlotError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace predterms
