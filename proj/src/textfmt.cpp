#include "predterms/textfmt.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace predterms {

std::string fixed(double v, int precision) {
  char buf[512];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
  return std::string(buf, res.ptr);
}

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

// floor(log10(|v|)) with a guard against log10 landing just below an
// integer (e.g. log10(1000) -> 2.9999...).
int exponent_of(double v) {
  double a = std::fabs(v);
  int e = static_cast<int>(std::floor(std::log10(a)));
  if (std::pow(10.0, e + 1) <= a) ++e;
  return e;
}

}  // namespace

double signif(double v, int digits) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  int e = exponent_of(v);
  int k = digits - 1 - e;
  // nearbyint under the default rounding mode gives ties-to-even. Scale by
  // an exact power of ten (dividing for the negative case) so values like
  // 12345 hit the tie exactly instead of picking up rounding noise.
  if (k >= 0) {
    double scale = std::pow(10.0, k);
    return std::nearbyint(v * scale) / scale;
  }
  double scale = std::pow(10.0, -k);
  return std::nearbyint(v / scale) * scale;
}

int signif4_decimals(double v) {
  if (v == 0.0 || !std::isfinite(v)) return 0;
  return std::max(0, 3 - exponent_of(v));
}

}  // namespace predterms
