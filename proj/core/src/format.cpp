#include "avo/format.hpp"

#include <cmath>
#include <cstdio>

namespace avo {

std::string format_real15(double v) {
  if (v == 0.0) return "0.000000000000000";
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  double av = std::fabs(v);
  int exponent = static_cast<int>(std::floor(std::log10(av)));
  // `decimals` places after the point give 15 significant digits
  int decimals = 14 - exponent;
  if (decimals < 0) decimals = 0;
  if (decimals > 30) decimals = 30;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

}  // namespace avo
