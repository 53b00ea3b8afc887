#pragma once

#include <string>

namespace avo {

// Fixed 15-significant-digit decimal rendering, locale independent:
// 0.5625 -> "0.562500000000000", 22.0 -> "22.0000000000000".
std::string format_real15(double v);

}  // namespace avo
