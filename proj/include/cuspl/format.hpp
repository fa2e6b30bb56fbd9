#pragma once

#include <string>

namespace cuspl {

/// 17 significant digits; integral values keep a trailing ".0".
std::string format_double(double x);

}  // namespace cuspl
