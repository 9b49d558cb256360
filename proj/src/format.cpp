#include "qctame/format.hpp"

#include <cstdio>

namespace qctame {

std::string format_double(double value, int significant_digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant_digits, value + 0.0);
  return buf;
}

}  // namespace qctame
