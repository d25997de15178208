#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace privrand {

// Fixed 12-significant-digit, locale-independent formatting used by every
// CSV/JSON emitter, so identical inputs give byte-identical outputs.
inline std::string fmt12(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string fmt_bool(bool b) { return b ? "1" : "0"; }

}  // namespace privrand
