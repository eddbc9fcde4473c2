#pragma once

#include <cstdio>
#include <ostream>
#include <string>

namespace hjnet {

// Round-trippable, locale-independent double formatting for CSV output.
inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Every output file starts with one JSON comment line echoing the resolved
// configuration that produced it.
inline void write_header_comment(std::ostream& os, const std::string& json) {
  os << "# " << json << "\n";
}

}  // namespace hjnet
