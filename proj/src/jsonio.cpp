#include "twq/jsonio.hpp"

#include <cmath>
#include <cstdio>

namespace twq {

std::string fmt17(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  // keep it a float on re-import
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

namespace {

void write(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        write(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& x : j) {
        if (!first) out += ',';
        first = false;
        write(x, out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float:
      out += fmt17(j.get<double>());
      break;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump17(const Json& j) {
  std::string out;
  write(j, out);
  return out;
}

}  // namespace twq
