#include "json_writer.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace cslab::cli {

namespace {

void indent(std::ostream& out, int depth) {
  for (int i = 0; i < depth; ++i) out << "  ";
}

void write_number(std::ostream& out, double v) {
  if (!std::isfinite(v)) {
    out << "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // keep it a JSON float so readers do not narrow it to an integer
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  out << s;
}

void write_value(std::ostream& out, const Json& v, int depth) {
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        indent(out, depth + 1);
        out << Json(it.key()).dump() << ": ";
        write_value(out, it.value(), depth + 1);
      }
      out << '\n';
      indent(out, depth);
      out << '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out << ",\n";
        indent(out, depth + 1);
        write_value(out, v[i], depth + 1);
      }
      out << '\n';
      indent(out, depth);
      out << ']';
      return;
    }
    case Json::value_t::number_float:
      write_number(out, v.get<double>());
      return;
    default:
      out << v.dump();
  }
}

}  // namespace

void write_json(std::ostream& out, const Json& value) {
  write_value(out, value, 0);
  out << '\n';
}

std::string to_json_string(const Json& value) {
  std::ostringstream s;
  write_json(s, value);
  return s.str();
}

}  // namespace cslab::cli
