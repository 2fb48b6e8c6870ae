#include "windres/json_out.hpp"

#include <cmath>
#include <cstdio>

#include "csv_util.hpp"

namespace windres {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

void dump_string(const std::string& s, std::string& out) {
  out += '"';
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void dump_value(const ordered_json& j, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  const std::string pad_in(static_cast<std::size_t>(depth + 1) * 2, ' ');
  switch (j.type()) {
    case ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump_string(key, out);
        out += ": ";
        dump_value(value, out, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump_value(value, out, depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case ordered_json::value_t::string:
      dump_string(j.get_ref<const std::string&>(), out);
      return;
    case ordered_json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case ordered_json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      return;
    case ordered_json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      return;
    case ordered_json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";  // JSON has no inf/nan
      } else {
        out += format_double(v);
      }
      return;
    }
    default:
      out += "null";
      return;
  }
}

}  // namespace

std::string dump_deterministic(const ordered_json& j) {
  std::string out;
  dump_value(j, out, 0);
  out += '\n';
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  auto out = detail::open_output(path.string());
  out << content;
  if (!out) fail(errc::io_error, "failed writing '" + path.string() + "'");
}

}  // namespace windres
