#include "output.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "sixth/errors.hpp"

namespace sixth::cli {

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  throw InvalidArgument("unknown format '" + text + "' (expected csv or json)");
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, end);
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("table row width mismatch");
  rows.push_back(std::move(row));
}

namespace {

std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string q = "\"";
          for (char ch : v) {
            if (ch == '"') q += '"';
            q += ch;
          }
          return q + '"';
        }
      },
      c);
}

json json_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
          return v;
        } else {
          return v;
        }
      },
      c);
}

}  // namespace

void Table::write_csv(std::ostream& os) const {
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
}

json Table::to_json() const {
  json arr = json::array();
  for (const auto& row : rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[columns[i]] = json_cell(row[i]);
    arr.push_back(std::move(obj));
  }
  return arr;
}

void Table::write(std::ostream& os, Format format) const {
  if (format == Format::csv) {
    write_csv(os);
  } else {
    write_json(os, to_json());
  }
}

void write_json(std::ostream& os, const json& j) { os << j.dump(2) << '\n'; }

PowerFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw InvalidArgument("fit needs matching x and y");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[i] == 0.0 || !(x[i] > 0.0) || !std::isfinite(y[i])) continue;
    const double lx = std::log(x[i]), ly = std::log(std::fabs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) throw InvalidArgument("fit needs at least two nonzero points");
  const double den = n * sxx - sx * sx;
  if (den <= 0.0) throw InvalidArgument("fit abscissae are degenerate");
  PowerFit f;
  f.exponent = (n * sxy - sx * sy) / den;
  f.prefactor = std::exp((sy - f.exponent * sx) / n);
  f.points = n;
  return f;
}

}  // namespace sixth::cli
