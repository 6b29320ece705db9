#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace sixth::cli {

using json = nlohmann::ordered_json;

enum class Format { csv, json };

Format parse_format(const std::string& text);

/// 17 significant digits, shortest exponent form, no locale.
std::string format_double(double v);

using Cell = std::variant<std::monostate, std::int64_t, double, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  /// Header row, comma separated, LF endings; empty cells for monostate.
  void write_csv(std::ostream& os) const;
  /// Array of objects in column order; monostate becomes null.
  json to_json() const;
  void write(std::ostream& os, Format format) const;
};

void write_json(std::ostream& os, const json& j);

struct PowerFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  int points = 0;
};

/// OLS of log|y| on log x, skipping zero y. Needs two usable points.
PowerFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace sixth::cli
