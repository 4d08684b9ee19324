#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bogo/harmonic.hpp"

namespace bogo {

enum class ColumnType { Integer, Real, Complex, Text };

struct Column {
  std::string name;
  ColumnType type = ColumnType::Real;
};

using Cell = std::variant<long long, double, cplx, std::string>;

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();

  void add_row(std::vector<Cell> row);  // checks arity and cell types
  std::size_t column(const std::string& name) const;
};

// CSV: header row, complex columns split into re_<name>, im_<name>, reals at 17 significant digits.
void write_csv(const Table& t, std::ostream& out);
// {"meta": ..., "columns": [{"name", "type"}], "data": [[...]]}; complex cells as [re, im].
nlohmann::ordered_json to_json(const Table& t);
Table table_from_json(const nlohmann::ordered_json& j);
void write_json(const Table& t, std::ostream& out);

}  // namespace bogo
