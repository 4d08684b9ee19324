#include "bogo/report.hpp"

#include <cstdio>
#include <ostream>

#include "bogo/errors.hpp"

namespace bogo {

namespace {

const char* type_name(ColumnType t) {
  switch (t) {
    case ColumnType::Integer: return "integer";
    case ColumnType::Real: return "real";
    case ColumnType::Complex: return "complex";
    case ColumnType::Text: return "text";
  }
  return "?";
}

ColumnType parse_type(const std::string& s) {
  if (s == "integer") return ColumnType::Integer;
  if (s == "real") return ColumnType::Real;
  if (s == "complex") return ColumnType::Complex;
  if (s == "text") return ColumnType::Text;
  throw ArgumentError("unknown column type '" + s + "'");
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

bool matches(const Cell& c, ColumnType t) {
  switch (t) {
    case ColumnType::Integer: return std::holds_alternative<long long>(c);
    case ColumnType::Real: return std::holds_alternative<double>(c);
    case ColumnType::Complex: return std::holds_alternative<cplx>(c);
    case ColumnType::Text: return std::holds_alternative<std::string>(c);
  }
  return false;
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw ArgumentError("row width does not match the columns");
  for (std::size_t i = 0; i < row.size(); ++i)
    if (!matches(row[i], columns[i].type)) throw ArgumentError("cell type mismatch in column " + columns[i].name);
  rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i].name == name) return i;
  throw ArgumentError("no column named " + name);
}

void write_csv(const Table& t, std::ostream& out) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out << ',';
    const auto& c = t.columns[i];
    if (c.type == ColumnType::Complex) out << "re_" << c.name << ",im_" << c.name;
    else out << c.name;
  }
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, long long>) out << v;
            else if constexpr (std::is_same_v<V, double>) out << num(v);
            else if constexpr (std::is_same_v<V, cplx>) out << num(v.real()) << ',' << num(v.imag());
            else out << csv_text(v);
          },
          row[i]);
    }
    out << '\n';
  }
}

nlohmann::ordered_json to_json(const Table& t) {
  nlohmann::ordered_json j;
  j["meta"] = t.meta;  // first, so a reader sees the run parameters before the data
  j["columns"] = nlohmann::ordered_json::array();
  for (const auto& c : t.columns) j["columns"].push_back({{"name", c.name}, {"type", type_name(c.type)}});
  j["data"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto& cell : row)
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, cplx>) r.push_back({v.real(), v.imag()});
            else r.push_back(v);
          },
          cell);
    j["data"].push_back(std::move(r));
  }
  return j;
}

Table table_from_json(const nlohmann::ordered_json& j) {
  Table t;
  t.meta = j.at("meta");
  for (const auto& c : j.at("columns")) t.columns.push_back({c.at("name"), parse_type(c.at("type"))});
  for (const auto& r : j.at("data")) {
    std::vector<Cell> row;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      const auto& v = r.at(i);
      switch (t.columns[i].type) {
        case ColumnType::Integer: row.emplace_back(v.get<long long>()); break;
        case ColumnType::Real: row.emplace_back(v.get<double>()); break;
        case ColumnType::Complex: row.emplace_back(cplx(v.at(0).get<double>(), v.at(1).get<double>())); break;
        case ColumnType::Text: row.emplace_back(v.get<std::string>()); break;
      }
    }
    t.add_row(std::move(row));
  }
  return t;
}

void write_json(const Table& t, std::ostream& out) { out << to_json(t).dump(2) << '\n'; }

}  // namespace bogo
