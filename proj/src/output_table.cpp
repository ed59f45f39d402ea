#include "citerank/output_table.hpp"

#include <cstdio>

#include <json.hpp>

namespace citerank {

void OutputTable::add_row(std::vector<Cell> row) {
  row.resize(columns.size());
  rows.push_back(std::move(row));
}

std::string format_fixed(double value, int places) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, value);
  std::string out(buf);
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

namespace {

void write_csv_field(std::ostream& out, const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    out << s;
    return;
  }
  out << '"';
  for (char c : s) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

struct CsvCell {
  std::ostream& out;
  void operator()(std::monostate) const {}
  void operator()(const std::string& s) const { write_csv_field(out, s); }
  void operator()(std::int64_t v) const { out << v; }
  void operator()(const Decimal& d) const { out << format_fixed(d.value, d.places); }
};

nlohmann::ordered_json json_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, Decimal>) {
          return v.value;
        } else {
          return v;
        }
      },
      cell);
}

}  // namespace

void write_csv(const OutputTable& table, std::ostream& out) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) out << ',';
    write_csv_field(out, table.columns[c]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << ',';
      std::visit(CsvCell{out}, row[c]);
    }
    out << '\n';
  }
  for (const auto& note : table.footnotes) out << "# " << note << '\n';
}

void write_json(const std::vector<OutputTable>& tables, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["tables"] = nlohmann::ordered_json::array();
  for (const auto& table : tables) {
    nlohmann::ordered_json t;
    t["name"] = table.name;
    t["columns"] = table.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json obj;
      for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = json_cell(row[c]);
      rows.push_back(std::move(obj));
    }
    t["rows"] = std::move(rows);
    t["footnotes"] = table.footnotes;
    doc["tables"].push_back(std::move(t));
  }
  out << doc.dump(2) << '\n';
}

void write_tables(const std::vector<OutputTable>& tables, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::Json) {
    write_json(tables, out);
    return;
  }
  for (std::size_t t = 0; t < tables.size(); ++t) {
    if (t > 0) out << '\n';
    write_csv(tables[t], out);
  }
}

}  // namespace citerank
