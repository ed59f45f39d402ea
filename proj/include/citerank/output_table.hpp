#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace citerank {

/// A real value with the number of decimals used for CSV presentation.
/// JSON output always carries full precision.
struct Decimal {
  double value = 0.0;
  int places = 2;
};

using Cell = std::variant<std::monostate, std::string, std::int64_t, Decimal>;

/// Ordered columns, rows of scalar cells, and trailing footnotes.
struct OutputTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> footnotes;

  void add_row(std::vector<Cell> row);
};

enum class OutputFormat { Csv, Json };

/// Header row, '.' decimals, no thousands separators; footnotes follow as
/// '# ' lines. Empty cells print as nothing.
void write_csv(const OutputTable& table, std::ostream& out);
void write_json(const std::vector<OutputTable>& tables, std::ostream& out);
void write_tables(const std::vector<OutputTable>& tables, OutputFormat format, std::ostream& out);

std::string format_fixed(double value, int places);

}  // namespace citerank
