#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace uqcov::cli {

enum class OutputFormat { Table, Csv };

enum class CellStyle {
    Integer,
    Scientific,  // %.6E in tables
    Fixed,       // %.{precision}f in tables
    Text
};

struct Column {
    std::string header;
    CellStyle style = CellStyle::Scientific;
    int precision = 6;
};

using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
    std::string title;
    std::string key;  // distinguishes tables sharing a header in CSV output
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> notes;
};

// Aligned text, or CSV with a header row and %.17g doubles. Several tables
// with identical headers are merged into one CSV with a leading "table" column.
void render(std::ostream& out, const std::vector<Table>& tables, OutputFormat format);

std::string format_sci(double v);
std::string format_full(double v);

}  // namespace uqcov::cli
