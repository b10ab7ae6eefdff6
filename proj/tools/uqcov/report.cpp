#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace uqcov::cli {
namespace {

std::string format_fixed(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    return buf;
}

std::string text_cell(const Cell& c, const Column& col) {
    if (std::holds_alternative<std::monostate>(c)) return "-";
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    const double v = std::get<double>(c);
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    switch (col.style) {
        case CellStyle::Fixed: return format_fixed(v, col.precision);
        case CellStyle::Integer: return std::to_string(static_cast<long long>(v));
        default: return format_sci(v);
    }
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string csv_cell(const Cell& c) {
    if (std::holds_alternative<std::monostate>(c)) return "";
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    if (const auto* s = std::get_if<std::string>(&c)) return csv_quote(*s);
    return format_full(std::get<double>(c));
}

bool same_header(const Table& a, const Table& b) {
    if (a.columns.size() != b.columns.size()) return false;
    for (std::size_t i = 0; i < a.columns.size(); ++i)
        if (a.columns[i].header != b.columns[i].header) return false;
    return true;
}

void render_text(std::ostream& out, const Table& t) {
    if (!t.title.empty()) out << t.title << "\n";
    std::vector<std::size_t> width(t.columns.size());
    for (std::size_t j = 0; j < t.columns.size(); ++j) width[j] = t.columns[j].header.size();
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : t.rows) {
        std::vector<std::string> line;
        for (std::size_t j = 0; j < t.columns.size(); ++j) {
            line.push_back(j < row.size() ? text_cell(row[j], t.columns[j]) : "");
            width[j] = std::max(width[j], line.back().size());
        }
        cells.push_back(std::move(line));
    }
    auto emit = [&](const std::vector<std::string>& line) {
        for (std::size_t j = 0; j < line.size(); ++j) {
            if (j) out << "  ";
            out << std::string(width[j] - line[j].size(), ' ') << line[j];
        }
        out << "\n";
    };
    std::vector<std::string> header;
    for (const auto& c : t.columns) header.push_back(c.header);
    emit(header);
    for (const auto& line : cells) emit(line);
    for (const auto& n : t.notes) out << "# " << n << "\n";
}

}  // namespace

std::string format_sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6E", v);
    return buf;
}

std::string format_full(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void render(std::ostream& out, const std::vector<Table>& tables, OutputFormat format) {
    if (format == OutputFormat::Table) {
        for (std::size_t i = 0; i < tables.size(); ++i) {
            if (i) out << "\n";
            render_text(out, tables[i]);
        }
        return;
    }
    std::size_t i = 0;
    bool first_block = true;
    while (i < tables.size()) {
        std::size_t j = i + 1;
        while (j < tables.size() && same_header(tables[i], tables[j])) ++j;
        const bool merged = j - i > 1;
        if (!first_block) out << "\n";
        first_block = false;
        std::vector<std::string> header;
        if (merged) header.push_back("table");
        for (const auto& c : tables[i].columns) header.push_back(csv_quote(c.header));
        for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
        out << "\n";
        for (std::size_t t = i; t < j; ++t) {
            for (const auto& row : tables[t].rows) {
                std::vector<std::string> line;
                if (merged) line.push_back(csv_quote(tables[t].key));
                for (std::size_t k = 0; k < tables[t].columns.size(); ++k)
                    line.push_back(k < row.size() ? csv_cell(row[k]) : "");
                for (std::size_t k = 0; k < line.size(); ++k) out << (k ? "," : "") << line[k];
                out << "\n";
            }
        }
        i = j;
    }
}

}  // namespace uqcov::cli
