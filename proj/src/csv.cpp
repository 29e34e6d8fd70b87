#include "etpa/csv.hpp"

#include <cstdlib>
#include <istream>

namespace etpa::csv {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(trim(std::string_view(line).substr(start)));
            break;
        }
        out.push_back(trim(std::string_view(line).substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

}  // namespace

Table read(std::istream& in) {
    Table table;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        if (!have_header) {
            table.header = split_fields(stripped);
            have_header = true;
            continue;
        }
        table.rows.push_back({lineno, split_fields(stripped)});
    }
    if (!have_header) throw ParseError("missing header row", lineno);
    return table;
}

std::optional<std::size_t> Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    return std::nullopt;
}

std::size_t Table::require_column(std::string_view name) const {
    if (auto col = column(name)) return *col;
    throw ParseError("missing required column '" + std::string(name) + "'", 1);
}

const std::string& Table::field(const Row& row, std::size_t col) const {
    if (col >= row.fields.size())
        throw ParseError("row has " + std::to_string(row.fields.size()) +
                             " fields, expected at least " + std::to_string(col + 1),
                         row.line, col + 1);
    return row.fields[col];
}

double parse_double(const std::string& text, std::size_t line, std::string_view what) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ParseError("cannot parse " + std::string(what) + " from '" + text + "'", line);
    return value;
}

}  // namespace etpa::csv
