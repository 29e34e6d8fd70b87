#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "etpa/errors.hpp"

namespace etpa::csv {

// Minimal comma-separated reader for the toolkit's table formats: UTF-8,
// required header row, '#' comment lines and blank lines ignored, fields
// trimmed. No quoting (none of the schemas need embedded commas).
struct Row {
    std::size_t line = 0;  // 1-based line number in the stream
    std::vector<std::string> fields;
};

struct Table {
    std::vector<std::string> header;
    std::vector<Row> rows;

    std::optional<std::size_t> column(std::string_view name) const;
    // Column index or ParseError naming the missing column.
    std::size_t require_column(std::string_view name) const;
    // Field access with a bounds check against ragged rows.
    const std::string& field(const Row& row, std::size_t col) const;
};

Table read(std::istream& in);

std::string trim(std::string_view s);

// strtod with full-consumption check; context goes into the ParseError.
double parse_double(const std::string& text, std::size_t line, std::string_view what);

}  // namespace etpa::csv
