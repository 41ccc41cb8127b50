#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace memsforge {

using Cell = std::variant<double, std::string>;

/// Flat result table: fixed column order, rows in grid order. Numbers are
/// written with 12 significant digits in both output formats.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

enum class EmitFormat { csv, json };

std::string format_number(double v);

void emit(const Table& t, std::ostream& os, EmitFormat fmt);

/// Writes to `path`, surfacing I/O failures with the path in the message.
void emit_file(const Table& t, const std::string& path, EmitFormat fmt);

/// Parses a CSV produced by emit(); cells that read as numbers become
/// doubles, everything else stays a string.
Table parse_csv(std::istream& is);

}  // namespace memsforge
