#include "memsforge/emit.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "memsforge/errors.hpp"

namespace memsforge {

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw contract_error("Table::add_row: cell count does not match the header");
    rows.push_back(std::move(row));
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

void emit_csv(const Table& t, std::ostream& os) {
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        os << (c ? "," : "") << t.columns[c];
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << ",";
            if (std::holds_alternative<double>(row[c]))
                os << format_number(std::get<double>(row[c]));
            else
                os << std::get<std::string>(row[c]);
        }
        os << "\n";
    }
}

void emit_json(const Table& t, std::ostream& os) {
    os << "[";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        os << (r ? ",\n" : "\n");
        os << "  {";
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            if (c) os << ", ";
            os << "\"" << t.columns[c] << "\": ";
            if (std::holds_alternative<double>(t.rows[r][c]))
                os << format_number(std::get<double>(t.rows[r][c]));
            else
                os << "\"" << std::get<std::string>(t.rows[r][c]) << "\"";
        }
        os << "}";
    }
    os << "\n]\n";
}

}  // namespace

void emit(const Table& t, std::ostream& os, EmitFormat fmt) {
    if (t.rows.empty()) throw contract_error("emit: refusing to write an empty table");
    if (fmt == EmitFormat::csv)
        emit_csv(t, os);
    else
        emit_json(t, os);
}

void emit_file(const Table& t, const std::string& path, EmitFormat fmt) {
    std::ofstream os(path);
    if (!os) throw contract_error("emit: cannot open '" + path + "' for writing");
    emit(t, os, fmt);
    os.flush();
    if (!os) throw contract_error("emit: write to '" + path + "' failed");
}

Table parse_csv(std::istream& is) {
    Table t;
    std::string line;
    if (!std::getline(is, line)) throw contract_error("parse_csv: empty input");
    std::stringstream header(line);
    std::string field;
    while (std::getline(header, field, ',')) t.columns.push_back(field);

    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::vector<Cell> cells;
        while (std::getline(row, field, ',')) {
            char* end = nullptr;
            const double v = std::strtod(field.c_str(), &end);
            if (end && *end == '\0' && end != field.c_str())
                cells.emplace_back(v);
            else
                cells.emplace_back(field);
        }
        t.add_row(std::move(cells));
    }
    return t;
}

}  // namespace memsforge
