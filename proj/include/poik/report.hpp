#pragma once

// Deterministic tabular output. Cells are formatted up front with fixed
// conventions (rate values at 12 decimal digits, mass/ratio values at 15
// significant digits), so CSV and JSON-lines writers emit byte-identical
// files for identical inputs.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace poik::report {

struct Cell {
    std::string text;
    bool json_quoted = false;  // true for free-form strings, false for numbers/bools
};

Cell cell_int(std::int64_t v);
Cell cell_rate(double v);  // fixed, 12 decimal digits (lambda-like quantities)
Cell cell_real(double v);  // %.15g (pmf/h values, fit coefficients, means)
Cell cell_text(std::string v);
Cell cell_bool(bool v);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> cells);
};

enum class Format { Csv, JsonLines };

Format parse_format(const std::string& name);  // "csv" | "json"

/// RFC-4180-style CSV: header row, fields quoted when they contain a comma,
/// quote, or newline, embedded quotes doubled.
void write_csv(std::ostream& os, const Table& table);

/// One JSON object per row, one row per line, keys in column order.
void write_jsonl(std::ostream& os, const Table& table);

void write(std::ostream& os, const Table& table, Format format);

/// "[a,b]" for a < b, "[a,a]" for singletons.
std::string interval_text(std::int64_t lo, std::int64_t hi);

/// Minimal RFC-4180 reader matching write_csv's dialect: quoted fields and
/// doubled quotes, one record per line. Returns raw rows including the
/// header.
std::vector<std::vector<std::string>> read_csv(std::istream& is);

}  // namespace poik::report
