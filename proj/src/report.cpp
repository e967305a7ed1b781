#include "poik/report.hpp"

#include <cstdio>
#include <istream>
#include <string>

#include "poik/errors.hpp"

namespace poik::report {

namespace {

std::string format(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

bool csv_needs_quotes(const std::string& s) {
    return s.find_first_of(",\"\n\r") != std::string::npos;
}

std::string csv_escape(const std::string& s) {
    if (!csv_needs_quotes(s)) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

Cell cell_int(std::int64_t v) { return {std::to_string(v), false}; }

Cell cell_rate(double v) { return {format("%.12f", v), false}; }

Cell cell_real(double v) { return {format("%.15g", v), false}; }

Cell cell_text(std::string v) { return {std::move(v), true}; }

Cell cell_bool(bool v) { return {v ? "true" : "false", false}; }

void Table::add_row(std::vector<Cell> cells) {
    if (cells.size() != columns.size())
        throw InternalError("report row width does not match the column count");
    rows.push_back(std::move(cells));
}

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::JsonLines;
    throw InvalidParamsError("unknown format '" + name + "' (expected csv or json)");
}

void write_csv(std::ostream& os, const Table& table) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) os << ',';
        os << csv_escape(table.columns[c]);
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << ',';
            os << csv_escape(row[c].text);
        }
        os << '\n';
    }
}

void write_jsonl(std::ostream& os, const Table& table) {
    for (const auto& row : table.rows) {
        os << '{';
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << ',';
            os << '"' << json_escape(table.columns[c]) << "\":";
            if (row[c].json_quoted)
                os << '"' << json_escape(row[c].text) << '"';
            else
                os << row[c].text;
        }
        os << "}\n";
    }
}

void write(std::ostream& os, const Table& table, Format format) {
    if (format == Format::Csv)
        write_csv(os, table);
    else
        write_jsonl(os, table);
}

std::string interval_text(std::int64_t lo, std::int64_t hi) {
    return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
}

std::vector<std::vector<std::string>> read_csv(std::istream& is) {
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            const char c = line[i];
            if (quoted) {
                if (c == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        field += '"';
                        ++i;
                    } else {
                        quoted = false;
                    }
                } else {
                    field += c;
                }
            } else if (c == '"') {
                quoted = true;
            } else if (c == ',') {
                fields.push_back(std::move(field));
                field.clear();
            } else {
                field += c;
            }
        }
        fields.push_back(std::move(field));
        rows.push_back(std::move(fields));
    }
    return rows;
}

}  // namespace poik::report
