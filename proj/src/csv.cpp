#include "cvbench/csv.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cvbench/errors.hpp"

namespace cvbench {

int CsvTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"' && field.empty()) {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    fields.push_back(field);
    return fields;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("csv.read_csv", "cannot open file: " + path);
    CsvTable table;
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("csv.read_csv", "empty file (header required): " + path);
    table.header = split_csv_line(line);
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        if (fields.size() != table.header.size()) {
            std::ostringstream msg;
            msg << "row " << table.rows.size() + 2 << " has " << fields.size()
                << " fields, header has " << table.header.size() << " (" << path << ")";
            throw ParseError("csv.read_csv", msg.str());
        }
        table.rows.push_back(std::move(fields));
    }
    return table;
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw NumericError("csv.format_double", "to_chars failed");
    return std::string(buf, ptr);
}

double parse_double(const std::string& text, const std::string& where) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || end != begin + text.size())
        throw ParseError("csv.parse_double", "non-numeric value '" + text + "' at " + where);
    return v;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("csv.write_text_file", "cannot open for writing: " + path);
    out << content;
    if (!out) throw IoError("csv.write_text_file", "write failed: " + path);
}

}  // namespace cvbench
