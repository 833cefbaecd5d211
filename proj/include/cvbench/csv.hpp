#pragma once

#include <string>
#include <vector>

namespace cvbench {

// Minimal RFC-4180-ish CSV support: comma delimiter, optional double-quote
// quoting, mandatory header row. No embedded newlines inside fields.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Index of a named column, or -1.
    int column_index(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);
std::vector<std::string> split_csv_line(const std::string& line);

// Shortest round-trip decimal rendering of a double (std::to_chars).
// All numeric CSV output goes through this so reruns are byte-identical.
std::string format_double(double value);

double parse_double(const std::string& text, const std::string& where);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace cvbench
