#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wsntrack {
namespace csv {

// Shortest representation that parses back to the identical double
// (std::to_chars); "inf" for +infinity.
std::string format_double(double v);
double parse_double(const std::string& s);

// Comma separation, LF line endings, no quoting (emitted fields never
// contain commas; list-valued cells are joined with ';').
std::string join_row(const std::vector<std::string>& cells);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// Parses text written by join_row lines; first line is the header.
Table parse(const std::string& text);

}  // namespace csv
}  // namespace wsntrack
