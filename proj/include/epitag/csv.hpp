#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace epitag {

// Minimal RFC-4180 reader: quoted fields may contain commas, doubled quotes
// and newlines. Returns one vector of fields per record.
std::vector<std::vector<std::string>> read_csv(std::istream& in);

// Splits a single physical line; quoted newlines are not supported here.
std::vector<std::string> split_csv_line(const std::string& line);

// Quotes a field if it contains a comma, quote or newline.
std::string csv_quote(const std::string& field);

// Stable shortest-ish float formatting ("%.10g"); same double, same bytes.
std::string fmt_double(double v);

} // namespace epitag
