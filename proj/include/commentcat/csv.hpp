#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace commentcat {

// RFC 4180-style CSV: comma-delimited, double-quote escaping ("" inside a
// quoted field), quoted fields may contain commas and newlines. Accepts
// both LF and CRLF line endings.
std::vector<std::vector<std::string>> read_csv(std::istream& in);
std::vector<std::vector<std::string>> read_csv_file(const std::filesystem::path& path);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace commentcat
