#pragma once

#include <string>
#include <vector>

#include "netlock/types.hpp"

namespace netlock {

/// Shortest decimal string that round-trips the double exactly.
std::string format_double(double value);

/// Parses a whole CSV file into rows of string cells. Validates a fixed column
/// count when `expected_columns > 0`, reporting the line number on failure.
std::vector<std::vector<std::string>> read_csv(const std::string& path, int expected_columns = -1);

/// Parses a cell to double, reporting file:line on failure.
double parse_double(const std::string& cell, const std::string& path, int line_no);

void write_text_file(const std::string& path, const std::string& contents);

/// Log verbosity from the NETLOCK_LOG environment variable ("info" or "debug").
bool log_enabled(int level);  // 1 = info, 2 = debug
void log_line(int level, const std::string& message);

}  // namespace netlock
