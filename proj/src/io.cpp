#include "netlock/io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>

namespace netlock {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::vector<std::vector<std::string>> read_csv(const std::string& path, int expected_columns) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (expected_columns > 0 && static_cast<int>(cells.size()) != expected_columns)
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(expected_columns) + " columns, got " +
                        std::to_string(cells.size()));
    rows.push_back(std::move(cells));
  }
  return rows;
}

double parse_double(const std::string& cell, const std::string& path, int line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(path + ":" + std::to_string(line_no) + ": bad number '" + cell + "'");
  }
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << contents;
  if (!out) throw ConfigError("write failed: " + path);
}

namespace {
int log_level_from_env() {
  const char* env = std::getenv("NETLOCK_LOG");
  if (!env) return 0;
  const std::string v(env);
  if (v == "debug" || v == "2") return 2;
  if (v == "info" || v == "1") return 1;
  return 0;
}
}  // namespace

bool log_enabled(int level) {
  static const int active = log_level_from_env();
  return active >= level;
}

void log_line(int level, const std::string& message) {
  if (!log_enabled(level)) return;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  std::cerr << "[netlock] " << message << '\n';
}

}  // namespace netlock
