#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace specsense::kv {

// One "key = value" line of a sectioned plain-text file.
struct Entry {
  std::string section;  // empty before the first [section] header
  std::string key;
  std::string value;
  std::size_t line = 0;
};

// Parses '#'-comment, [section] and "key = value" lines. Keys may repeat.
// Throws std::invalid_argument on malformed lines.
std::vector<Entry> parse(std::istream& in);

// Full-precision decimal formatting that round-trips doubles exactly.
std::string format_real(double v);

double parse_real(const std::string& text);
long long parse_int(const std::string& text);

// Whitespace/comma separated list of reals.
std::vector<double> parse_real_list(const std::string& text);

}  // namespace specsense::kv
