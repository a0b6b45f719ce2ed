#include "specsense/kvfile.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <stdexcept>

namespace specsense::kv {

namespace {

std::string trim(const std::string& s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<Entry> parse(std::istream& in) {
  std::vector<Entry> out;
  std::string line;
  std::string section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3)
        throw std::invalid_argument("malformed section header at line " +
                                    std::to_string(lineno) + ": " + line);
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("expected 'key = value' at line " +
                                  std::to_string(lineno) + ": " + line);
    Entry e;
    e.section = section;
    e.key = trim(line.substr(0, eq));
    e.value = trim(line.substr(eq + 1));
    e.line = lineno;
    if (e.key.empty())
      throw std::invalid_argument("empty key at line " + std::to_string(lineno));
    out.push_back(std::move(e));
  }
  return out;
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_real(const std::string& text) {
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || (end && *end != '\0') || errno == ERANGE)
    throw std::invalid_argument("not a real number: '" + text + "'");
  return v;
}

long long parse_int(const std::string& text) {
  errno = 0;
  char* end = nullptr;
  long long v = std::strtoll(text.c_str(), &end, 10);
  if (end == text.c_str() || (end && *end != '\0') || errno == ERANGE)
    throw std::invalid_argument("not an integer: '" + text + "'");
  return v;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      out.push_back(parse_real(cur));
      cur.clear();
    }
  };
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t')
      flush();
    else
      cur.push_back(c);
  }
  flush();
  return out;
}

}  // namespace specsense::kv
