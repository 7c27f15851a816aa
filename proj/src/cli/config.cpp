#include "stochscl/cli/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "stochscl/util/errors.hpp"

namespace stochscl::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str());
}

Config Config::parse_string(const std::string& text) {
  Config cfg;
  cfg.raw_ = text;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("config: malformed section header at line " + std::to_string(line_no));
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw ConfigError("config: empty section name at line " + std::to_string(line_no));
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: expected key = value at line " + std::to_string(line_no));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config: empty key at line " + std::to_string(line_no));
    }
    if (section.empty()) {
      throw ConfigError("config: key '" + key + "' outside any section at line " +
                        std::to_string(line_no));
    }
    const std::string q = section + "." + key;
    if (cfg.values_.count(q)) {
      throw ConfigError("config: duplicate key '" + q + "'");
    }
    cfg.values_[q] = value;
    cfg.order_.push_back(q);
  }
  return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const {
  return values_.count(qualified(section, key)) > 0;
}

std::string Config::get_string(const std::string& section, const std::string& key) const {
  const std::string q = qualified(section, key);
  auto it = values_.find(q);
  if (it == values_.end()) throw ConfigError("config: missing required key '" + q + "'");
  consumed_.insert(q);
  return it->second;
}

std::string Config::get_string_or(const std::string& section, const std::string& key,
                                  const std::string& fallback) const {
  if (!has(section, key)) return fallback;
  return get_string(section, key);
}

double Config::get_double(const std::string& section, const std::string& key) const {
  const std::string v = get_string(section, key);
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0') {
    throw ConfigError("config: key '" + qualified(section, key) + "' is not a number: '" + v +
                      "'");
  }
  return d;
}

double Config::get_double_or(const std::string& section, const std::string& key,
                             double fallback) const {
  if (!has(section, key)) return fallback;
  return get_double(section, key);
}

long Config::get_int(const std::string& section, const std::string& key) const {
  const std::string v = get_string(section, key);
  char* end = nullptr;
  const long d = std::strtol(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0') {
    throw ConfigError("config: key '" + qualified(section, key) + "' is not an integer: '" + v +
                      "'");
  }
  return d;
}

long Config::get_int_or(const std::string& section, const std::string& key, long fallback) const {
  if (!has(section, key)) return fallback;
  return get_int(section, key);
}

std::vector<double> Config::get_double_list(const std::string& section,
                                            const std::string& key) const {
  const std::string v = get_string(section, key);
  std::vector<double> out;
  std::istringstream in(v);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    char* end = nullptr;
    const double d = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0') {
      throw ConfigError("config: key '" + qualified(section, key) +
                        "' has a non-numeric list entry: '" + item + "'");
    }
    out.push_back(d);
  }
  if (out.empty()) {
    throw ConfigError("config: key '" + qualified(section, key) + "' is an empty list");
  }
  return out;
}

void Config::check_all_consumed() const {
  for (const auto& q : order_) {
    if (!consumed_.count(q)) {
      throw ConfigError("config: unknown key '" + q + "'");
    }
  }
}

}  // namespace stochscl::cli
