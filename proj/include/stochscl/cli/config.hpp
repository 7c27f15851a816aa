#ifndef STOCHSCL_CLI_CONFIG_HPP
#define STOCHSCL_CLI_CONFIG_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

namespace stochscl::cli {

/// Flat sectioned key-value config:
///   [section]
///   key = value        # comment
/// Values are strings; typed accessors parse on demand. Every key that is
/// read gets marked consumed; check_all_consumed() rejects unknown keys so
/// typos fail loudly (exit 2) instead of being ignored.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;

  std::string get_string(const std::string& section, const std::string& key) const;
  std::string get_string_or(const std::string& section, const std::string& key,
                            const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key,
                       double fallback) const;
  long get_int(const std::string& section, const std::string& key) const;
  long get_int_or(const std::string& section, const std::string& key, long fallback) const;
  /// Comma-separated list of reals.
  std::vector<double> get_double_list(const std::string& section, const std::string& key) const;

  /// Throws ConfigError naming the first never-consumed key.
  void check_all_consumed() const;

  /// Original text, for the config echo next to the reports.
  const std::string& raw_text() const { return raw_; }

 private:
  std::string qualified(const std::string& section, const std::string& key) const {
    return section + "." + key;
  }

  std::map<std::string, std::string> values_;  // "section.key" -> value
  std::vector<std::string> order_;
  mutable std::set<std::string> consumed_;
  std::string raw_;
};

}  // namespace stochscl::cli

#endif
