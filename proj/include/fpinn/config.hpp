#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace fpinn {

/// Parse error carrying the line number and offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line) : std::runtime_error(what), line_number(line) {}
  int line_number;
};

// Sectioned key = value text ("[problem]", "[network]", "[estimator]",
// "[training]", "[sampling]", "[output]"). '#' and ';' start comments.
class IniConfig {
 public:
  static IniConfig parse(const std::string& text);
  static IniConfig parse_file(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key, double fallback) const;
  long get_long(const std::string& section, const std::string& key, long fallback) const;

  void set(const std::string& section, const std::string& key, const std::string& value);

  /// Canonical text form (sections sorted, keys sorted).
  std::string serialize() const;

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace fpinn
