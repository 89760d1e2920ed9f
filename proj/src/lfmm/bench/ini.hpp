#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace lfmm::bench {

// `[section]` headers and `key = value` lines; `#` and `;` start comments.
// Keys before the first header belong to section "". Duplicate keys and
// malformed lines are Config errors.
class IniFile {
 public:
  static IniFile parse(const std::string& text, const std::string& origin = "<config>");
  static IniFile load(const std::filesystem::path& path);

  bool has(const std::string& section, const std::string& key) const;
  // Marks the key as consumed. Typed getters throw Config on bad values.
  std::string get_string(const std::string& section, const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key, double fallback) const;
  long long get_int(const std::string& section, const std::string& key, long long fallback) const;
  bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
  // Splits on `sep`, trimming blanks and dropping empty items.
  std::vector<std::string> get_list(const std::string& section, const std::string& key, char sep = ',') const;

  // Throws Config naming the first section never queried or key never read.
  void require_all_consumed() const;

  void set(const std::string& section, const std::string& key, const std::string& value);

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  const Entry* find(const std::string& section, const std::string& key) const;
  [[noreturn]] void bad_value(const std::string& section, const std::string& key, const std::string& what) const;

  std::string origin_;
  std::map<std::string, std::map<std::string, Entry>> sections_;
  std::vector<std::pair<std::string, std::string>> order_;
  mutable std::set<std::pair<std::string, std::string>> consumed_;
  mutable std::set<std::string> queried_sections_;
};

std::string trim(const std::string& s);

}  // namespace lfmm::bench
