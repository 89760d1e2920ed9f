#include "lfmm/bench/ini.hpp"

#include "lfmm/core/error.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace lfmm::bench {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

IniFile IniFile::parse(const std::string& text, const std::string& origin) {
  IniFile ini;
  ini.origin_ = origin;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  auto where = [&] { return origin + ":" + std::to_string(lineno) + ": "; };
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(ErrorCode::Config, where() + "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section.empty()) fail(ErrorCode::Config, where() + "empty section name");
      ini.sections_[section];
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(ErrorCode::Config, where() + "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    // Trailing comments need a blank before the marker.
    for (const char* marker : {" #", " ;", "\t#", "\t;"}) {
      const auto c = value.find(marker);
      if (c != std::string::npos) value = trim(value.substr(0, c));
    }
    if (key.empty()) fail(ErrorCode::Config, where() + "empty key");
    auto& sec = ini.sections_[section];
    if (sec.count(key)) fail(ErrorCode::Config, where() + "duplicate key '" + key + "'");
    sec[key] = {value, lineno};
    ini.order_.emplace_back(section, key);
  }
  return ini;
}

IniFile IniFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Config, "cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

const IniFile::Entry* IniFile::find(const std::string& section, const std::string& key) const {
  queried_sections_.insert(section);
  const auto s = sections_.find(section);
  if (s == sections_.end()) return nullptr;
  const auto k = s->second.find(key);
  if (k == s->second.end()) return nullptr;
  consumed_.insert({section, key});
  return &k->second;
}

bool IniFile::has(const std::string& section, const std::string& key) const {
  queried_sections_.insert(section);
  const auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

void IniFile::bad_value(const std::string& section, const std::string& key, const std::string& what) const {
  const Entry* e = find(section, key);
  fail(ErrorCode::Config, origin_ + ":" + std::to_string(e ? e->line : 0) + ": [" + section + "] " + key + ": " + what);
}

std::string IniFile::get_string(const std::string& section, const std::string& key, const std::string& fallback) const {
  const Entry* e = find(section, key);
  return e ? e->value : fallback;
}

double IniFile::get_double(const std::string& section, const std::string& key, double fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  double v = 0.0;
  const char* b = e->value.data();
  const char* end = b + e->value.size();
  const auto r = std::from_chars(b, end, v);
  if (r.ec != std::errc() || r.ptr != end) bad_value(section, key, "expected a number, got '" + e->value + "'");
  return v;
}

long long IniFile::get_int(const std::string& section, const std::string& key, long long fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  long long v = 0;
  const char* b = e->value.data();
  const char* end = b + e->value.size();
  const auto r = std::from_chars(b, end, v);
  if (r.ec != std::errc() || r.ptr != end) bad_value(section, key, "expected an integer, got '" + e->value + "'");
  return v;
}

bool IniFile::get_bool(const std::string& section, const std::string& key, bool fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  if (e->value == "true" || e->value == "1" || e->value == "yes") return true;
  if (e->value == "false" || e->value == "0" || e->value == "no") return false;
  bad_value(section, key, "expected true or false, got '" + e->value + "'");
}

std::vector<std::string> IniFile::get_list(const std::string& section, const std::string& key, char sep) const {
  const Entry* e = find(section, key);
  std::vector<std::string> out;
  if (!e) return out;
  std::string item;
  std::istringstream in(e->value);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void IniFile::require_all_consumed() const {
  for (const auto& [section, keys] : sections_)
    if (!queried_sections_.count(section)) fail(ErrorCode::Config, origin_ + ": unknown section [" + section + "]");
  for (const auto& [section, key] : order_)
    if (!consumed_.count({section, key})) {
      const Entry& e = sections_.at(section).at(key);
      fail(ErrorCode::Config, origin_ + ":" + std::to_string(e.line) + ": unknown key '" + key + "' in section [" +
                                  section + "]");
    }
}

void IniFile::set(const std::string& section, const std::string& key, const std::string& value) {
  auto& sec = sections_[section];
  if (!sec.count(key)) order_.emplace_back(section, key);
  sec[key] = {value, 0};
}

}  // namespace lfmm::bench
