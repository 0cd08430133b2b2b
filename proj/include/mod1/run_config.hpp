#ifndef MOD1_RUN_CONFIG_HPP
#define MOD1_RUN_CONFIG_HPP

// Flat key=value run configuration.  One pair per line, '#' starts a comment,
// blank lines ignored.  Unknown and duplicate keys are rejected with their
// line number; typed getters name the offending key on a mismatch.

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mod1/errors.hpp"

namespace mod1 {

struct RunConfig {
  std::map<std::string, std::string> kv;

  bool has(const std::string& key) const { return kv.count(key) != 0; }

  std::string get_str(const std::string& key, const std::string& fallback) const {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
  }

  double get_real(const std::string& key, double fallback) const {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    const char* s = it->second.c_str();
    char* end = nullptr;
    double v = std::strtod(s, &end);
    require(end != s && *end == '\0', "config key '" + key + "': expected a real number, got '" +
                                          it->second + "'");
    return v;
  }

  long long get_int(const std::string& key, long long fallback) const {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    const char* s = it->second.c_str();
    char* end = nullptr;
    long long v = std::strtoll(s, &end, 10);
    require(end != s && *end == '\0',
            "config key '" + key + "': expected an integer, got '" + it->second + "'");
    return v;
  }

  bool get_bool(const std::string& key, bool fallback) const {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw ValidationError("config key '" + key + "': expected true/false, got '" + it->second +
                          "'");
  }
};

namespace detail {
inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}
}  // namespace detail

// allowed empty => any key accepted (the caller validates later).
inline RunConfig load_config(const std::string& path, const std::vector<std::string>& allowed = {}) {
  std::ifstream in(path);
  require(in.good(), "config: cannot open '" + path + "'");
  RunConfig rc;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string where = "config " + path + " line " + std::to_string(lineno);
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    require(eq != std::string::npos, where + ": expected key=value");
    std::string key = detail::trim(line.substr(0, eq));
    std::string val = detail::trim(line.substr(eq + 1));
    require(!key.empty(), where + ": empty key");
    require(!val.empty(), where + ": empty value for key '" + key + "'");
    if (!allowed.empty()) {
      bool known = false;
      for (const std::string& a : allowed)
        if (a == key) known = true;
      require(known, where + ": unknown key '" + key + "'");
    }
    require(rc.kv.count(key) == 0, where + ": duplicate key '" + key + "'");
    rc.kv[key] = val;
  }
  return rc;
}

}  // namespace mod1

#endif
