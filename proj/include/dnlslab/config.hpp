#pragma once
// Flat key = value run configuration. '#' starts a comment; keys must come
// from the caller-supplied whitelist, so typos fail loudly instead of being
// silently ignored.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dnlslab {

class ConfigMap {
public:
  static ConfigMap parse_file(const std::string& path,
                              const std::set<std::string>& allowed_keys);
  static ConfigMap parse_text(const std::string& text,
                              const std::set<std::string>& allowed_keys);

  bool has(const std::string& key) const { return kv_.count(key) > 0; }
  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::vector<double> get_double_list(const std::string& key,
                                      std::vector<double> fallback) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

private:
  std::map<std::string, std::string> kv_;
};

std::vector<double> parse_double_list(const std::string& text);

} // namespace dnlslab
