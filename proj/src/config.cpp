#include "dnlslab/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dnlslab {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

} // namespace

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size())
      throw std::invalid_argument("malformed number in list: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

ConfigMap ConfigMap::parse_text(const std::string& text,
                                const std::set<std::string>& allowed_keys) {
  ConfigMap cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (!allowed_keys.count(key))
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
    if (cfg.kv_.count(key))
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": duplicate key '" + key + "'");
    cfg.kv_[key] = val;
  }
  return cfg;
}

ConfigMap ConfigMap::parse_file(const std::string& path,
                                const std::set<std::string>& allowed_keys) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_text(buf.str(), allowed_keys);
}

std::string ConfigMap::get_string(const std::string& key,
                                  const std::string& fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double ConfigMap::get_double(const std::string& key, double fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  size_t used = 0;
  const double v = std::stod(it->second, &used);
  if (used != it->second.size())
    throw std::invalid_argument("config key '" + key + "': malformed number");
  return v;
}

int ConfigMap::get_int(const std::string& key, int fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  size_t used = 0;
  const int v = std::stoi(it->second, &used);
  if (used != it->second.size())
    throw std::invalid_argument("config key '" + key + "': malformed integer");
  return v;
}

std::vector<double> ConfigMap::get_double_list(
    const std::string& key, std::vector<double> fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  return parse_double_list(it->second);
}

} // namespace dnlslab
