#include "distroc/federation/sites_config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "distroc/error.hpp"

namespace distroc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

[[noreturn]] void fail(int lineno, const std::string& what) {
  throw IoError("sites config line " + std::to_string(lineno) + ": " + what);
}

std::string unquote(const std::string& v, int lineno) {
  if (v.size() < 2 || v.front() != '"' || v.back() != '"') fail(lineno, "expected a quoted string");
  return v.substr(1, v.size() - 2);
}

long long integer(const std::string& v, int lineno) {
  std::size_t pos = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &pos);
  } catch (const std::exception&) {
    fail(lineno, "expected an integer");
  }
  if (pos != v.size()) fail(lineno, "expected an integer");
  return out;
}

}  // namespace

std::vector<SiteConfig> parse_sites_config(const std::string& text, const std::string& base_dir) {
  std::vector<SiteConfig> sites;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line == "[[site]]") {
      sites.emplace_back();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(lineno, "expected key = value");
    if (sites.empty()) fail(lineno, "key outside a [[site]] table");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    SiteConfig& s = sites.back();
    if (key == "id") {
      s.id = unquote(value, lineno);
    } else if (key == "data") {
      s.data = unquote(value, lineno);
      if (!s.data.empty() && !base_dir.empty() && std::filesystem::path(s.data).is_relative()) {
        s.data = (std::filesystem::path(base_dir) / s.data).string();
      }
    } else if (key == "host") {
      s.host = unquote(value, lineno);
    } else if (key == "port") {
      const long long p = integer(value, lineno);
      if (p < 0 || p > 65535) fail(lineno, "port out of range");
      s.port = static_cast<int>(p);
    } else if (key == "seed") {
      const long long v = integer(value, lineno);
      if (v < 0) fail(lineno, "seed must be non-negative");
      s.seed = static_cast<std::uint64_t>(v);
    } else {
      fail(lineno, "unknown key '" + key + "'");
    }
  }
  std::set<std::string> ids;
  for (const auto& s : sites) {
    if (s.id.empty()) throw IoError("sites config: every site needs an id");
    if (!ids.insert(s.id).second) throw IoError("sites config: duplicate id '" + s.id + "'");
  }
  if (sites.empty()) throw IoError("sites config: no [[site]] entries");
  return sites;
}

std::vector<SiteConfig> read_sites_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open sites config " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_sites_config(buf.str(), std::filesystem::path(path).parent_path().string());
}

}  // namespace distroc
