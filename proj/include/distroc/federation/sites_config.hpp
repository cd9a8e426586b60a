#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace distroc {

struct SiteConfig {
  std::string id;
  std::string data;  // CSV path, relative paths resolved against the config file
  std::string host = "127.0.0.1";
  int port = 0;
  std::uint64_t seed = 0;  // site-local noise seed; 0 derives one from --seed
};

// Reads a sites file made of [[site]] tables with `key = value` lines
// (strings quoted, integers bare, `#` comments). Throws IoError.
std::vector<SiteConfig> read_sites_config(const std::string& path);
std::vector<SiteConfig> parse_sites_config(const std::string& text,
                                           const std::string& base_dir = "");

}  // namespace distroc
