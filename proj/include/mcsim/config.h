#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mcsim/harness.h"

namespace mcsim {

/// Bad key or value in a configuration source; `key()` names the offender.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct ConfigLoad {
  SimConfig config;
  /// Keys that were not given and kept their default, in key order.
  std::vector<std::string> defaulted_keys;
};

/// Every accepted key, in canonical order.
const std::vector<std::string>& config_keys();

/// Flat `key = value` lines; `#` starts a comment. Unknown or repeated keys
/// and unparsable values raise ConfigError.
ConfigLoad parse_config_text(std::string_view text);
ConfigLoad load_config_file(const std::filesystem::path& path);

/// Applies one key to `config`, as a config line would.
void set_config_value(SimConfig& config, std::string_view key, std::string_view value);
/// Current value of a key rendered as it would be written in a config file.
std::string config_value(const SimConfig& config, std::string_view key);

}  // namespace mcsim
