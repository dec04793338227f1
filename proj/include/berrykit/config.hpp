#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "berrykit/berry.hpp"

namespace bk {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Defaults shared by the command-line tool. Later sources override
/// earlier ones: built-in values, config file, BERRYKIT_* environment,
/// explicit flags.
struct Config {
  Nat budget = 32;
  std::size_t cap = kDefaultEnumerationCap;
  std::uint64_t seed = 1;
  std::string backend = "semantic";
  std::size_t max_len = 6;
  bool json = false;

  /// Sets one key; throws ConfigError on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
};

/// Reads `key = value` lines; `#` starts a comment, `[section]` headers are
/// ignored and string values may be quoted.
void load_config_file(const std::string& path, Config& cfg);

inline constexpr const char* kEnvPrefix = "BERRYKIT_";

/// Applies BERRYKIT_BUDGET, BERRYKIT_CAP, BERRYKIT_SEED, BERRYKIT_BACKEND,
/// BERRYKIT_MAX_LEN and BERRYKIT_JSON through the given lookup.
void apply_env(Config& cfg, const std::function<std::optional<std::string>(const std::string&)>& getenv);

}  // namespace bk
