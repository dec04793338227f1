#include "berrykit/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>

namespace bk {

namespace {

std::string trim(const std::string& s) {
  auto b = std::find_if_not(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
  auto e = std::find_if_not(s.rbegin(), s.rend(), [](unsigned char c) { return std::isspace(c); }).base();
  return b < e ? std::string(b, e) : std::string();
}

template <class T>
T number(const std::string& key, const std::string& v) {
  T out{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) throw ConfigError(key + ": expected a non-negative integer, got '" + v + "'");
  return out;
}

bool boolean(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

}  // namespace

void Config::set(const std::string& key, const std::string& raw) {
  std::string v = trim(raw);
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
  if (key == "budget") budget = number<Nat>(key, v);
  else if (key == "cap") cap = number<std::size_t>(key, v);
  else if (key == "seed") seed = number<std::uint64_t>(key, v);
  else if (key == "max_len") max_len = number<std::size_t>(key, v);
  else if (key == "json") json = boolean(key, v);
  else if (key == "backend") {
    if (!backend_from_name(v)) throw ConfigError("backend: expected semantic or prover, got '" + v + "'");
    backend = v;
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

void load_config_file(const std::string& path, Config& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    auto eqpos = line.find('=');
    if (eqpos == std::string::npos) throw ConfigError(path + ":" + std::to_string(no) + ": expected key = value");
    try {
      cfg.set(trim(line.substr(0, eqpos)), line.substr(eqpos + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(path + ":" + std::to_string(no) + ": " + e.what());
    }
  }
}

void apply_env(Config& cfg, const std::function<std::optional<std::string>(const std::string&)>& getenv) {
  for (const char* key : {"budget", "cap", "seed", "backend", "max_len", "json"}) {
    std::string name = kEnvPrefix;
    for (const char* c = key; *c; ++c) name += static_cast<char>(std::toupper(static_cast<unsigned char>(*c)));
    if (auto v = getenv(name)) {
      try {
        cfg.set(key, *v);
      } catch (const ConfigError& e) {
        throw ConfigError(name + ": " + e.what());
      }
    }
  }
}

}  // namespace bk
