#pragma once

#include <functional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace ljfrft::cli {

/// Named parameters of one subcommand. Each one is a command-line flag and a
/// key of the JSON config file (dashes in the flag become underscores in the
/// key). Flags win over the config file, which wins over the defaults.
class ParamSet {
 public:
  explicit ParamSet(CLI::App* app) : app_(app) {}

  template <typename T>
  void add(const std::string& key, T* target, const std::string& help) {
    auto* opt = app_->add_option(flag_name(key), *target, help)->capture_default_str();
    entries_.push_back(Entry{
        key, opt,
        [target, key](const nlohmann::json& v) {
          try {
            *target = v.get<T>();
          } catch (const nlohmann::json::exception&) {
            throw_bad_value(key);
          }
        },
        [target] { return nlohmann::json(*target); }});
  }

  void add_flag(const std::string& key, bool* target, const std::string& help);

  /// Applies config values to every parameter not given on the command line.
  /// Unknown keys raise ConfigError.
  void apply_config(const nlohmann::json& config, const std::string& command);

  /// True when the parameter came from the command line or the config file.
  bool given(const std::string& key) const;

  /// Every parameter with its resolved value, plus the command name.
  nlohmann::json resolved(const std::string& command) const;

 private:
  struct Entry {
    std::string key;
    CLI::Option* option;
    std::function<void(const nlohmann::json&)> set;
    std::function<nlohmann::json()> get;
  };

  static std::string flag_name(const std::string& key);
  [[noreturn]] static void throw_bad_value(const std::string& key);

  CLI::App* app_;
  std::vector<Entry> entries_;
  std::vector<std::string> from_config_;
};

}  // namespace ljfrft::cli
