#include "params.hpp"

#include <algorithm>

#include "ljfrft/error.hpp"

namespace ljfrft::cli {

std::string ParamSet::flag_name(const std::string& key) {
  std::string flag = "--" + key;
  std::replace(flag.begin(), flag.end(), '_', '-');
  return flag;
}

void ParamSet::throw_bad_value(const std::string& key) {
  throw Error(ErrorCode::ConfigError, "config key '" + key + "' has the wrong type");
}

void ParamSet::add_flag(const std::string& key, bool* target, const std::string& help) {
  auto* opt = app_->add_flag(flag_name(key), *target, help);
  entries_.push_back(Entry{key, opt,
                           [target, key](const nlohmann::json& v) {
                             if (!v.is_boolean()) throw_bad_value(key);
                             *target = v.get<bool>();
                           },
                           [target] { return nlohmann::json(*target); }});
}

void ParamSet::apply_config(const nlohmann::json& config, const std::string& command) {
  if (!config.is_object()) throw Error(ErrorCode::ConfigError, "config must be a JSON object");
  for (const auto& [key, value] : config.items()) {
    if (key == "command") {
      if (value != command) {
        throw Error(ErrorCode::ConfigError, "config is for command '" + value.dump() + "'");
      }
      continue;
    }
    const auto it = std::find_if(entries_.begin(), entries_.end(),
                                 [&](const Entry& e) { return e.key == key; });
    if (it == entries_.end()) {
      throw Error(ErrorCode::ConfigError, "unknown config key '" + key + "' for " + command);
    }
    if (it->option->count() == 0) {
      it->set(value);
      from_config_.push_back(key);
    }
  }
}

bool ParamSet::given(const std::string& key) const {
  for (const auto& e : entries_) {
    if (e.key == key && e.option->count() > 0) return true;
  }
  return std::find(from_config_.begin(), from_config_.end(), key) != from_config_.end();
}

nlohmann::json ParamSet::resolved(const std::string& command) const {
  nlohmann::json j = {{"command", command}};
  for (const auto& e : entries_) j[e.key] = e.get();
  return j;
}

}  // namespace ljfrft::cli
