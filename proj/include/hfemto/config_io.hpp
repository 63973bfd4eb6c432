#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hfemto/config.hpp"

namespace hfemto {

/// Bad configuration input: unparsable JSON, unknown keys, wrong types or
/// invariant violations. Each entry of problems() is one message.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Keys accepted in a configuration object.
const std::vector<std::string>& config_keys();

/// Builds a configuration from a flat JSON object. Absent keys keep their
/// default_config() values. `overrides` are "key=value" pairs applied on top;
/// values are read as JSON when they parse, otherwise as strings.
///
/// Powers may be given as P_m / P_f (watts) or P_m_dBm / P_f_dBm, and the
/// wall loss as W (linear) or W_dB. The deployment is "ppp" or "cluster";
/// it defaults to "cluster" when any of lambda_p, lambda_c, R_c is present.
/// For clusters lambda_f is derived and may only be given if consistent.
/// Throws ConfigError listing every problem found.
NetworkConfig config_from_json(const std::string& text,
                               const std::vector<std::string>& overrides = {},
                               std::optional<std::string> deployment = std::nullopt);

NetworkConfig config_from_file(const std::string& path,
                               const std::vector<std::string>& overrides = {},
                               std::optional<std::string> deployment = std::nullopt);

/// Canonical JSON (sorted keys, linear units, round-trip precision).
std::string config_to_json(const NetworkConfig& cfg, int indent = -1);

/// 16 hex digits of FNV-1a over config_to_json(cfg).
std::string config_hash(const NetworkConfig& cfg);

/// Splits "key=value"; throws ConfigError when '=' is missing or key empty.
std::pair<std::string, std::string> split_assignment(const std::string& text);

}  // namespace hfemto
