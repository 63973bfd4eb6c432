#include "hfemto/config_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace hfemto {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : "; ") + s;
  return out;
}

const std::set<std::string>& cluster_keys() {
  static const std::set<std::string> keys{"lambda_p", "lambda_c", "R_c"};
  return keys;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::invalid_argument(join(problems)), problems_(std::move(problems)) {}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "lambda_m", "lambda_f",  "deployment", "lambda_p", "lambda_c", "R_c",
      "R_f",      "lambda_s",  "lambda_in",  "lambda_out", "P_m",    "P_f",
      "P_m_dBm",  "P_f_dBm",   "M",          "M_s",      "alpha",    "mu",
      "W",        "W_dB",      "sigma2"};
  return keys;
}

std::pair<std::string, std::string> split_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError({"expected key=value, got '" + text + "'"});
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

NetworkConfig config_from_json(const std::string& text, const std::vector<std::string>& overrides,
                               std::optional<std::string> deployment) {
  std::vector<std::string> problems;
  json obj;
  try {
    obj = text.empty() ? json::object() : json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("config is not valid JSON: ") + e.what()});
  }
  if (!obj.is_object()) throw ConfigError({"config must be a JSON object"});

  for (const auto& ov : overrides) {
    auto [key, value] = split_assignment(ov);
    json parsed = json::parse(value, nullptr, false);
    obj[key] = parsed.is_discarded() ? json(value) : parsed;
  }
  if (deployment) obj["deployment"] = *deployment;

  const std::set<std::string> known(config_keys().begin(), config_keys().end());
  for (const auto& [key, _] : obj.items()) {
    if (!known.count(key)) problems.push_back("unknown key '" + key + "'");
  }

  auto number = [&](const char* key, double& target) {
    if (!obj.contains(key)) return false;
    const auto& v = obj.at(key);
    if (!v.is_number()) {
      problems.push_back(std::string(key) + " must be a number");
      return false;
    }
    target = v.get<double>();
    return true;
  };
  auto integer = [&](const char* key, int& target) {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (v.is_number_integer()) {
      target = v.get<int>();
    } else if (v.is_number_float() && v.get<double>() == static_cast<int>(v.get<double>())) {
      target = static_cast<int>(v.get<double>());
    } else {
      problems.push_back(std::string(key) + " must be an integer");
    }
  };
  auto exclusive = [&](const char* a, const char* b) {
    if (obj.contains(a) && obj.contains(b)) {
      problems.push_back(std::string("give only one of ") + a + " and " + b);
    }
  };

  NetworkConfig cfg = default_config();
  number("lambda_m", cfg.lambda_m);
  number("R_f", cfg.R_f);
  number("lambda_s", cfg.lambda_s);
  number("lambda_in", cfg.lambda_in);
  number("lambda_out", cfg.lambda_out);
  number("alpha", cfg.alpha);
  number("mu", cfg.mu);
  number("sigma2", cfg.sigma2);
  integer("M", cfg.M);
  integer("M_s", cfg.M_s);

  exclusive("P_m", "P_m_dBm");
  exclusive("P_f", "P_f_dBm");
  exclusive("W", "W_dB");
  double tmp = 0.0;
  number("P_m", cfg.P_m);
  if (number("P_m_dBm", tmp)) cfg.P_m = dbm_to_watts(tmp);
  number("P_f", cfg.P_f);
  if (number("P_f_dBm", tmp)) cfg.P_f = dbm_to_watts(tmp);
  number("W", cfg.W);
  if (number("W_dB", tmp)) cfg.W = db_to_linear(tmp);

  bool clustered = false;
  bool flatten = false;  // cluster parameters given, PPP requested: keep lambda_f
  for (const auto& k : cluster_keys()) clustered = clustered || obj.contains(k);
  if (obj.contains("deployment")) {
    const auto& d = obj.at("deployment");
    if (d == "cluster") {
      clustered = true;
    } else if (d == "ppp") {
      if (clustered && !deployment) {
        problems.emplace_back("lambda_p, lambda_c, R_c require deployment 'cluster'");
      }
      flatten = clustered;
    } else {
      problems.emplace_back("deployment must be 'ppp' or 'cluster'");
    }
  }

  double lambda_f = cfg.lambda_f;
  const bool has_lambda_f = number("lambda_f", lambda_f);
  if (clustered) {
    ClusteredFaps c = std::get<ClusteredFaps>(default_cluster_config().deployment);
    number("lambda_p", c.lambda_p);
    number("lambda_c", c.lambda_c);
    number("R_c", c.R_c);
    cfg = cfg.with_clusters(c.lambda_p, c.lambda_c, c.R_c);
    if (flatten) cfg = cfg.with_poisson_faps();
    if (has_lambda_f) {
      const double d = c.fap_intensity();
      if (std::abs(d - lambda_f) > 1e-9 * std::max(std::abs(d), std::abs(lambda_f))) {
        std::ostringstream m;
        m.precision(17);
        m << "lambda_f is derived for clusters as pi R_c^2 lambda_c lambda_p = " << d
          << " but " << lambda_f << " was given";
        problems.push_back(m.str());
      }
    }
  } else {
    cfg.lambda_f = lambda_f;
  }

  if (problems.empty()) {
    auto v = validate(cfg);
    problems.insert(problems.end(), v.begin(), v.end());
  }
  if (!problems.empty()) throw ConfigError(problems);
  return cfg;
}

NetworkConfig config_from_file(const std::string& path, const std::vector<std::string>& overrides,
                               std::optional<std::string> deployment) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot read config file '" + path + "'"});
  std::stringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str(), overrides, std::move(deployment));
}

std::string config_to_json(const NetworkConfig& cfg, int indent) {
  json j = {{"lambda_m", cfg.lambda_m}, {"lambda_f", cfg.lambda_f}, {"R_f", cfg.R_f},
            {"lambda_s", cfg.lambda_s}, {"lambda_in", cfg.lambda_in},
            {"lambda_out", cfg.lambda_out}, {"P_m", cfg.P_m}, {"P_f", cfg.P_f},
            {"M", cfg.M}, {"M_s", cfg.M_s}, {"alpha", cfg.alpha}, {"mu", cfg.mu},
            {"W", cfg.W}, {"sigma2", cfg.sigma2}};
  if (const auto* c = std::get_if<ClusteredFaps>(&cfg.deployment)) {
    j["deployment"] = "cluster";
    j["lambda_p"] = c->lambda_p;
    j["lambda_c"] = c->lambda_c;
    j["R_c"] = c->R_c;
  } else {
    j["deployment"] = "ppp";
  }
  return j.dump(indent);
}

std::string config_hash(const NetworkConfig& cfg) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : config_to_json(cfg)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace hfemto
