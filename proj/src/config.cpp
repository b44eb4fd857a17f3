#include "rig/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string>

#include "rig/errors.hpp"
#include "rig/report.hpp"
#include "rig/rng.hpp"

namespace rig {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& why) {
  throw ConfigError(path + ": " + why);
}

void expect_keys(const json& obj, const std::string& path,
                 std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) bad(path + "." + it.key(), "unknown field");
  }
}

int get_int(const json& obj, const char* key, const std::string& path, int lo,
            int def) {
  if (!obj.contains(key)) return def;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) bad(path + "." + key, "expected an integer");
  const long long x = v.get<long long>();
  if (x < lo) bad(path + "." + key, "must be at least " + std::to_string(lo));
  if (x > std::numeric_limits<int>::max()) bad(path + "." + key, "out of range");
  return static_cast<int>(x);
}

double get_exponent(const json& v, const std::string& path) {
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return kInf;
    bad(path, "expected a number >= 1 or \"inf\"");
  }
  if (!v.is_number()) bad(path, "expected a number >= 1 or \"inf\"");
  const double p = v.get<double>();
  if (!(p >= 1.0)) bad(path, "exponent must be >= 1");
  return p;
}

const char* seed_kind_name(SeedKind k) {
  switch (k) {
    case SeedKind::kStandard: return "standard";
    case SeedKind::kRandom: return "random";
    case SeedKind::kPerturbed: return "perturbed";
  }
  return "standard";
}

}  // namespace

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = {
      "example31",      "embedding_inequality", "lax_bound",
      "t12_spectrum",   "sqrt_identities",      "monotone_refinement",
      "holder",         "duality_identities",   "norm_products",
      "thm31",          "auerbach",             "adjoint_spectrum",
      "adjoint_double", "adjoint_remark21",     "embedding_chain"};
  return names;
}

bool check_is_randomized(const std::string& name) {
  // example31 and adjoint_spectrum are closed-form comparisons;
  // embedding_chain derives a fixed internal seed so its output does not
  // depend on rng_seed either.
  return name != "example31" && name != "adjoint_spectrum" &&
         name != "embedding_chain";
}

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!root.is_object()) bad("config", "top level must be an object");
  expect_keys(root, "config", {"space", "seed_kind", "rng_seed", "suite"});

  RunConfig cfg;
  if (root.contains("space")) {
    const json& sp = root.at("space");
    if (!sp.is_object()) bad("space", "expected an object");
    expect_keys(sp, "space", {"dim", "p", "weights"});
    cfg.space.dim = get_int(sp, "dim", "space", 1, 2);
    if (sp.contains("p")) cfg.space.p = get_exponent(sp.at("p"), "space.p");
    if (sp.contains("weights")) {
      const json& w = sp.at("weights");
      if (!w.is_array()) bad("space.weights", "expected an array");
      if (static_cast<int>(w.size()) != cfg.space.dim)
        bad("space.weights", "size must equal space.dim");
      for (std::size_t i = 0; i < w.size(); ++i) {
        const std::string wp = "space.weights[" + std::to_string(i) + "]";
        if (!w[i].is_number()) bad(wp, "expected a number");
        const double x = w[i].get<double>();
        if (!(x > 0.0)) bad(wp, "must be positive");
        cfg.space.weights.push_back(x);
      }
    }
  }

  if (root.contains("seed_kind")) {
    const json& k = root.at("seed_kind");
    if (!k.is_string()) bad("seed_kind", "expected a string");
    const std::string s = k.get<std::string>();
    if (s == "standard") cfg.seed_kind = SeedKind::kStandard;
    else if (s == "random") cfg.seed_kind = SeedKind::kRandom;
    else if (s == "perturbed") cfg.seed_kind = SeedKind::kPerturbed;
    else bad("seed_kind", "expected standard, random, or perturbed");
  }

  if (root.contains("rng_seed")) {
    const json& s = root.at("rng_seed");
    if (!s.is_number_integer()) bad("rng_seed", "expected an integer");
    if (s.is_number_unsigned()) {
      cfg.rng_seed = s.get<std::uint64_t>();
    } else {
      const long long v = s.get<long long>();
      if (v < 0) bad("rng_seed", "must be non-negative");
      cfg.rng_seed = static_cast<std::uint64_t>(v);
    }
    cfg.has_seed = true;
  }

  if (root.contains("suite")) {
    const json& su = root.at("suite");
    if (!su.is_array()) bad("suite", "expected an array");
    for (std::size_t i = 0; i < su.size(); ++i) {
      const std::string path = "suite[" + std::to_string(i) + "]";
      const json& e = su[i];
      CheckConfig cc;
      if (e.is_string()) {
        cc.check = e.get<std::string>();
      } else if (e.is_object()) {
        expect_keys(e, path,
                    {"check", "samples", "operators", "grid_n", "p",
                     "tolerance", "mode"});
        if (!e.contains("check")) bad(path + ".check", "required");
        if (!e.at("check").is_string()) bad(path + ".check", "expected a string");
        cc.check = e.at("check").get<std::string>();
        cc.samples = get_int(e, "samples", path, 1, 0);
        cc.operators = get_int(e, "operators", path, 1, 0);
        cc.grid_n = get_int(e, "grid_n", path, 2, 0);
        if (e.contains("p")) cc.p = get_exponent(e.at("p"), path + ".p");
        if (e.contains("tolerance")) {
          if (!e.at("tolerance").is_number())
            bad(path + ".tolerance", "expected a number");
          cc.tolerance = e.at("tolerance").get<double>();
          if (!(cc.tolerance > 0.0)) bad(path + ".tolerance", "must be positive");
        }
        if (e.contains("mode")) {
          if (!e.at("mode").is_string()) bad(path + ".mode", "expected a string");
          cc.mode = e.at("mode").get<std::string>();
          if (cc.mode != "literal" && cc.mode != "projected")
            bad(path + ".mode", "expected literal or projected");
        }
      } else {
        bad(path, "expected a check name or an object");
      }
      const auto& names = known_checks();
      if (std::find(names.begin(), names.end(), cc.check) == names.end())
        bad(path + ".check", "unknown check \"" + cc.check + "\"");
      cfg.suite.push_back(std::move(cc));
    }
  }

  for (std::size_t i = 0; i < cfg.suite.size(); ++i)
    if (check_is_randomized(cfg.suite[i].check) && !cfg.has_seed)
      bad("rng_seed", "required because suite[" + std::to_string(i) + "] (" +
                          cfg.suite[i].check + ") is randomized");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read config file: " + path);
  return parse_config(buf.str());
}

RunConfig default_verify_config() {
  RunConfig cfg;
  cfg.space.dim = 5;
  cfg.space.p = 3.0;
  cfg.seed_kind = SeedKind::kRandom;
  cfg.rng_seed = 2026;
  cfg.has_seed = true;
  for (const std::string& name : known_checks()) {
    CheckConfig cc;
    cc.check = name;
    cfg.suite.push_back(cc);
  }
  return cfg;
}

std::string canonical_dump(const RunConfig& cfg) {
  std::string out = "space{dim=" + std::to_string(cfg.space.dim) +
                    ";p=" + format_double(cfg.space.p) + ";weights=";
  if (cfg.space.weights.empty()) {
    out += "unit";
  } else {
    for (std::size_t i = 0; i < cfg.space.weights.size(); ++i) {
      if (i) out += ",";
      out += format_double(cfg.space.weights[i]);
    }
  }
  out += "};seed_kind=";
  out += seed_kind_name(cfg.seed_kind);
  out += ";rng_seed=";
  out += cfg.has_seed ? std::to_string(cfg.rng_seed) : std::string("none");
  out += ";suite=[";
  for (std::size_t i = 0; i < cfg.suite.size(); ++i) {
    const CheckConfig& cc = cfg.suite[i];
    if (i) out += ",";
    out += "{check=" + cc.check + ";samples=" + std::to_string(cc.samples) +
           ";operators=" + std::to_string(cc.operators) +
           ";grid_n=" + std::to_string(cc.grid_n) +
           ";p=" + format_double(cc.p) +
           ";tolerance=" + format_double(cc.tolerance) +
           ";mode=" + (cc.mode.empty() ? std::string("default") : cc.mode) + "}";
  }
  out += "]";
  return out;
}

std::uint64_t config_digest(const RunConfig& cfg) {
  return fnv1a(canonical_dump(cfg));
}

double parse_exponent(const std::string& text) {
  if (text == "inf") return kInf;
  try {
    std::size_t pos = 0;
    const double p = std::stod(text, &pos);
    if (pos == text.size() && std::isfinite(p) && p >= 1.0) return p;
  } catch (...) {
  }
  throw ConfigError("p: expected a number >= 1 or \"inf\", got \"" + text + "\"");
}

}  // namespace rig
