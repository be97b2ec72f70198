#include "rsguard/report.hpp"

#include <cmath>
#include <set>
#include <string>

namespace rsguard {

using nlohmann::json;

json rs_stats_json(const RsStats& stats, double threshold) {
  json out = json::object();
  for (Channel c : kChannels) {
    const ChannelRs& ch = stats[c];
    const RsGap gap = rs_gap(ch);
    out[channel_name(c)] = {
        {"r_pos", ch.r_pos}, {"s_pos", ch.s_pos}, {"u_pos", ch.u_pos},
        {"r_neg", ch.r_neg}, {"s_neg", ch.s_neg}, {"u_neg", ch.u_neg},
        {"gap_r", gap.regular}, {"gap_s", gap.singular},
        {"flagged", detect(gap, threshold)},
    };
  }
  return out;
}

json quality_json(const QualityReport& report) {
  json out = json::object();
  out["aad"] = report.aad;
  out["mse"] = report.mse;
  out["lmse"] = report.lmse ? json(*report.lmse) : json(nullptr);
  out["psnr"] = std::isinf(report.psnr) ? json("inf") : json(report.psnr);
  out["ncc"] = report.ncc ? json(*report.ncc) : json(nullptr);
  return out;
}

json ga_config_json(const GaConfig& config) {
  json mask = json::array();
  for (auto e : config.mask.entries()) mask.push_back(static_cast<int>(e));
  return {
      {"population_size", config.population_size},
      {"generations", config.generations},
      {"crossover_rate", config.crossover_rate},
      {"mutation_rate", config.mutation_rate},
      {"alpha", config.alpha},
      {"beta", config.beta},
      {"seed", config.seed},
      {"mask", mask},
      {"group_len", config.group_len},
  };
}

GaConfig ga_config_from_json(const json& j, GaConfig base) {
  if (!j.is_object()) throw GaError(GaErrc::BadConfig, "GA config must be a JSON object");
  static const std::set<std::string> known{"population_size", "generations", "crossover_rate", "mutation_rate",
                                           "alpha",           "beta",        "seed",           "mask",
                                           "group_len"};
  for (const auto& [key, _] : j.items())
    if (!known.contains(key)) throw GaError(GaErrc::BadConfig, "unknown GA config field '" + key + "'");

  auto count = [&](const char* key, std::size_t& field) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_unsigned()) throw GaError(GaErrc::BadConfig, std::string(key) + " must be a non-negative integer");
    field = j[key].get<std::size_t>();
  };
  auto real = [&](const char* key, double& field) {
    if (!j.contains(key)) return;
    if (!j[key].is_number()) throw GaError(GaErrc::BadConfig, std::string(key) + " must be a number");
    field = j[key].get<double>();
  };

  count("population_size", base.population_size);
  count("generations", base.generations);
  count("group_len", base.group_len);
  real("crossover_rate", base.crossover_rate);
  real("mutation_rate", base.mutation_rate);
  real("alpha", base.alpha);
  real("beta", base.beta);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw GaError(GaErrc::BadConfig, "seed must be a non-negative integer");
    base.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("mask")) {
    const auto& m = j["mask"];
    std::vector<std::int8_t> entries;
    if (m.is_string()) {
      base.mask = Mask::parse(m.get<std::string>());
    } else if (m.is_array()) {
      for (const auto& e : m) {
        if (!e.is_number_integer() || e.get<int>() < -1 || e.get<int>() > 1)
          throw GaError(GaErrc::BadConfig, "mask entries must be -1, 0 or 1");
        entries.push_back(static_cast<std::int8_t>(e.get<int>()));
      }
      base.mask = Mask(std::move(entries));
    } else {
      throw GaError(GaErrc::BadConfig, "mask must be an array or a string");
    }
    if (!j.contains("group_len")) base.group_len = base.mask.size();
  }
  return base;
}

}  // namespace rsguard
