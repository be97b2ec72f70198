#pragma once

// JSON forms of the analysis results and GA configuration used by the CLI.
// Objects use sorted keys, so dumps are byte-stable.

#include <json.hpp>

#include "rsguard/ga_optimizer.hpp"
#include "rsguard/metrics.hpp"
#include "rsguard/rs_analysis.hpp"

namespace rsguard {

/// {"red": {r_pos, s_pos, u_pos, r_neg, s_neg, u_neg, gap_r, gap_s, flagged}, "green": ..., "blue": ...}
nlohmann::json rs_stats_json(const RsStats& stats, double threshold = kDefaultThreshold);

/// {aad, mse, lmse, psnr, ncc}; psnr is the string "inf" when mse == 0,
/// lmse and ncc are null when undefined.
nlohmann::json quality_json(const QualityReport& report);

nlohmann::json ga_config_json(const GaConfig& config);

/// Flat object, every field optional; missing fields keep the defaults.
/// Unknown keys or wrongly typed values throw GaError(BadConfig).
GaConfig ga_config_from_json(const nlohmann::json& j, GaConfig base = {});

}  // namespace rsguard
