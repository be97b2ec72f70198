#pragma once

// Full-reference quality measures between a cover and a stego image. All
// three channels are pooled into one sum; the cover is always the reference.

#include <optional>
#include <stdexcept>
#include <string>

#include "rsguard/raster.hpp"

namespace rsguard {

struct QualityReport {
  double aad = 0;                // mean |c - s|
  double mse = 0;                // mean (c - s)^2
  std::optional<double> lmse;    // empty when sum L(c)^2 == 0 or no interior pixel
  double psnr = 0;               // dB, +infinity when mse == 0
  std::optional<double> ncc;     // sum(c*s) / sum(c^2); empty for an all-zero cover
};

enum class MetricsErrc { DimensionMismatch, LmseUndefined };

class MetricsError : public std::runtime_error {
public:
  MetricsError(MetricsErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  MetricsErrc code() const noexcept { return code_; }

private:
  MetricsErrc code_;
};

QualityReport quality(const RgbImage& cover, const RgbImage& stego);

/// Normalized Laplacian MSE with the 4-neighbour kernel on interior pixels,
/// per channel. Throws LmseUndefined when the cover Laplacian energy is zero.
double lmse(const RgbImage& cover, const RgbImage& stego);

double psnr_from_mse(double mse) noexcept;

}  // namespace rsguard
