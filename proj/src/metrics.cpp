#include "rsguard/metrics.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

namespace rsguard {

namespace {

void require_same_shape(const RgbImage& a, const RgbImage& b) {
  if (a.width() != b.width() || a.height() != b.height())
    throw MetricsError(MetricsErrc::DimensionMismatch,
                       "image sizes differ: " + std::to_string(a.width()) + "x" + std::to_string(a.height()) + " vs " +
                           std::to_string(b.width()) + "x" + std::to_string(b.height()));
}

int laplacian(const RgbImage& img, std::size_t r, std::size_t c, Channel ch) {
  return img.at(r + 1, c, ch) + img.at(r - 1, c, ch) + img.at(r, c + 1, ch) + img.at(r, c - 1, ch) -
         4 * img.at(r, c, ch);
}

// Numerator and denominator of the LMSE ratio; exact in 64-bit integers.
std::pair<std::uint64_t, std::uint64_t> lmse_terms(const RgbImage& cover, const RgbImage& stego) {
  std::uint64_t num = 0;
  std::uint64_t den = 0;
  if (cover.height() < 3 || cover.width() < 3) return {0, 0};
  for (Channel ch : kChannels)
    for (std::size_t r = 1; r + 1 < cover.height(); ++r)
      for (std::size_t c = 1; c + 1 < cover.width(); ++c) {
        const std::int64_t lc = laplacian(cover, r, c, ch);
        const std::int64_t ls = laplacian(stego, r, c, ch);
        num += static_cast<std::uint64_t>((lc - ls) * (lc - ls));
        den += static_cast<std::uint64_t>(lc * lc);
      }
  return {num, den};
}

}  // namespace

double psnr_from_mse(double mse) noexcept {
  if (mse == 0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double lmse(const RgbImage& cover, const RgbImage& stego) {
  require_same_shape(cover, stego);
  const auto [num, den] = lmse_terms(cover, stego);
  if (den == 0) throw MetricsError(MetricsErrc::LmseUndefined, "cover has zero Laplacian energy; LMSE undefined");
  return static_cast<double>(num) / static_cast<double>(den);
}

QualityReport quality(const RgbImage& cover, const RgbImage& stego) {
  require_same_shape(cover, stego);
  const auto c = cover.bytes();
  const auto s = stego.bytes();

  std::uint64_t abs_sum = 0;
  std::uint64_t sq_sum = 0;
  std::uint64_t cross = 0;
  std::uint64_t energy = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::int64_t d = static_cast<std::int64_t>(c[i]) - s[i];
    abs_sum += static_cast<std::uint64_t>(d < 0 ? -d : d);
    sq_sum += static_cast<std::uint64_t>(d * d);
    cross += static_cast<std::uint64_t>(c[i]) * s[i];
    energy += static_cast<std::uint64_t>(c[i]) * c[i];
  }

  QualityReport report;
  const double n = static_cast<double>(c.size());
  report.aad = static_cast<double>(abs_sum) / n;
  report.mse = static_cast<double>(sq_sum) / n;
  report.psnr = psnr_from_mse(report.mse);
  if (energy != 0) report.ncc = static_cast<double>(cross) / static_cast<double>(energy);
  const auto [num, den] = lmse_terms(cover, stego);
  if (den != 0) report.lmse = static_cast<double>(num) / static_cast<double>(den);
  return report;
}

}  // namespace rsguard
