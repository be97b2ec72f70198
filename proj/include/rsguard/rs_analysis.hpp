#pragma once

// RS steganalysis: flipping functions, the variation discriminant, regular /
// singular classification of pixel groups and per-channel statistics.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rsguard/raster.hpp"

namespace rsguard {

enum class FlipKind { Positive, Negative, Zero };

enum class GroupClass { Regular, Singular, Unusable };

enum class RsErrc { OutOfRange, GroupTooSmall, LengthMismatch, BadMask, BadThreshold };

class RsError : public std::runtime_error {
public:
  RsError(RsErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  RsErrc code() const noexcept { return code_; }

private:
  RsErrc code_;
};

/// F1 swaps 2k<->2k+1 (input 0..255). F-1 swaps 2k-1<->2k and is evaluated in
/// a signed domain, so it maps 0 to -1 and 255 to 256 (input -1..256).
/// F0 is the identity on -1..256.
int flip(int value, FlipKind kind);

/// Sum of absolute differences of consecutive entries. Needs at least 2 values.
std::int64_t variation(std::span<const int> group);

/// Per-position flipping assignment: +1 selects F1, -1 selects F-1, 0 selects F0.
class Mask {
public:
  Mask() = default;
  explicit Mask(std::vector<std::int8_t> entries);

  /// Strict parser for comma-separated signed digits, e.g. "0,+1,+1,0" or "0,1,-1,0".
  static Mask parse(std::string_view spec);
  static Mask standard() { return Mask({0, 1, 1, 0}); }

  std::span<const std::int8_t> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool all_zero() const noexcept;
  Mask negated() const;
  FlipKind kind_at(std::size_t i) const noexcept;
  std::string to_string() const;

  friend bool operator==(const Mask&, const Mask&) = default;

private:
  std::vector<std::int8_t> entries_;
};

GroupClass classify_group(std::span<const std::uint8_t> group, const Mask& mask);

/// Raw class counts for one polarity.
struct GroupCounts {
  std::size_t regular = 0;
  std::size_t singular = 0;
  std::size_t unusable = 0;

  std::size_t total() const noexcept { return regular + singular + unusable; }
};

struct PlaneCounts {
  GroupCounts positive;  // under M
  GroupCounts negative;  // under -M
};

/// Classifies consecutive non-overlapping groups of mask.size() values; a
/// trailing partial group is discarded. No validation beyond mask.size() >= 1.
PlaneCounts count_groups(std::span<const std::uint8_t> plane, const Mask& mask);

/// Percentages (0..100) of total groups in one channel.
struct ChannelRs {
  double r_pos = 0;  // R_M
  double s_pos = 0;  // S_M
  double u_pos = 0;
  double r_neg = 0;  // R_-M
  double s_neg = 0;  // S_-M
  double u_neg = 0;
  std::size_t groups = 0;
};

ChannelRs to_percentages(const PlaneCounts& counts);

struct RsStats {
  std::array<ChannelRs, 3> channels;

  const ChannelRs& operator[](Channel c) const noexcept { return channels[channel_offset(c)]; }
  ChannelRs& operator[](Channel c) noexcept { return channels[channel_offset(c)]; }
};

/// Throws BadMask when the mask length differs from group_len, group_len < 2,
/// the mask is all zeros, or the image holds no complete group.
RsStats rs_statistics(const RgbImage& image, const Mask& mask, std::size_t group_len);

struct RsGap {
  double regular = 0;   // |R_M - R_-M|
  double singular = 0;  // |S_M - S_-M|
};

RsGap rs_gap(const ChannelRs& channel) noexcept;
std::array<RsGap, 3> rs_gap(const RsStats& stats) noexcept;

inline constexpr double kDefaultThreshold = 10.0;

/// A channel is flagged when either gap component reaches the threshold.
bool detect(const RsGap& gap, double threshold = kDefaultThreshold);
std::array<bool, 3> detect(const RsStats& stats, double threshold = kDefaultThreshold);

}  // namespace rsguard
