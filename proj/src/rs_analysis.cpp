#include "rsguard/rs_analysis.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>

namespace rsguard {

int flip(int value, FlipKind kind) {
  switch (kind) {
    case FlipKind::Positive:
      if (value < 0 || value > 255) throw RsError(RsErrc::OutOfRange, "F1 input outside 0..255");
      return value ^ 1;
    case FlipKind::Negative:
      if (value < -1 || value > 256) throw RsError(RsErrc::OutOfRange, "F-1 input outside -1..256");
      return ((value + 1) ^ 1) - 1;
    case FlipKind::Zero:
      if (value < -1 || value > 256) throw RsError(RsErrc::OutOfRange, "F0 input outside -1..256");
      return value;
  }
  return value;
}

std::int64_t variation(std::span<const int> group) {
  if (group.size() < 2) throw RsError(RsErrc::GroupTooSmall, "variation needs at least two values");
  std::int64_t sum = 0;
  for (std::size_t i = 1; i < group.size(); ++i) sum += std::abs(group[i] - group[i - 1]);
  return sum;
}

Mask::Mask(std::vector<std::int8_t> entries) : entries_(std::move(entries)) {
  for (auto e : entries_)
    if (e < -1 || e > 1) throw RsError(RsErrc::BadMask, "mask entries must be -1, 0 or +1");
}

Mask Mask::parse(std::string_view spec) {
  std::vector<std::int8_t> entries;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = spec.find(',', pos);
    const std::string_view token = spec.substr(pos, comma == std::string_view::npos ? spec.npos : comma - pos);
    if (token == "0" || token == "+0" || token == "-0") entries.push_back(0);
    else if (token == "1" || token == "+1") entries.push_back(1);
    else if (token == "-1") entries.push_back(-1);
    else throw RsError(RsErrc::BadMask, "bad mask entry '" + std::string(token) + "' in '" + std::string(spec) + "'");
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Mask(std::move(entries));
}

bool Mask::all_zero() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](std::int8_t e) { return e == 0; });
}

Mask Mask::negated() const {
  std::vector<std::int8_t> out(entries_.size());
  std::transform(entries_.begin(), entries_.end(), out.begin(), [](std::int8_t e) { return static_cast<std::int8_t>(-e); });
  return Mask(std::move(out));
}

FlipKind Mask::kind_at(std::size_t i) const noexcept {
  return entries_[i] > 0 ? FlipKind::Positive : entries_[i] < 0 ? FlipKind::Negative : FlipKind::Zero;
}

std::string Mask::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ',';
    out += entries_[i] > 0 ? "+1" : entries_[i] < 0 ? "-1" : "0";
  }
  return out;
}

namespace {

// Variation of the group before and after masked flipping, without allocating.
GroupClass classify_unchecked(const std::uint8_t* group, const Mask& mask) {
  const std::size_t n = mask.size();
  std::int64_t before = 0;
  std::int64_t after = 0;
  int prev_raw = group[0];
  int prev_flipped = flip(group[0], mask.kind_at(0));
  for (std::size_t i = 1; i < n; ++i) {
    const int raw = group[i];
    const int flipped = flip(raw, mask.kind_at(i));
    before += std::abs(raw - prev_raw);
    after += std::abs(flipped - prev_flipped);
    prev_raw = raw;
    prev_flipped = flipped;
  }
  if (after > before) return GroupClass::Regular;
  if (after < before) return GroupClass::Singular;
  return GroupClass::Unusable;
}

void tally(GroupCounts& counts, GroupClass cls) {
  switch (cls) {
    case GroupClass::Regular: ++counts.regular; break;
    case GroupClass::Singular: ++counts.singular; break;
    case GroupClass::Unusable: ++counts.unusable; break;
  }
}

}  // namespace

GroupClass classify_group(std::span<const std::uint8_t> group, const Mask& mask) {
  if (group.size() != mask.size())
    throw RsError(RsErrc::LengthMismatch, "group length " + std::to_string(group.size()) +
                                              " differs from mask length " + std::to_string(mask.size()));
  if (group.size() < 2) throw RsError(RsErrc::GroupTooSmall, "groups need at least two values");
  return classify_unchecked(group.data(), mask);
}

PlaneCounts count_groups(std::span<const std::uint8_t> plane, const Mask& mask) {
  PlaneCounts counts;
  const std::size_t n = mask.size();
  if (n == 0) return counts;
  const Mask negative = mask.negated();
  for (std::size_t start = 0; start + n <= plane.size(); start += n) {
    tally(counts.positive, classify_unchecked(plane.data() + start, mask));
    tally(counts.negative, classify_unchecked(plane.data() + start, negative));
  }
  return counts;
}

ChannelRs to_percentages(const PlaneCounts& counts) {
  ChannelRs out;
  out.groups = counts.positive.total();
  if (out.groups == 0) return out;
  const double scale = 100.0 / static_cast<double>(out.groups);
  out.r_pos = scale * static_cast<double>(counts.positive.regular);
  out.s_pos = scale * static_cast<double>(counts.positive.singular);
  out.u_pos = scale * static_cast<double>(counts.positive.unusable);
  out.r_neg = scale * static_cast<double>(counts.negative.regular);
  out.s_neg = scale * static_cast<double>(counts.negative.singular);
  out.u_neg = scale * static_cast<double>(counts.negative.unusable);
  return out;
}

RsStats rs_statistics(const RgbImage& image, const Mask& mask, std::size_t group_len) {
  if (group_len < 2) throw RsError(RsErrc::BadMask, "group length must be at least 2");
  if (mask.size() != group_len)
    throw RsError(RsErrc::BadMask, "mask length " + std::to_string(mask.size()) + " differs from group length " +
                                       std::to_string(group_len));
  if (mask.all_zero()) throw RsError(RsErrc::BadMask, "mask must contain a non-zero entry");
  if (image.pixel_count() < group_len)
    throw RsError(RsErrc::BadMask, "image holds no complete group of " + std::to_string(group_len));

  // Channels are independent; each task reads its own plane.
  std::array<std::future<ChannelRs>, 3> tasks;
  for (Channel c : kChannels)
    tasks[channel_offset(c)] = std::async(std::launch::async, [&image, &mask, c] {
      return to_percentages(count_groups(channel_plane(image, c), mask));
    });
  RsStats stats;
  for (Channel c : kChannels) stats[c] = tasks[channel_offset(c)].get();
  return stats;
}

RsGap rs_gap(const ChannelRs& channel) noexcept {
  return RsGap{std::abs(channel.r_pos - channel.r_neg), std::abs(channel.s_pos - channel.s_neg)};
}

std::array<RsGap, 3> rs_gap(const RsStats& stats) noexcept {
  return {rs_gap(stats.channels[0]), rs_gap(stats.channels[1]), rs_gap(stats.channels[2])};
}

bool detect(const RsGap& gap, double threshold) {
  if (!(threshold > 0)) throw RsError(RsErrc::BadThreshold, "threshold must be positive");
  return gap.regular >= threshold || gap.singular >= threshold;
}

std::array<bool, 3> detect(const RsStats& stats, double threshold) {
  const auto gaps = rs_gap(stats);
  return {detect(gaps[0], threshold), detect(gaps[1], threshold), detect(gaps[2], threshold)};
}

}  // namespace rsguard
