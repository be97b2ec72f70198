#include "rsguard/codec.hpp"

#include <numeric>
#include <utility>

namespace rsguard {

Frame frame_message(std::span<const std::uint8_t> message) {
  if (message.size() > 0xFFFFFFFFull)
    throw CodecError(CodecErrc::MessageTooLong, "message exceeds 2^32-1 bytes");
  const auto count = static_cast<std::uint32_t>(message.size());

  Frame frame;
  frame.bits.reserve(kHeaderBits + 8 * message.size());
  for (int bit = 31; bit >= 0; --bit) frame.bits.push_back(static_cast<std::uint8_t>((count >> bit) & 1u));
  for (std::uint8_t byte : message)
    for (int bit = 7; bit >= 0; --bit) frame.bits.push_back(static_cast<std::uint8_t>((byte >> bit) & 1u));
  return frame;
}

std::vector<std::uint8_t> unframe(std::span<const std::uint8_t> bits) {
  if (bits.size() < kHeaderBits)
    throw CodecError(CodecErrc::Truncated, "frame shorter than its 32-bit header");
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < kHeaderBits; ++i) count = (count << 1) | (bits[i] & 1u);
  if ((bits.size() - kHeaderBits) / 8 < count)
    throw CodecError(CodecErrc::Truncated,
                     "frame declares " + std::to_string(count) + " bytes but carries only " +
                         std::to_string((bits.size() - kHeaderBits) / 8));

  std::vector<std::uint8_t> out(count, 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint8_t byte = 0;
    for (std::size_t b = 0; b < 8; ++b) byte = static_cast<std::uint8_t>((byte << 1) | (bits[kHeaderBits + 8 * i + b] & 1u));
    out[i] = byte;
  }
  return out;
}

std::uint64_t derive_seed(std::string_view key) noexcept {
  std::uint64_t state = 0xcbf29ce484222325ull;
  for (char ch : key) {
    state ^= static_cast<std::uint8_t>(ch);
    state *= 0x00000100000001b3ull;
  }
  return state;
}

RngStep next_u64(Rng rng) noexcept {
  rng.state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = rng.state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return {rng, z ^ (z >> 31)};
}

std::uint64_t Rng::next() noexcept {
  auto step = next_u64(*this);
  state = step.rng.state;
  return step.value;
}

EmbedPlan permute_positions(std::size_t total, std::size_t needed, std::uint64_t seed) {
  if (needed > total)
    throw CodecError(CodecErrc::NeedTooLarge,
                     "plan needs " + std::to_string(needed) + " positions but only " + std::to_string(total) + " exist");
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng{seed};
  for (std::size_t i = total; i-- > 1;) {
    const auto j = static_cast<std::size_t>(rng.next() % (i + 1));
    std::swap(order[i], order[j]);
  }
  order.resize(needed);
  return EmbedPlan{std::move(order)};
}

}  // namespace rsguard
