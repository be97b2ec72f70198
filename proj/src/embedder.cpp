#include "rsguard/embedder.hpp"

#include <algorithm>

namespace rsguard {

std::size_t capacity_bits(const RgbImage& image) noexcept {
  const std::size_t total = image.byte_count();
  return total < kHeaderBits ? 0 : total - kHeaderBits;
}

EmbedPlan plan_for(const RgbImage& image, std::size_t message_bytes, std::string_view key) {
  return permute_positions(image.byte_count(), kHeaderBits + 8 * message_bytes, derive_seed(key));
}

StegoResult embed(const RgbImage& cover, std::span<const std::uint8_t> message, std::string_view key) {
  const std::size_t capacity = capacity_bits(cover);
  if (message.size() > capacity / 8)
    throw EmbedError(EmbedErrc::CapacityExceeded, "message needs " + std::to_string(8 * message.size()) +
                                                      " payload bits, image holds " + std::to_string(capacity));
  if (cover.byte_count() < kHeaderBits)
    throw EmbedError(EmbedErrc::CapacityExceeded, "image too small to hold the 32-bit header");

  const Frame frame = frame_message(message);
  EmbedPlan plan = plan_for(cover, message.size(), key);

  RgbImage stego = cover;
  auto data = stego.bytes();
  for (std::size_t k = 0; k < frame.size(); ++k) {
    auto& byte = data[plan.positions[k]];
    byte = static_cast<std::uint8_t>((byte & 0xFEu) | frame.bits[k]);
  }

  std::vector<std::size_t> protected_positions = plan.positions;
  std::sort(protected_positions.begin(), protected_positions.end());
  return StegoResult{std::move(stego), std::move(plan), std::move(protected_positions)};
}

std::vector<std::uint8_t> extract(const RgbImage& stego, std::string_view key) {
  const std::size_t total = stego.byte_count();
  if (total < kHeaderBits)
    throw EmbedError(EmbedErrc::CorruptHeader, "image too small to carry a header");

  const EmbedPlan plan = permute_positions(total, total, derive_seed(key));
  const auto data = stego.bytes();

  std::uint64_t declared = 0;
  for (std::size_t k = 0; k < kHeaderBits; ++k) declared = (declared << 1) | (data[plan.positions[k]] & 1u);
  if (declared > capacity_bits(stego) / 8)
    throw EmbedError(EmbedErrc::CorruptHeader, "header declares " + std::to_string(declared) +
                                                   " bytes, more than the image can hold (wrong key or no message)");

  std::vector<std::uint8_t> bits(kHeaderBits + 8 * declared);
  for (std::size_t k = 0; k < bits.size(); ++k) bits[k] = data[plan.positions[k]] & 1u;
  return unframe(bits);
}

}  // namespace rsguard
