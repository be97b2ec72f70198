#pragma once

// LSB replacement embedding of framed messages at keyed positions.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rsguard/codec.hpp"
#include "rsguard/raster.hpp"

namespace rsguard {

struct StegoResult {
  RgbImage stego;
  EmbedPlan plan;
  std::vector<std::size_t> protected_positions;  // sorted copy of plan.positions
};

enum class EmbedErrc { CapacityExceeded, CorruptHeader };

class EmbedError : public std::runtime_error {
public:
  EmbedError(EmbedErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  EmbedErrc code() const noexcept { return code_; }

private:
  EmbedErrc code_;
};

/// Payload bits available after the 32-bit header; 0 when the image is too small.
std::size_t capacity_bits(const RgbImage& image) noexcept;

StegoResult embed(const RgbImage& cover, std::span<const std::uint8_t> message, std::string_view key);

/// Regenerates the full-length plan from the key, reads the header from the
/// first 32 positions and the payload from the ones after it.
/// Throws CorruptHeader when the declared length cannot fit the image.
std::vector<std::uint8_t> extract(const RgbImage& stego, std::string_view key);

/// Plan that embed() would use for a message of `message_bytes` bytes.
EmbedPlan plan_for(const RgbImage& image, std::size_t message_bytes, std::string_view key);

}  // namespace rsguard
