#pragma once

// Message framing and keyed, reproducible selection of embedding positions.
//
// A frame is a 32-bit big-endian payload byte count followed by the payload
// bytes, each serialized most-significant bit first. Positions come from a
// Fisher-Yates shuffle driven by SplitMix64 seeded with FNV-1a of the key.
// All constants are fixed so that any implementation reproduces the same plan.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rsguard {

inline constexpr std::size_t kHeaderBits = 32;

struct Frame {
  std::vector<std::uint8_t> bits;  // each element 0 or 1

  std::size_t size() const noexcept { return bits.size(); }
};

struct EmbedPlan {
  std::vector<std::size_t> positions;  // distinct indices into the flat byte array

  std::size_t size() const noexcept { return positions.size(); }
};

enum class CodecErrc { MessageTooLong, Truncated, NeedTooLarge };

class CodecError : public std::runtime_error {
public:
  CodecError(CodecErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  CodecErrc code() const noexcept { return code_; }

private:
  CodecErrc code_;
};

Frame frame_message(std::span<const std::uint8_t> message);

/// Reads the header count n and returns the following 8n bits as bytes.
/// Bits beyond the declared payload are ignored.
std::vector<std::uint8_t> unframe(std::span<const std::uint8_t> bits);

/// FNV-1a 64 over the raw bytes of the key.
std::uint64_t derive_seed(std::string_view key) noexcept;

/// SplitMix64 state. `next()` steps in place; `next_u64` is the value form.
struct Rng {
  std::uint64_t state = 0;

  std::uint64_t next() noexcept;
  /// Uniform index in [0, n) by modulo reduction; n must be > 0.
  std::uint64_t below(std::uint64_t n) noexcept { return next() % n; }
  /// Uniform double in [0, 1) from the top 53 bits.
  double unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool chance(double p) noexcept { return unit() < p; }

  friend bool operator==(const Rng&, const Rng&) = default;
};

struct RngStep {
  Rng rng;
  std::uint64_t value;
};

RngStep next_u64(Rng rng) noexcept;

/// Full Fisher-Yates shuffle of [0, total) (i from total-1 down to 1, swap with
/// draw % (i+1)), truncated to the first `needed` entries.
EmbedPlan permute_positions(std::size_t total, std::size_t needed, std::uint64_t seed);

}  // namespace rsguard
