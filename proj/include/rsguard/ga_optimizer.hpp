#pragma once

// Genetic-algorithm hardening of a stego image.
//
// The image is tiled into 8x8 blocks. For each block a small population of
// candidate byte arrays is evolved; candidates only ever differ from the stego
// block in bits 1..7, so every LSB (and with it the embedded frame) survives.
// Fitness is block-local:
//
//   alpha * sum_channels(|R_M - R_-M| + |S_M - S_-M|) + beta * MSE(candidate, cover)
//
// with RS percentages computed over the groups of the candidate's own channel
// planes. Each block draws from its own SplitMix64 stream derived from the
// master seed and the block index, so the result does not depend on the order
// or concurrency in which blocks are processed.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsguard/codec.hpp"
#include "rsguard/raster.hpp"
#include "rsguard/rs_analysis.hpp"

namespace rsguard {

struct GaConfig {
  std::size_t population_size = 20;
  std::size_t generations = 50;
  double crossover_rate = 0.8;
  double mutation_rate = 0.1;
  double alpha = 1.0;  // RS-gap weight
  double beta = 10.0;  // distortion weight
  std::uint64_t seed = 0;
  Mask mask = Mask::standard();
  std::size_t group_len = 4;

  /// Throws GaError(BadConfig) on population_size < 2, rates outside [0,1],
  /// negative weights, or a mask that does not match group_len.
  void validate() const;
};

inline constexpr std::size_t kBlockSize = 8;

struct Block {
  std::size_t row = 0;   // top-left pixel
  std::size_t col = 0;
  std::size_t rows = 0;  // extent in pixels; edge blocks may be smaller
  std::size_t cols = 0;
  std::vector<std::uint8_t> bytes;           // 3*rows*cols bytes, row-major RGB
  std::vector<std::size_t> protected_local;  // sorted local byte indices carrying frame bits
};

struct Candidate {
  std::vector<std::uint8_t> bytes;
  double fitness = 0;
};

enum class GaErrc { LengthMismatch, DimensionMismatch, BadConfig };

class GaError : public std::runtime_error {
public:
  GaError(GaErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  GaErrc code() const noexcept { return code_; }

private:
  GaErrc code_;
};

/// Row-major tiling. Plan positions (indices into the flat byte array) become
/// the protected sets of the blocks they fall in.
std::vector<Block> block_partition(const RgbImage& image, std::span<const std::size_t> plan_positions,
                                   std::size_t block_size = kBlockSize);

/// Copies the bytes of a rows x cols region starting at (row, col).
std::vector<std::uint8_t> region_bytes(const RgbImage& image, std::size_t row, std::size_t col, std::size_t rows,
                                       std::size_t cols);
void write_region(RgbImage& image, const Block& where, std::span<const std::uint8_t> bytes);

/// Sum over channels of |R_M - R_-M| + |S_M - S_-M| (percent) for the groups
/// inside one block's channel planes. Channels without a complete group add 0.
double block_rs_gap(std::span<const std::uint8_t> block_bytes, const Mask& mask);

double block_fitness(std::span<const std::uint8_t> candidate, std::span<const std::uint8_t> cover_block,
                     const GaConfig& config);

/// Bit 1 or bit 2 (uniform) of each byte flipped with probability `rate`.
Candidate reproduce(const Candidate& parent, double rate, Rng& rng);

/// Candidate 0 is the stego block itself; the rest are reproductions of it.
std::vector<Candidate> init_population(const Block& stego_block, const GaConfig& config, Rng& rng);

/// Child takes a's bytes before `cut` and b's from `cut` on; cut is a multiple
/// of 3 in [0, size].
Candidate crossover_at(const Candidate& a, const Candidate& b, std::size_t cut);
/// Single cut drawn uniformly over the pixel boundaries.
Candidate crossover(const Candidate& a, const Candidate& b, Rng& rng);

std::uint8_t swap_bits(std::uint8_t byte, unsigned i, unsigned j) noexcept;

/// Per byte with probability mutation_rate: flip one of bits 1..7, or swap two
/// distinct bits among 1..7 (uniform choice). Bit 0 is never addressed.
Candidate mutate(const Candidate& c, const GaConfig& config, Rng& rng);

/// Elitist truncation: stable ascending sort by fitness, keep population_size.
std::vector<Candidate> select(std::vector<Candidate> population, const GaConfig& config);

struct BlockResult {
  std::vector<std::uint8_t> bytes;
  double fitness = 0;
  std::vector<double> best_per_generation;  // entry 0 is the initial population
};

BlockResult optimize_block(const Block& stego_block, std::span<const std::uint8_t> cover_block,
                           const GaConfig& config, Rng& rng);

/// Seed of the per-block stream: first SplitMix64 output from state seed + index.
std::uint64_t block_seed(std::uint64_t seed, std::size_t block_index) noexcept;

/// Optimizes one block with its own stream.
BlockResult harden_block(const Block& stego_block, std::span<const std::uint8_t> cover_block,
                         const GaConfig& config, std::size_t block_index);

struct HardenResult {
  RgbImage image;
  std::vector<BlockResult> blocks;
};

/// `threads` == 0 picks the hardware concurrency. Output is identical for any
/// thread count.
HardenResult harden_traced(const RgbImage& stego, const RgbImage& cover, const EmbedPlan& plan,
                           const GaConfig& config, unsigned threads = 0);

RgbImage harden(const RgbImage& stego, const RgbImage& cover, const EmbedPlan& plan, const GaConfig& config,
                unsigned threads = 0);

}  // namespace rsguard
