#include "rsguard/ga_optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

namespace rsguard {

void GaConfig::validate() const {
  auto fail = [](const std::string& what) { throw GaError(GaErrc::BadConfig, what); };
  if (population_size < 2) fail("population_size must be at least 2");
  if (!(crossover_rate >= 0 && crossover_rate <= 1)) fail("crossover_rate must lie in [0,1]");
  if (!(mutation_rate >= 0 && mutation_rate <= 1)) fail("mutation_rate must lie in [0,1]");
  if (!(alpha >= 0) || !std::isfinite(alpha)) fail("alpha must be a finite value >= 0");
  if (!(beta >= 0) || !std::isfinite(beta)) fail("beta must be a finite value >= 0");
  if (group_len < 2) fail("group_len must be at least 2");
  if (mask.size() != group_len) fail("mask length must equal group_len");
  if (mask.all_zero()) fail("mask must contain a non-zero entry");
}

std::vector<Block> block_partition(const RgbImage& image, std::span<const std::size_t> plan_positions,
                                   std::size_t block_size) {
  if (block_size == 0) throw GaError(GaErrc::BadConfig, "block size must be at least 1");
  const std::size_t blocks_down = (image.height() + block_size - 1) / block_size;
  const std::size_t blocks_across = (image.width() + block_size - 1) / block_size;

  std::vector<Block> blocks;
  blocks.reserve(blocks_down * blocks_across);
  for (std::size_t by = 0; by < blocks_down; ++by)
    for (std::size_t bx = 0; bx < blocks_across; ++bx) {
      Block b;
      b.row = by * block_size;
      b.col = bx * block_size;
      b.rows = std::min(block_size, image.height() - b.row);
      b.cols = std::min(block_size, image.width() - b.col);
      b.bytes = region_bytes(image, b.row, b.col, b.rows, b.cols);
      blocks.push_back(std::move(b));
    }

  for (std::size_t pos : plan_positions) {
    if (pos >= image.byte_count()) throw GaError(GaErrc::DimensionMismatch, "plan position outside the image");
    const std::size_t pixel = pos / 3;
    const std::size_t row = pixel / image.width();
    const std::size_t col = pixel % image.width();
    Block& b = blocks[(row / block_size) * blocks_across + col / block_size];
    b.protected_local.push_back(((row - b.row) * b.cols + (col - b.col)) * 3 + pos % 3);
  }
  for (auto& b : blocks) std::sort(b.protected_local.begin(), b.protected_local.end());
  return blocks;
}

std::vector<std::uint8_t> region_bytes(const RgbImage& image, std::size_t row, std::size_t col, std::size_t rows,
                                       std::size_t cols) {
  std::vector<std::uint8_t> out;
  out.reserve(rows * cols * 3);
  const auto data = image.bytes();
  for (std::size_t r = row; r < row + rows; ++r) {
    const auto first = data.begin() + static_cast<std::ptrdiff_t>((r * image.width() + col) * 3);
    out.insert(out.end(), first, first + static_cast<std::ptrdiff_t>(cols * 3));
  }
  return out;
}

void write_region(RgbImage& image, const Block& where, std::span<const std::uint8_t> bytes) {
  if (bytes.size() != where.rows * where.cols * 3)
    throw GaError(GaErrc::LengthMismatch, "region byte count does not match block extent");
  auto data = image.bytes();
  for (std::size_t r = 0; r < where.rows; ++r)
    std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(r * where.cols * 3), where.cols * 3,
                data.begin() + static_cast<std::ptrdiff_t>(((where.row + r) * image.width() + where.col) * 3));
}

double block_rs_gap(std::span<const std::uint8_t> block_bytes, const Mask& mask) {
  std::vector<std::uint8_t> plane(block_bytes.size() / 3);
  double gap = 0;
  for (std::size_t ch = 0; ch < 3; ++ch) {
    for (std::size_t i = 0; i < plane.size(); ++i) plane[i] = block_bytes[3 * i + ch];
    const PlaneCounts counts = count_groups(plane, mask);
    const std::size_t groups = counts.positive.total();
    if (groups == 0) continue;
    const auto diff = [](std::size_t a, std::size_t b) { return a > b ? a - b : b - a; };
    const std::size_t raw = diff(counts.positive.regular, counts.negative.regular) +
                            diff(counts.positive.singular, counts.negative.singular);
    gap += 100.0 * static_cast<double>(raw) / static_cast<double>(groups);
  }
  return gap;
}

double block_fitness(std::span<const std::uint8_t> candidate, std::span<const std::uint8_t> cover_block,
                     const GaConfig& config) {
  if (candidate.size() != cover_block.size())
    throw GaError(GaErrc::LengthMismatch, "candidate and cover block differ in length");
  if (candidate.empty()) return 0;
  std::uint64_t sq = 0;
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    const int d = static_cast<int>(candidate[i]) - cover_block[i];
    sq += static_cast<std::uint64_t>(d * d);
  }
  const double mse = static_cast<double>(sq) / static_cast<double>(candidate.size());
  const double rs = config.alpha == 0 ? 0.0 : block_rs_gap(candidate, config.mask);
  return config.alpha * rs + config.beta * mse;
}

Candidate reproduce(const Candidate& parent, double rate, Rng& rng) {
  Candidate child{parent.bytes, 0};
  for (auto& byte : child.bytes)
    if (rng.chance(rate)) byte ^= static_cast<std::uint8_t>(1u << (1 + rng.below(2)));
  return child;
}

std::vector<Candidate> init_population(const Block& stego_block, const GaConfig& config, Rng& rng) {
  std::vector<Candidate> population;
  population.reserve(config.population_size);
  population.push_back(Candidate{stego_block.bytes, 0});
  while (population.size() < config.population_size)
    population.push_back(reproduce(population.front(), config.mutation_rate, rng));
  return population;
}

Candidate crossover_at(const Candidate& a, const Candidate& b, std::size_t cut) {
  if (a.bytes.size() != b.bytes.size()) throw GaError(GaErrc::LengthMismatch, "crossover parents differ in length");
  if (cut > a.bytes.size()) throw GaError(GaErrc::LengthMismatch, "crossover cut beyond candidate length");
  Candidate child{b.bytes, 0};
  std::copy_n(a.bytes.begin(), cut, child.bytes.begin());
  return child;
}

Candidate crossover(const Candidate& a, const Candidate& b, Rng& rng) {
  if (a.bytes.size() != b.bytes.size()) throw GaError(GaErrc::LengthMismatch, "crossover parents differ in length");
  const std::size_t pixels = a.bytes.size() / 3;
  return crossover_at(a, b, 3 * static_cast<std::size_t>(rng.below(pixels + 1)));
}

std::uint8_t swap_bits(std::uint8_t byte, unsigned i, unsigned j) noexcept {
  const unsigned bi = (byte >> i) & 1u;
  const unsigned bj = (byte >> j) & 1u;
  if (bi == bj) return byte;
  return static_cast<std::uint8_t>(byte ^ ((1u << i) | (1u << j)));
}

Candidate mutate(const Candidate& c, const GaConfig& config, Rng& rng) {
  Candidate out{c.bytes, 0};
  for (auto& byte : out.bytes) {
    if (!rng.chance(config.mutation_rate)) continue;
    if (rng.below(2) == 0) {
      byte ^= static_cast<std::uint8_t>(1u << (1 + rng.below(7)));
    } else {
      const auto i = static_cast<unsigned>(1 + rng.below(7));
      auto j = static_cast<unsigned>(1 + rng.below(6));
      if (j >= i) ++j;
      byte = swap_bits(byte, i, j);
    }
  }
  return out;
}

std::vector<Candidate> select(std::vector<Candidate> population, const GaConfig& config) {
  std::stable_sort(population.begin(), population.end(),
                   [](const Candidate& a, const Candidate& b) { return a.fitness < b.fitness; });
  if (population.size() > config.population_size) population.resize(config.population_size);
  return population;
}

namespace {

// Refill shares of the non-elite slots: 40% reproduction copies, 40% crossover
// children, the remainder fresh mutations of the elite.
constexpr std::size_t kReproduceTenths = 4;
constexpr std::size_t kCrossoverTenths = 4;

// Binary tournament on a population sorted best-first.
const Candidate& pick_parent(const std::vector<Candidate>& ranked, Rng& rng) {
  const auto a = rng.below(ranked.size());
  const auto b = rng.below(ranked.size());
  return ranked[std::min(a, b)];
}

std::vector<Candidate> refill(const std::vector<Candidate>& ranked, const GaConfig& config, Rng& rng) {
  const std::size_t slots = config.population_size - 1;
  const std::size_t n_reproduce = slots * kReproduceTenths / 10;
  const std::size_t n_crossover = slots * kCrossoverTenths / 10;
  const std::size_t n_mutate = slots - n_reproduce - n_crossover;

  std::vector<Candidate> next;
  next.reserve(config.population_size);
  next.push_back(ranked.front());
  for (std::size_t k = 0; k < n_reproduce; ++k)
    next.push_back(reproduce(pick_parent(ranked, rng), config.mutation_rate, rng));
  for (std::size_t k = 0; k < n_crossover; ++k) {
    const auto& a = pick_parent(ranked, rng);
    const auto& b = pick_parent(ranked, rng);
    next.push_back(rng.chance(config.crossover_rate) ? crossover(a, b, rng) : Candidate{a.bytes, 0});
  }
  for (std::size_t k = 0; k < n_mutate; ++k) next.push_back(mutate(ranked.front(), config, rng));
  return next;
}

}  // namespace

BlockResult optimize_block(const Block& stego_block, std::span<const std::uint8_t> cover_block,
                           const GaConfig& config, Rng& rng) {
  config.validate();
  if (stego_block.bytes.size() != cover_block.size())
    throw GaError(GaErrc::LengthMismatch, "stego and cover blocks differ in length");

  BlockResult result;
  if (config.generations == 0) {
    result.bytes = stego_block.bytes;
    result.fitness = block_fitness(result.bytes, cover_block, config);
    result.best_per_generation.push_back(result.fitness);
    return result;
  }

  auto evaluate = [&](std::vector<Candidate>& pop, std::size_t from) {
    for (std::size_t i = from; i < pop.size(); ++i) pop[i].fitness = block_fitness(pop[i].bytes, cover_block, config);
  };

  // Children identical to a pool member are dropped so clones of the elite
  // cannot crowd out the rest of the population.
  std::set<std::vector<std::uint8_t>> seen;
  std::vector<Candidate> population = init_population(stego_block, config, rng);
  std::erase_if(population, [&](const Candidate& c) { return !seen.insert(c.bytes).second; });
  evaluate(population, 0);
  population = select(std::move(population), config);
  result.best_per_generation.push_back(population.front().fitness);

  for (std::size_t g = 0; g < config.generations; ++g) {
    std::vector<Candidate> children = refill(population, config, rng);
    const std::size_t parents = population.size();
    for (auto it = children.begin() + 1; it != children.end(); ++it)
      if (seen.insert(it->bytes).second) population.push_back(std::move(*it));
    evaluate(population, parents);
    population = select(std::move(population), config);
    result.best_per_generation.push_back(population.front().fitness);
  }

  result.bytes = std::move(population.front().bytes);
  result.fitness = population.front().fitness;
  return result;
}

std::uint64_t block_seed(std::uint64_t seed, std::size_t block_index) noexcept {
  return next_u64(Rng{seed + static_cast<std::uint64_t>(block_index)}).value;
}

BlockResult harden_block(const Block& stego_block, std::span<const std::uint8_t> cover_block,
                         const GaConfig& config, std::size_t block_index) {
  Rng rng{block_seed(config.seed, block_index)};
  return optimize_block(stego_block, cover_block, config, rng);
}

HardenResult harden_traced(const RgbImage& stego, const RgbImage& cover, const EmbedPlan& plan,
                           const GaConfig& config, unsigned threads) {
  if (stego.width() != cover.width() || stego.height() != cover.height())
    throw GaError(GaErrc::DimensionMismatch, "stego and cover dimensions differ");
  config.validate();

  const std::vector<Block> blocks = block_partition(stego, plan.positions);
  HardenResult out{stego, std::vector<BlockResult>(blocks.size())};

  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < blocks.size(); i = next++) {
        const Block& b = blocks[i];
        const auto cover_block = region_bytes(cover, b.row, b.col, b.rows, b.cols);
        out.blocks[i] = harden_block(b, cover_block, config, i);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = blocks.size();
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, blocks.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t i = 0; i < blocks.size(); ++i) write_region(out.image, blocks[i], out.blocks[i].bytes);

  const auto before = stego.bytes();
  const auto after = out.image.bytes();
  for (std::size_t i = 0; i < before.size(); ++i)
    if (((before[i] ^ after[i]) & 1u) != 0) throw std::logic_error("hardening altered an LSB");
  return out;
}

RgbImage harden(const RgbImage& stego, const RgbImage& cover, const EmbedPlan& plan, const GaConfig& config,
                unsigned threads) {
  return std::move(harden_traced(stego, cover, plan, config, threads).image);
}

}  // namespace rsguard
