#include "rsguard/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <vector>

#include "rsguard/embedder.hpp"
#include "rsguard/ga_optimizer.hpp"
#include "rsguard/metrics.hpp"
#include "rsguard/report.hpp"
#include "rsguard/rs_analysis.hpp"

namespace rsguard::cli {

namespace {

using nlohmann::json;

struct ExitWith {
  int code;
  std::string message;
};

std::vector<std::uint8_t> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ExitWith{kIoError, "cannot open " + path};
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ExitWith{kIoError, "cannot write " + path};
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ExitWith{kIoError, "write failed for " + path};
}

void print(std::ostream& out, const json& report) { out << report.dump(2) << '\n'; }

json make_report(const std::string& command, json inputs, json results) {
  return {{"command", command}, {"inputs", std::move(inputs)}, {"results", std::move(results)}};
}

struct MaskFlags {
  std::string spec = "0,+1,+1,0";
  std::optional<std::size_t> group_len;

  Mask resolve(std::size_t& group_len_out) const {
    Mask mask = Mask::parse(spec);
    group_len_out = group_len.value_or(mask.size());
    if (group_len_out != mask.size())
      throw ExitWith{kBadMask, "mask '" + spec + "' has " + std::to_string(mask.size()) +
                                   " entries but --group-len is " + std::to_string(group_len_out)};
    if (group_len_out < 2) throw ExitWith{kBadMask, "groups need at least two entries"};
    if (mask.all_zero()) throw ExitWith{kBadMask, "mask must contain a non-zero entry"};
    return mask;
  }
};

void add_mask_flags(CLI::App* cmd, MaskFlags& flags) {
  cmd->add_option("--mask", flags.spec, "RS mask as comma-separated -1/0/+1 entries")->capture_default_str();
  cmd->add_option("--group-len", flags.group_len, "RS group length (defaults to the mask length)");
}

// --- embed -----------------------------------------------------------------

struct EmbedArgs {
  std::string cover, message_path, text, key, out;
};

int cmd_embed(const EmbedArgs& a, bool have_text, std::ostream& out) {
  const RgbImage cover = read_ppm_file(a.cover);
  std::vector<std::uint8_t> message =
      have_text ? std::vector<std::uint8_t>(a.text.begin(), a.text.end()) : read_bytes(a.message_path);

  const StegoResult result = embed(cover, message, a.key);
  std::size_t changed = 0;
  for (std::size_t i = 0; i < cover.byte_count(); ++i) changed += cover.bytes()[i] != result.stego.bytes()[i];
  write_ppm_file(a.out, result.stego);

  json inputs = {{"cover", a.cover}, {"out", a.out}};
  if (have_text) inputs["text_bytes"] = message.size();
  else inputs["message"] = a.message_path;
  json report = make_report("embed", std::move(inputs),
                            {{"capacity_bits", capacity_bits(cover)},
                             {"message_bytes", message.size()},
                             {"frame_bits", result.plan.size()},
                             {"changed_bytes", changed}});
  report["seed"] = derive_seed(a.key);
  print(out, report);
  return kOk;
}

// --- extract ---------------------------------------------------------------

struct ExtractArgs {
  std::string stego, key, out;
};

int cmd_extract(const ExtractArgs& a, std::ostream& out) {
  const RgbImage stego = read_ppm_file(a.stego);
  const auto message = extract(stego, a.key);
  write_bytes(a.out, message);
  json report = make_report("extract", {{"stego", a.stego}, {"out", a.out}}, {{"message_bytes", message.size()}});
  report["seed"] = derive_seed(a.key);
  print(out, report);
  return kOk;
}

// --- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
  std::string image;
  MaskFlags mask;
  double threshold = kDefaultThreshold;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  std::size_t group_len = 0;
  const Mask mask = a.mask.resolve(group_len);
  if (!(a.threshold > 0)) throw ExitWith{kUsage, "--threshold must be positive"};
  const RgbImage image = read_ppm_file(a.image);
  if (image.pixel_count() < group_len) throw ExitWith{kIoError, "image holds no complete RS group"};

  const RsStats stats = rs_statistics(image, mask, group_len);
  const auto flagged = detect(stats, a.threshold);
  print(out, make_report("analyze",
                         {{"image", a.image}, {"mask", mask.to_string()}, {"group_len", group_len},
                          {"threshold", a.threshold}},
                         rs_stats_json(stats, a.threshold)));
  return (flagged[0] || flagged[1] || flagged[2]) ? kFlagged : kOk;
}

// --- harden ----------------------------------------------------------------

struct HardenArgs {
  std::string cover, stego, key, out, config_path;
  std::optional<std::size_t> population, generations;
  std::optional<double> alpha, beta, mutation_rate, crossover_rate;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mask;
  std::optional<std::size_t> group_len;
  double threshold = kDefaultThreshold;
  unsigned threads = 0;
};

GaConfig resolve_config(const HardenArgs& a) {
  GaConfig config;
  if (!a.config_path.empty()) {
    const auto raw = read_bytes(a.config_path);
    json j = json::parse(raw.begin(), raw.end(), nullptr, false);
    if (j.is_discarded()) throw ExitWith{kUsage, "GA config " + a.config_path + " is not valid JSON"};
    config = ga_config_from_json(j);
  }
  if (a.population) config.population_size = *a.population;
  if (a.generations) config.generations = *a.generations;
  if (a.alpha) config.alpha = *a.alpha;
  if (a.beta) config.beta = *a.beta;
  if (a.mutation_rate) config.mutation_rate = *a.mutation_rate;
  if (a.crossover_rate) config.crossover_rate = *a.crossover_rate;
  if (a.seed) config.seed = *a.seed;
  if (a.mask) {
    MaskFlags flags{*a.mask, a.group_len};
    config.mask = flags.resolve(config.group_len);
  } else if (a.group_len) {
    config.group_len = *a.group_len;
    if (config.group_len != config.mask.size())
      throw ExitWith{kBadMask, "--group-len does not match the mask length"};
  }
  config.validate();
  return config;
}

int cmd_harden(const HardenArgs& a, std::ostream& out) {
  if (!(a.threshold > 0)) throw ExitWith{kUsage, "--threshold must be positive"};
  const GaConfig config = resolve_config(a);
  const RgbImage cover = read_ppm_file(a.cover);
  const RgbImage stego = read_ppm_file(a.stego);
  if (cover.width() != stego.width() || cover.height() != stego.height())
    throw ExitWith{kIoError, "cover and stego dimensions differ"};

  const auto message = extract(stego, a.key);
  const EmbedPlan plan = plan_for(stego, message.size(), a.key);
  const RgbImage hardened = harden(stego, cover, plan, config, a.threads);

  std::vector<std::uint8_t> recovered;
  try {
    recovered = extract(hardened, a.key);
  } catch (const EmbedError&) {
  }
  if (recovered != message) throw ExitWith{kMessageLost, "message no longer extracts after hardening"};
  write_ppm_file(a.out, hardened);

  const auto stats = [&](const RgbImage& img) {
    return rs_stats_json(rs_statistics(img, config.mask, config.group_len), a.threshold);
  };
  json inputs = {{"cover", a.cover}, {"stego", a.stego}, {"out", a.out}, {"threshold", a.threshold}};
  if (!a.config_path.empty()) inputs["config"] = a.config_path;
  json report = make_report("harden", std::move(inputs),
                            {{"config", ga_config_json(config)},
                             {"message_bytes", message.size()},
                             {"cover_rs", stats(cover)},
                             {"pre_rs", stats(stego)},
                             {"post_rs", stats(hardened)},
                             {"pre_quality", quality_json(quality(cover, stego))},
                             {"post_quality", quality_json(quality(cover, hardened))}});
  report["seed"] = config.seed;
  print(out, report);
  return kOk;
}

// --- metrics ---------------------------------------------------------------

struct MetricsArgs {
  std::string cover, stego;
};

int cmd_metrics(const MetricsArgs& a, std::ostream& out) {
  const RgbImage cover = read_ppm_file(a.cover);
  const RgbImage stego = read_ppm_file(a.stego);
  print(out, make_report("metrics", {{"cover", a.cover}, {"stego", a.stego}}, quality_json(quality(cover, stego))));
  return kOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"LSB steganography with RS steganalysis and GA hardening", "rsguard"};
  app.require_subcommand(1);

  EmbedArgs embed_args;
  auto* embed_cmd = app.add_subcommand("embed", "hide a message in a P6 cover image");
  embed_cmd->add_option("--cover", embed_args.cover, "cover image (P6)")->required();
  auto* message_opt = embed_cmd->add_option("--message", embed_args.message_path, "file holding the message");
  auto* text_opt = embed_cmd->add_option("--text", embed_args.text, "message given inline");
  message_opt->excludes(text_opt);
  embed_cmd->add_option("--key", embed_args.key, "stego key")->required();
  embed_cmd->add_option("--out", embed_args.out, "stego image to write (P6)")->required();

  ExtractArgs extract_args;
  auto* extract_cmd = app.add_subcommand("extract", "recover a message from a stego image");
  extract_cmd->add_option("--stego", extract_args.stego, "stego image (P6)")->required();
  extract_cmd->add_option("--key", extract_args.key, "stego key")->required();
  extract_cmd->add_option("--out", extract_args.out, "file to write the message to")->required();

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "RS steganalysis of an image");
  analyze_cmd->add_option("--image", analyze_args.image, "image to analyze (P6)")->required();
  add_mask_flags(analyze_cmd, analyze_args.mask);
  analyze_cmd->add_option("--threshold", analyze_args.threshold, "detection threshold in percentage points")
      ->capture_default_str();

  HardenArgs harden_args;
  auto* harden_cmd = app.add_subcommand("harden", "GA pass that restores RS statistics of a stego image");
  harden_cmd->add_option("--cover", harden_args.cover, "original cover image (P6)")->required();
  harden_cmd->add_option("--stego", harden_args.stego, "stego image (P6)")->required();
  harden_cmd->add_option("--key", harden_args.key, "stego key used at embedding")->required();
  harden_cmd->add_option("--out", harden_args.out, "hardened image to write (P6)")->required();
  harden_cmd->add_option("--config", harden_args.config_path, "GA config JSON; flags override its fields");
  harden_cmd->add_option("--population", harden_args.population, "population size");
  harden_cmd->add_option("--generations", harden_args.generations, "generation count");
  harden_cmd->add_option("--alpha", harden_args.alpha, "RS gap weight");
  harden_cmd->add_option("--beta", harden_args.beta, "distortion weight");
  harden_cmd->add_option("--seed", harden_args.seed, "GA seed");
  harden_cmd->add_option("--mutation-rate", harden_args.mutation_rate, "per-byte mutation probability");
  harden_cmd->add_option("--crossover-rate", harden_args.crossover_rate, "crossover probability");
  harden_cmd->add_option("--mask", harden_args.mask, "RS mask used by the fitness function");
  harden_cmd->add_option("--group-len", harden_args.group_len, "RS group length");
  harden_cmd->add_option("--threshold", harden_args.threshold, "threshold for the flagged fields of the report")
      ->capture_default_str();
  harden_cmd->add_option("--threads", harden_args.threads, "worker threads, 0 = all cores")->capture_default_str();

  MetricsArgs metrics_args;
  auto* metrics_cmd = app.add_subcommand("metrics", "quality of a stego image against its cover");
  metrics_cmd->add_option("--cover", metrics_args.cover, "cover image (P6)")->required();
  metrics_cmd->add_option("--stego", metrics_args.stego, "stego image (P6)")->required();

  std::vector<const char*> argv{"rsguard"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (embed_cmd->parsed()) {
      if (message_opt->count() == 0 && text_opt->count() == 0) {
        err << "embed: one of --message or --text is required\n";
        return kUsage;
      }
      return cmd_embed(embed_args, text_opt->count() > 0, out);
    }
    if (extract_cmd->parsed()) return cmd_extract(extract_args, out);
    if (analyze_cmd->parsed()) return cmd_analyze(analyze_args, out);
    if (harden_cmd->parsed()) return cmd_harden(harden_args, out);
    if (metrics_cmd->parsed()) return cmd_metrics(metrics_args, out);
  } catch (const ExitWith& e) {
    err << "error: " << e.message << '\n';
    return e.code;
  } catch (const RasterError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const EmbedError& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == EmbedErrc::CapacityExceeded ? kCapacityExceeded : kCorruptHeader;
  } catch (const RsError& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == RsErrc::BadMask ? kBadMask : kUsage;
  } catch (const GaError& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == GaErrc::BadConfig ? kUsage : kIoError;
  } catch (const MetricsError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
  return kUsage;
}

}  // namespace rsguard::cli
