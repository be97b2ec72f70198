#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <json.hpp>
#include <sstream>

#include "rsguard/cli.hpp"
#include "rsguard/embedder.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rsguard;

namespace {

struct Outcome {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("rsguard_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                       "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir);
    Rng rng{42};
    write_ppm_file(path("cover.ppm"), rsguard::testing::random_image(rng, 32, 24));
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }

  fs::path dir;
};

}  // namespace

TEST_F(CliTest, EmbedExtractRoundTrip) {
  const auto e = run({"embed", "--cover", path("cover.ppm"), "--text", "hello world", "--key", "k", "--out",
                      path("stego.ppm")});
  ASSERT_EQ(e.code, 0) << e.err;
  const auto rep = e.report();
  EXPECT_EQ(rep["command"], "embed");
  EXPECT_EQ(rep["results"]["message_bytes"], 11);
  EXPECT_EQ(rep["results"]["frame_bits"], 32 + 88);
  EXPECT_EQ(rep["results"]["capacity_bits"], 32 * 24 * 3 - 32);
  EXPECT_EQ(rep["seed"], derive_seed("k"));

  const auto x = run({"extract", "--stego", path("stego.ppm"), "--key", "k", "--out", path("msg.bin")});
  ASSERT_EQ(x.code, 0) << x.err;
  EXPECT_EQ(slurp(path("msg.bin")), "hello world");
  EXPECT_EQ(x.report()["results"]["message_bytes"], 11);
}

TEST_F(CliTest, EmbedFromFile) {
  std::ofstream(path("m.bin"), std::ios::binary) << std::string("\0\x01\xff", 3);
  ASSERT_EQ(run({"embed", "--cover", path("cover.ppm"), "--message", path("m.bin"), "--key", "k", "--out",
                 path("s.ppm")})
                .code,
            0);
  ASSERT_EQ(run({"extract", "--stego", path("s.ppm"), "--key", "k", "--out", path("back.bin")}).code, 0);
  EXPECT_EQ(slurp(path("back.bin")), std::string("\0\x01\xff", 3));
}

TEST_F(CliTest, ExitCodes) {
  // Usage
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"bogus"}).code, cli::kUsage);
  EXPECT_EQ(run({"embed", "--cover", path("cover.ppm")}).code, cli::kUsage);
  EXPECT_EQ(run({"embed", "--cover", path("cover.ppm"), "--text", "a", "--message", "x", "--key", "k", "--out",
                 path("s.ppm")})
                .code,
            cli::kUsage);
  EXPECT_EQ(run({"analyze", "--image", path("cover.ppm"), "--threshold", "0"}).code, cli::kUsage);

  // Capacity
  EXPECT_EQ(run({"embed", "--cover", path("cover.ppm"), "--text", std::string(300, 'x'), "--key", "k", "--out",
                 path("s.ppm")})
                .code,
            cli::kCapacityExceeded);

  // I/O
  EXPECT_EQ(run({"analyze", "--image", path("missing.ppm")}).code, cli::kIoError);
  std::ofstream(path("bad.ppm")) << "P3\n1 1\n255\n0 0 0\n";
  EXPECT_EQ(run({"analyze", "--image", path("bad.ppm")}).code, cli::kIoError);

  // Corrupt header: cover with all LSBs set declares 2^32-1 bytes.
  write_ppm_file(path("odd.ppm"), RgbImage(16, 16, std::vector<std::uint8_t>(768, 0xFF)));
  EXPECT_EQ(run({"extract", "--stego", path("odd.ppm"), "--key", "k", "--out", path("m.bin")}).code,
            cli::kCorruptHeader);

  // Bad mask
  EXPECT_EQ(run({"analyze", "--image", path("cover.ppm"), "--mask", "0,2,1,0"}).code, cli::kBadMask);
  EXPECT_EQ(run({"analyze", "--image", path("cover.ppm"), "--mask", "0,1,1,0", "--group-len", "5"}).code,
            cli::kBadMask);
  EXPECT_EQ(run({"analyze", "--image", path("cover.ppm"), "--mask", "0,0"}).code, cli::kBadMask);

  // Help
  EXPECT_EQ(run({"--help"}).code, cli::kOk);
}

TEST_F(CliTest, AnalyzeFlagsFullEmbedding) {
  const auto cover = read_ppm_file(rsguard::testing::fixture("rocket"));
  write_ppm_file(path("rocket.ppm"), cover);
  const auto clean = run({"analyze", "--image", path("rocket.ppm")});
  EXPECT_EQ(clean.code, cli::kOk) << clean.out;
  Rng rng{5};
  const auto msg = rsguard::testing::random_bytes(rng, capacity_bits(cover) / 8);
  write_ppm_file(path("full.ppm"), embed(cover, msg, "k").stego);
  const auto full = run({"analyze", "--image", path("full.ppm")});
  EXPECT_EQ(full.code, cli::kFlagged);
  const auto rep = full.report();
  for (const char* ch : {"red", "green", "blue"})
    for (const char* key : {"r_pos", "s_pos", "u_pos", "r_neg", "s_neg", "u_neg", "gap_r", "gap_s", "flagged"})
      EXPECT_TRUE(rep["results"][ch].contains(key)) << ch << "." << key;

  // A huge threshold flags nothing.
  EXPECT_EQ(run({"analyze", "--image", path("full.ppm"), "--threshold", "1000"}).code, cli::kOk);
}

TEST_F(CliTest, HardenKeepsMessageAndIsDeterministic) {
  ASSERT_EQ(run({"embed", "--cover", path("cover.ppm"), "--text", "payload", "--key", "k", "--out",
                 path("stego.ppm")})
                .code,
            0);
  std::vector<std::string> args{"harden", "--cover", path("cover.ppm"), "--stego", path("stego.ppm"), "--key", "k",
                                "--out", path("h1.ppm"), "--generations", "5", "--seed", "7"};
  const auto first = run(args);
  ASSERT_EQ(first.code, 0) << first.err;
  args[8] = path("h2.ppm");
  args.insert(args.end(), {"--threads", "3"});
  const auto second = run(args);
  ASSERT_EQ(second.code, 0);
  EXPECT_EQ(slurp(path("h1.ppm")), slurp(path("h2.ppm")));

  auto r1 = first.report(), r2 = second.report();
  EXPECT_EQ(r1["results"], r2["results"]);
  EXPECT_EQ(r1["seed"], 7);
  EXPECT_EQ(r1["results"]["config"]["generations"], 5);
  EXPECT_EQ(r1["results"]["message_bytes"], 7);
  for (const char* k : {"cover_rs", "pre_rs", "post_rs", "pre_quality", "post_quality"})
    EXPECT_TRUE(r1["results"].contains(k)) << k;

  ASSERT_EQ(run({"extract", "--stego", path("h1.ppm"), "--key", "k", "--out", path("m.bin")}).code, 0);
  EXPECT_EQ(slurp(path("m.bin")), "payload");
}

TEST_F(CliTest, HardenZeroGenerationsCopiesStego) {
  ASSERT_EQ(
      run({"embed", "--cover", path("cover.ppm"), "--text", "x", "--key", "k", "--out", path("stego.ppm")}).code, 0);
  ASSERT_EQ(run({"harden", "--cover", path("cover.ppm"), "--stego", path("stego.ppm"), "--key", "k", "--out",
                 path("h.ppm"), "--generations", "0"})
                .code,
            0);
  EXPECT_EQ(slurp(path("h.ppm")), slurp(path("stego.ppm")));
}

TEST_F(CliTest, HardenConfigFile) {
  ASSERT_EQ(
      run({"embed", "--cover", path("cover.ppm"), "--text", "x", "--key", "k", "--out", path("stego.ppm")}).code, 0);
  std::ofstream(path("ga.json")) << R"({"population_size": 4, "generations": 2, "seed": 99})";
  const auto ok = run({"harden", "--cover", path("cover.ppm"), "--stego", path("stego.ppm"), "--key", "k", "--out",
                       path("h.ppm"), "--config", path("ga.json"), "--population", "6"});
  ASSERT_EQ(ok.code, 0) << ok.err;
  const auto cfg = ok.report()["results"]["config"];
  EXPECT_EQ(cfg["population_size"], 6);
  EXPECT_EQ(cfg["generations"], 2);
  EXPECT_EQ(cfg["seed"], 99);

  std::ofstream(path("bad.json")) << R"({"populaton_size": 4})";
  EXPECT_EQ(run({"harden", "--cover", path("cover.ppm"), "--stego", path("stego.ppm"), "--key", "k", "--out",
                 path("h.ppm"), "--config", path("bad.json")})
                .code,
            cli::kUsage);
  EXPECT_EQ(run({"harden", "--cover", path("cover.ppm"), "--stego", path("stego.ppm"), "--key", "wrong", "--out",
                 path("h.ppm")})
                .code,
            cli::kCorruptHeader);

  write_ppm_file(path("small.ppm"), RgbImage(8, 8));
  EXPECT_EQ(run({"harden", "--cover", path("small.ppm"), "--stego", path("stego.ppm"), "--key", "k", "--out",
                 path("h.ppm")})
                .code,
            cli::kIoError);
}

TEST_F(CliTest, MetricsReport) {
  const auto same = run({"metrics", "--cover", path("cover.ppm"), "--stego", path("cover.ppm")});
  ASSERT_EQ(same.code, 0);
  const auto r = same.report()["results"];
  EXPECT_EQ(r["psnr"], "inf");
  EXPECT_EQ(r["mse"], 0.0);
  EXPECT_EQ(r["ncc"], 1.0);

  ASSERT_EQ(
      run({"embed", "--cover", path("cover.ppm"), "--text", "abc", "--key", "k", "--out", path("stego.ppm")}).code, 0);
  const auto diff = run({"metrics", "--cover", path("cover.ppm"), "--stego", path("stego.ppm")});
  ASSERT_EQ(diff.code, 0);
  EXPECT_TRUE(diff.report()["results"]["psnr"].is_number());
  EXPECT_LE(diff.report()["results"]["aad"].get<double>(), 1.0);
}
