#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
};

Result fsot(const std::string& args) {
  const std::string cmd = std::string(FSOT_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[512];
  while (std::fgets(buf, sizeof buf, pipe)) out += buf;
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t count_lines(const std::string& s) { return std::size_t(std::count(s.begin(), s.end(), '\n')); }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("fsot_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
  fs::path dir;
};

}  // namespace

TEST_F(Cli, PresetsAreListed) {
  const auto r = fsot("presets");
  EXPECT_EQ(r.code, 0);
  for (const char* name : {"three-class", "seven-class-rgb", "cmyk15", "progressive", "continuous-split"})
    EXPECT_NE(r.out.find(name), std::string::npos) << name;
}

TEST_F(Cli, UsageErrorsExitWithTwo) {
  EXPECT_EQ(fsot("").code, 2);
  EXPECT_EQ(fsot("optimize --out x.txt").code, 2);
  EXPECT_EQ(fsot("optimize --n 10 --out " + path("a.txt") + " --schedule cubic").code, 2);
  EXPECT_EQ(fsot("optimize --n 10 --out " + path("a.txt") + " --config no-such-preset").code, 2);
  EXPECT_EQ(fsot("frobnicate").code, 2);
  EXPECT_EQ(fsot("tile --size 4 --recon gaussian:0.5 --percept gaussian:1.0 --out " + path("t.txt")).code, 2);
}

TEST_F(Cli, OptimizeWritesPointsAndTrace) {
  const auto r = fsot("optimize --config three-class --n 60 --iters 7 --seed 1 --out " + path("p.txt") + " --trace " +
                      path("t.csv"));
  ASSERT_EQ(r.code, 0) << r.out;
  const auto pts = slurp(path("p.txt"));
  EXPECT_EQ(pts.rfind("fsot-points v1", 0), 0u);
  EXPECT_NE(pts.find("n=60"), std::string::npos);
  EXPECT_EQ(count_lines(pts), 61u);
  const auto trace = slurp(path("t.csv"));
  EXPECT_EQ(trace.rfind("iter,loss,eta\n", 0), 0u);
  EXPECT_EQ(count_lines(trace), 8u);
}

TEST_F(Cli, SameSeedSameBytes) {
  for (const char* threads : {"1", "2"})
    ASSERT_EQ(fsot(std::string("optimize --n 50 --iters 5 --seed 3 --threads ") + threads + " --out " +
                   path(std::string("p") + threads + ".txt"))
                  .code,
              0);
  EXPECT_EQ(slurp(path("p1.txt")), slurp(path("p2.txt")));
  ASSERT_EQ(fsot("optimize --n 50 --iters 5 --seed 4 --out " + path("p4.txt")).code, 0);
  EXPECT_NE(slurp(path("p1.txt")), slurp(path("p4.txt")));
}

TEST_F(Cli, AnalyzeReportsLowFrequencyPower) {
  ASSERT_EQ(fsot("optimize --n 64 --iters 5 --out " + path("p.txt")).code, 0);
  const auto r = fsot("analyze --points " + path("p.txt") + " --res 32 --radial " + path("r.csv") + " --spectrum " +
                      path("s.pgm"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("points 64"), std::string::npos);
  EXPECT_NE(r.out.find("low_freq_power"), std::string::npos);
  EXPECT_EQ(slurp(path("r.csv")).rfind("freq_over_sqrtN,power\n", 0), 0u);
  EXPECT_EQ(slurp(path("s.pgm")).rfind("P5", 0), 0u);
}

TEST_F(Cli, RuntimeErrorsExitWithOne) {
  std::ofstream(path("bad.txt")) << "not a point file\n";
  const auto r = fsot("analyze --points " + path("bad.txt"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("fsot: error:"), std::string::npos);
  ASSERT_EQ(fsot("optimize --n 16 --dim 3 --iters 2 --out " + path("p3.txt")).code, 0);
  EXPECT_EQ(fsot("analyze --points " + path("p3.txt") + " --dims 0,3").code, 2);
  EXPECT_EQ(fsot("analyze --points " + path("p3.txt") + " --dims 0,2").code, 0);
}

TEST_F(Cli, StippleTileMcBenchProgressive) {
  std::ofstream(path("in.pgm")) << "P2\n4 4\n255\n0 60 120 255\n0 60 120 255\n0 60 120 255\n0 60 120 255\n";
  ASSERT_EQ(fsot("stipple --image " + path("in.pgm") + " --n 40 --iters 5 --svg " + path("o.svg") + " --out " +
                 path("o.txt") + " --pgm " + path("o.pgm"))
                .code,
            0);
  EXPECT_NE(slurp(path("o.svg")).find("<circle"), std::string::npos);
  EXPECT_EQ(count_lines(slurp(path("o.txt"))), 41u);

  ASSERT_EQ(fsot("stipple --image " + path("in.pgm") + " --mode cmyk15 --n 40 --iters 5 --svg " + path("c.svg")).code,
            0);

  ASSERT_EQ(fsot("tile --size 10 --recon gaussian:0.5 --percept gaussian:1.0 --iters 3 --out " + path("t.txt") +
                 " --error-pgm " + path("e.pgm"))
                .code,
            0);
  EXPECT_EQ(count_lines(slurp(path("t.txt"))), 101u);
  EXPECT_EQ(slurp(path("e.pgm")).rfind("P5", 0), 0u);

  ASSERT_EQ(fsot("mc-bench --sampler random --nmin 16 --nmax 64 --realizations 2 --variants 3 --csv " + path("m.csv"))
                .code,
            0);
  const auto csv = slurp(path("m.csv"));
  EXPECT_EQ(csv.rfind("n,variance\n16,", 0), 0u);
  EXPECT_EQ(count_lines(csv), 4u);

  ASSERT_EQ(fsot("progressive --levels 3 --n 32 --iters 3 --out " + path("g.txt")).code, 0);
  EXPECT_EQ(fsot("progressive --levels 7 --n 32 --iters 3 --out " + path("g.txt")).code, 2);
}
