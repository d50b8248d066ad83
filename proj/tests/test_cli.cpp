#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Run {
  int status = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(ALTPROD_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("altprod_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

constexpr const char* kIdentity = R"({"N":2,"M":2,"A":[[[1,0],[0,1]]],"B":[[[1,0],[0,1]]]})";
constexpr const char* kStanfordB =
    R"({"N":2,"M":2,"A":[[[1,0],[0,1]]],"B":[[[0.5,0],[0,2]],[[0.8660254037844386,0.5],[-0.5,0.8660254037844386]]]})";

}  // namespace

TEST_F(CliTest, MuTableCsvOnIdentity) {
  const auto r = run_cli("mu-table " + write("id.json", kIdentity) + " --n-max 6 --format csv");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,mu,witness_a,best_b,nodes,certified");
  int rows = 0;
  for (std::size_t pos = r.out.find('\n'); pos + 1 < r.out.size(); pos = r.out.find('\n', pos + 1)) {
    const std::string line = r.out.substr(pos + 1, r.out.find('\n', pos + 1) - pos - 1);
    EXPECT_EQ(line.substr(line.find(',') + 1, 2), "1,") << line;
    ++rows;
  }
  EXPECT_EQ(rows, 6);
}

TEST_F(CliTest, ValidateZeroRowSucceeds) {
  const auto r = run_cli("validate " +
                         write("z.json", R"({"N":2,"M":2,"A":[[[1,0],[0,0]]],"B":[[[1,0],[0,1]]]})"));
  EXPECT_EQ(r.status, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["result"]["nonzero_rows"], false);
  EXPECT_EQ(j["norm"], "maxrow");
  EXPECT_EQ(j["orientation"], "right");
  EXPECT_TRUE(j.contains("node_budget"));
  EXPECT_TRUE(j.contains("tolerances"));
}

TEST_F(CliTest, CounterexampleReport) {
  const auto r = run_cli("counterexample --alpha 1.02 --n 10");
  EXPECT_EQ(r.status, 0);
  const auto j = json::parse(r.out);
  EXPECT_GE(j["norm_floor"]["min_product_norm"].get<double>(), std::pow(1.02, 10) - 1e-9);
  EXPECT_LE(j["pointwise"]["final_norm"].get<double>(), 1e-3);
}

TEST_F(CliTest, ContractivityExitCodes) {
  EXPECT_EQ(run_cli("contractivity " + write("s.json", kStanfordB) + " --k 8").status, 1);
  EXPECT_EQ(run_cli("contractivity " +
                    write("h.json", R"({"N":2,"M":2,"A":[[[0.5,0],[0,0.5]]],"B":[[[1,0],[0,1]]]})") +
                    " --k 1")
                .status,
            0);
  EXPECT_EQ(run_cli("contractivity " + write("s2.json", kStanfordB) + " --k 30 --budget 1000").status,
            3);
}

TEST_F(CliTest, InputErrorsExitTwo) {
  EXPECT_EQ(run_cli("validate " + write("bad.json", "{not json")).status, 2);
  EXPECT_EQ(run_cli("validate " + (dir_ / "missing.json").string()).status, 2);
  EXPECT_EQ(run_cli("mu-table " + write("id.json", kIdentity) + " --budget 10").status, 2);
  EXPECT_EQ(run_cli("frobnicate").status, 2);
}

TEST_F(CliTest, ErrorsAreJsonOnStderr) {
  const std::string cmd = std::string(ALTPROD_CLI) + " validate " + write("bad.json", "[1") +
                          " 2>&1 1>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::array<char, 4096> buf{};
  std::string err;
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) err.append(buf.data(), n);
  pclose(pipe);
  const auto j = json::parse(err);
  EXPECT_EQ(j["error"], "ParseError");
}

TEST_F(CliTest, AdversaryNotFoundIsNegative) {
  const auto r = run_cli("adversary " + write("id.json", kIdentity) + " --m-target 2");
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(json::parse(r.out)["result"]["outcome"], "NotFoundWithinCap");
}

TEST_F(CliTest, ProbeExceedsCap) {
  const auto r = run_cli("probe " +
                         write("d.json", R"({"N":2,"M":2,"A":[[[2,0],[0,2]]],"B":[[[1,0],[0,1]]]})") +
                         " --x 1,0 --cap 10");
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(json::parse(r.out)["result"]["exceeded_at"], 4);
}

TEST_F(CliTest, ConvertFlipsOrientation) {
  const auto r = run_cli("convert " + write("id.json", kIdentity));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(json::parse(r.out)["orientation"], "left");
  const auto back = run_cli("convert " + write("left.json", r.out));
  EXPECT_EQ(json::parse(back.out)["orientation"], "right");
}

TEST_F(CliTest, StanfordJsonLinesTrace) {
  const auto r = run_cli("stanford --x 0,1 --target 0.5 --format jsonl");
  EXPECT_EQ(r.status, 0);
  std::size_t lines = 0;
  std::size_t start = 0;
  for (std::size_t end = r.out.find('\n'); end != std::string::npos;
       start = end + 1, end = r.out.find('\n', start)) {
    const auto j = json::parse(r.out.substr(start, end - start));
    if (lines < 4) {
      EXPECT_EQ(j["step"], lines + 1);
      EXPECT_EQ(j["matrix_applied"], lines < 3 ? "H2" : "H1");
    }
    ++lines;
  }
  EXPECT_EQ(lines, 5u);
}

TEST_F(CliTest, OutFileMatchesStdout) {
  const std::string in = write("s.json", kStanfordB);
  const std::string out = (dir_ / "report.json").string();
  const auto direct = run_cli("mu-table " + in + " --n-max 4");
  EXPECT_EQ(run_cli("mu-table " + in + " --n-max 4 --out " + out).out, "");
  std::ifstream f(out);
  const std::string saved((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  EXPECT_EQ(saved, direct.out);
}
