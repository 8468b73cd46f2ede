#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;
using macdecay::cli::run;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "macdecay");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("macdecay_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string config(const json& j, const std::string& name = "config.json") {
    const auto path = (dir_ / name).string();
    std::ofstream(path) << j.dump();
    return path;
  }

  fs::path dir_;
};

const json kC21 = {{"m", 5}, {"K", "Q(i)"}, {"U", 2}, {"n_t", 1}, {"p", "1+i"}, {"k", 1}};
const json kC22 = {{"m", 17}, {"K", "Q(sqrt-3)"}, {"U", 2}, {"n_t", 2}, {"p", "1+w"}, {"k", 2}};

}  // namespace

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"decay", "--config", (dir_ / "missing.json").string()}).code, 2);
  EXPECT_EQ(invoke({"decay", "--mode", "random", "--config", config({{"code", kC21}})}).code, 2);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST_F(CliTest, CatalogSmallDegrees) {
  const Result one = invoke({"catalog", "--max-degree", "1"});
  EXPECT_EQ(one.code, 0);
  EXPECT_EQ(one.out, "degree,m,H,f,inert_Q(i),inert_Q(sqrt-3)\n");
  const Result two = invoke({"catalog", "--max-degree", "2", "--norm-bound", "30"});
  EXPECT_EQ(two.code, 0);
  EXPECT_NE(two.out.find("\n2,5,"), std::string::npos) << two.out;
}

TEST_F(CliTest, InertSearch) {
  const Result r = invoke({"inert-search", "--norm-bound", "20", "--config", config({{"code", kC21}})});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 22), "p,norm,disc_valuation\n");
  EXPECT_NE(r.out.find("1+i,2,0"), std::string::npos) << r.out;
}

TEST_F(CliTest, BuildReportsLatticeAndCodeword) {
  json c = {{"code", kC21},
            {"codewords", {{{"user", 1}, {"coeffs", {1, 0, 0, 0}}}, {{"user", 2}, {"coeffs", {1, 0, 0, 0}}}}}};
  const Result r = invoke({"build", "--config", config(c), "--out", (dir_ / "o").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("lattice").size(), 2u);
  EXPECT_EQ(j.at("lattice")[0].at("rank"), 4);
  EXPECT_TRUE(j.at("codewords")[0].at("det").at("tau_fixed").get<bool>());
  EXPECT_EQ(j.at("codewords")[0].at("det").at("abs").get<std::string>().substr(0, 8), "1.118033");
  EXPECT_TRUE(fs::exists(dir_ / "o" / "build.json"));
}

TEST_F(CliTest, AutoParameters) {
  json c = {{"code", {{"m", 5}, {"K", "Q(i)"}, {"U", 2}, {"n_t", 1}}}};
  const Result r = invoke({"build", "--config", config(c)});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out).at("code");
  EXPECT_EQ(j.at("p_display"), "1+i");
  EXPECT_EQ(j.at("k"), 1);
  EXPECT_EQ(j.at("p_source"), "auto");
}

TEST_F(CliTest, InvalidCodeIsConfigError) {
  json bad_k = {{"code", kC21}};
  bad_k["code"]["k"] = 0;
  EXPECT_EQ(invoke({"build", "--config", config(bad_k)}).code, 2);
  json split = {{"code", kC21}};
  split["code"]["p"] = "2+i";
  EXPECT_EQ(invoke({"build", "--config", config(split)}).code, 2);
  json wrong_h = {{"code", kC21}};
  wrong_h["code"]["H"] = {1};
  EXPECT_EQ(invoke({"build", "--config", config(wrong_h)}).code, 2);
}

TEST_F(CliTest, RankCheckPassesAndBudgetExits) {
  const Result r = invoke({"rank-check", "--config", config({{"code", kC21}})});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out).at("checked"), 6400);
  EXPECT_EQ(invoke({"rank-check", "--budget", "100", "--config", config({{"code", kC21}})}).code, 3);
  const Result s = invoke({"rank-check", "--mode", "sampled", "--samples", "300", "--seed", "5", "--config", config({{"code", kC22}})});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(json::parse(s.out).at("checked"), 300);
}

TEST_F(CliTest, DecayExhaustiveSmall) {
  const Result r = invoke({"decay", "--nmax", "2", "--workers", "1", "--config", config({{"code", kC21}})});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string header, row1;
  std::getline(in, header);
  std::getline(in, row1);
  EXPECT_EQ(header, "N,D_value,error_radius,mode,samples,argmin_coeffs,wall_time_ms");
  EXPECT_EQ(row1.substr(0, 14), "1,2.2451398828");
  EXPECT_NE(r.out.find("# fit slope=n/a"), std::string::npos);
}

TEST_F(CliTest, DecayBudgetExit) {
  EXPECT_EQ(invoke({"decay", "--nmax", "1", "--config", config({{"code", kC22}})}).code, 3);
}

TEST_F(CliTest, SampledCsvIdenticalAcrossWorkers) {
  const std::string cfg = config({{"code", kC22}, {"mode", "sampled"}, {"samples", 400}, {"seed", 11}, {"nmax", 2}});
  const auto o1 = (dir_ / "w1").string(), o3 = (dir_ / "w3").string();
  const Result a = invoke({"decay", "--config", cfg, "--workers", "1", "--out", o1});
  const Result b = invoke({"decay", "--config", cfg, "--workers", "3", "--out", o3});
  ASSERT_NE(a.code, 2) << a.err;
  ASSERT_NE(b.code, 2) << b.err;
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), {});
  };
  const std::string csv = slurp(fs::path(o1) / "decay.csv");
  EXPECT_FALSE(csv.empty());
  EXPECT_EQ(csv, slurp(fs::path(o3) / "decay.csv"));
  EXPECT_EQ(slurp(fs::path(o1) / "decay.json"), slurp(fs::path(o3) / "decay.json"));
}

TEST_F(CliTest, Witness2) {
  json c = {{"code", kC21}, {"witness", {{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}}}};
  const Result r = invoke({"witness2", "--config", config(c)});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j.at("singular").get<bool>());
  EXPECT_FALSE(j.at("witness").is_null());

  c["witness"]["d"] = {{"basis", {1, 0, 1, 0}}};
  const json n = json::parse(invoke({"witness2", "--config", config(c)}).out);
  EXPECT_FALSE(n.at("singular").get<bool>());
  EXPECT_TRUE(n.at("witness").is_null());
  EXPECT_EQ(n.at("norm_det_display"), "-2");

  json big = {{"code", {{"m", 7}, {"K", "Q(i)"}, {"U", 3}, {"n_t", 1}, {"p", "2+i"}, {"k", 1}}}, {"witness", c["witness"]}};
  EXPECT_EQ(invoke({"witness2", "--config", config(big)}).code, 2);
}
