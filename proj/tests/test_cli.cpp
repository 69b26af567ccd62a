#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hypertrace/cli.hpp"
#include "json.hpp"
#include "test_support.hpp"

using hypertrace::testing::data_path;
namespace cli = hypertrace::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "hypertrace_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("transform emits the closed form and its quadrature") {
  const Run r = run({"transform", "--d", "3", "--mu", "1,2", "--format", "json"});
  REQUIRE(r.code == cli::kPass);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "transform");
  REQUIRE(j["records"].size() == 2);
  CHECK(j["records"][0]["h_closed"].get<double>() == doctest::Approx(5.2907491286351156).epsilon(1e-13));
  CHECK(j["records"][0]["rel_err"].get<double>() < 1e-6);
  CHECK(j["tolerances"]["transform"].get<double>() == 1e-6);
}

TEST_CASE("transform csv carries tolerance comments") {
  const Run r = run({"transform", "--d", "4", "--nu-re", "0.3", "--mu", "2"});
  REQUIRE(r.code == cli::kPass);
  CHECK(r.out.find("# tol.transform=1e-06") != std::string::npos);
  CHECK(r.out.find("d,mu,nu_re,nu_im,h_closed,h_quad,rel_err\n4,2,0.3,0,") != std::string::npos);
}

TEST_CASE("verify passes with defaults and fails on an impossible tolerance") {
  CHECK(run({"verify"}).code == cli::kPass);
  CHECK(run({"verify", "--gens", data_path("picard.json")}).code == cli::kPass);
  CHECK(run({"verify", "--tol", "gr=1e-15"}).code == cli::kCheckFailure);
}

TEST_CASE("usage and config errors exit with 2") {
  CHECK(run({}).code == cli::kUsageError);
  CHECK(run({"frobnicate"}).code == cli::kUsageError);
  CHECK(run({"verify", "--tol", "nosuch=1e-3"}).code == cli::kUsageError);
  CHECK(run({"verify", "--tol", "gr"}).code == cli::kUsageError);
  CHECK(run({"transform", "--d", "3", "--nu-re", "1.5"}).code == cli::kUsageError);
  CHECK(run({"delta", "--gens", data_path("missing.json")}).code == cli::kUsageError);

  const fs::path bad = scratch("bad_gens.json");
  write_file(bad, R"({"d": 3, "generators": [{"label": "T",
      "matrix": [[1.5,-0.5,1,0],[0.5,0.5,1,0],[1,-1,1.45,0],[0,0,0,1]]}]})");
  const Run r = run({"delta", "--gens", bad.string()});
  CHECK(r.code == cli::kUsageError);
  CHECK(r.err.find("generator 'T' fails G-membership: g^T J g") != std::string::npos);

  const fs::path cfg = scratch("bad_cfg.json");
  write_file(cfg, R"({"dimension": 3})");
  CHECK(run({"transform", "--config", cfg.string()}).code == cli::kUsageError);
}

TEST_CASE("a group inside G0 has no nontrivial classes") {
  const Run r = run({"delta", "--gens", data_path("modular.json"), "--max-len", "4"});
  CHECK(r.code == cli::kCheckFailure);
  CHECK(r.err.find("no nontrivial classes") != std::string::npos);
}

TEST_CASE("delta and count on the Picard set") {
  const Run d = run({"delta", "--gens", data_path("picard.json"), "--max-len", "4"});
  REQUIRE(d.code == cli::kPass);
  CHECK(d.out.find("word,word_length,M,N_u,Q_u,delta_u,dist\n") != std::string::npos);
  CHECK(d.out.find("# tol.group=") != std::string::npos);

  const Run c = run({"count", "--gens", data_path("picard.json"), "--max-len", "6"});
  REQUIRE(c.code == cli::kPass);
  CHECK(c.out.find("# slope=") != std::string::npos);
  CHECK(c.out.find("x,count\n") != std::string::npos);
}

TEST_CASE("output is byte-identical across runs and worker counts") {
  const std::string gens = data_path("picard.json");
  const Run a = run({"count", "--gens", gens, "--max-len", "6", "--workers", "1"});
  const Run b = run({"count", "--gens", gens, "--max-len", "6", "--workers", "1"});
  const Run c = run({"count", "--gens", gens, "--max-len", "6", "--workers", "4"});
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("flags take precedence over the config file") {
  const fs::path cfg = scratch("cfg.json");
  write_file(cfg, R"({"d": 4, "mu": [2.0], "format": "json", "tol": {"transform": 1e-5}})");
  const Run r = run({"transform", "--config", cfg.string(), "--d", "3"});
  REQUIRE(r.code == cli::kPass);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["records"][0]["d"] == 3);
  CHECK(j["records"][0]["mu"] == 2.0);
  CHECK(j["tolerances"]["transform"].get<double>() == 1e-5);
}

TEST_CASE("output file option") {
  const fs::path out = scratch("limit.csv");
  fs::remove(out);
  const Run r = run({"asymptote", "--mu", "10,20", "--out", out.string()});
  REQUIRE(r.code == cli::kPass);
  CHECK(r.out.empty());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().find("mu,value_log,sign,envelope_log\n10,") != std::string::npos);
}
