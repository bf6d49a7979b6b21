#include "doctest.h"

#include "cli.hpp"
#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "rumorlab");
  std::ostringstream out;
  std::ostringstream err;
  const int code = rumorlab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string strip_duration(const std::string& text) {
  return std::regex_replace(text, std::regex("\"duration_seconds\": [^\\n,]*"), "\"duration_seconds\": X");
}

}  // namespace

TEST_CASE("pc-table csv reproduces the exact thresholds") {
  const Run r = run({"--seed", "1", "--format", "csv", "pc-table", "--d-min", "3", "--d-max", "11"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "d,pc_numerator,pc_denominator,pc_float,pc_asymptotic");
  std::string row;
  int count = 0;
  while (std::getline(lines, row)) ++count;
  CHECK(count == 9);
  CHECK(r.out.find("3,32,39,0.8205128205128205,") != std::string::npos);
  CHECK(r.out.find("10,25937424601,73983185000,") != std::string::npos);
  CHECK(r.out.find('\r') == std::string::npos);
  CHECK(r.err.find("seed: 1") != std::string::npos);
  CHECK(r.err.find("\"command\":\"pc-table\"") != std::string::npos);
}

TEST_CASE("pc-table json single row") {
  const Run r = run({"--seed", "5", "pc-table", "--d-min", "3", "--d-max", "3"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["manifest"]["command"] == "pc-table");
  CHECK(j["manifest"]["seed"] == "5");
  CHECK(j["manifest"].contains("version"));
  CHECK(j["manifest"].contains("duration_seconds"));
  CHECK(j["manifest"]["parameters"]["d_min"] == 3);
  REQUIRE(j["rows"].size() == 1);
  CHECK(j["rows"][0]["pc_numerator"] == "32");
  CHECK(j["rows"][0]["pc_denominator"] == "39");
}

TEST_CASE("pc-table rejects bad ranges") {
  const Run low = run({"pc-table", "--d-min", "2"});
  CHECK(low.code == 2);
  CHECK(low.err.find("d >= 3") != std::string::npos);
  CHECK(run({"pc-table", "--d-min", "4", "--d-max", "3"}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"psi", "--d", "3"}).code == 2);
  CHECK(run({"psi", "--d", "3", "--p", "0"}).code == 2);
  CHECK(run({"psi", "--d", "3", "--p", "abc"}).code == 2);
  CHECK(run({"--seed", "-1", "psi", "--d", "3", "--p", "1"}).code == 2);
  CHECK(run({"--format", "xml", "psi", "--d", "3", "--p", "1"}).code == 2);
  CHECK(run({"--exact", "--float", "psi", "--d", "3", "--p", "1"}).code == 2);
  CHECK(run({"--beta-form", "other", "max-h", "--d", "5", "--k", "3"}).code == 2);
  CHECK(run({"alpha-c", "--d", "5", "--k", "3", "--h", "0"}).code == 2);
  CHECK(run({"simulate", "--d", "4", "--alpha", "0.5"}).code == 2);
  CHECK(run({"simulate", "--topology", "hub_path", "--d", "4", "--k", "3", "--h", "2"}).code == 2);
  CHECK(run({"simulate", "--topology", "hub_path", "--d", "4", "--k", "3", "--h", "2", "--alpha", "0.1"}).code == 2);
  CHECK(run({"theta", "--d", "4", "--p", "0.5", "--method", "magic"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("seed handling") {
  const Run explicit_seed = run({"--seed", "18446744073709551615", "psi", "--d", "3", "--p", "1"});
  REQUIRE(explicit_seed.code == 0);
  CHECK(nlohmann::json::parse(explicit_seed.out)["manifest"]["seed"] == "18446744073709551615");
  setenv("RUMORLAB_SEED", "4242", 1);
  const Run from_env = run({"psi", "--d", "3", "--p", "1"});
  unsetenv("RUMORLAB_SEED");
  CHECK(nlohmann::json::parse(from_env.out)["manifest"]["seed"] == "4242");
  const Run entropy = run({"psi", "--d", "3", "--p", "1"});
  CHECK(entropy.err.find("seed: ") != std::string::npos);
}

TEST_CASE("global flags may follow the subcommand") {
  const Run r = run({"pc-table", "--d-min", "3", "--d-max", "4", "--format", "csv", "--seed", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("d,pc_numerator", 0) == 0);
}

TEST_CASE("theta analytic") {
  const Run sub = run({"--seed", "1", "theta", "--d", "4", "--p", "0.5"});
  REQUIRE(sub.code == 0);
  CHECK(nlohmann::json::parse(sub.out)["methods"]["analytic"]["estimate"] == 0.0);
  const Run full = run({"--seed", "1", "theta", "--d", "3", "--p", "1"});
  CHECK(nlohmann::json::parse(full.out)["methods"]["analytic"]["estimate"].get<double>() ==
        doctest::Approx(0.6612889232197786).epsilon(1e-11));
}

TEST_CASE("theta with all methods agrees within the intervals") {
  const Run r = run({"--seed", "11", "theta", "--d", "4", "--p", "0.9", "--method", "all", "--replicas", "20000"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const double analytic = j["methods"]["analytic"]["estimate"];
  for (const char* m : {"gw_mc", "ctmc_mc"}) {
    CHECK(j["methods"][m]["ci_low"].get<double>() <= analytic);
    CHECK(analytic <= j["methods"][m]["ci_high"].get<double>());
  }
}

TEST_CASE("alpha-c and max-h") {
  const auto a = nlohmann::json::parse(run({"--seed", "1", "alpha-c", "--d", "5", "--k", "3", "--h", "2"}).out);
  CHECK(a["alpha_c_numerator"] == "972");
  CHECK(a["alpha_c_denominator"] == "575");
  CHECK(a["feasible"] == false);
  const auto one = nlohmann::json::parse(run({"--seed", "1", "alpha-c", "--d", "7", "--k", "4", "--h", "1"}).out);
  CHECK(one["alpha_c_numerator"] == one["p_critical_numerator"]);
  CHECK(one["alpha_c_denominator"] == one["p_critical_denominator"]);
  const auto series =
      nlohmann::json::parse(run({"--seed", "1", "--beta-form", "series", "alpha-c", "--d", "5", "--k", "3", "--h", "2"}).out);
  CHECK(series["beta_form"] == "series");
  CHECK(series["path_beta_numerator"] == "4");
  const auto m = nlohmann::json::parse(run({"--seed", "1", "max-h", "--d", "5", "--k", "3"}).out);
  CHECK(m["max_h"] == 1);
  CHECK(m["log_d_over_log_k"].get<double>() == doctest::Approx(std::log(5.0) / std::log(3.0)));
  CHECK(m.contains("log_d_over_log_log_d"));
  const auto far = nlohmann::json::parse(run({"--seed", "1", "max-h", "--d", "1000", "--k", "3"}).out);
  CHECK_FALSE(far.contains("log_d_over_log_log_d"));
  const Run warn = run({"--seed", "1", "max-h", "--d", "5", "--k", "6"});
  CHECK(warn.code == 0);
  CHECK(warn.err.find("warning") != std::string::npos);
}

TEST_CASE("audit-beta reports both forms and the gap") {
  const Run r = run({"--seed", "3", "audit-beta", "--k", "4", "--replicas", "20000"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["paper_numerator"] == "3");
  CHECK(j["paper_denominator"] == "8");
  CHECK(j["series_numerator"] == "13");
  CHECK(j["series_denominator"] == "32");
  CHECK(j["gap_numerator"] == "1");
  CHECK(j["gap_denominator"] == "32");
  CHECK(j["gap_formula"] == "(k-2)!/k^(k-1)");
  const auto big = nlohmann::json::parse(run({"--seed", "3", "audit-beta", "--k", "30", "--replicas", "10"}).out);
  CHECK(big["relative_gap"].get<double>() < 1e-10);
}

TEST_CASE("offspring table") {
  const Run r = run({"--seed", "2", "--format", "csv", "offspring", "--d", "3", "--p", "1", "--replicas", "1000"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("0,1,4,0.25,") != std::string::npos);
  CHECK(r.out.find("3,3,32,0.09375,") != std::string::npos);
}

TEST_CASE("simulate is reproducible and writes files") {
  const std::vector<std::string> args{"--seed", "77", "simulate", "--d", "4", "--p", "0.9", "--replicas", "300", "--level", "8"};
  const Run a = run(args);
  const Run b = run(args);
  REQUIRE(a.code == 0);
  CHECK(strip_duration(a.out) == strip_duration(b.out));
  const auto j = nlohmann::ordered_json::parse(a.out);
  std::vector<std::string> keys;
  for (const auto& item : j.items()) keys.push_back(item.key());
  REQUIRE(keys.size() >= 6);
  CHECK(std::vector<std::string>(keys.begin(), keys.begin() + 6) ==
        std::vector<std::string>{"manifest", "estimate", "ci_low", "ci_high", "replicas", "cap_hits"});

  const Run threaded = run({"--seed", "77", "--threads", "3", "simulate", "--d", "4", "--p", "0.9", "--replicas", "300", "--level", "8"});
  CHECK(nlohmann::json::parse(threaded.out)["estimate"] == j["estimate"]);

  const auto dir = std::filesystem::temp_directory_path() / "rumorlab_cli_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "sweep.csv").string();
  const Run sweep = run({"--seed", "5", "--format", "csv", "--out", path, "simulate", "--d", "4", "--p", "1",
                         "--replicas", "200", "--levels", "1,3,6"});
  REQUIRE(sweep.code == 0);
  CHECK(sweep.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "level,estimate,ci_low,ci_high");
  std::ifstream manifest(path + ".manifest.json");
  CHECK(nlohmann::json::parse(manifest)["command"] == "simulate");
  std::filesystem::remove_all(dir);
}

TEST_CASE("hub-path simulation on the small geometry runs") {
  const Run r = run({"--seed", "9", "simulate", "--topology", "hub_path", "--d", "5", "--k", "4", "--alpha", "0.9",
                     "--h", "4", "--replicas", "200"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["level_measure"] == "hub_generation");
  CHECK(j["level"] == 20);
}

TEST_CASE("gw command") {
  const Run r = run({"--seed", "4", "--format", "json", "gw", "--d", "3", "--p", "0.1", "--replicas", "2000"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["theta_analytic"] == 0.0);
  CHECK(j["estimate"].get<double>() < 0.01);
}
