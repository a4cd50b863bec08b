#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "scg/io.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = scg::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli: help and usage errors") {
  CHECK(call({"--help"}).code == scg::cli::kExitOk);
  CHECK(call({}).code == scg::cli::kExitUsage);
  CHECK(call({"bogus"}).code == scg::cli::kExitUsage);
  auto r = call({"pob", "--rule", "nonsense", "--n", "3"});
  CHECK(r.code == scg::cli::kExitUsage);
  CHECK(r.err.find("unknown rule") != std::string::npos);
}

TEST_CASE("cli: frontier") {
  auto r = call({"frontier", "--C", "0.5"});
  CHECK(r.code == 0);
  CHECK(r.out == "C,pob_opt\n0.5,0.5\n");
  r = call({"frontier", "--C", "0.6321205588"});
  CHECK(r.code == 0);
  CHECK(r.out.substr(r.out.rfind(',') + 1) == "0\n");
  r = call({"frontier", "--grid", "5"});
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 6);
  r = call({"frontier", "--C", "0.7"});
  CHECK(r.code == scg::cli::kExitUsage);
  CHECK(r.err.find("[0.5, 0.63212") != std::string::npos);
}

TEST_CASE("cli: closed forms") {
  auto r = call({"pob", "--rule", "pareto:X=0.8", "--n", "5", "--json"});
  CHECK(r.code == 0);
  CHECK(scg::Json::parse(r.out)["pob_one_round"] == "5/11");
  r = call({"poa", "--rule", "mc", "--n", "4", "--json"});
  CHECK(scg::Json::parse(r.out)["poa"] == "1/2");
  r = call({"pob", "--rule", "pareto:C=5/9", "--n", "4", "--json"});
  CHECK(scg::Json::parse(r.out)["pob_one_round"] == "5/11");
}

TEST_CASE("cli: verify") {
  auto r = call({"verify", "--rule", "pareto:X=0.8", "--n", "4", "--k", "2", "--json"});
  CHECK(r.code == 0);
  auto doc = scg::Json::parse(r.out);
  CHECK(doc["all_consistent"] == true);
  CHECK(doc["pob_formula"] == "5/11");
  CHECK(doc["lp_pob"] == "5/11");
  CHECK(doc["construction_pob"] == "5/11");
  CHECK(doc["gf_pob"] == "1/2");

  doc = scg::Json::parse(call({"verify", "--rule", "mc", "--n", "9", "--json"}).out);
  CHECK(doc["lp_pob"].is_null());
  CHECK(doc["all_consistent"] == true);
}

TEST_CASE("cli: custom rules and files") {
  const auto dir = std::filesystem::temp_directory_path() / "scg_cli_test";
  std::filesystem::create_directories(dir);
  scg::write_text(dir / "rule.json", R"({"name":"flat","values":[1,1,1]})");
  auto r = call({"lp-verify", "--rule", "custom:@" + (dir / "rule.json").string(), "--n", "3", "--json", "--dump",
                 (dir / "dual.lp").string()});
  CHECK(r.code == 0);
  CHECK(scg::Json::parse(r.out)["lp_pob"] == "1/3");
  CHECK(std::filesystem::exists(dir / "dual.lp"));

  r = call({"worstcase", "--rule", "mc", "--n", "3", "--out", (dir / "game.json").string()});
  CHECK(r.code == 0);
  r = call({"dynamics", "--game", (dir / "game.json").string(), "--rule", "mc", "--k", "1", "--policy",
            "lowest-action-index", "--out", (dir / "traj.csv").string(), "--end-states", (dir / "ends.json").string(),
            "--json"});
  CHECK(r.code == 0);
  auto doc = scg::Json::parse(r.out);
  CHECK(doc["pob_empirical"] == "1/2");
  CHECK(scg::load_json(dir / "ends.json").is_array());

  scg::write_text(dir / "mc.json", R"({"runs": 4, "n": 3, "set_size": 2, "rounds": 2, "seed": 5})");
  r = call({"montecarlo", "--config", (dir / "mc.json").string(), "--out", (dir / "series.csv").string(), "--json"});
  CHECK(r.code == 0);
  CHECK(scg::Json::parse(r.out).contains("final_mean"));

  r = call({"montecarlo", "--config", (dir / "absent.json").string()});
  CHECK(r.code == scg::cli::kExitUsage);
  CHECK(r.err.find("absent.json") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("cli: search") {
  const auto dir = std::filesystem::temp_directory_path() / "scg_cli_search";
  std::filesystem::create_directories(dir);
  scg::write_text(dir / "fam.json", R"({"n": 2, "max_actions": 2, "max_resources": 3})");
  auto r = call({"search", "--family", (dir / "fam.json").string(), "--rule", "mc", "--k", "1", "--json"});
  CHECK(r.code == 0);
  auto doc = scg::Json::parse(r.out);
  CHECK(doc["min_pob"] == "1/2");
  CHECK(doc["respects_bound"] == true);
  std::filesystem::remove_all(dir);
}
