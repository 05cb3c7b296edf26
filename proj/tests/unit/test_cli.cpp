#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "rmlab/rm_code.hpp"
#include "run_config.hpp"
#include "tables.hpp"

using namespace rmlab;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "rmlab_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("cli encode") {
  CHECK(run({"encode", "0", "2", "1"}).out == "1111\n");
  CHECK(run({"encode", "1", "2", "010"}).out == "0011\n");
  const auto r = run({"encode", "2", "4", "10110011101"});
  CHECK(r.code == 0);
  CHECK(is_codeword(RmCode(2, 4), parse_bits(r.out.substr(0, 16))));
  CHECK(run({"encode", "1", "2", "01"}).code == 1);
  CHECK(run({"encode", "1", "2", "0x1"}).code == 1);
  CHECK(run({"encode", "1"}).code == 1);
}

TEST_CASE("cli decode") {
  CHECK(run({"decode", "1", "2", "gmc", "5", "4", "-4", "-5"}).out == "0011 weight 0\n");
  CHECK(run({"decode", "1", "2", "ml", "inf", "-inf", "-Inf", "3"}).out == "0110 weight 0\n");
  std::vector<std::string> args{"decode", "2", "4", "scl:4"};
  const std::string word = "0110100110010110";
  for (char c : word) args.push_back(c == '1' ? "-10" : "10");
  CHECK(run(args).out == word + " weight 0\n");

  std::vector<std::string> big{"decode", "4", "9", "ca:{(11,3)}"};
  for (int i = 0; i < 512; ++i) big.push_back(i % 3 ? "1.5" : "-0.25");
  const auto r = run(big);
  CHECK(r.code == 0);
  CHECK(r.out.find(' ') == 512);

  CHECK(run({"decode", "1", "2", "gmc", "1", "2", "3"}).code == 1);
  CHECK(run({"decode", "1", "2", "gmc", "1", "2", "3", "x"}).code == 1);
  CHECK(run({"decode", "1", "2", "scl:1", "1", "2", "3", "4"}).code == 1);
  CHECK(run({"decode", "1", "2", "nan", "1", "2", "3", "4"}).code == 1);
  CHECK(cli::parse_llr("-INFINITY") < 0);
  CHECK_THROWS(cli::parse_llr("nan"));
  CHECK_THROWS(cli::parse_llr("1.5x"));
}

TEST_CASE("cli complexity") {
  auto ops = [](const std::vector<std::string>& args) {
    const auto r = run(args);
    REQUIRE(r.code == 0);
    const auto trimmed = r.out.substr(0, r.out.size() - 1);
    const auto last = trimmed.substr(trimmed.rfind('\n') + 1);
    return nlohmann::json::parse(last);
  };
  CHECK(ops({"complexity", "4", "9", "gmc"})["ops_per_info_bit"].get<double>() == 32.043);
  CHECK(ops({"complexity", "4", "9", "gmc"})["total_ops"].get<int>() == 8203);
  CHECK(ops({"complexity", "3", "7", "scl:6", "--json"})["ops_per_info_bit"].get<double>() == doctest::Approx(225.797));
  CHECK(ops({"complexity", "5", "11", "ca:{(1,2),(11,2),(111,6)}"})["ops_per_info_bit"].get<double>() ==
        doctest::Approx(157.41).epsilon(5e-5));
  const auto text = run({"complexity", "4", "9", "ca:{(11,2)}"}).out;
  CHECK(text.find("39.984") != std::string::npos);
  CHECK(text.find("breakdown") != std::string::npos);
  CHECK(run({"complexity", "4", "9", "ca:{(111,2)}"}).code == 1);
  CHECK(run({"complexity", "4", "9", "ml"}).code == 1);
}

TEST_CASE("cli simulate") {
  const auto r = run({"simulate", "-r", "2", "-m", "4", "--snr", "30", "--max-trials", "1000", "--threads", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "decoder_spec,snr_db,trials,errors,bler\n\"gmc\",30,1000,0,0\n");
  CHECK(run({"simulate", "-r", "2", "-m", "4"}).code == 1);

  const fs::path config = scratch("sim.json");
  std::ofstream(config) << R"({"code":{"r":2,"m":4},"decoder_spec":["gmc","ml"],"snr_db":[2.0],"max_trials":200,"threads":1})";
  const fs::path csv = scratch("sim.csv");
  const auto f = run({"simulate", "--config", config.string(), "--csv", csv.string(), "--max-trials", "300"});
  CHECK(f.code == 0);
  const std::string body = slurp(csv);
  CHECK(body.find("\"gmc\",2,300,") != std::string::npos);
  CHECK(body.find("\"ml\",2,300,") != std::string::npos);
  CHECK(run({"simulate", "--config", scratch("missing.json").string()}).code == 1);
  std::ofstream(config) << "{ not json";
  CHECK(run({"simulate", "--config", config.string()}).code == 1);
}

TEST_CASE("cli sweep is deterministic and pareto keeps a frontier of non-dominated points") {
  const std::vector<std::string> args{"sweep",     "-r",        "2",        "-m",         "4",  "-d",        "gmc", "-d",
                                      "scl:4",        "--max-trials", "20000", "--min-errors", "50", "--target-bler", "0.05",
                                      "--low-db",  "-3",        "--high-db", "10",        "--threads", "1"};
  const auto a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto records = nlohmann::json::parse(a.out);
  REQUIRE(records.size() == 2);
  CHECK(records[0]["decoder_spec"] == "gmc");
  CHECK(records[1]["gap_db"].get<double>() <= records[0]["gap_db"].get<double>() + 0.1);

  nlohmann::json table = nlohmann::json::array();
  for (const auto& row : fixtures::exhaustive_pareto_rows())
    table.push_back({{"decoder_spec", row.decoder}, {"ops_per_info_bit", std::stod(row.expected)}, {"gap_db", row.gap_db}});
  const fs::path in = scratch("table.json"), out = scratch("frontier.json");
  std::ofstream(in) << table.dump();
  CHECK(run({"pareto", in.string(), "-o", out.string()}).code == 0);
  CHECK(nlohmann::json::parse(slurp(out)).size() == fixtures::exhaustive_pareto_rows().size());
  std::ofstream(in) << R"([{"decoder_spec":"a","ops_per_info_bit":10,"gap_db":5},{"decoder_spec":"b","ops_per_info_bit":12,"gap_db":5}])";
  CHECK(nlohmann::json::parse(run({"pareto", in.string()}).out).size() == 1);
  CHECK(run({"pareto", scratch("nope.json").string()}).code == 1);
  std::ofstream(in) << R"([{"decoder_spec":"a"}])";
  CHECK(run({"pareto", in.string()}).code == 2);
}

TEST_CASE("run config round trip and overrides") {
  cli::RunConfig c;
  c.r = 3;
  c.m = 7;
  c.decoder_specs = {"gmc", "ca:{(-,4),(1,2)}"};
  c.snr_db = {1.5, 2.25};
  c.seed = 18446744073709551615ull;
  c.resample_ensembles = true;
  c.csv_path = "out.csv";
  const auto text = cli::render_run_config(c);
  CHECK(cli::parse_run_config(text) == c);
  CHECK(cli::render_run_config(cli::parse_run_config(text)) == text);
  CHECK(cli::parse_run_config("{}") == cli::RunConfig{});
  CHECK_THROWS(cli::parse_run_config(R"({"colour":1})"));
  CHECK_THROWS(cli::parse_run_config(R"({"seed":"x"})"));
  CHECK_THROWS(cli::parse_run_config("[]"));

  const fs::path config = scratch("cfg.json");
  std::ofstream(config) << text;
  const auto r = run({"config", "--config", config.string(), "--seed", "5", "-d", "ae:2"});
  REQUIRE(r.code == 0);
  const auto resolved = cli::parse_run_config(r.out);
  CHECK(resolved.seed == 5);
  CHECK(resolved.r == 3);
  CHECK(resolved.decoder_specs == std::vector<std::string>{"ae:2"});
}

TEST_CASE("cli help and usage errors") {
  const auto help = run({"--help"});
  CHECK(help.code == 0);
  for (const char* cmd : {"encode", "decode", "complexity", "simulate", "sweep", "pareto", "first-errors", "heuristic"})
    CHECK(help.out.find(cmd) != std::string::npos);
  const auto sim_help = run({"simulate", "--help"});
  CHECK(sim_help.code == 0);
  CHECK(sim_help.out.find("--max-trials") != std::string::npos);
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"heuristic", "4", "9", "--budget", "ae:4"}).out.find("ca:{(11,2)}") != std::string::npos);
  CHECK(run({"first-errors", "4", "9", "--snr", "40", "--trials", "50", "--threads", "1"}).out == "errors 0 of 50 blocks\n");
}
