#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chsh/cli.hpp"
#include "chsh/errors.hpp"

using namespace chsh;
using namespace chsh::cli;

namespace {

constexpr double kPi = std::numbers::pi;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "chsh-coherent");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch() {
  const auto dir = std::filesystem::temp_directory_path() / "chsh_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("angle expressions") {
  CHECK(parse_angle_expr("pi") == kPi);
  CHECK(parse_angle_expr("pi/4") == kPi / 4);
  CHECK(parse_angle_expr("-pi/4") == -kPi / 4);
  CHECK(parse_angle_expr(" 3pi/4 ") == 3 * kPi / 4);
  CHECK(parse_angle_expr("3*pi/4") == 3 * kPi / 4);
  CHECK(parse_angle_expr("0.5pi") == kPi / 2);
  CHECK(parse_angle_expr("PI") == kPi);
  CHECK(parse_angle_expr("2.8415") == 2.8415);
  CHECK(parse_angle_expr("-1e-3") == -1e-3);
  for (const char* bad : {"", "pie", "pi/0", "pi*2", "abc", "1.0x", "nan", "inf"}) {
    CHECK_THROWS_AS(parse_angle_expr(bad), InvalidArgument);
  }
}

TEST_CASE("angle sets") {
  const NamedAngles c = parse_angles("canonical");
  CHECK(c.label == "canonical");
  CHECK(c.angles.b == kPi / 4);
  CHECK(parse_angles("canonical-swapped").angles.b == -kPi / 4);
  const NamedAngles custom = parse_angles("0, pi/2, pi/4, -pi/4");
  CHECK(custom.angles.a_prime == kPi / 2);
  CHECK(custom.angles.b_prime == -kPi / 4);
  CHECK(custom.label == "0,pi/2,pi/4,-pi/4");
  CHECK_THROWS_AS(parse_angles("0,1,2"), InvalidArgument);
}

TEST_CASE("config merging: flags win") {
  RunConfig flags;
  flags.alpha = 0.5;
  const RunConfig file =
      parse_config_json(R"({"alpha": 0.1, "beta": "pi/8", "family": "asymmetric",
                            "angles": [0, "pi/2", "-pi/4", "pi/4"],
                            "alpha_range": {"min": 0.01, "max": 1, "steps": 3}})");
  merge_config(flags, file);
  CHECK(*flags.alpha == 0.5);
  CHECK(*flags.beta == kPi / 8);
  CHECK(*flags.family == Family::Asymmetric);
  CHECK(flags.angles->angles.b == -kPi / 4);
  CHECK(*flags.alpha_range.steps == 3);
  CHECK_THROWS_AS(parse_config_json("[1,2]"), InvalidArgument);
  CHECK_THROWS_AS(parse_config_json("{bad json"), InvalidArgument);
  CHECK_THROWS_AS(parse_config_json(R"({"alpha": true})"), InvalidArgument);
  CHECK_THROWS_AS(load_config_file("/nonexistent/config.json"), IoError);
}

TEST_CASE("chsh command") {
  const Run r = run({"chsh", "--family", "symmetric", "--setup", "single-pair", "--alpha", "0.1",
                     "--beta", "0.2", "--phi", "pi", "--angles", "canonical"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("|<C>|        2.69393") != std::string::npos);
  CHECK(r.out.find("violation    yes") != std::string::npos);
  CHECK(r.out.find("discrepancy") != std::string::npos);

  const Run s = run({"chsh", "--family", "asymmetric", "--setup", "all-pairs", "--alpha", "0.7",
                     "--beta", "0.7", "--phi", "0", "--angles", "canonical-swapped"});
  CHECK(s.code == kExitOk);
  CHECK(s.out.find("|<C>|        2.0895") != std::string::npos);

  const Run d = run({"chsh", "--family", "symmetric", "--setup", "single-pair", "--alpha", "0.3",
                     "--beta", "0.3", "--phi", "pi"});
  CHECK(d.code == kExitInvalidInput);
  CHECK(d.err.find("degenerate") != std::string::npos);

  CHECK(run({"chsh", "--family", "cat-even", "--setup", "all-pairs", "--alpha", "0.3", "--beta",
             "0.4"}).code == kExitInvalidInput);
  CHECK(run({"chsh", "--family", "symmetric", "--alpha", "0.3"}).code == kExitInvalidInput);
  CHECK(run({"chsh", "--bogus"}).code == kExitInvalidInput);
  CHECK(run({}).code == kExitInvalidInput);
  CHECK(run({"--help"}).code == kExitOk);
  const Run v = run({"--version"});
  CHECK(v.code == kExitOk);
  CHECK(v.out.find("0.1.0") != std::string::npos);

  const Run oracle = run({"chsh", "--family", "symmetric", "--setup", "single-pair", "--alpha", "2",
                          "--beta", "1", "--engine", "oracle", "--cutoff", "20"});
  CHECK(oracle.code == kExitOk);
  CHECK(oracle.err.find("warning") != std::string::npos);
  CHECK(oracle.out.find("cutoff 20") != std::string::npos);
}

TEST_CASE("config file feeds the chsh command") {
  const auto cfg = scratch() / "point.json";
  std::ofstream(cfg) << R"({"family": "symmetric", "setup": "single-pair", "alpha": 0.1,
                            "beta": 0.2, "phi": "pi", "engine": "analytic"})";
  const Run r = run({"chsh", "--config", cfg.string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("2.69393") != std::string::npos);
  CHECK(r.out.find("engine       analytic") != std::string::npos);
  // flag overrides the file
  const Run o = run({"chsh", "--config", cfg.string(), "--alpha", "0.7", "--beta", "0.01"});
  CHECK(o.out.find("|<C>|        2.1698") != std::string::npos);
  CHECK(run({"chsh", "--config", (scratch() / "none.json").string()}).code == kExitIoError);
}

TEST_CASE("scan command") {
  const auto dir = scratch();
  const auto out = dir / "fig1.csv";
  const Run r = run({"scan", "--figure", "1", "--out", out.string()});
  CHECK(r.code == kExitOk);
  const std::string first = slurp(out);
  CHECK(first.rfind("# chsh-coherent v0.1.0 family=symmetric setup=single-pair", 0) == 0);
  CHECK(std::count(first.begin(), first.end(), '\n') == 302);
  CHECK(run({"scan", "--figure", "1", "--out", out.string()}).code == kExitOk);
  CHECK(slurp(out) == first);

  const Run small = run({"scan", "--family", "asymmetric", "--setup", "single-pair", "--alpha-min", "0.1",
                         "--alpha-max", "0.5", "--alpha-steps", "2", "--beta-rule", "grid", "--out", "-"});
  CHECK(small.code == kExitOk);
  CHECK(std::count(small.out.begin(), small.out.end(), '\n') == 6);

  const Run both = run({"scan", "--family", "cat-odd", "--setup", "cat-odd-pair", "--alpha-min", "0.1",
                        "--alpha-max", "1", "--alpha-steps", "5", "--beta-rule", "offset", "--delta",
                        "0.05", "--engine", "both", "--out", (dir / "both.csv").string()});
  CHECK(both.code == kExitOk);
  CHECK(both.out.find("discrepancy") != std::string::npos);
  CHECK(slurp(dir / "both.csv").find("cutoff=60") != std::string::npos);

  CHECK(run({"scan", "--figure", "1", "--out", "/nonexistent/dir/f.csv"}).code == kExitIoError);
  CHECK(run({"scan", "--figure", "15"}).code == kExitInvalidInput);
  CHECK(run({"scan", "--family", "symmetric", "--setup", "single-pair", "--alpha-min", "0.1",
             "--alpha-max", "0.5", "--alpha-steps", "1"}).code == kExitInvalidInput);
  std::filesystem::remove_all(dir);
}

TEST_CASE("table1 command") {
  const Run r = run({"table1"});
  CHECK(r.code == kExitOk);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 7);
  CHECK(r.out.find("MISS") == std::string::npos);
  CHECK(run({"table1"}).out == r.out);
}

TEST_CASE("validate command") {
  const Run r = run({"validate", "--steps", "4"});
  CHECK(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["pass"].get<bool>());
  CHECK(j["pairs"].size() == 6);
  for (const auto& p : j["pairs"]) CHECK(p["max_discrepancy"].get<double>() <= 1e-6);

  const Run w = run({"validate", "--family", "symmetric", "--setup", "single-pair", "--cutoff", "20",
                     "--alpha-max", "2", "--steps", "3"});
  const auto wj = nlohmann::json::parse(w.out);
  CHECK(wj["warnings"].size() == 1);
  CHECK(w.err.find("truncation") != std::string::npos);

  CHECK(run({"validate", "--family", "cat-even", "--setup", "all-pairs"}).code == kExitInvalidInput);
}

TEST_CASE("window command") {
  const Run r = run({"window", "--family", "asymmetric", "--setup", "single-pair", "--alpha", "0.5",
                     "--beta", "0.5", "--resolution", "1e-3"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("half_width   0.77") != std::string::npos);
  const Run none = run({"window", "--family", "symmetric", "--setup", "single-pair", "--alpha", "0.5",
                        "--beta", "0.1", "--center", "0"});
  CHECK(none.out.find("no violation") != std::string::npos);
}
