#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "nicrob/cli.hpp"

using namespace nicrob;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "nicrob_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(ParseNumber, DecimalAndProducts) {
  EXPECT_EQ(cli::parse_number("720").to_string(), "2^4*3^2*5");
  EXPECT_EQ(cli::parse_number("2^3*3^2"), cli::parse_number("72"));
  EXPECT_EQ(cli::parse_number(" 6^2 * 5 ").to_string(), "2^2*3^2*5");
  EXPECT_EQ(cli::parse_number("1").to_string(), "1");
  EXPECT_THROW(cli::parse_number("0"), std::invalid_argument);
  EXPECT_THROW(cli::parse_number("12a"), std::invalid_argument);
  EXPECT_THROW(cli::parse_number("2^"), std::invalid_argument);
  EXPECT_THROW(cli::parse_number("*3"), std::invalid_argument);
  EXPECT_THROW(cli::parse_number("-5"), std::invalid_argument);
}

TEST(ParseNumber, HugeFactoredInputNeedsNoFactoring) {
  // Two primes above the trial bound, given already split.
  EXPECT_EQ(cli::parse_number("1000003^5*1000033").to_string(), "1000003^5*1000033");
}

TEST(Config, BuiltinsAndJsonRoundTrip) {
  const auto mod4 = cli::load_config("mod4");
  EXPECT_EQ(mod4.config.modulus, 4u);
  const auto again = cli::parse_config_json(cli::config_json(mod4));
  EXPECT_EQ(again.config.p_residues, mod4.config.p_residues);
  EXPECT_EQ(again.config.include_primes, mod4.config.include_primes);
  EXPECT_EQ(again.config.representation, mod4.config.representation);
  EXPECT_EQ(again.schedule.steps, mod4.schedule.steps);
  EXPECT_TRUE(again.config.has_proven_bounds());
}

TEST(Config, FileWithDefaults) {
  const auto path = scratch("mod5.json");
  write_file(path, R"({"modulus": 5, "p_residues": [1, 4], "search": {"max_k": 200}, "precision": {"schedule": [64, 256]}})");
  const auto loaded = cli::load_config(path.string());
  EXPECT_EQ(loaded.config.modulus, 5u);
  EXPECT_TRUE(loaded.config.include_primes.empty());
  EXPECT_EQ(loaded.config.search.max_k, 200u);
  EXPECT_EQ(loaded.config.search.pk_minus_bound, 50000u);
  EXPECT_EQ(loaded.schedule.steps, (std::vector<mpfr_prec_t>{64, 256}));
}

TEST(Config, Errors) {
  EXPECT_THROW(cli::parse_config_json("{"), ConfigError);
  EXPECT_THROW(cli::parse_config_json("[]"), ConfigError);
  EXPECT_THROW(cli::parse_config_json(R"({"p_residues": [1]})"), ConfigError);
  EXPECT_THROW(cli::parse_config_json(R"({"modulus": 4, "p_residues": [1, 3]})"), ConfigError);
  EXPECT_THROW(cli::parse_config_json(R"({"modulus": -4, "p_residues": [1]})"), ConfigError);
  EXPECT_THROW(cli::parse_config_json(R"({"modulus": 4, "p_residues": [1], "colour": 1})"), ConfigError);
  EXPECT_THROW(cli::parse_config_json(R"({"modulus": 4, "p_residues": [1], "precision": {"schedule": [128, 64]}})"),
               ConfigError);
  EXPECT_THROW(cli::parse_config_json(R"({"modulus": 4, "p_residues": [1], "representation": "cubes"})"),
               ConfigError);
  EXPECT_THROW(cli::load_config("/nonexistent/config.json"), ConfigError);
}

TEST(Check, SevenTwenty) {
  const auto r = run_cli({"check", "720"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("robin: violator"), std::string::npos);
  EXPECT_NE(r.out.find("nicolas: violator"), std::string::npos);
  EXPECT_NE(r.out.find("two-squares: true"), std::string::npos);
  EXPECT_NE(r.out.find("sigma(n)/n: 403/120"), std::string::npos);
}

TEST(Check, FiveThousandFortyOne) {
  const auto r = run_cli({"check", "5041"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("robin: satisfied"), std::string::npos);
}

TEST(Check, FactoredSyntaxMatchesDecimal) {
  const auto a = run_cli({"--json", "check", "2^3*3^2"});
  const auto b = run_cli({"check", "72", "--json"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["n"], "72");
  EXPECT_EQ(j["f_ratio"], "3");
  EXPECT_EQ(j["in_Y"], false);
}

TEST(Check, ExitCodes) {
  EXPECT_EQ(run_cli({"check", "1000036000099"}).code, cli::kUnfactorable);
  EXPECT_EQ(run_cli({"--config", "nope", "check", "5"}).code, cli::kConfigError);
  EXPECT_EQ(run_cli({"check", "abc"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"--help"}).code, cli::kOk);
}

TEST(Check, ScheduleBelowMinimumIsAConfigError) {
  const auto path = scratch("tiny.json");
  write_file(path, R"({"modulus": 4, "p_residues": [1], "include_primes": [2], "precision": {"schedule": [16]}})");
  EXPECT_EQ(run_cli({"--config", path.string(), "check", "720"}).code, cli::kConfigError);
}

TEST(Enumerate, WritesRecordsAndManifestAndVerifies) {
  const auto out = scratch("mod4.jsonl");
  const auto r = run_cli({"enumerate", "--output", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("records: 347"), std::string::npos);
  EXPECT_NE(r.out.find("largest: 52509581344222812810"), std::string::npos);

  std::ifstream in(out);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first,
            R"({"n":"1","factorization":[],"omega_p":0,"omega_q":0,"core":"1","robin_violator":true,)"
            R"("sum_of_two_squares":true,"representable":true})");

  const auto manifest = nlohmann::json::parse(read_file(out.string() + ".manifest.json"));
  EXPECT_EQ(manifest["records"], 347);
  EXPECT_EQ(manifest["completeness"], "proven");
  EXPECT_EQ(manifest["config"]["modulus"], 4);

  const auto v = run_cli({"verify", "--input", out.string()});
  EXPECT_EQ(v.code, 0) << v.out;
  EXPECT_NE(v.out.find("manifest digest: match"), std::string::npos);
}

TEST(Enumerate, VerifyCatchesTampering) {
  const auto out = scratch("tampered.jsonl");
  ASSERT_EQ(run_cli({"enumerate", "--robin-only", "-o", out.string()}).code, 0);
  std::string text = read_file(out);
  const auto pos = text.find(R"("n":"720")");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 9, R"("n":"721")");
  write_file(out, text);
  const auto v = run_cli({"--json", "verify", "-i", out.string()});
  EXPECT_EQ(v.code, cli::kDisagreement);
  const auto j = nlohmann::json::parse(v.out);
  EXPECT_FALSE(j["ok"].get<bool>());
}

TEST(Enumerate, FiltersAndDeterminism) {
  const auto a = nlohmann::json::parse(run_cli({"--json", "enumerate", "--two-squares-only"}).out);
  const auto b = nlohmann::json::parse(run_cli({"--json", "--threads", "2", "enumerate", "--two-squares-only"}).out);
  EXPECT_EQ(a["records"], 246);
  EXPECT_EQ(a["digest"], b["digest"]);
  const auto robin = nlohmann::json::parse(run_cli({"--json", "enumerate", "--robin-only", "--two-squares-only"}).out);
  EXPECT_EQ(robin["records"], 15);
  EXPECT_EQ(robin["largest"], "720");
  const auto rep =
      nlohmann::json::parse(run_cli({"--json", "--config", "a2plus3b2", "enumerate", "--representable-only"}).out);
  EXPECT_EQ(rep["records"], 261);
  EXPECT_EQ(rep["largest"], "397999936131188090700");
  EXPECT_EQ(rep["completeness"], "complete relative to declared bounds");
}

TEST(Subcommands, XsetBoundsLimsupBrute) {
  const auto x = nlohmann::json::parse(run_cli({"--json", "xset"}).out);
  EXPECT_EQ(x["count"], 29);
  EXPECT_EQ(x["max_weight"], 18);

  const auto t = run_cli({"bounds", "--theta", "--from", "45000", "--to", "100000"});
  EXPECT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("all pass"), std::string::npos);
  EXPECT_EQ(run_cli({"bounds", "--theta", "--from", "100", "--to", "1000"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"bounds"}).code, cli::kUsage);

  const auto k = nlohmann::json::parse(run_cli({"--json", "bounds", "--kbound"}).out);
  EXPECT_EQ(k["kbound"]["p_side"], 7718);
  EXPECT_EQ(k["kbound"]["q_side"], 9951);

  const auto l = nlohmann::json::parse(run_cli({"--json", "limsup", "--n", "100"}).out);
  EXPECT_EQ(l["witnesses"][0]["exponent"], 8);

  const auto br = nlohmann::json::parse(run_cli({"--json", "brute", "--max", "20"}).out);
  EXPECT_EQ(br["values"][0], 1);
}

TEST(Subcommands, CrossValidateAgrees) {
  const auto r = nlohmann::json::parse(run_cli({"--json", "crossvalidate", "--max", "100000"}).out);
  EXPECT_TRUE(r["agreement"].get<bool>());
}

TEST(Digest, StableAndOrderSensitive) {
  const std::vector<std::string> lines{"a", "b"};
  EXPECT_EQ(cli::digest_lines(lines), cli::digest_lines(lines));
  EXPECT_NE(cli::digest_lines(lines), cli::digest_lines({"b", "a"}));
  EXPECT_EQ(cli::digest_lines({}), "cbf29ce484222325");
}
