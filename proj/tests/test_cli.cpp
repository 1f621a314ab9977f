#include "common.hpp"
#include "hardyops/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace hardyops;
using hardyops::testing::Gen;
namespace cli = hardyops::cli;

namespace {

cli::JobSpec job(const std::string& command, std::map<std::string, std::string> inputs,
                 cli::Mode mode = cli::Mode::Exact) {
  cli::JobSpec j;
  j.command = command;
  j.inputs = std::move(inputs);
  j.mode = mode;
  return j;
}

std::string matrix_text(const SymbolMatrix2& H) {
  return "f=" + to_string(H.f) + ";u=" + to_string(H.u) + ";g=" + to_string(H.g) + ";v=" + to_string(H.v);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string emit(const cli::Outcome& o) { return cli::report_emit(o.report, "json"); }

}  // namespace

TEST(ParseSymbols, TwoNamedSymbols) {
  const auto m = cli::parse_symbols("f = 1/2i*z^-3 + 2; g = z");
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m.at("f").terms().size(), 2u);
  EXPECT_EQ(m.at("f").coeff(-3), QC(0, mpq_class(1, 2)));
  EXPECT_EQ(m.at("f").coeff(0), QC(2));
  EXPECT_EQ(m.at("g"), Poly::z(1));
}

TEST(ParseSymbols, ErrorColumnPointsAtToken) {
  try {
    cli::parse_symbols("f = z^");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column, 6u);
  }
  try {
    cli::parse_symbols("f=z; g=2z");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column, 9u);
  }
  EXPECT_THROW(cli::parse_symbols("f=z; f=1"), ParseError);
  EXPECT_THROW(cli::parse_symbols("f z"), ParseError);
  EXPECT_THROW(cli::parse_symbols("=z"), ParseError);
  EXPECT_NO_THROW(cli::parse_symbols("f=z;"));
}

TEST(ParseSymbols, RoundTrip) {
  Gen gen(501);
  for (int t = 0; t < 300; ++t) {
    const Poly f = gen.poly(4, 0.6, 20), g = gen.poly(3, 0.5, 9);
    const std::string text = "f = " + to_string(f) + " ; g=" + to_string(g);
    const auto m = cli::parse_symbols(text);
    ASSERT_EQ(m.at("f"), f) << text;
    ASSERT_EQ(m.at("g"), g) << text;
    EXPECT_EQ(to_string(parse_symbol(to_string(f))), to_string(f));
  }
}

TEST(ParseSymbols, MissingSlotIsNamed) {
  try {
    cli::parse_matrix("--H1", "f=z;u=z;g=1");
    FAIL();
  } catch (const cli::InputError& e) {
    EXPECT_NE(std::string(e.what()).find("missing slot v"), std::string::npos);
  }
  EXPECT_THROW(cli::parse_matrix("--H1", "f=z;u=z;g=1;v=1;w=2"), cli::InputError);
}

TEST(CliRun, GoldenExamples) {
  const std::string dir = std::string(HARDYOPS_TEST_DATA) + "/golden/";
  const cli::Outcome a = cli::run(
      job("check-product", {{"H1", "f=z;u=z;g=z;v=z"}, {"H2", "f=z^-1;u=z^-1;g=z^-1;v=z^-1"}}));
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.report["verdict"], true);
  EXPECT_EQ(a.report["case"], "E");
  EXPECT_EQ(a.report["constants"]["lambda"], "1");
  EXPECT_EQ(emit(a), read_file(dir + "check_product.json"));

  const cli::Outcome b = cli::run(job("check-quasinormal", {{"f", "z"}, {"g", "z"}}));
  EXPECT_EQ(b.report["verdict"], true);
  EXPECT_EQ(b.report["case"], "2");
  EXPECT_EQ(emit(b), read_file(dir + "check_quasinormal.json"));

  const cli::Outcome c = cli::run(job("check-normal", {{"f", "z+1"}, {"g", "z"}}));
  EXPECT_EQ(c.report["verdict"], false);
  EXPECT_EQ(emit(c), read_file(dir + "check_normal.json"));
}

TEST(CliRun, ExitCodes) {
  EXPECT_EQ(cli::run(job("check-normal", {{"f", "z^"}, {"g", "z"}})).exit_code, cli::kInputError);
  EXPECT_EQ(cli::run(job("check-normal", {{"f", "z"}})).exit_code, cli::kInputError);
  EXPECT_EQ(cli::run(job("check-product", {{"H1", "f=z;u=z;g=z"}, {"H2", "f=z;u=z;g=z;v=z"}})).exit_code,
            cli::kInputError);
  EXPECT_EQ(cli::run(job("check-adtp", {{"phi", "z"}, {"psi", "1"}, {"a", "0"}, {"b", "1"}, {"t", "1"}})).exit_code,
            cli::kInputError);
  EXPECT_EQ(cli::run(job("check-adtp", {{"phi", "z"}, {"psi", "1"}, {"a", "x"}, {"b", "1"}, {"t", "1"}})).exit_code,
            cli::kInputError);
  EXPECT_EQ(cli::run(job("check-dtt-commute", {{"phi", "1"}, {"psi", "z"}, {"t", "1"}})).exit_code,
            cli::kInputError);
  EXPECT_EQ(cli::run(job("nonsense", {})).exit_code, cli::kInputError);
  EXPECT_EQ(cli::run(job("apply", {{"expr", "(toeplitz \"z\")"}, {"x", "z^-1"}})).exit_code, cli::kInputError);
  const cli::Outcome p = cli::run(job("check-normal", {{"f", "z^"}, {"g", "z"}}));
  EXPECT_EQ(p.report["error"]["kind"], "parse");
  EXPECT_EQ(p.report["error"]["column"], 2);
  EXPECT_FALSE(p.report.contains("oracle_agree"));
}

TEST(CliRun, DeterministicReports) {
  Gen gen(502);
  for (int t = 0; t < 25; ++t) {
    const cli::JobSpec j = job(t % 2 ? "check-commute" : "check-product",
                               {{"H1", matrix_text(gen.matrix(2, 0.5))}, {"H2", matrix_text(gen.matrix(2, 0.5))}});
    const cli::Outcome a = cli::run(j), b = cli::run(j);
    EXPECT_EQ(a.exit_code, 0);
    EXPECT_EQ(emit(a), emit(b));
    EXPECT_EQ(a.report["oracle_agree"], true);
  }
}

TEST(CliRun, ConstantsAndProductRoundTrip) {
  const cli::Outcome o = cli::run(job(
      "check-product", {{"H1", "f=2*z;u=2*z+z^3;g=2*z;v=z^-1"}, {"H2", "f=1/3-1i*z^-2;u=z^-1;g=2/3-2i*z^-2;v=2*z^-1"}}));
  ASSERT_EQ(o.exit_code, 0);
  const SymbolMatrix2 H1 = cli::parse_matrix("H1", o.report["inputs"]["H1"].get<std::string>());
  const SymbolMatrix2 H2 = cli::parse_matrix("H2", o.report["inputs"]["H2"].get<std::string>());
  const SemiCommuteVerdict v = semi_commute(H1, H2);
  EXPECT_EQ(o.report["verdict"], v.is_gsio);
  if (v.lambda) {
    EXPECT_EQ(parse_constant(o.report["constants"]["lambda"].get<std::string>()), *v.lambda);
  }
  if (v.product) {
    const cli::json& p = o.report["product"];
    const SymbolMatrix2 back{parse_symbol(p["f"].get<std::string>()), parse_symbol(p["u"].get<std::string>()),
                             parse_symbol(p["g"].get<std::string>()), parse_symbol(p["v"].get<std::string>())};
    EXPECT_EQ(back, *v.product);
  }
  Gen gen(503);
  for (int t = 0; t < 40; ++t) {
    const QC c = gen.coeff(9, 0.7);
    EXPECT_EQ(parse_constant(to_string(c)), c);
  }
}

TEST(CliRun, NumericModeCarriesTolerance) {
  const auto pair = std::map<std::string, std::string>{{"H1", "f=z;u=z;g=z;v=z"}, {"H2", "f=z^2;u=z^2;g=z^2;v=z^2"}};
  const cli::Outcome e = cli::run(job("check-commute", pair));
  EXPECT_FALSE(e.report.contains("tolerance"));
  const cli::Outcome n = cli::run(job("check-commute", pair, cli::Mode::Numeric));
  EXPECT_EQ(n.exit_code, 0);
  ASSERT_TRUE(n.report.contains("tolerance"));
  EXPECT_DOUBLE_EQ(n.report["tolerance"].get<double>(), numeric_tolerance(32));
  EXPECT_EQ(n.report["verdict"], e.report["verdict"]);
  EXPECT_EQ(n.report["oracle_agree"], true);
}

TEST(CliRun, EveryCommandDecides) {
  const std::string H = "f=z+1;u=z^-1;g=2;v=z^-1+3";
  const std::vector<cli::JobSpec> jobs = {
      job("project", {{"f", "z^-2+3+z"}, {"space", "H2perp"}}),
      job("apply", {{"expr", "(compose (toeplitz \"z^-1\") (toeplitz \"z^1\"))"}, {"x", "1+z^2"}}),
      job("check-product", {{"H1", H}, {"H2", H}}),
      job("check-commute", {{"H1", H}, {"H2", H}}),
      job("classify-commute", {{"H1", H}, {"H2", H}}),
      job("check-isometry", {{"H", "f=z;u=0;g=0;v=z^-1"}}),
      job("check-normal", {{"f", "z"}, {"g", "z^-1"}}),
      job("check-quasinormal", {{"f", "z+2"}, {"g", "z^-1"}}),
      job("check-adtp", {{"phi", "1+2*z"}, {"psi", "3-z"}, {"a", "1"}, {"b", "2"}, {"t", "2"}}),
      job("check-dtt-commute", {{"phi", "z+z^-1"}, {"psi", "2*z+2*z^-1+1"}, {"t", "2"}}),
      job("verify-numeric", {{"lhs", "(compose (toeplitz \"z^-1\") (toeplitz \"z^1\"))"}, {"rhs", "(toeplitz \"1\")"}}),
  };
  for (const auto& j : jobs) {
    const cli::Outcome o = cli::run(j);
    EXPECT_EQ(o.exit_code, 0) << j.command << "\n" << emit(o);
    EXPECT_EQ(o.report["command"], j.command);
    EXPECT_EQ(o.report["oracle_agree"], true) << j.command;
    for (const char* key : {"verdict", "case", "constants", "product"}) EXPECT_TRUE(o.report.contains(key)) << key;
  }
  EXPECT_EQ(cli::run(jobs[0]).report["result"], "z^-2");
  EXPECT_EQ(cli::run(jobs[1]).report["result"], "1 + z^2");
  EXPECT_EQ(cli::run(jobs[9]).report["constants"]["combination"], "1/2");
}

TEST(CliRun, NumericAdtpWithBlaschkeZeros) {
  // theta(z) = z as a Blaschke product with one zero at 0 reproduces the monomial case
  const std::map<std::string, std::string> mono = {{"phi", "1+2*z"}, {"psi", "3-z"}, {"a", "1"}, {"b", "1"}, {"t", "1"}};
  auto zeros = mono;
  zeros.erase("t");
  zeros["t-zeros"] = "0";
  const cli::Outcome a = cli::run(job("check-adtp", mono, cli::Mode::Numeric));
  const cli::Outcome b = cli::run(job("check-adtp", zeros, cli::Mode::Numeric));
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(b.exit_code, 0);
  EXPECT_EQ(a.report["verdict"], b.report["verdict"]);
  EXPECT_EQ(cli::run(job("check-adtp", zeros)).exit_code, cli::kInputError);
  zeros["t-zeros"] = "1.5";
  EXPECT_EQ(cli::run(job("check-adtp", zeros, cli::Mode::Numeric)).exit_code, cli::kInputError);
}

TEST(CliRun, TextFormat) {
  const cli::Outcome o = cli::run(job("check-normal", {{"f", "z+1"}, {"g", "z"}}));
  const std::string t = cli::report_emit(o.report, "text");
  EXPECT_NE(t.find("verdict: false\n"), std::string::npos);
  EXPECT_NE(t.find("oracle_agree: true\n"), std::string::npos);
  EXPECT_EQ(t, cli::report_emit(o.report, "text"));
  EXPECT_THROW(cli::report_emit(o.report, "xml"), cli::InputError);
}

TEST(CliRun, BenchCsv) {
  const std::string csv = cli::bench_fft_csv(parse_symbol("z^-1+2+z"), {16, 32}, 1);
  EXPECT_EQ(csv.rfind("n,method,nanos\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  EXPECT_THROW(cli::bench_fft_csv(parse_symbol("1"), {0}, 1), cli::InputError);
}

#ifdef HARDYOPS_CLI
TEST(CliBinary, EnvironmentSelectsMode) {
  const std::string cmd = std::string("HARDYOPS_MODE=numeric \"") + HARDYOPS_CLI +
                          "\" check-commute --H1 'f=z;u=z;g=z;v=z' --H2 'f=1;u=1;g=1;v=1'";
  FILE* p = popen(cmd.c_str(), "r");
  ASSERT_NE(p, nullptr);
  std::string out;
  char buf[512];
  while (std::fgets(buf, sizeof buf, p)) out += buf;
  EXPECT_EQ(pclose(p), 0);
  const auto j = cli::json::parse(out);
  EXPECT_EQ(j["mode"], "numeric");
  EXPECT_TRUE(j.contains("tolerance"));
}
#endif
