#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nicefn/cli.hpp"
#include "nicefn/expression.hpp"
#include "nicefn/json_io.hpp"
#include "nicefn/transform.hpp"

namespace nicefn {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("nicefn_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& content) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const std::string kGaussian = "exp(-pi*[[1]][x,x])";

TEST_F(CliTest, FourierTransformOfGaussianIsIdentical) {
  const std::string input = to_json(NiceFunction::standard_gaussian(1));
  const CliResult r = run_cli({"ft", "-"}, input);
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(r.out, input);
}

TEST_F(CliTest, InlineExpressionAndExprOutput) {
  const CliResult r = run_cli({"ft", "x1*" + kGaussian, "--format", "expr", "--precision", "17"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const NiceFunction expected = fourier_transform(parse_function("x1*" + kGaussian));
  EXPECT_LE(coefficient_distance(parse_function(r.out), expected), 1e-15);
}

TEST_F(CliTest, FourierTwiceThenParityIsIdentity) {
  const std::string f = write("f.json", run_cli({"random", "--dim", "2", "--seed", "7"}).out);
  ASSERT_EQ(run_cli({"ft", f, "-o", path("g.json")}).code, 0);
  ASSERT_EQ(run_cli({"ft", path("g.json"), "-o", path("h.json")}).code, 0);
  const CliResult back = run_cli({"compose", path("h.json"), "--matrix", "-I"});
  ASSERT_EQ(back.code, 0) << back.err;
  std::ifstream original(f);
  const std::string text((std::istreambuf_iterator<char>(original)), std::istreambuf_iterator<char>());
  EXPECT_LE(coefficient_distance(parse_function_json(back.out), parse_function_json(text)), 1e-9);
}

TEST_F(CliTest, SampleGaussianGrid) {
  const CliResult r = run_cli({"sample", kGaussian, "--grid", "-2:2:5"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "x1,re,im");
  const double pi = std::acos(-1.0);
  const double expected[] = {std::exp(-4 * pi), std::exp(-pi), 1.0, std::exp(-pi), std::exp(-4 * pi)};
  for (double e : expected) {
    ASSERT_TRUE(std::getline(lines, line));
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    EXPECT_NEAR(std::stod(line.substr(c1 + 1, c2 - c1 - 1)), e, 1e-15);
    EXPECT_EQ(std::stod(line.substr(c2 + 1)), 0.0);
  }
  EXPECT_FALSE(std::getline(lines, line));
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
}

TEST_F(CliTest, SampleTwoDimensionalSlice) {
  const CliResult r = run_cli({"sample", "x2*exp(-pi*[[1,0],[0,1]][x,x])", "--grid", "0:1:3", "--axis", "2", "--at",
                               "0.5,0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "x1,x2,re,im");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
}

TEST_F(CliTest, VerifyRulesPassOnRandomInput) {
  const std::string f = write("f.json", run_cli({"random", "--dim", "2", "--seed", "11", "--pair"}).out);
  for (const std::string rule : {"plancherel", "ft", "deriv", "conv"}) {
    const CliResult r = run_cli({"verify", f, "--rule", rule});
    EXPECT_EQ(r.code, cli::kExitOk) << rule << ": " << r.out << r.err;
    EXPECT_NE(r.out.find("result=pass"), std::string::npos);
  }
}

TEST_F(CliTest, VerifyDetectsCorruptedCoefficient) {
  const std::string text = run_cli({"random", "--dim", "1", "--seed", "3", "--pair"}).out;
  const FunctionDocument doc = parse_document(text);
  ASSERT_TRUE(doc.transform.has_value());
  std::vector<NiceTerm> terms = doc.function.terms();
  const auto first = *terms[0].poly.terms().begin();
  terms[0].poly.add_term(first.first, 0.01 * first.second);
  const std::string bad = write("bad.json", to_json(NiceFunction(1, terms), *doc.transform));
  const std::string good = write("good.json", text);
  EXPECT_EQ(run_cli({"verify", good, "--rule", "plancherel"}).code, cli::kExitOk);
  const CliResult r = run_cli({"verify", bad, "--rule", "plancherel"});
  EXPECT_EQ(r.code, cli::kExitVerificationFailed);
  EXPECT_NE(r.out.find("result=fail"), std::string::npos);
}

TEST_F(CliTest, ErrorsUseMachineReadableCodes) {
  CliResult r = run_cli({"fmt", "exp(pi*[[1]][x,x])"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("code=spd_error"), std::string::npos);

  r = run_cli({"fmt", "exp(-pi*[[1]][x,x]"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("code=parse_error"), std::string::npos);

  r = run_cli({"conv", kGaussian, "exp(-pi*[[1,0],[0,1]][x,x])"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("code=dimension_mismatch"), std::string::npos);

  r = run_cli({"compose", "exp(-pi*[[1,0],[0,1]][x,x])", "--matrix", "[[1,1],[1,1]]"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("code=singular_map"), std::string::npos);

  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"diff", kGaussian}).code, cli::kExitUsage);
}

TEST_F(CliTest, CommandsAreDeterministic) {
  const std::vector<std::vector<std::string>> commands = {
      {"random", "--dim", "3", "--seed", "5"},
      {"ft", "x1^2*" + kGaussian},
      {"conv", kGaussian, "x1*" + kGaussian},
      {"to-deriv-basis", "x1^3*" + kGaussian},
      {"inner", kGaussian, "x1*exp(-pi*[[2]][x,x] + [1i].x)"},
  };
  for (const auto& args : commands) {
    const CliResult a = run_cli(args);
    const CliResult b = run_cli(args);
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
  }
}

TEST_F(CliTest, AlgebraCommandsMatchLibrary) {
  const NiceFunction g = parse_function(kGaussian);
  const NiceFunction xg = parse_function("x1*" + kGaussian);
  auto lib = [](const CliResult& r) { return parse_function_json(r.out); };
  EXPECT_LE(coefficient_distance(lib(run_cli({"mul", kGaussian, "x1*" + kGaussian})), multiply(g, xg)), 0.0);
  EXPECT_LE(coefficient_distance(lib(run_cli({"diff", kGaussian, "--alpha", "2"})), differentiate(g, {2})), 0.0);
  EXPECT_LE(coefficient_distance(lib(run_cli({"translate", kGaussian, "--a", "1+1i"})),
                                 translate(g, ComplexVector::Constant(1, Complex(1.0, 1.0)))),
            0.0);
  EXPECT_LE(coefficient_distance(lib(run_cli({"modulate", kGaussian, "--b", "0.5"})),
                                 modulate(g, ComplexVector::Constant(1, 0.5))),
            0.0);
  EXPECT_LE(coefficient_distance(lib(run_cli({"ift", "x1*" + kGaussian})), inverse_transform(xg)), 0.0);
  const CliResult integral_out = run_cli({"integral", kGaussian});
  ASSERT_EQ(integral_out.code, 0);
  EXPECT_NE(integral_out.out.find("\"re\":1"), std::string::npos);
  const CliResult basis = run_cli({"to-deriv-basis", "x1*" + kGaussian});
  ASSERT_EQ(basis.code, 0);
  EXPECT_NE(basis.out.find("\"beta\":[1]"), std::string::npos);
}

TEST_F(CliTest, FmtRoundTrip) {
  const std::string text = "(2+3i)*x1^2*exp(-pi*[[2,0],[0,1]][x,x] + [1i,0].x)";
  const CliResult r = run_cli({"fmt", text, "--precision", "17"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(coefficient_distance(parse_function(r.out), parse_function(text)), 0.0);
  const CliResult again = run_cli({"fmt", r.out, "--precision", "17"});
  EXPECT_EQ(again.out, r.out);
}

}  // namespace
}  // namespace nicefn
