#include "nicefn/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nicefn/basis.hpp"
#include "nicefn/errors.hpp"
#include "nicefn/expression.hpp"
#include "nicefn/json_io.hpp"
#include "nicefn/oracle.hpp"
#include "nicefn/random.hpp"
#include "nicefn/transform.hpp"

namespace nicefn::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::vector<std::string> inputs;
  std::string output = "-";
  std::string format = "json";
  int precision = 6;
  std::optional<std::size_t> dim;
  bool pair = false;
  std::string alpha;
  std::string a;
  std::string b;
  std::string matrix;
  std::string rule;
  std::optional<double> tol;
  std::vector<std::string> grid;
  std::vector<std::size_t> axes;
  std::string at;
  std::size_t terms = 3;
  int degree = 4;
  std::uint64_t seed = 1;
  double max_shift = 2.0;
};

class Session {
 public:
  Session(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  FunctionDocument load(const std::string& source, std::optional<std::size_t> dim) {
    std::string text;
    if (source == "-") {
      if (stdin_used_) throw UsageError("standard input can only be read once");
      stdin_used_ = true;
      std::ostringstream buffer;
      buffer << in_.rdbuf();
      text = buffer.str();
    } else if (std::filesystem::is_regular_file(source)) {
      std::ifstream file(source, std::ios::binary);
      if (!file) throw UsageError("cannot read " + source);
      std::ostringstream buffer;
      buffer << file.rdbuf();
      text = buffer.str();
    } else {
      text = source;
    }
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
      FunctionDocument doc = parse_document(text);
      if (dim && *dim != doc.function.dim()) throw DimensionMismatch("--dim does not match the input dimension");
      return doc;
    }
    return {parse_function(text, dim), std::nullopt};
  }

  void emit(const std::string& path, const std::string& text) {
    if (path == "-") {
      out_ << text;
      return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot write " + path);
    file << text;
  }

 private:
  std::istream& in_;
  std::ostream& out_;
  bool stdin_used_ = false;
};

std::string complex_json(Complex c) {
  return "{\"re\":" + format_double(c.real()) + ",\"im\":" + format_double(c.imag()) + "}\n";
}

std::string render(const NiceFunction& f, const Options& opts) {
  if (opts.format == "expr") return to_expression(f, opts.precision) + "\n";
  return to_json(f);
}

MultiIndex parse_alpha(const std::string& text, std::size_t dim) {
  std::vector<int> entries;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (v < 0 || item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
      entries.push_back(v);
    } catch (const std::logic_error&) {
      throw UsageError("--alpha expects comma-separated nonnegative integers");
    }
  }
  if (entries.size() != dim) throw DimensionMismatch("--alpha length does not match the function dimension");
  return MultiIndex(std::move(entries));
}

ComplexVector parse_vector_option(const std::string& text, std::size_t dim, const char* name) {
  ComplexVector v = parse_complex_vector(text);
  if (static_cast<std::size_t>(v.size()) != dim) {
    throw DimensionMismatch(std::string(name) + " length does not match the function dimension");
  }
  return v;
}

LinearMap parse_matrix_option(const std::string& text, std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  if (text == "I") return LinearMap(RealMatrix::Identity(n, n));
  if (text == "-I") return LinearMap(-RealMatrix::Identity(n, n));
  nlohmann::json rows;
  try {
    rows = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    throw UsageError("--matrix expects I, -I or a nested list such as [[1,0],[0,1]]");
  }
  if (!rows.is_array() || rows.size() != dim) throw DimensionMismatch("--matrix must have dim rows");
  RealMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != dim) throw DimensionMismatch("--matrix rows must have dim entries");
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number()) throw UsageError("--matrix entries must be numbers");
      m(r, c) = v.get<double>();
    }
  }
  return LinearMap(m);
}

struct Grid {
  double lo;
  double hi;
  int steps;
  double at(int k) const { return steps == 1 ? lo : lo + (hi - lo) * k / (steps - 1); }
};

Grid parse_grid(const std::string& text) {
  std::stringstream stream(text);
  std::string lo, hi, steps;
  if (!std::getline(stream, lo, ':') || !std::getline(stream, hi, ':') || !std::getline(stream, steps) ||
      stream.peek() != EOF) {
    throw UsageError("--grid expects lo:hi:steps");
  }
  try {
    Grid g{std::stod(lo), std::stod(hi), std::stoi(steps)};
    if (g.steps < 1 || !std::isfinite(g.lo) || !std::isfinite(g.hi)) throw std::invalid_argument(text);
    return g;
  } catch (const std::logic_error&) {
    throw UsageError("--grid expects lo:hi:steps with steps >= 1");
  }
}

// Deterministic probe points for the verification rules.
std::vector<RealVector> probe_points(std::size_t dim, double scale) {
  std::vector<RealVector> points;
  for (int k = 0; k < 5; ++k) {
    RealVector p(static_cast<Eigen::Index>(dim));
    for (Eigen::Index j = 0; j < p.size(); ++j) {
      p(j) = scale * (k - 2) * 0.5 * (1.0 + 0.3 * static_cast<double>(j)) * (j % 2 ? -1.0 : 1.0);
    }
    points.push_back(p);
  }
  return points;
}

NiceFunction transform_of(const FunctionDocument& doc) {
  return doc.transform ? *doc.transform : fourier_transform(doc.function);
}

int verify(Session& session, const Options& opts, std::ostream& report) {
  const FunctionDocument first = session.load(opts.inputs.at(0), opts.dim);
  std::optional<FunctionDocument> second;
  if (opts.inputs.size() > 1) second = session.load(opts.inputs[1], opts.dim);
  const NiceFunction& f = first.function;
  const std::size_t dim = f.dim();
  if (second && second->function.dim() != dim) throw DimensionMismatch("verify: inputs have different dimensions");

  double residual = 0.0;
  double tol = 0.0;
  if (opts.rule == "plancherel") {
    tol = opts.tol.value_or(1e-9);
    const FunctionDocument& other = second ? *second : first;
    const Complex lhs = inner_product(f, other.function).value;
    const Complex rhs = inner_product(transform_of(first), transform_of(other)).value;
    residual = std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
  } else if (opts.rule == "ft") {
    tol = opts.tol.value_or(1e-6);
    if (dim > 3) throw SpecRejected("verify --rule ft needs dimension <= 3");
    const NiceFunction f_hat = fourier_transform(f);
    if (first.transform) residual = coefficient_distance(f_hat, *first.transform);
    for (const auto& xi : probe_points(dim, 1.0)) {
      const ComplexVector z = xi.cast<Complex>();
      residual = std::max(residual, std::abs(transform_of(first).evaluate(z) - quad_fourier(f, z)));
    }
  } else if (opts.rule == "conv") {
    tol = opts.tol.value_or(1e-6);
    if (dim > 2) throw SpecRejected("verify --rule conv needs dimension <= 2");
    const NiceFunction& g = second ? second->function : f;
    const NiceFunction h = convolve(f, g);
    for (const auto& x : probe_points(dim, 1.0)) {
      const ComplexVector z = x.cast<Complex>();
      residual = std::max(residual, std::abs(h.evaluate(z) - quad_convolve(f, g, z)));
    }
  } else if (opts.rule == "deriv") {
    tol = opts.tol.value_or(1e-6);
    for (std::size_t axis = 0; axis < dim; ++axis) {
      const NiceFunction d = differentiate(f, MultiIndex::unit(dim, axis));
      for (const auto& x : probe_points(dim, 0.8)) {
        const Complex symbolic = d.evaluate(x.cast<Complex>());
        const Complex numeric = finite_difference(f, axis, x, 1e-5);
        residual = std::max(residual, std::abs(symbolic - numeric) / std::max(1.0, std::abs(symbolic)));
      }
    }
  } else {
    throw UsageError("--rule must be one of ft, conv, plancherel, deriv");
  }
  const bool pass = residual <= tol;
  char numbers[96];
  std::snprintf(numbers, sizeof numbers, " residual=%.6g tol=%.6g", residual, tol);
  report << "rule=" << opts.rule << numbers
         << " result=" << (pass ? "pass" : "fail") << "\n";
  return pass ? kExitOk : kExitVerificationFailed;
}

std::string sample(const NiceFunction& f, const Options& opts) {
  const std::size_t dim = f.dim();
  std::vector<std::size_t> axes = opts.axes;
  if (axes.empty()) {
    for (std::size_t j = 1; j <= dim; ++j) axes.push_back(j);
  }
  for (auto a : axes) {
    if (a < 1 || a > dim) throw DimensionMismatch("--axis out of range");
  }
  if (opts.grid.empty()) throw UsageError("sample needs --grid lo:hi:steps");
  if (opts.grid.size() != 1 && opts.grid.size() != axes.size()) {
    throw UsageError("give one --grid, or one per sampled axis");
  }
  std::vector<Grid> grids;
  for (std::size_t k = 0; k < axes.size(); ++k) grids.push_back(parse_grid(opts.grid[opts.grid.size() == 1 ? 0 : k]));
  RealVector base = RealVector::Zero(static_cast<Eigen::Index>(dim));
  if (!opts.at.empty()) {
    const ComplexVector at = parse_vector_option(opts.at, dim, "--at");
    if (!at.imag().isZero(0.0)) throw UsageError("--at must be real");
    base = at.real();
  }

  std::string csv;
  for (std::size_t j = 1; j <= dim; ++j) csv += "x" + std::to_string(j) + ",";
  csv += "re,im\n";
  std::vector<int> index(axes.size(), 0);
  while (true) {
    RealVector x = base;
    for (std::size_t k = 0; k < axes.size(); ++k) x(static_cast<Eigen::Index>(axes[k] - 1)) = grids[k].at(index[k]);
    const Complex value = f.evaluate(x.cast<Complex>());
    for (Eigen::Index j = 0; j < x.size(); ++j) csv += format_double(x(j)) + ",";
    csv += format_double(value.real()) + "," + format_double(value.imag()) + "\n";
    std::size_t k = axes.size();
    bool done = true;
    while (k > 0) {
      --k;
      if (++index[k] < grids[k].steps) {
        done = false;
        break;
      }
      index[k] = 0;
    }
    if (done) break;
  }
  return csv;
}

void add_inputs(CLI::App* sub, Options& opts, std::size_t count, bool optional_second = false) {
  auto* opt = sub->add_option("inputs", opts.inputs,
                              "JSON file, expression file, inline expression, or - for standard input");
  opt->required();
  if (optional_second) {
    opt->expected(1, 2);
  } else {
    opt->expected(static_cast<int>(count));
  }
}

void add_output(CLI::App* sub, Options& opts, bool function_output) {
  sub->add_option("-o,--output", opts.output, "output path, - for standard output");
  sub->add_option("--dim", opts.dim, "dimension for expression inputs without literals");
  if (function_output) {
    sub->add_option("--format", opts.format, "json or expr")->check(CLI::IsMember({"json", "expr"}));
    sub->add_option("--precision", opts.precision, "significant digits for --format expr")
        ->check(CLI::Range(1, 17));
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact symbolic algebra and Fourier analysis of polynomial-Gaussian functions", "nicefn"};
  app.require_subcommand(1);
  Options opts;

  auto* ft = app.add_subcommand("ft", "Fourier transform");
  add_inputs(ft, opts, 1);
  add_output(ft, opts, true);
  ft->add_flag("--pair", opts.pair, "emit the input with its transform attached (JSON only)");
  auto* ift = app.add_subcommand("ift", "inverse Fourier transform");
  add_inputs(ift, opts, 1);
  add_output(ift, opts, true);
  auto* conv = app.add_subcommand("conv", "convolution A * B");
  add_inputs(conv, opts, 2);
  add_output(conv, opts, true);
  auto* mul = app.add_subcommand("mul", "pointwise product A B");
  add_inputs(mul, opts, 2);
  add_output(mul, opts, true);
  auto* diff = app.add_subcommand("diff", "partial derivative of order --alpha");
  add_inputs(diff, opts, 1);
  add_output(diff, opts, true);
  diff->add_option("--alpha", opts.alpha, "multi-index, e.g. 1,0")->required();
  auto* translate_cmd = app.add_subcommand("translate", "x -> f(x - a)");
  add_inputs(translate_cmd, opts, 1);
  add_output(translate_cmd, opts, true);
  translate_cmd->add_option("--a", opts.a, "complex vector, e.g. 1+2i,0")->required();
  auto* modulate_cmd = app.add_subcommand("modulate", "x -> f(x) exp(-2 pi i x.b)");
  add_inputs(modulate_cmd, opts, 1);
  add_output(modulate_cmd, opts, true);
  modulate_cmd->add_option("--b", opts.b, "complex vector")->required();
  auto* compose = app.add_subcommand("compose", "x -> f(T x)");
  add_inputs(compose, opts, 1);
  add_output(compose, opts, true);
  compose->add_option("--matrix", opts.matrix, "I, -I, or [[..],[..]]")->required();
  auto* inner = app.add_subcommand("inner", "L2 pairing of A and B");
  add_inputs(inner, opts, 2);
  add_output(inner, opts, false);
  auto* integral_cmd = app.add_subcommand("integral", "integral over R^n");
  add_inputs(integral_cmd, opts, 1);
  add_output(integral_cmd, opts, false);
  auto* deriv_basis = app.add_subcommand("to-deriv-basis", "rewrite in the Gaussian-derivative basis");
  add_inputs(deriv_basis, opts, 1);
  add_output(deriv_basis, opts, false);
  auto* verify_cmd = app.add_subcommand("verify", "check an identity against the numerical oracle");
  add_inputs(verify_cmd, opts, 1, true);
  add_output(verify_cmd, opts, false);
  verify_cmd->add_option("--rule", opts.rule, "ft, conv, plancherel or deriv")
      ->required()
      ->check(CLI::IsMember({"ft", "conv", "plancherel", "deriv"}));
  verify_cmd->add_option("--tol", opts.tol, "pass threshold for the residual")->check(CLI::PositiveNumber);
  auto* sample_cmd = app.add_subcommand("sample", "CSV samples on a grid");
  add_inputs(sample_cmd, opts, 1);
  add_output(sample_cmd, opts, false);
  sample_cmd->add_option("--grid", opts.grid, "lo:hi:steps, once or once per sampled axis")->required();
  sample_cmd->add_option("--axis", opts.axes, "1-based axes to sample (default: all)");
  sample_cmd->add_option("--at", opts.at, "base point, one value per coordinate; sampled axes are overwritten (default: 0)");
  auto* fmt = app.add_subcommand("fmt", "canonical pretty-print");
  add_inputs(fmt, opts, 1);
  add_output(fmt, opts, false);
  fmt->add_option("--precision", opts.precision, "significant digits")->check(CLI::Range(1, 17));
  auto* random_cmd = app.add_subcommand("random", "random nice function (JSON)");
  random_cmd->add_option("-o,--output", opts.output, "output path, - for standard output");
  random_cmd->add_option("--dim", opts.dim, "dimension")->required()->check(CLI::Range(1, 8));
  random_cmd->add_option("--terms", opts.terms, "maximum number of terms")->check(CLI::Range(1, 16));
  random_cmd->add_option("--degree", opts.degree, "maximum polynomial degree")->check(CLI::Range(0, 8));
  random_cmd->add_option("--max-shift", opts.max_shift, "bound on |shift|")->check(CLI::NonNegativeNumber);
  random_cmd->add_option("--seed", opts.seed, "random seed");
  random_cmd->add_flag("--pair", opts.pair, "attach the Fourier transform");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: code=usage: " << e.what() << "\n";
    return kExitUsage;
  }

  Session session(in, out);
  try {
    auto one = [&]() { return session.load(opts.inputs.at(0), opts.dim).function; };
    auto two = [&]() {
      NiceFunction a = session.load(opts.inputs.at(0), opts.dim).function;
      NiceFunction b = session.load(opts.inputs.at(1), opts.dim).function;
      if (a.dim() != b.dim()) throw DimensionMismatch("inputs have different dimensions");
      return std::pair{std::move(a), std::move(b)};
    };

    if (app.got_subcommand(ft)) {
      const NiceFunction f = one();
      const NiceFunction f_hat = fourier_transform(f);
      if (opts.pair) {
        if (opts.format != "json") throw UsageError("--pair requires --format json");
        session.emit(opts.output, to_json(f, f_hat));
      } else {
        session.emit(opts.output, render(f_hat, opts));
      }
    } else if (app.got_subcommand(ift)) {
      session.emit(opts.output, render(inverse_transform(one()), opts));
    } else if (app.got_subcommand(conv)) {
      auto [a, b] = two();
      session.emit(opts.output, render(convolve(a, b), opts));
    } else if (app.got_subcommand(mul)) {
      auto [a, b] = two();
      session.emit(opts.output, render(multiply(a, b), opts));
    } else if (app.got_subcommand(diff)) {
      const NiceFunction f = one();
      session.emit(opts.output, render(differentiate(f, parse_alpha(opts.alpha, f.dim())), opts));
    } else if (app.got_subcommand(translate_cmd)) {
      const NiceFunction f = one();
      session.emit(opts.output, render(translate(f, parse_vector_option(opts.a, f.dim(), "--a")), opts));
    } else if (app.got_subcommand(modulate_cmd)) {
      const NiceFunction f = one();
      session.emit(opts.output, render(modulate(f, parse_vector_option(opts.b, f.dim(), "--b")), opts));
    } else if (app.got_subcommand(compose)) {
      const NiceFunction f = one();
      session.emit(opts.output, render(compose_linear(f, parse_matrix_option(opts.matrix, f.dim())), opts));
    } else if (app.got_subcommand(inner)) {
      auto [a, b] = two();
      session.emit(opts.output, complex_json(inner_product(a, b).value));
    } else if (app.got_subcommand(integral_cmd)) {
      session.emit(opts.output, complex_json(integral(one())));
    } else if (app.got_subcommand(deriv_basis)) {
      session.emit(opts.output, to_json(function_to_derivative_basis(one())));
    } else if (app.got_subcommand(verify_cmd)) {
      std::ostringstream report;
      const int status = verify(session, opts, report);
      session.emit(opts.output, report.str());
      return status;
    } else if (app.got_subcommand(sample_cmd)) {
      session.emit(opts.output, sample(one(), opts));
    } else if (app.got_subcommand(fmt)) {
      session.emit(opts.output, to_expression(one(), opts.precision) + "\n");
    } else if (app.got_subcommand(random_cmd)) {
      RandomFunctionOptions ro;
      ro.dim = *opts.dim;
      ro.max_terms = opts.terms;
      ro.max_degree = opts.degree;
      ro.max_shift = opts.max_shift;
      Rng rng(opts.seed);
      const NiceFunction f = random_function(rng, ro);
      session.emit(opts.output, opts.pair ? to_json(f, fourier_transform(f)) : to_json(f));
    }
    return kExitOk;
  } catch (const nicefn::ParseError& e) {
    err << "error: code=" << error_code_name(e.code()) << " line=" << e.line() << " column=" << e.column() << ": "
        << e.what() << "\n";
  } catch (const nicefn::Error& e) {
    err << "error: code=" << error_code_name(e.code()) << ": " << e.what() << "\n";
  } catch (const UsageError& e) {
    err << "error: code=usage: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: code=internal: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace nicefn::cli
