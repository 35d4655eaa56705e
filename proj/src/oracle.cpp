#include "nicefn/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "nicefn/errors.hpp"

namespace nicefn {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kPanelOrder = 20;
constexpr std::size_t kMaxDim = 3;
// Panels no wider than this many standard deviations of the narrowest Gaussian.
constexpr double kPanelSigmas = 12.0;

// Integrand majorant  mass * (1 + |x|)^degree * exp(-pi lambda |x|^2 + drift |x|).
// `sharpness` bounds the largest eigenvalue and sets the grid resolution.
struct Envelope {
  double lambda;
  double drift;
  int degree;
  double mass;
  double sharpness;
};

double sphere_area(std::size_t dim) {
  switch (dim) {
    case 1: return 2.0;
    case 2: return 2.0 * kPi;
    default: return 4.0 * kPi;
  }
}

// Outside the cube the radius exceeds R. With h(r) = r^{n-1} (1+r)^d exp(-pi lambda r^2 + drift r),
// d/dr log h <= (n-1+d)/R - 2 pi lambda R + drift =: -kappa for r >= R, so the
// radial tail is at most h(R) / kappa.
double envelope_tail(const Envelope& e, std::size_t dim, double radius) {
  const double kappa = 2.0 * kPi * e.lambda * radius - e.drift -
                       (static_cast<double>(dim) - 1.0 + e.degree) / radius;
  if (!(kappa > 0.0)) return std::numeric_limits<double>::infinity();
  const double log_h = (static_cast<double>(dim) - 1.0) * std::log(radius) + e.degree * std::log1p(radius) -
                       kPi * e.lambda * radius * radius + e.drift * radius;
  return e.mass * sphere_area(dim) * std::exp(log_h) / kappa;
}

double total_tail(const std::vector<Envelope>& envelopes, std::size_t dim, double radius) {
  double sum = 0.0;
  for (const auto& e : envelopes) sum += envelope_tail(e, dim, radius);
  return sum;
}

std::vector<Envelope> fourier_envelopes(const NiceFunction& f, const ComplexVector& xi) {
  std::vector<Envelope> out;
  const RealVector damping = 2.0 * kPi * xi.imag();
  for (const auto& t : f.terms()) {
    out.push_back({t.quad.min_eigenvalue(), (t.shift.real() + damping).norm(), t.poly.degree(),
                   t.poly.coefficient_mass(), t.quad.max_eigenvalue()});
  }
  return out;
}

std::vector<Envelope> inner_product_envelopes(const NiceFunction& f, const NiceFunction& g) {
  std::vector<Envelope> out;
  for (const auto& a : f.terms()) {
    for (const auto& b : g.terms()) {
      out.push_back({a.quad.min_eigenvalue() + b.quad.min_eigenvalue(), (a.shift.real() + b.shift.real()).norm(),
                     a.poly.degree() + b.poly.degree(), a.poly.coefficient_mass() * b.poly.coefficient_mass(),
                     a.quad.max_eigenvalue() + b.quad.max_eigenvalue()});
    }
  }
  return out;
}

// Envelopes in y of f(y) g(x - y) with x = u + iv.
std::vector<Envelope> convolution_envelopes(const NiceFunction& f, const NiceFunction& g, const ComplexVector& x) {
  std::vector<Envelope> out;
  const RealVector u = x.real();
  const RealVector v = x.imag();
  const double x_norm = x.norm();
  for (const auto& a : f.terms()) {
    for (const auto& b : g.terms()) {
      const RealMatrix& q = b.quad.matrix();
      const RealVector drift = a.shift.real() + 2.0 * kPi * q * u - b.shift.real();
      const double offset = -kPi * u.dot(q * u) + kPi * v.dot(q * v) + dot(b.shift, x).real();
      const double mass = a.poly.coefficient_mass() * b.poly.coefficient_mass() *
                          std::pow(1.0 + x_norm, b.poly.degree()) * std::exp(offset);
      out.push_back({a.quad.min_eigenvalue() + b.quad.min_eigenvalue(), drift.norm(),
                     a.poly.degree() + b.poly.degree(), mass, a.quad.max_eigenvalue() + b.quad.max_eigenvalue()});
    }
  }
  return out;
}

void check_dim(std::size_t dim) {
  if (dim == 0 || dim > kMaxDim) throw SpecRejected("quadrature supports dimensions 1 to 3");
}

void validate(const QuadratureSpec& spec) {
  check_dim(spec.dim);
  if (!(spec.half_width > 0.0) || !std::isfinite(spec.half_width)) {
    throw SpecRejected("quadrature half-width must be positive");
  }
  if (spec.points_per_axis <= 0) throw SpecRejected("quadrature needs at least one point per axis");
}

QuadratureSpec spec_for(const std::vector<Envelope>& envelopes, std::size_t dim) {
  check_dim(dim);
  QuadratureSpec spec;
  spec.dim = dim;
  spec.points_per_axis = default_points_per_axis(dim);
  if (envelopes.empty()) return spec;
  double lambda_min = envelopes.front().lambda;
  for (const auto& e : envelopes) lambda_min = std::min(lambda_min, e.lambda);
  const double base = 6.0 / std::sqrt(lambda_min);
  double radius = base;
  for (int iter = 0; iter < 400 && total_tail(envelopes, dim, radius) >= kTailBoundLimit; ++iter) radius *= 1.05;
  if (total_tail(envelopes, dim, radius) >= kTailBoundLimit) {
    throw SpecRejected("no truncation box meets the tail bound");
  }
  spec.half_width = radius;
  double sharpness = 0.0;
  for (const auto& e : envelopes) sharpness = std::max(sharpness, e.sharpness);
  const double sigma = 1.0 / std::sqrt(2.0 * kPi * sharpness);
  const double growth = radius / base;
  const int panels = static_cast<int>(std::max(std::ceil(growth * spec.points_per_axis / kPanelOrder),
                                               std::ceil(2.0 * radius / (kPanelSigmas * sigma))));
  spec.points_per_axis = panels * kPanelOrder;
  return spec;
}

void require_tail(const std::vector<Envelope>& envelopes, const QuadratureSpec& spec) {
  const double tail = total_tail(envelopes, spec.dim, spec.half_width);
  if (!(tail < kTailBoundLimit)) {
    throw SpecRejected("truncation tail bound " + std::to_string(tail) + " exceeds " +
                       std::to_string(kTailBoundLimit));
  }
}

struct Rule1d {
  std::vector<double> nodes;
  std::vector<double> weights;
};

Rule1d composite_rule(const QuadratureSpec& spec) {
  using Gauss = boost::math::quadrature::gauss<double, kPanelOrder>;
  const auto& abscissa = Gauss::abscissa();
  const auto& weight = Gauss::weights();
  const int panels = std::max(1, (spec.points_per_axis + kPanelOrder - 1) / kPanelOrder);
  const double width = 2.0 * spec.half_width / panels;
  Rule1d rule;
  for (int p = 0; p < panels; ++p) {
    const double mid = -spec.half_width + (p + 0.5) * width;
    const double half = 0.5 * width;
    // Boost stores the nonnegative half of a symmetric rule (even order: no zero node).
    for (std::size_t k = abscissa.size(); k-- > 0;) {
      rule.nodes.push_back(mid - half * abscissa[k]);
      rule.weights.push_back(half * weight[k]);
    }
    for (std::size_t k = 0; k < abscissa.size(); ++k) {
      rule.nodes.push_back(mid + half * abscissa[k]);
      rule.weights.push_back(half * weight[k]);
    }
  }
  return rule;
}

// Sums integrand(x) * w(x) over the tensor grid in row-major index order.
Complex integrate(const QuadratureSpec& spec, const std::function<Complex(const ComplexVector&)>& integrand) {
  const Rule1d rule = composite_rule(spec);
  const std::size_t m = rule.nodes.size();
  const std::size_t dim = spec.dim;
  std::vector<std::size_t> index(dim, 0);
  ComplexVector x(static_cast<Eigen::Index>(dim));
  Complex sum{};
  while (true) {
    double w = 1.0;
    for (std::size_t j = 0; j < dim; ++j) {
      x(static_cast<Eigen::Index>(j)) = rule.nodes[index[j]];
      w *= rule.weights[index[j]];
    }
    sum += w * integrand(x);
    std::size_t axis = dim;
    while (axis > 0) {
      --axis;
      if (++index[axis] < m) break;
      index[axis] = 0;
      if (axis == 0) return sum;
    }
  }
}

}  // namespace

int default_points_per_axis(std::size_t dim) {
  switch (dim) {
    case 1: return 200;
    case 2: return 120;
    default: return 60;
  }
}

QuadratureSpec fourier_spec(const NiceFunction& f, const ComplexVector& xi) {
  return spec_for(fourier_envelopes(f, xi), f.dim());
}

QuadratureSpec convolution_spec(const NiceFunction& f, const NiceFunction& g, const ComplexVector& x) {
  return spec_for(convolution_envelopes(f, g, x), f.dim());
}

QuadratureSpec inner_product_spec(const NiceFunction& f, const NiceFunction& g) {
  return spec_for(inner_product_envelopes(f, g), f.dim());
}

double fourier_tail_bound(const NiceFunction& f, const ComplexVector& xi, const QuadratureSpec& spec) {
  return total_tail(fourier_envelopes(f, xi), spec.dim, spec.half_width);
}

double convolution_tail_bound(const NiceFunction& f, const NiceFunction& g, const ComplexVector& x,
                              const QuadratureSpec& spec) {
  return total_tail(convolution_envelopes(f, g, x), spec.dim, spec.half_width);
}

double inner_product_tail_bound(const NiceFunction& f, const NiceFunction& g, const QuadratureSpec& spec) {
  return total_tail(inner_product_envelopes(f, g), spec.dim, spec.half_width);
}

Complex quad_fourier(const NiceFunction& f, const ComplexVector& xi, const QuadratureSpec& spec) {
  validate(spec);
  if (spec.dim != f.dim() || static_cast<std::size_t>(xi.size()) != f.dim()) {
    throw DimensionMismatch("quad_fourier: dimensions differ");
  }
  if (f.empty()) return {};
  require_tail(fourier_envelopes(f, xi), spec);
  const Complex kernel(0.0, -2.0 * kPi);
  return integrate(spec, [&](const ComplexVector& x) { return f.evaluate(x) * std::exp(kernel * dot(x, xi)); });
}

Complex quad_fourier(const NiceFunction& f, const ComplexVector& xi) {
  if (static_cast<std::size_t>(xi.size()) != f.dim()) throw DimensionMismatch("quad_fourier: dimensions differ");
  if (f.empty()) return {};
  return quad_fourier(f, xi, fourier_spec(f, xi));
}

Complex quad_convolve(const NiceFunction& f, const NiceFunction& g, const ComplexVector& x,
                      const QuadratureSpec& spec) {
  validate(spec);
  if (f.dim() != g.dim() || spec.dim != f.dim() || static_cast<std::size_t>(x.size()) != f.dim()) {
    throw DimensionMismatch("quad_convolve: dimensions differ");
  }
  if (f.dim() > 2) throw SpecRejected("quad_convolve supports dimensions 1 and 2");
  if (f.empty() || g.empty()) return {};
  require_tail(convolution_envelopes(f, g, x), spec);
  return integrate(spec, [&](const ComplexVector& y) { return f.evaluate(y) * g.evaluate(x - y); });
}

Complex quad_convolve(const NiceFunction& f, const NiceFunction& g, const ComplexVector& x) {
  if (f.dim() != g.dim() || static_cast<std::size_t>(x.size()) != f.dim()) {
    throw DimensionMismatch("quad_convolve: dimensions differ");
  }
  if (f.empty() || g.empty()) return {};
  return quad_convolve(f, g, x, convolution_spec(f, g, x));
}

Complex quad_inner_product(const NiceFunction& f, const NiceFunction& g, const QuadratureSpec& spec) {
  validate(spec);
  if (f.dim() != g.dim() || spec.dim != f.dim()) throw DimensionMismatch("quad_inner_product: dimensions differ");
  if (f.empty() || g.empty()) return {};
  require_tail(inner_product_envelopes(f, g), spec);
  return integrate(spec, [&](const ComplexVector& x) { return f.evaluate(x) * std::conj(g.evaluate(x)); });
}

Complex quad_inner_product(const NiceFunction& f, const NiceFunction& g) {
  if (f.dim() != g.dim()) throw DimensionMismatch("quad_inner_product: dimensions differ");
  if (f.empty() || g.empty()) return {};
  return quad_inner_product(f, g, inner_product_spec(f, g));
}

Complex quad_abs_integral(const NiceFunction& f) {
  if (f.empty()) return {};
  const ComplexVector zero = ComplexVector::Zero(static_cast<Eigen::Index>(f.dim()));
  const QuadratureSpec spec = fourier_spec(f, zero);
  return integrate(spec, [&](const ComplexVector& x) { return Complex(std::abs(f.evaluate(x)), 0.0); });
}

Complex finite_difference(const NiceFunction& f, std::size_t axis, const RealVector& x, double h) {
  if (static_cast<std::size_t>(x.size()) != f.dim() || axis >= f.dim()) {
    throw DimensionMismatch("finite_difference: dimensions differ");
  }
  if (!(h > 0.0)) throw InvalidInput("finite_difference: step must be positive");
  ComplexVector plus = x.cast<Complex>();
  ComplexVector minus = plus;
  plus(static_cast<Eigen::Index>(axis)) += h;
  minus(static_cast<Eigen::Index>(axis)) -= h;
  return (f.evaluate(plus) - f.evaluate(minus)) / (2.0 * h);
}

Comparison compare(Complex symbolic, Complex numeric, double abs_tol, double rel_tol) {
  const double residual = std::abs(symbolic - numeric);
  return {residual <= abs_tol + rel_tol * std::abs(symbolic), residual};
}

}  // namespace nicefn
