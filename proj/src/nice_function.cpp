#include "nicefn/nice_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nicefn/errors.hpp"

namespace nicefn {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDropThreshold = 1e-12;

bool close(double a, double b, double abs_tol, double rel_tol) {
  return std::abs(a - b) <= abs_tol + rel_tol * std::max(std::abs(a), std::abs(b));
}

void require_dim(std::size_t expected, std::size_t actual, const char* what) {
  if (expected != actual) {
    throw DimensionMismatch(std::string(what) + ": expected dimension " + std::to_string(expected) +
                            ", got " + std::to_string(actual));
  }
}

// Exact lexicographic order on (quad, shift) for deterministic term order.
bool key_less(const NiceTerm& a, const NiceTerm& b) {
  const auto& qa = a.quad.matrix();
  const auto& qb = b.quad.matrix();
  for (Eigen::Index r = 0; r < qa.rows(); ++r) {
    for (Eigen::Index c = 0; c < qa.cols(); ++c) {
      if (qa(r, c) != qb(r, c)) return qa(r, c) < qb(r, c);
    }
  }
  for (Eigen::Index j = 0; j < a.shift.size(); ++j) {
    if (a.shift(j).real() != b.shift(j).real()) return a.shift(j).real() < b.shift(j).real();
    if (a.shift(j).imag() != b.shift(j).imag()) return a.shift(j).imag() < b.shift(j).imag();
  }
  return false;
}

double key_difference(const NiceTerm& a, const NiceTerm& b) {
  return std::max((a.quad.matrix() - b.quad.matrix()).cwiseAbs().maxCoeff(),
                  (a.shift - b.shift).cwiseAbs().maxCoeff());
}

template <typename TermMap>
NiceFunction map_terms(const NiceFunction& f, TermMap&& fn) {
  std::vector<NiceTerm> out;
  out.reserve(f.terms().size());
  for (const auto& t : f.terms()) out.push_back(fn(t));
  return canonicalize(NiceFunction(f.dim(), std::move(out)));
}

}  // namespace

NiceTerm::NiceTerm(Polynomial p, SpdForm q, ComplexVector s)
    : poly(std::move(p)), quad(std::move(q)), shift(std::move(s)) {
  if (quad.dim() != poly.dim() || static_cast<std::size_t>(shift.size()) != poly.dim()) {
    throw DimensionMismatch("term polynomial, quadratic form and shift must share a dimension");
  }
}

NiceTerm NiceTerm::gaussian(SpdForm quad, ComplexVector shift) {
  const auto dim = quad.dim();
  return NiceTerm(Polynomial::constant(dim, 1.0), std::move(quad), std::move(shift));
}

Complex NiceTerm::evaluate(const ComplexVector& z) const {
  require_dim(dim(), static_cast<std::size_t>(z.size()), "evaluate");
  return poly.evaluate(z) * std::exp(-kPi * quad.quadratic(z) + dot(shift, z));
}

bool same_key(const NiceTerm& a, const NiceTerm& b, double abs_tol, double rel_tol) {
  if (a.dim() != b.dim()) return false;
  const auto& qa = a.quad.matrix();
  const auto& qb = b.quad.matrix();
  for (Eigen::Index k = 0; k < qa.size(); ++k) {
    if (!close(qa.data()[k], qb.data()[k], abs_tol, rel_tol)) return false;
  }
  for (Eigen::Index j = 0; j < a.shift.size(); ++j) {
    if (!close(a.shift(j).real(), b.shift(j).real(), abs_tol, rel_tol)) return false;
    if (!close(a.shift(j).imag(), b.shift(j).imag(), abs_tol, rel_tol)) return false;
  }
  return true;
}

NiceFunction::NiceFunction(std::size_t dim, std::vector<NiceTerm> terms) : dim_(dim) {
  terms_.reserve(terms.size());
  for (auto& t : terms) {
    require_dim(dim_, t.dim(), "NiceFunction term");
    if (!t.poly.empty()) terms_.push_back(std::move(t));
  }
}

NiceFunction NiceFunction::standard_gaussian(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return from_term(NiceTerm::gaussian(SpdForm::identity(dim), ComplexVector::Zero(n)));
}

NiceFunction NiceFunction::from_term(NiceTerm term) {
  const auto dim = term.dim();
  return canonicalize(NiceFunction(dim, {std::move(term)}));
}

Complex NiceFunction::evaluate(const ComplexVector& z) const {
  require_dim(dim_, static_cast<std::size_t>(z.size()), "evaluate");
  Complex sum{};
  for (const auto& t : terms_) sum += t.evaluate(z);
  return sum;
}

NiceFunction canonicalize(const NiceFunction& f) {
  struct Group {
    NiceTerm term;
    double scale;
  };
  std::vector<Group> groups;
  for (const auto& t : f.terms()) {
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const Group& g) { return same_key(g.term, t); });
    if (it == groups.end()) {
      groups.push_back({t, t.poly.max_abs_coefficient()});
    } else {
      it->term.poly += t.poly;
      it->scale = std::max(it->scale, t.poly.max_abs_coefficient());
    }
  }
  std::vector<NiceTerm> out;
  for (auto& g : groups) {
    // Scale is the largest coefficient seen before merging, so near-cancellation
    // residue is dropped along with ordinary round-off.
    const double scale = std::max(g.scale, g.term.poly.max_abs_coefficient());
    g.term.poly = g.term.poly.pruned(kDropThreshold * scale);
    if (!g.term.poly.empty()) out.push_back(std::move(g.term));
  }
  std::stable_sort(out.begin(), out.end(), key_less);
  return NiceFunction(f.dim(), std::move(out));
}

NiceFunction operator+(const NiceFunction& f, const NiceFunction& g) {
  require_dim(f.dim(), g.dim(), "sum");
  std::vector<NiceTerm> terms = f.terms();
  terms.insert(terms.end(), g.terms().begin(), g.terms().end());
  return canonicalize(NiceFunction(f.dim(), std::move(terms)));
}

NiceFunction operator-(const NiceFunction& f, const NiceFunction& g) {
  return f + Complex(-1.0) * g;
}

NiceFunction operator*(Complex scalar, const NiceFunction& f) {
  return map_terms(f, [&](const NiceTerm& t) { return NiceTerm(t.poly * scalar, t.quad, t.shift); });
}

NiceFunction multiply(const NiceFunction& f, const NiceFunction& g) {
  require_dim(f.dim(), g.dim(), "multiply");
  std::vector<NiceTerm> terms;
  terms.reserve(f.terms().size() * g.terms().size());
  for (const auto& a : f.terms()) {
    for (const auto& b : g.terms()) {
      terms.emplace_back(a.poly * b.poly, a.quad + b.quad, a.shift + b.shift);
    }
  }
  return canonicalize(NiceFunction(f.dim(), std::move(terms)));
}

NiceFunction conjugate(const NiceFunction& f) {
  return map_terms(f, [](const NiceTerm& t) {
    return NiceTerm(t.poly.conjugated(), t.quad, t.shift.conjugate());
  });
}

NiceFunction translate(const NiceFunction& f, const ComplexVector& a) {
  require_dim(f.dim(), static_cast<std::size_t>(a.size()), "translate");
  const auto n = static_cast<Eigen::Index>(f.dim());
  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(n, n);
  return map_terms(f, [&](const NiceTerm& t) {
    // -pi (x-a).Q(x-a) + b.(x-a) = -pi x.Qx + (b + 2 pi Q a).x - pi a.Qa - b.a
    const ComplexVector qa = t.quad.matrix().cast<Complex>() * a;
    const Complex factor = std::exp(-kPi * dot(a, qa) - dot(t.shift, a));
    Polynomial poly = t.poly.substitute_affine(identity, -a) * factor;
    return NiceTerm(std::move(poly), t.quad, t.shift + 2.0 * kPi * qa);
  });
}

NiceFunction modulate(const NiceFunction& f, const ComplexVector& b) {
  require_dim(f.dim(), static_cast<std::size_t>(b.size()), "modulate");
  const Complex factor(0.0, -2.0 * kPi);
  return map_terms(f, [&](const NiceTerm& t) { return NiceTerm(t.poly, t.quad, t.shift + factor * b); });
}

NiceFunction differentiate(const NiceFunction& f, const MultiIndex& alpha) {
  require_dim(f.dim(), alpha.size(), "differentiate");
  if (alpha.is_zero()) return canonicalize(f);
  return map_terms(f, [&](const NiceTerm& t) {
    Polynomial poly = t.poly;
    const RealMatrix& q = t.quad.matrix();
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      if (alpha[j] == 0) continue;
      // d/dx_j of the exponent: -2 pi (Q x)_j + b_j
      const ComplexVector row = (-2.0 * kPi) * q.row(static_cast<Eigen::Index>(j)).transpose().cast<Complex>();
      const Polynomial exponent_slope = Polynomial::linear(row, t.shift(static_cast<Eigen::Index>(j)));
      for (int k = 0; k < alpha[j]; ++k) poly = poly.partial(j) + poly * exponent_slope;
    }
    return NiceTerm(std::move(poly), t.quad, t.shift);
  });
}

NiceFunction monomial_multiply(const NiceFunction& f, const MultiIndex& alpha) {
  require_dim(f.dim(), alpha.size(), "monomial_multiply");
  return map_terms(f, [&](const NiceTerm& t) { return NiceTerm(t.poly.times_monomial(alpha), t.quad, t.shift); });
}

NiceFunction compose_linear(const NiceFunction& f, const LinearMap& t) {
  require_dim(f.dim(), t.dim(), "compose_linear");
  if (!t.invertible()) throw SingularMap("compose_linear: linear map is singular");
  const RealMatrix& m = t.matrix();
  const Eigen::MatrixXcd mc = m.cast<Complex>();
  const ComplexVector zero = ComplexVector::Zero(m.rows());
  return map_terms(f, [&](const NiceTerm& term) {
    return NiceTerm(term.poly.substitute_affine(mc, zero), SpdForm(m.transpose() * term.quad.matrix() * m),
                    mc.transpose() * term.shift);
  });
}

double coefficient_distance(const NiceFunction& f, const NiceFunction& g, double match_tol) {
  if (f.dim() != g.dim()) throw DimensionMismatch("coefficient_distance: dimensions differ");
  std::vector<bool> used(g.terms().size(), false);
  double worst = 0.0;
  double unmatched = 0.0;
  for (const auto& a : f.terms()) {
    std::size_t best = g.terms().size();
    double best_diff = 0.0;
    for (std::size_t k = 0; k < g.terms().size(); ++k) {
      if (used[k] || !same_key(a, g.terms()[k], match_tol, match_tol)) continue;
      const double diff = key_difference(a, g.terms()[k]);
      if (best == g.terms().size() || diff < best_diff) {
        best = k;
        best_diff = diff;
      }
    }
    if (best == g.terms().size()) {
      unmatched += a.poly.coefficient_mass();
      continue;
    }
    used[best] = true;
    const Polynomial delta = a.poly - g.terms()[best].poly;
    worst = std::max({worst, best_diff, delta.max_abs_coefficient()});
  }
  for (std::size_t k = 0; k < g.terms().size(); ++k) {
    if (!used[k]) unmatched += g.terms()[k].poly.coefficient_mass();
  }
  return worst + unmatched;
}

}  // namespace nicefn
