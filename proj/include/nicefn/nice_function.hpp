#pragma once

#include <cstddef>
#include <vector>

#include "nicefn/linear_map.hpp"
#include "nicefn/multi_index.hpp"
#include "nicefn/polynomial.hpp"
#include "nicefn/spd_form.hpp"

namespace nicefn {

// poly(x) * exp(-pi x.quad x + shift.x)
struct NiceTerm {
  NiceTerm(Polynomial poly, SpdForm quad, ComplexVector shift);

  // Bare exponential exp(-pi x.quad x + shift.x).
  static NiceTerm gaussian(SpdForm quad, ComplexVector shift);

  std::size_t dim() const noexcept { return poly.dim(); }
  Complex evaluate(const ComplexVector& z) const;

  Polynomial poly;
  SpdForm quad;
  ComplexVector shift;
};

// Two (quad, shift) keys are equal when every entry agrees within
// abs_tol + rel_tol * max(|a|, |b|).
bool same_key(const NiceTerm& a, const NiceTerm& b, double abs_tol = 1e-12, double rel_tol = 1e-12);

/// A finite sum of NiceTerms on R^n.
///
/// The constructor keeps the terms as given (dropping zero polynomials), so a
/// NiceFunction may be non-canonical. Every operation below returns a
/// canonical result: terms with matching keys merged, negligible coefficients
/// dropped, and terms sorted by key.
class NiceFunction {
 public:
  explicit NiceFunction(std::size_t dim) : dim_(dim) {}
  NiceFunction(std::size_t dim, std::vector<NiceTerm> terms);

  // exp(-pi x.x)
  static NiceFunction standard_gaussian(std::size_t dim);
  static NiceFunction from_term(NiceTerm term);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<NiceTerm>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  // Holomorphic evaluation with the bilinear dot product; real points are a special case.
  Complex evaluate(const ComplexVector& z) const;

 private:
  std::size_t dim_;
  std::vector<NiceTerm> terms_;
};

NiceFunction canonicalize(const NiceFunction& f);

NiceFunction operator+(const NiceFunction& f, const NiceFunction& g);
NiceFunction operator-(const NiceFunction& f, const NiceFunction& g);
NiceFunction operator*(Complex scalar, const NiceFunction& f);

NiceFunction multiply(const NiceFunction& f, const NiceFunction& g);
// Conjugates coefficients and shifts; matches conj(f(x)) for real x only.
NiceFunction conjugate(const NiceFunction& f);
// x -> f(x - a)
NiceFunction translate(const NiceFunction& f, const ComplexVector& a);
// x -> f(x) exp(-2 pi i x.b)
NiceFunction modulate(const NiceFunction& f, const ComplexVector& b);
NiceFunction differentiate(const NiceFunction& f, const MultiIndex& alpha);
// x -> x^alpha f(x)
NiceFunction monomial_multiply(const NiceFunction& f, const MultiIndex& alpha);
// x -> f(T x); throws SingularMap when T is not invertible.
NiceFunction compose_linear(const NiceFunction& f, const LinearMap& t);

/// Distance between two canonical forms.
///
/// Terms are paired when their keys agree within `match_tol` (absolute plus
/// relative). A pair contributes the larger of its worst key-entry difference
/// and its worst coefficient difference; the result is the maximum over pairs
/// plus the coefficient mass of every unpaired term.
double coefficient_distance(const NiceFunction& f, const NiceFunction& g, double match_tol = 1e-6);

}  // namespace nicefn
