#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace nicefn {

// An n-tuple of nonnegative integers. degree() is the sum of the entries.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t dim) : entries_(dim, 0) {}
  MultiIndex(std::initializer_list<int> entries);
  explicit MultiIndex(std::vector<int> entries);

  static MultiIndex unit(std::size_t dim, std::size_t axis);

  std::size_t size() const noexcept { return entries_.size(); }
  int operator[](std::size_t axis) const { return entries_[axis]; }
  std::span<const int> entries() const noexcept { return entries_; }
  int degree() const noexcept;
  bool is_zero() const noexcept { return degree() == 0; }

  MultiIndex operator+(const MultiIndex& other) const;
  // Entrywise difference; throws std::invalid_argument if any entry would go negative.
  MultiIndex operator-(const MultiIndex& other) const;

  bool operator==(const MultiIndex& other) const = default;

  std::string to_string() const;

 private:
  std::vector<int> entries_;
};

// Graded order: lower degree first; within a degree, larger leading exponents
// first (x1^2 < x1*x2 < x2^2 in iteration order).
struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

// Every multi-index of length dim with degree <= max_degree, in graded order.
std::vector<MultiIndex> multi_indices_up_to(std::size_t dim, int max_degree);

// Every multi-index of length dim with degree exactly `degree`, in graded order.
std::vector<MultiIndex> multi_indices_of_degree(std::size_t dim, int degree);

}  // namespace nicefn
