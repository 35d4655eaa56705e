#include "nicefn/multi_index.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace nicefn {

MultiIndex::MultiIndex(std::initializer_list<int> entries)
    : MultiIndex(std::vector<int>(entries)) {}

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_) {
    if (e < 0) throw std::invalid_argument("multi-index entries must be nonnegative");
  }
}

MultiIndex MultiIndex::unit(std::size_t dim, std::size_t axis) {
  MultiIndex alpha(dim);
  alpha.entries_.at(axis) = 1;
  return alpha;
}

int MultiIndex::degree() const noexcept {
  return std::accumulate(entries_.begin(), entries_.end(), 0);
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.size() != size()) throw std::invalid_argument("multi-index length mismatch");
  MultiIndex sum = *this;
  for (std::size_t j = 0; j < size(); ++j) sum.entries_[j] += other.entries_[j];
  return sum;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  if (other.size() != size()) throw std::invalid_argument("multi-index length mismatch");
  MultiIndex diff = *this;
  for (std::size_t j = 0; j < size(); ++j) {
    diff.entries_[j] -= other.entries_[j];
    if (diff.entries_[j] < 0) throw std::invalid_argument("multi-index difference is negative");
  }
  return diff;
}

std::string MultiIndex::to_string() const {
  std::string out = "(";
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    if (j) out += ",";
    out += std::to_string(entries_[j]);
  }
  return out + ")";
}

bool GradedLexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const int da = a.degree();
  const int db = b.degree();
  if (da != db) return da < db;
  const auto ea = a.entries();
  const auto eb = b.entries();
  if (ea.size() != eb.size()) return ea.size() < eb.size();
  return std::lexicographical_compare(eb.begin(), eb.end(), ea.begin(), ea.end());
}

namespace {

void fill_degree(std::size_t axis, int remaining, std::vector<int>& current,
                 std::vector<MultiIndex>& out) {
  if (axis + 1 == current.size()) {
    current[axis] = remaining;
    out.emplace_back(current);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[axis] = e;
    fill_degree(axis + 1, remaining - e, current, out);
  }
  current[axis] = 0;
}

}  // namespace

std::vector<MultiIndex> multi_indices_of_degree(std::size_t dim, int degree) {
  std::vector<MultiIndex> out;
  if (dim == 0 || degree < 0) return out;
  std::vector<int> current(dim, 0);
  fill_degree(0, degree, current, out);
  return out;
}

std::vector<MultiIndex> multi_indices_up_to(std::size_t dim, int max_degree) {
  std::vector<MultiIndex> out;
  for (int d = 0; d <= max_degree; ++d) {
    auto block = multi_indices_of_degree(dim, d);
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

}  // namespace nicefn
