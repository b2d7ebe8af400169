#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

namespace cornerext {

/// Multi-index alpha = (a_0,...,a_{d-1}) with total degree |alpha|.
struct MultiIndex {
  std::vector<int> exponents;

  int degree() const {
    int s = 0;
    for (int e : exponents) s += e;
    return s;
  }
  int dim() const { return static_cast<int>(exponents.size()); }
  int operator[](int i) const { return exponents[static_cast<std::size_t>(i)]; }

  /// alpha! as a double.
  double factorial() const;
};

/// All multi-indices of dimension d with total degree <= order, in graded
/// lexicographic order, with O(1) rank lookup. Instances are immutable and
/// cached per (d, order); obtain them through MultiIndexSet::get.
class MultiIndexSet {
 public:
  static std::shared_ptr<const MultiIndexSet> get(int dim, int order);

  int dim() const { return dim_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(indices_.size()); }
  const MultiIndex& at(int rank) const { return indices_[static_cast<std::size_t>(rank)]; }
  const std::vector<MultiIndex>& all() const { return indices_; }

  /// Rank of alpha, or -1 if |alpha| > order.
  int rank(std::span<const int> alpha) const;
  int rank(const MultiIndex& alpha) const { return rank(alpha.exponents); }

 private:
  MultiIndexSet(int dim, int order);
  static std::uint64_t pack(std::span<const int> alpha);

  int dim_;
  int order_;
  std::vector<MultiIndex> indices_;
  std::unordered_map<std::uint64_t, int> rank_;
};

}  // namespace cornerext
