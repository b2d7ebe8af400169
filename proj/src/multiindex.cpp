#include "cornerext/multiindex.hpp"

#include <mutex>
#include <stdexcept>

namespace cornerext {

double MultiIndex::factorial() const {
  double f = 1.0;
  for (int e : exponents)
    for (int i = 2; i <= e; ++i) f *= i;
  return f;
}

MultiIndexSet::MultiIndexSet(int dim, int order) : dim_(dim), order_(order) {
  if (dim < 1 || dim > 16) throw std::invalid_argument("multi-index dimension out of range");
  if (order < 0 || order > 60) throw std::invalid_argument("multi-index order out of range");
  if (dim > 8 && order > 15)
    throw std::invalid_argument("multi-index order too large for this dimension");
  // graded lexicographic enumeration: degree major, leading exponent descending
  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == dim - 1) {
      idx[static_cast<std::size_t>(pos)] = remaining;
      indices_.push_back(MultiIndex{idx});
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      idx[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  for (int deg = 0; deg <= order; ++deg) rec(rec, 0, deg);
  rank_.reserve(indices_.size() * 2);
  for (std::size_t r = 0; r < indices_.size(); ++r)
    rank_[pack(indices_[r].exponents)] = static_cast<int>(r);
}

std::uint64_t MultiIndexSet::pack(std::span<const int> alpha) {
  // 8 bits per exponent up to dimension 8, 4 bits beyond (order <= 15 there)
  const int bits = alpha.size() <= 8 ? 8 : 4;
  const std::uint64_t mask = (1u << bits) - 1u;
  std::uint64_t key = 0;
  for (int e : alpha) key = (key << bits) | (static_cast<std::uint64_t>(e) & mask);
  return key;
}

int MultiIndexSet::rank(std::span<const int> alpha) const {
  int deg = 0;
  for (int e : alpha) deg += e;
  if (deg > order_) return -1;
  auto it = rank_.find(pack(alpha));
  return it == rank_.end() ? -1 : it->second;
}

std::shared_ptr<const MultiIndexSet> MultiIndexSet::get(int dim, int order) {
  static std::mutex mu;
  static std::unordered_map<std::uint64_t, std::shared_ptr<const MultiIndexSet>> cache;
  const std::uint64_t key = (static_cast<std::uint64_t>(dim) << 32) | static_cast<std::uint64_t>(order);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto set = std::shared_ptr<const MultiIndexSet>(new MultiIndexSet(dim, order));
  cache[key] = set;
  return set;
}

}  // namespace cornerext
