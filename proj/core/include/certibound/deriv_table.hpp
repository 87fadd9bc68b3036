#ifndef CERTIBOUND_DERIV_TABLE_HPP
#define CERTIBOUND_DERIV_TABLE_HPP

#include <optional>
#include <vector>

#include "certibound/interval.hpp"

namespace certibound {

// Table of bounds on |d_x^k d_y^l f| over some region, indexed by (k, l).
class DerivTable {
 public:
  DerivTable() : max_k_(0), max_l_(0) {}
  DerivTable(int max_k, int max_l)
      : max_k_(max_k), max_l_(max_l), cells_((max_k + 1) * (max_l + 1)) {}

  void set(int k, int l, Interval bound) {
    if (k < 0 || l < 0 || k > max_k_ || l > max_l_)
      throw IndexOutOfRange("DerivTable::set order out of range");
    cells_[idx(k, l)] = bound;
  }

  bool has(int k, int l) const {
    return k >= 0 && l >= 0 && k <= max_k_ && l <= max_l_ && cells_[idx(k, l)].has_value();
  }

  Interval at(int k, int l) const {
    if (!has(k, l))
      throw MissingOrder("derivative bound (" + std::to_string(k) + "," +
                         std::to_string(l) + ") not supplied");
    return *cells_[idx(k, l)];
  }

  int max_k() const { return max_k_; }
  int max_l() const { return max_l_; }

 private:
  int idx(int k, int l) const { return k * (max_l_ + 1) + l; }
  int max_k_, max_l_;
  std::vector<std::optional<Interval>> cells_;
};

inline long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Upper bound for |d^i d^j (f g)| from bounds on |d^k d^l f|, |d^k d^l g|:
// sum of binom(i,k) binom(j,l) |d^k d^l f| |d^{i-k} d^{j-l} g|.
Interval leibniz_bound(const DerivTable& f, const DerivTable& g, int i, int j);

}  // namespace certibound

#endif
