#pragma once

// Binary sum tree over reaction propensities: O(log n) update and
// cumulative-sum search. Internal sums are recomputed from their children on
// every update, so the total never accumulates drift.

#include <cstddef>
#include <optional>
#include <vector>

namespace astronet {

class PropensityTree {
 public:
  PropensityTree() = default;
  explicit PropensityTree(std::size_t n) { reset(n); }

  void reset(std::size_t n) {
    size_ = n;
    leaves_ = 1;
    while (leaves_ < n) leaves_ <<= 1;
    node_.assign(2 * leaves_, 0.0);
  }

  std::size_t size() const { return size_; }
  double total() const { return node_.empty() ? 0.0 : node_[1]; }
  double value(std::size_t i) const { return node_[leaves_ + i]; }

  void set(std::size_t i, double a) {
    std::size_t k = leaves_ + i;
    if (node_[k] == a) return;
    node_[k] = a;
    for (k >>= 1; k >= 1; k >>= 1) node_[k] = node_[2 * k] + node_[2 * k + 1];
  }

  /// Index u with cumsum(u-1) < r <= cumsum(u), skipping zero leaves.
  /// nullopt when the total is zero.
  std::optional<std::size_t> find(double r) const {
    if (!(total() > 0.0)) return std::nullopt;
    std::size_t k = 1;
    while (k < leaves_) {
      const double left = node_[2 * k];
      if (r <= left && left > 0.0) {
        k = 2 * k;
      } else {
        r -= left;
        k = 2 * k + 1;
        // Rounding can push r past a subtree whose sum is zero; fall back left.
        if (node_[k] <= 0.0) k = 2 * (k >> 1);
      }
    }
    return k - leaves_;
  }

 private:
  std::size_t size_ = 0;
  std::size_t leaves_ = 1;
  std::vector<double> node_;
};

}  // namespace astronet
