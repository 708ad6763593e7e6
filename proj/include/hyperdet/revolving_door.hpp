#pragma once

#include <cstdint>
#include <vector>

#include "hyperdet/combinatorics.hpp"

namespace hyperdet {

// Revolving-door (minimal change) enumeration of the t-subsets of [0, n),
// Knuth TAOCP 7.2.1.3 Algorithm R. Consecutive subsets differ by removing one
// element and inserting another, reported by next().
class RevolvingDoor {
 public:
  RevolvingDoor(std::uint32_t n, std::uint32_t t) : n_(n), t_(t), c_(t + 2, 0) {
    for (std::uint32_t j = 1; j <= t_; ++j) c_[j] = j - 1;
    c_[t_ + 1] = n_;
  }

  // The first subset, {0, ..., t-1}.
  std::vector<Vertex> initial() const {
    std::vector<Vertex> out(t_);
    for (std::uint32_t j = 0; j < t_; ++j) out[j] = j;
    return out;
  }

  // Steps to the next subset. Returns false once every subset was visited.
  bool next(Vertex& removed, Vertex& inserted) {
    if (t_ == 0 || t_ >= n_) return false;
    if (t_ == 1) {
      if (c_[1] + 1 >= n_) return false;
      removed = c_[1];
      inserted = ++c_[1];
      return true;
    }
    std::uint32_t j = 2;
    if (t_ % 2 == 1) {
      if (c_[1] + 1 < c_[2]) {
        removed = c_[1];
        inserted = ++c_[1];
        return true;
      }
    } else {
      if (c_[1] > 0) {
        removed = c_[1];
        inserted = --c_[1];
        return true;
      }
      goto increase;
    }
    for (;;) {
      // Try to decrease c_j.
      if (c_[j] >= j) {
        removed = c_[j];
        inserted = j - 2;
        c_[j] = c_[j - 1];
        c_[j - 1] = j - 2;
        return true;
      }
      ++j;
    increase:
      // Try to increase c_j.
      if (c_[j] + 1 < c_[j + 1]) {
        removed = j - 2;
        inserted = c_[j] + 1;
        c_[j - 1] = c_[j];
        c_[j] = c_[j] + 1;
        return true;
      }
      ++j;
      if (j > t_) return false;
    }
  }

 private:
  std::uint32_t n_;
  std::uint32_t t_;
  std::vector<Vertex> c_;  // 1-based, c_[t+1] = n sentinel
};

}  // namespace hyperdet
