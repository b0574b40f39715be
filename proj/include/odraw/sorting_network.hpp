#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace odraw {

struct Comparator {
  std::size_t lo;
  std::size_t hi;
  friend bool operator==(const Comparator&, const Comparator&) = default;
};

using ComparatorSchedule = std::vector<Comparator>;

// Batcher odd-even merge sort. For n that is not a power of two the network
// of the next power of two is used with every comparator that touches a
// padding slot dropped; padding slots hold +inf so those comparators never
// swap, and the result is the same as sorting the padded array.
template <typename Fn>
void for_each_comparator(std::size_t n, Fn&& fn) {
  for (std::size_t p = 1; p < n; p <<= 1) {
    for (std::size_t k = p; k >= 1; k >>= 1) {
      for (std::size_t j = k % p; j + k < n; j += 2 * k) {
        const std::size_t limit = std::min(k, n - j - k);
        for (std::size_t i = 0; i < limit; ++i) {
          if ((i + j) / (2 * p) == (i + j + k) / (2 * p)) fn(i + j, i + j + k);
        }
      }
    }
  }
}

ComparatorSchedule build_schedule(std::size_t n);

std::size_t schedule_length(std::size_t n);

}  // namespace odraw
