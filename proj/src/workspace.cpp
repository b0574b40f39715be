#include "odraw/workspace.hpp"

#include <algorithm>
#include <string>

#include "odraw/error.hpp"

namespace odraw {

void Workspace::charge(std::size_t words) {
  if (in_use_ + words > capacity_) {
    throw Error(Errc::capacity, "workspace overflow: " + std::to_string(in_use_ + words) +
                                    " words requested, capacity " + std::to_string(capacity_));
  }
  in_use_ += words;
  peak_ = std::max(peak_, in_use_);
  round_peak_ = std::max(round_peak_, in_use_);
}

void Workspace::release(std::size_t words) noexcept {
  in_use_ = words > in_use_ ? 0 : in_use_ - words;
}

}  // namespace odraw
