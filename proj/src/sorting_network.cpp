#include "odraw/sorting_network.hpp"

#include <map>
#include <mutex>

namespace odraw {

ComparatorSchedule build_schedule(std::size_t n) {
  ComparatorSchedule out;
  for_each_comparator(n, [&](std::size_t lo, std::size_t hi) { out.push_back({lo, hi}); });
  return out;
}

std::size_t schedule_length(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::size_t> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  std::size_t count = 0;
  for_each_comparator(n, [&](std::size_t, std::size_t) { ++count; });
  cache.emplace(n, count);
  return count;
}

}  // namespace odraw
