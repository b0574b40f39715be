#include "odraw/prp.hpp"

#include <bit>
#include <string>

#include "odraw/error.hpp"

namespace odraw {
namespace {

constexpr int kRounds = 6;

std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

}  // namespace

std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream) {
  return mix(mix(seed ^ 0x5851f42d4c957f2dULL) + stream * 0x9e3779b97f4a7c15ULL + 1);
}

Prp::Prp(std::uint64_t key, std::uint64_t n) : key_(key), n_(n) {
  if (n == 0) throw Error(Errc::out_of_range, "permutation domain must be non-empty");
  unsigned bits = n <= 1 ? 0 : static_cast<unsigned>(std::bit_width(n - 1));
  if (bits < 2) bits = 2;
  if (bits % 2 != 0) ++bits;
  half_bits_ = bits / 2;
  half_mask_ = (std::uint64_t{1} << half_bits_) - 1;
}

std::uint64_t Prp::feistel(std::uint64_t x) const {
  std::uint64_t left = x >> half_bits_;
  std::uint64_t right = x & half_mask_;
  for (int r = 0; r < kRounds; ++r) {
    const std::uint64_t f = mix(key_ ^ (static_cast<std::uint64_t>(r) << 56) ^ right) & half_mask_;
    const std::uint64_t next = left ^ f;
    left = right;
    right = next;
  }
  return (left << half_bits_) | right;
}

std::uint64_t Prp::operator()(std::uint64_t x) const {
  if (x >= n_) {
    throw Error(Errc::out_of_range,
                "permutation input " + std::to_string(x) + " outside [0, " + std::to_string(n_) + ")");
  }
  std::uint64_t y = feistel(x);
  while (y >= n_) y = feistel(y);
  return y;
}

std::uint64_t prp_eval(const Prp& prp, std::uint64_t x) { return prp(x); }

}  // namespace odraw
