#pragma once

#include <cstdint>

namespace odraw {

// Small-domain pseudo-random permutation on [0, n): a balanced Feistel
// network over the smallest even-bit power-of-two domain covering n, with
// cycle walking back into range.
class Prp {
 public:
  Prp(std::uint64_t key, std::uint64_t n);

  std::uint64_t domain() const noexcept { return n_; }
  std::uint64_t key() const noexcept { return key_; }

  // Throws Error(out_of_range) when x >= domain().
  std::uint64_t operator()(std::uint64_t x) const;

 private:
  std::uint64_t feistel(std::uint64_t x) const;

  std::uint64_t key_;
  std::uint64_t n_;
  unsigned half_bits_;
  std::uint64_t half_mask_;
};

std::uint64_t prp_eval(const Prp& prp, std::uint64_t x);

// Derives independent 64-bit keys from a seed and a stream index.
std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream);

}  // namespace odraw
