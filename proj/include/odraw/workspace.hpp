#pragma once

#include <cstddef>

namespace odraw {

// Client-private working storage, accounted in abstract words.
class Workspace {
 public:
  explicit Workspace(std::size_t capacity) : capacity_(capacity) {}

  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t in_use() const noexcept { return in_use_; }
  std::size_t peak() const noexcept { return peak_; }
  std::size_t round_peak() const noexcept { return round_peak_; }

  // Throws Error(capacity) if the charge would exceed capacity.
  void charge(std::size_t words);
  void release(std::size_t words) noexcept;
  void reset_round_peak() noexcept { round_peak_ = in_use_; }

  // RAII charge for program state held across a round.
  class Lease {
   public:
    Lease(Workspace& ws, std::size_t words) : ws_(&ws), words_(words) { ws.charge(words); }
    Lease(const Lease&) = delete;
    Lease& operator=(const Lease&) = delete;
    ~Lease() { ws_->release(words_); }

   private:
    Workspace* ws_;
    std::size_t words_;
  };

  Lease lease(std::size_t words) { return Lease(*this, words); }

 private:
  std::size_t capacity_;
  std::size_t in_use_ = 0;
  std::size_t peak_ = 0;
  std::size_t round_peak_ = 0;
};

}  // namespace odraw
