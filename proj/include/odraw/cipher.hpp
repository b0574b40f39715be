#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include "odraw/record.hpp"

namespace odraw {

using Rng = std::mt19937_64;

enum class CipherKind {
  mask,    // fast simulation cipher: nonce-keyed stream mask plus keyed checksum
  sodium,  // XChaCha20-Poly1305 AEAD
};

// Probabilistic authenticated cipher over fixed-length plaintexts. Sealing the
// same plaintext twice yields different bytes; open() rejects any cell it did
// not produce under the same key.
class Cipher {
 public:
  virtual ~Cipher() = default;

  // Bytes added on top of the plaintext (nonce and tag).
  virtual std::size_t overhead() const noexcept = 0;

  // `cell` must have size plain.size() + overhead().
  virtual void seal(std::span<const std::uint8_t> plain, std::span<std::uint8_t> cell,
                    Rng& rng) const = 0;

  // Throws Error(authentication) on truncation, tampering or key mismatch.
  virtual void open(std::span<const std::uint8_t> cell, std::span<std::uint8_t> plain) const = 0;
};

std::unique_ptr<Cipher> make_cipher(CipherKind kind, std::uint64_t key_seed);

struct SealedCell {
  std::vector<std::uint8_t> bytes;
  friend bool operator==(const SealedCell&, const SealedCell&) = default;
};

// Serializes records into fixed-width plaintext and seals them. The width is
// fixed per codec, so every cell it produces has the same byte length.
class CellCodec {
 public:
  CellCodec(const Cipher& cipher, std::size_t record_words);

  std::size_t record_words() const noexcept { return record_words_; }
  std::size_t plain_bytes() const noexcept { return (record_words_ + kHeaderWords) * 8; }
  std::size_t cell_bytes() const noexcept { return plain_bytes() + cipher_->overhead(); }

  // `envelope_key` rides alongside the record (used for shuffle positions).
  void seal_into(const Record& record, std::int64_t envelope_key, std::span<std::uint8_t> cell,
                 Rng& rng) const;
  Record open_from(std::span<const std::uint8_t> cell, std::int64_t* envelope_key = nullptr) const;

  SealedCell seal(const Record& record, Rng& rng) const;
  Record open(const SealedCell& cell) const;

 private:
  static constexpr std::size_t kHeaderWords = 3;
  const Cipher* cipher_;
  std::size_t record_words_;
};

}  // namespace odraw
