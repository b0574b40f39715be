#include "odraw/cipher.hpp"

#include <sodium.h>

#include <array>
#include <cstring>
#include <mutex>

namespace odraw {
namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t load64(const std::uint8_t* p) {
  std::uint64_t v;
  std::memcpy(&v, p, 8);
  return v;
}

void store64(std::uint8_t* p, std::uint64_t v) { std::memcpy(p, &v, 8); }

void fill_random(std::span<std::uint8_t> out, Rng& rng) {
  std::size_t i = 0;
  for (; i + 8 <= out.size(); i += 8) store64(out.data() + i, rng());
  while (i < out.size()) {
    std::uint64_t r = rng();
    for (int b = 0; b < 8 && i < out.size(); ++b, ++i) {
      out[i] = static_cast<std::uint8_t>(r >> (8 * b));
    }
  }
}

// Not a cryptographic primitive: a keyed stream mask with a keyed checksum.
// It models the interface (fresh nonce per seal, deterministic rejection of
// foreign or damaged cells) at a fraction of the cost of a real AEAD.
class MaskCipher final : public Cipher {
 public:
  explicit MaskCipher(std::uint64_t key) : key_(splitmix(key ^ 0x6d61736b63697068ULL)) {}

  std::size_t overhead() const noexcept override { return kNonce + kTag; }

  void seal(std::span<const std::uint8_t> plain, std::span<std::uint8_t> cell,
            Rng& rng) const override {
    const std::uint64_t nonce = rng();
    store64(cell.data(), nonce);
    const std::uint64_t second = splitmix(nonce);
    store64(cell.data() + 8, second);
    Lanes h = start(nonce, second, plain.size());
    std::uint64_t stream = stream_seed(nonce);
    const std::uint8_t* in = plain.data();
    std::uint8_t* out = cell.data() + kNonce;
    const std::size_t words = plain.size() / 8;
    std::uint64_t h0 = h[0], h1 = h[1], h2 = h[2], h3 = h[3];
    std::size_t i = 0;
    for (; i + 4 <= words; i += 4) {
      const std::uint64_t c0 = load64(in + 8 * i) ^ mix(stream + kGolden);
      const std::uint64_t c1 = load64(in + 8 * i + 8) ^ mix(stream + 2 * kGolden);
      const std::uint64_t c2 = load64(in + 8 * i + 16) ^ mix(stream + 3 * kGolden);
      const std::uint64_t c3 = load64(in + 8 * i + 24) ^ mix(stream + 4 * kGolden);
      stream += 4 * kGolden;
      store64(out + 8 * i, c0);
      store64(out + 8 * i + 8, c1);
      store64(out + 8 * i + 16, c2);
      store64(out + 8 * i + 24, c3);
      h0 = (h0 + c0) * kMul;
      h1 = (h1 + c1) * kMul;
      h2 = (h2 + c2) * kMul;
      h3 = (h3 + c3) * kMul;
    }
    h = {h0, h1, h2, h3};
    for (; i < words; ++i) {
      stream += kGolden;
      const std::uint64_t c = load64(in + 8 * i) ^ mix(stream);
      store64(out + 8 * i, c);
      h[i & 3] = (h[i & 3] + c) * kMul;
    }
    for (std::size_t i = words * 8; i < plain.size(); ++i) {
      out[i] = in[i] ^ static_cast<std::uint8_t>(mix(stream + kGolden) >> (8 * (i & 7)));
      h[0] = (h[0] + out[i]) * kMul;
    }
    auto tag = finish(h);
    store64(out + plain.size(), tag[0]);
    store64(out + plain.size() + 8, tag[1]);
  }

  void open(std::span<const std::uint8_t> cell, std::span<std::uint8_t> plain) const override {
    if (cell.size() != plain.size() + overhead()) {
      throw Error(Errc::authentication, "sealed cell has wrong length");
    }
    const std::uint64_t nonce = load64(cell.data());
    Lanes h = start(nonce, load64(cell.data() + 8), plain.size());
    std::uint64_t stream = stream_seed(nonce);
    const std::uint8_t* in = cell.data() + kNonce;
    std::uint8_t* out = plain.data();
    const std::size_t words = plain.size() / 8;
    std::uint64_t h0 = h[0], h1 = h[1], h2 = h[2], h3 = h[3];
    std::size_t i = 0;
    for (; i + 4 <= words; i += 4) {
      const std::uint64_t c0 = load64(in + 8 * i);
      const std::uint64_t c1 = load64(in + 8 * i + 8);
      const std::uint64_t c2 = load64(in + 8 * i + 16);
      const std::uint64_t c3 = load64(in + 8 * i + 24);
      store64(out + 8 * i, c0 ^ mix(stream + kGolden));
      store64(out + 8 * i + 8, c1 ^ mix(stream + 2 * kGolden));
      store64(out + 8 * i + 16, c2 ^ mix(stream + 3 * kGolden));
      store64(out + 8 * i + 24, c3 ^ mix(stream + 4 * kGolden));
      stream += 4 * kGolden;
      h0 = (h0 + c0) * kMul;
      h1 = (h1 + c1) * kMul;
      h2 = (h2 + c2) * kMul;
      h3 = (h3 + c3) * kMul;
    }
    h = {h0, h1, h2, h3};
    for (; i < words; ++i) {
      stream += kGolden;
      const std::uint64_t c = load64(in + 8 * i);
      store64(out + 8 * i, c ^ mix(stream));
      h[i & 3] = (h[i & 3] + c) * kMul;
    }
    for (std::size_t i = words * 8; i < plain.size(); ++i) {
      out[i] = in[i] ^ static_cast<std::uint8_t>(mix(stream + kGolden) >> (8 * (i & 7)));
      h[0] = (h[0] + in[i]) * kMul;
    }
    auto tag = finish(h);
    const std::uint8_t* stored = in + plain.size();
    if (load64(stored) != tag[0] || load64(stored + 8) != tag[1]) {
      throw Error(Errc::authentication, "sealed cell failed authentication");
    }
  }

 private:
  using Lanes = std::array<std::uint64_t, 4>;
  static constexpr std::size_t kNonce = 16;
  static constexpr std::size_t kTag = 16;
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kMul = 0xbf58476d1ce4e5b9ULL;

  std::uint64_t stream_seed(std::uint64_t nonce) const { return splitmix(key_ ^ nonce); }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 32)) * 0xd6e8feb86659fd93ULL;
    return z ^ (z >> 32);
  }

  // The second nonce word is derived from the first; both are covered by the tag.
  Lanes start(std::uint64_t nonce, std::uint64_t second, std::size_t len) const {
    Lanes h = {key_ ^ len, key_ + kGolden, ~key_, key_ * 0x9fb21c651e98df25ULL};
    h[0] = (h[0] + nonce) * kMul;
    h[1] = (h[1] + second) * kMul;
    return h;
  }

  std::array<std::uint64_t, 2> finish(const Lanes& h) const {
    const std::uint64_t a = splitmix(h[0] ^ splitmix(h[1]));
    const std::uint64_t b = splitmix(h[2] ^ splitmix(h[3] ^ a));
    return {a, b};
  }

  std::uint64_t key_;
};

class SodiumCipher final : public Cipher {
 public:
  explicit SodiumCipher(std::uint64_t key_seed) {
    static std::once_flag init;
    std::call_once(init, [] {
      if (sodium_init() < 0) throw Error(Errc::authentication, "libsodium failed to initialize");
    });
    std::array<std::uint8_t, 8> seed_bytes{};
    store64(seed_bytes.data(), key_seed);
    crypto_generichash(key_.data(), key_.size(), seed_bytes.data(), seed_bytes.size(), nullptr, 0);
  }

  std::size_t overhead() const noexcept override { return kNonce + kTag; }

  void seal(std::span<const std::uint8_t> plain, std::span<std::uint8_t> cell,
            Rng& rng) const override {
    fill_random(cell.subspan(0, kNonce), rng);
    unsigned long long out_len = 0;
    crypto_aead_xchacha20poly1305_ietf_encrypt(cell.data() + kNonce, &out_len, plain.data(),
                                               plain.size(), nullptr, 0, nullptr, cell.data(),
                                               key_.data());
  }

  void open(std::span<const std::uint8_t> cell, std::span<std::uint8_t> plain) const override {
    if (cell.size() != plain.size() + overhead()) {
      throw Error(Errc::authentication, "sealed cell has wrong length");
    }
    unsigned long long out_len = 0;
    if (crypto_aead_xchacha20poly1305_ietf_decrypt(plain.data(), &out_len, nullptr,
                                                   cell.data() + kNonce, cell.size() - kNonce,
                                                   nullptr, 0, cell.data(), key_.data()) != 0) {
      throw Error(Errc::authentication, "sealed cell failed authentication");
    }
  }

 private:
  static constexpr std::size_t kNonce = crypto_aead_xchacha20poly1305_ietf_NPUBBYTES;
  static constexpr std::size_t kTag = crypto_aead_xchacha20poly1305_ietf_ABYTES;
  std::array<std::uint8_t, crypto_aead_xchacha20poly1305_ietf_KEYBYTES> key_{};
};

}  // namespace

std::unique_ptr<Cipher> make_cipher(CipherKind kind, std::uint64_t key_seed) {
  switch (kind) {
    case CipherKind::mask: return std::make_unique<MaskCipher>(key_seed);
    case CipherKind::sodium: return std::make_unique<SodiumCipher>(key_seed);
  }
  throw Error(Errc::key, "unknown cipher kind");
}

CellCodec::CellCodec(const Cipher& cipher, std::size_t record_words)
    : cipher_(&cipher), record_words_(record_words) {
  if (record_words_ == 0 || record_words_ > kMaxRecordWords) {
    throw Error(Errc::serialization, "record width must be in [1, kMaxRecordWords]");
  }
}

void CellCodec::seal_into(const Record& record, std::int64_t envelope_key,
                          std::span<std::uint8_t> cell, Rng& rng) const {
  if (record.size > record_words_) {
    throw Error(Errc::serialization, "record of " + std::to_string(record.size) +
                                         " words exceeds configured width " +
                                         std::to_string(record_words_));
  }
  std::array<std::uint8_t, (kMaxRecordWords + kHeaderWords) * 8> plain;
  store64(plain.data(), static_cast<std::uint64_t>(envelope_key));
  store64(plain.data() + 8, static_cast<std::uint64_t>(record.kind));
  store64(plain.data() + 16, (static_cast<std::uint64_t>(record.logical) << 32) | record.size);
  std::memcpy(plain.data() + 24, record.words.data(), record.size * 8);
  std::memset(plain.data() + 24 + record.size * 8, 0, (record_words_ - record.size) * 8);
  cipher_->seal(std::span<const std::uint8_t>(plain.data(), plain_bytes()), cell, rng);
}

Record CellCodec::open_from(std::span<const std::uint8_t> cell, std::int64_t* envelope_key) const {
  std::array<std::uint8_t, (kMaxRecordWords + kHeaderWords) * 8> plain;
  cipher_->open(cell, std::span<std::uint8_t>(plain.data(), plain_bytes()));
  Record r;
  if (envelope_key) *envelope_key = static_cast<std::int64_t>(load64(plain.data()));
  r.kind = static_cast<RecordKind>(load64(plain.data() + 8));
  const std::uint64_t sizes = load64(plain.data() + 16);
  r.size = static_cast<std::uint32_t>(sizes & 0xffffffffU);
  r.logical = static_cast<std::uint32_t>(sizes >> 32);
  if (r.size > record_words_) throw Error(Errc::serialization, "corrupt record header");
  std::memcpy(r.words.data(), plain.data() + 24, r.size * 8);
  return r;
}

SealedCell CellCodec::seal(const Record& record, Rng& rng) const {
  SealedCell cell;
  cell.bytes.resize(cell_bytes());
  seal_into(record, 0, cell.bytes, rng);
  return cell;
}

Record CellCodec::open(const SealedCell& cell) const { return open_from(cell.bytes); }

}  // namespace odraw
