// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcert/crypto.hpp"

#include <sodium.h>

#include <mutex>
#include <stdexcept>

namespace pcert {

namespace {

void ensure_sodium() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (sodium_init() < 0)
      throw std::runtime_error("libsodium initialization failed");
  });
}

}  // namespace

std::string_view to_string(SignatureScheme scheme) {
  switch (scheme) {
    case SignatureScheme::Ed25519: return "ed25519";
    case SignatureScheme::Ed25519ph: return "ed25519ph";
  }
  return "ed25519";
}

SignatureScheme scheme_from_string(std::string_view name) {
  if (name == "ed25519") return SignatureScheme::Ed25519;
  if (name == "ed25519ph") return SignatureScheme::Ed25519ph;
  throw DomainError(ReasonCode::UnknownScheme, std::string(name));
}

KeyPair keypair_from_seed(SignatureScheme scheme, const Seed& seed) {
  ensure_sodium();
  KeyPair kp;
  kp.pub.scheme = scheme;
  kp.sec.scheme = scheme;
  kp.pub.bytes.resize(crypto_sign_PUBLICKEYBYTES);
  kp.sec.bytes.resize(crypto_sign_SECRETKEYBYTES);
  // Both registered schemes use Ed25519 key material; they differ in the
  // signing construction, so signatures are not interchangeable.
  crypto_sign_seed_keypair(kp.pub.bytes.data(), kp.sec.bytes.data(), seed.data());
  return kp;
}

KeyPair generate_keypair(SignatureScheme scheme) {
  ensure_sodium();
  Seed seed;
  randombytes_buf(seed.data(), seed.size());
  return keypair_from_seed(scheme, seed);
}

SignatureValue sign_message(const SecretKey& key, std::span<const std::uint8_t> message) {
  ensure_sodium();
  if (key.bytes.size() != crypto_sign_SECRETKEYBYTES)
    throw std::invalid_argument("sign_message: malformed secret key");
  SignatureValue sig;
  sig.scheme = key.scheme;
  sig.bytes.resize(crypto_sign_BYTES);
  switch (key.scheme) {
    case SignatureScheme::Ed25519:
      crypto_sign_detached(sig.bytes.data(), nullptr, message.data(), message.size(),
                           key.bytes.data());
      break;
    case SignatureScheme::Ed25519ph: {
      crypto_sign_ed25519ph_state state;
      crypto_sign_ed25519ph_init(&state);
      crypto_sign_ed25519ph_update(&state, message.data(), message.size());
      crypto_sign_ed25519ph_final_create(&state, sig.bytes.data(), nullptr, key.bytes.data());
      break;
    }
  }
  return sig;
}

bool verify_message(const PublicKey& key, std::span<const std::uint8_t> message,
                    const SignatureValue& signature) {
  ensure_sodium();
  if (key.scheme != signature.scheme) return false;
  if (key.bytes.size() != crypto_sign_PUBLICKEYBYTES) return false;
  if (signature.bytes.size() != crypto_sign_BYTES) return false;
  switch (key.scheme) {
    case SignatureScheme::Ed25519:
      return crypto_sign_verify_detached(signature.bytes.data(), message.data(), message.size(),
                                         key.bytes.data()) == 0;
    case SignatureScheme::Ed25519ph: {
      crypto_sign_ed25519ph_state state;
      crypto_sign_ed25519ph_init(&state);
      crypto_sign_ed25519ph_update(&state, message.data(), message.size());
      return crypto_sign_ed25519ph_final_verify(&state, signature.bytes.data(),
                                                key.bytes.data()) == 0;
    }
  }
  return false;
}

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data) {
  ensure_sodium();
  std::array<std::uint8_t, 32> digest{};
  crypto_hash_sha256(digest.data(), data.data(), data.size());
  return digest;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0x0f]);
  }
  return out;
}

std::vector<std::uint8_t> from_hex(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (hex.size() % 2 != 0) throw std::invalid_argument("from_hex: odd-length input");
  std::vector<std::uint8_t> out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = nibble(hex[i]);
    int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) throw std::invalid_argument("from_hex: non-hex character");
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

SignatureValue LocalKeySigner::sign(std::span<const std::uint8_t> message) const {
  if (!available_) throw DomainError(ReasonCode::SignerUnavailable);
  return sign_message(keypair_.sec, message);
}

}  // namespace pcert
