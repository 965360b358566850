// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PCERT_CRYPTO_HPP
#define PCERT_CRYPTO_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcert/errors.hpp"

namespace pcert {

/// Closed registry of signature algorithms. Ed25519 is the reference scheme;
/// Ed25519ph is a second, signature-incompatible scheme used wherever two
/// distinct algorithms are needed (e.g. handshake binding of delegated
/// credentials).
enum class SignatureScheme {
  Ed25519,
  Ed25519ph,
};

std::string_view to_string(SignatureScheme scheme);
SignatureScheme scheme_from_string(std::string_view name);  // throws DomainError(UnknownScheme)

struct PublicKey {
  SignatureScheme scheme = SignatureScheme::Ed25519;
  std::vector<std::uint8_t> bytes;

  bool operator==(const PublicKey&) const = default;
};

struct SecretKey {
  SignatureScheme scheme = SignatureScheme::Ed25519;
  std::vector<std::uint8_t> bytes;

  bool operator==(const SecretKey&) const = default;
};

struct KeyPair {
  PublicKey pub;
  SecretKey sec;
};

struct SignatureValue {
  SignatureScheme scheme = SignatureScheme::Ed25519;
  std::vector<std::uint8_t> bytes;

  bool operator==(const SignatureValue&) const = default;
};

using Seed = std::array<std::uint8_t, 32>;

/// Deterministic keypair from a 32-byte seed. Fixture generation relies on
/// this being stable across machines.
KeyPair keypair_from_seed(SignatureScheme scheme, const Seed& seed);

/// Fresh random keypair.
KeyPair generate_keypair(SignatureScheme scheme);

SignatureValue sign_message(const SecretKey& key, std::span<const std::uint8_t> message);

/// False on wrong key, wrong scheme tag, or malformed signature bytes.
bool verify_message(const PublicKey& key, std::span<const std::uint8_t> message,
                    const SignatureValue& signature);

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data);

std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> from_hex(std::string_view hex);  // throws std::invalid_argument

/// Signing capability abstraction. A certificate server talks to a Signer so
/// the end-entity key can live on a device that answers signing requests but
/// never exports the key.
class Signer {
 public:
  virtual ~Signer() = default;
  virtual SignatureScheme scheme() const = 0;
  virtual PublicKey public_key() const = 0;
  /// Throws DomainError(SignerUnavailable) when the backing device is gone.
  virtual SignatureValue sign(std::span<const std::uint8_t> message) const = 0;
};

/// Signer backed by an in-memory key.
class LocalKeySigner : public Signer {
 public:
  explicit LocalKeySigner(KeyPair keypair) : keypair_(std::move(keypair)) {}

  SignatureScheme scheme() const override { return keypair_.sec.scheme; }
  PublicKey public_key() const override { return keypair_.pub; }
  SignatureValue sign(std::span<const std::uint8_t> message) const override;

  /// Models unplugging the signing device; subsequent sign() calls raise
  /// SignerUnavailable.
  void disconnect() { available_ = false; }

 private:
  KeyPair keypair_;
  bool available_ = true;
};

}  // namespace pcert

#endif  // PCERT_CRYPTO_HPP
