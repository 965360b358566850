// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PCERT_CERTIFICATE_HPP
#define PCERT_CERTIFICATE_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pcert/crypto.hpp"
#include "pcert/names.hpp"
#include "pcert/time.hpp"

namespace pcert {

enum class KeyUsage {
  DigitalSignature,
  CertSign,
};

std::string_view to_string(KeyUsage usage);
KeyUsage key_usage_from_string(std::string_view name);  // throws std::invalid_argument

enum class ResumptionPolicy {
  Allow,
  Disallow,
  BoundToCredentialExpiry,
};

std::string_view to_string(ResumptionPolicy policy);
ResumptionPolicy resumption_policy_from_string(std::string_view name);

enum class FailureMode {
  HardFail,
  SoftFail,
};

std::string_view to_string(FailureMode mode);
FailureMode failure_mode_from_string(std::string_view name);

struct BasicConstraints {
  bool is_ca = false;
  /// On a CA certificate: bound on subsequent CA certificates (RFC 5280).
  /// On an end-entity or proxy certificate: bound on subsequent proxy
  /// certificates, the count restarting at the end-entity certificate.
  std::optional<std::uint32_t> path_len;

  bool operator==(const BasicConstraints&) const = default;
};

struct Extensions {
  BasicConstraints basic_constraints;
  std::set<KeyUsage> key_usage;
  /// Permitted subtrees only; entries must be Subtree patterns and the set
  /// must be non-universal.
  std::optional<NameSet> name_constraints;
  std::vector<NamePattern> subject_alt_names;
  bool delegation_usage = false;
  std::optional<ResumptionPolicy> resumption_policy;
  std::optional<FailureMode> failure_mode;
  bool logged = false;

  bool operator==(const Extensions&) const = default;
};

/// Semantic certificate. The subject common name is a DNS name pattern
/// restricted to Exact or Wildcard; its textual form doubles as the
/// certificate's subject label for chain linkage.
struct Certificate {
  NamePattern subject_common_name;
  std::string issuer;
  std::uint64_t serial = 0;
  ValidityPeriod validity;
  PublicKey public_key;
  Extensions extensions;
  SignatureScheme signature_scheme = SignatureScheme::Ed25519;
  SignatureValue signature;

  std::string subject_label() const { return subject_common_name.to_string(); }
  bool is_ca() const { return extensions.basic_constraints.is_ca; }

  bool operator==(const Certificate&) const = default;
};

/// Deterministic byte form of every field except the signature: UTF-8 JSON
/// with lexicographically sorted keys, no insignificant whitespace, base-10
/// integers, order-significant lists. Equal values encode to equal bytes.
std::vector<std::uint8_t> canonical_encode(const Certificate& cert);

/// Signs the TBS portion with the issuer key. Throws
/// DomainError(SchemeMismatch) when the key's scheme differs from the
/// certificate's declared signature scheme.
Certificate sign_certificate(Certificate tbs, const KeyPair& issuer_key);
Certificate sign_certificate(Certificate tbs, const Signer& signer);

/// True iff the signature verifies over canonical_encode under |issuer_pk|.
bool verify_signature(const Certificate& cert, const PublicKey& issuer_pk);

/// Half-open: not_before <= t < not_after.
bool within_validity(const Certificate& cert, Instant t);

/// SAN union CN as a normalized name set (the per-certificate term of the
/// permitted-subtrees recurrence).
NameSet union_san_cn(const Certificate& cert);

/// SHA-256 of the canonical TBS encoding.
std::array<std::uint8_t, 32> tbs_fingerprint(const Certificate& cert);

}  // namespace pcert

#endif  // PCERT_CERTIFICATE_HPP
