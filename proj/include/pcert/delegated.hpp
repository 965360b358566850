// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PCERT_DELEGATED_HPP
#define PCERT_DELEGATED_HPP

#include <cstdint>

#include "pcert/certificate.hpp"
#include "pcert/errors.hpp"

namespace pcert {

/// Hard ceiling on delegated-credential lifetime: 7 days.
constexpr std::uint64_t kMaxDcLifetimeSeconds = 7 * kSecondsPerDay;

/// Stripped-down delegation structure: a public key, a validity time
/// relative to the end-entity certificate's notBefore, the signature
/// algorithm bound to the handshake, and the signature itself.
struct DelegatedCredential {
  PublicKey public_key;
  std::uint64_t relative_ttl = 0;  // seconds from ee not_before; window end = not_before + ttl
  SignatureScheme handshake_scheme = SignatureScheme::Ed25519;
  SignatureValue signature;

  bool operator==(const DelegatedCredential&) const = default;
};

/// Signed byte layout: the end-entity certificate's TBS fingerprint plus all
/// credential fields except the signature. The fingerprint pins the
/// credential to its issuing certificate, so it cannot be replayed against
/// another one.
std::vector<std::uint8_t> dc_binding_encode(const Certificate& ee, const DelegatedCredential& dc);

/// Mints a credential under the end-entity key. Requires the
/// DelegationUsage extension, the digitalSignature key-usage bit, a ttl of
/// at most 7 days, and |now| inside the certificate's validity.
DelegatedCredential issue_dc(const Certificate& ee, const Signer& ee_signer,
                             const PublicKey& dc_public_key, std::uint64_t ttl_from_now,
                             SignatureScheme handshake_scheme, Instant now);

struct DcOutcome {
  bool accepted = false;
  ReasonCode reason = ReasonCode::None;
};

/// Accepts iff (1) |t| falls inside [ee.not_before, ee.not_before +
/// relative_ttl) and the credential's remaining lifetime at |t| is at most 7
/// days, (2) the handshake scheme matches the one bound into the credential,
/// and (3) the end-entity certificate carries DelegationUsage and the
/// digitalSignature bit and its key verifies the credential signature.
DcOutcome validate_dc(const DelegatedCredential& dc, const Certificate& ee, Instant t,
                      SignatureScheme handshake_scheme);

Instant dc_expiry(const DelegatedCredential& dc, const Certificate& ee);

enum class NegotiationResult {
  DcCredential,
  FullChainOnly,
};

/// ClientHello gate: a server presents a delegated credential only to a
/// client that advertised the extension, and only when it has one.
NegotiationResult negotiate(bool client_sent_dc_extension, bool server_has_dc);

}  // namespace pcert

#endif  // PCERT_DELEGATED_HPP
