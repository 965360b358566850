// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcert/delegated.hpp"

#include <json.hpp>

#include "json_codec.hpp"

namespace pcert {

using nlohmann::json;

std::vector<std::uint8_t> dc_binding_encode(const Certificate& ee, const DelegatedCredential& dc) {
  auto fp = tbs_fingerprint(ee);
  json binding;
  binding["ee_fingerprint"] = to_hex(fp);
  binding["handshake_scheme"] = std::string(to_string(dc.handshake_scheme));
  binding["public_key"] = codec::public_key_to_json(dc.public_key);
  binding["relative_ttl"] = dc.relative_ttl;
  std::string text = binding.dump();
  return {text.begin(), text.end()};
}

DelegatedCredential issue_dc(const Certificate& ee, const Signer& ee_signer,
                             const PublicKey& dc_public_key, std::uint64_t ttl_from_now,
                             SignatureScheme handshake_scheme, Instant now) {
  if (!ee.extensions.delegation_usage)
    throw DomainError(ReasonCode::MissingDelegationUsage);
  if (!ee.extensions.key_usage.contains(KeyUsage::DigitalSignature))
    throw DomainError(ReasonCode::MissingDigitalSignatureBit);
  if (ttl_from_now > kMaxDcLifetimeSeconds)
    throw DomainError(ReasonCode::TtlTooLong);
  if (!within_validity(ee, now))
    throw DomainError(ReasonCode::EeExpired);

  DelegatedCredential dc;
  dc.public_key = dc_public_key;
  dc.relative_ttl = (now + ttl_from_now).seconds - ee.validity.not_before.seconds;
  dc.handshake_scheme = handshake_scheme;
  dc.signature = ee_signer.sign(dc_binding_encode(ee, dc));
  return dc;
}

Instant dc_expiry(const DelegatedCredential& dc, const Certificate& ee) {
  return ee.validity.not_before + dc.relative_ttl;
}

DcOutcome validate_dc(const DelegatedCredential& dc, const Certificate& ee, Instant t,
                      SignatureScheme handshake_scheme) {
  const Instant expiry = dc_expiry(dc, ee);

  if (t < ee.validity.not_before || t >= expiry)
    return {false, ReasonCode::DcExpired};
  // The window during which the credential can be accepted must never exceed
  // 7 days: remaining lifetime at validation time is capped, so an issuer
  // that skipped the issuance-side check gains nothing.
  if (expiry.seconds - t.seconds > kMaxDcLifetimeSeconds)
    return {false, ReasonCode::DcLifetimeTooLong};
  if (handshake_scheme != dc.handshake_scheme)
    return {false, ReasonCode::SchemeMismatch};
  if (!ee.extensions.delegation_usage)
    return {false, ReasonCode::MissingDelegationUsage};
  if (!ee.extensions.key_usage.contains(KeyUsage::DigitalSignature))
    return {false, ReasonCode::MissingDigitalSignatureBit};
  if (!verify_message(ee.public_key, dc_binding_encode(ee, dc), dc.signature))
    return {false, ReasonCode::BadDcSignature};

  return {true, ReasonCode::None};
}

NegotiationResult negotiate(bool client_sent_dc_extension, bool server_has_dc) {
  if (client_sent_dc_extension && server_has_dc) return NegotiationResult::DcCredential;
  return NegotiationResult::FullChainOnly;
}

}  // namespace pcert
