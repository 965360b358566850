// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcert/delegated.hpp"

#include <doctest.h>

#include <random>

#include "test_pki.hpp"

using namespace pcert;
using testpki::make_cert;

namespace {

struct DcPki {
  testpki::SmallPki base;
  KeyPair ee_key = testpki::key("dc-ee");
  KeyPair dc_key = testpki::key("dc-leaf");
  Certificate ee = make_cert("dc.example.com", "ca.test", 20, ee_key, base.ca_key,
                             {.not_after = 5000000,
                              .delegation_usage = true,
                              .digital_signature = true});
  LocalKeySigner signer{ee_key};
};

}  // namespace

TEST_CASE("issue and validate round trip") {
  DcPki pki;
  DelegatedCredential dc = issue_dc(pki.ee, pki.signer, pki.dc_key.pub, 3 * kSecondsPerDay,
                                    SignatureScheme::Ed25519, Instant{1000});
  CHECK(dc.relative_ttl == 1000 + 3 * kSecondsPerDay);
  DcOutcome out = validate_dc(dc, pki.ee, Instant{1000}, SignatureScheme::Ed25519);
  CHECK(out.accepted);
}

TEST_CASE("seven-day ceiling at issuance") {
  DcPki pki;
  CHECK_NOTHROW(issue_dc(pki.ee, pki.signer, pki.dc_key.pub, 7 * kSecondsPerDay,
                         SignatureScheme::Ed25519, Instant{0}));
  try {
    issue_dc(pki.ee, pki.signer, pki.dc_key.pub, 7 * kSecondsPerDay + 1,
             SignatureScheme::Ed25519, Instant{0});
    FAIL("expected TtlTooLong");
  } catch (const DomainError& e) {
    CHECK(e.code() == ReasonCode::TtlTooLong);
  }
}

TEST_CASE("extension conditions checked at issuance") {
  DcPki pki;
  Certificate no_du = make_cert("dc.example.com", "ca.test", 21, pki.ee_key, pki.base.ca_key,
                                {.not_after = 5000000, .digital_signature = true});
  try {
    issue_dc(no_du, pki.signer, pki.dc_key.pub, 1000, SignatureScheme::Ed25519, Instant{0});
    FAIL("expected MissingDelegationUsage");
  } catch (const DomainError& e) {
    CHECK(e.code() == ReasonCode::MissingDelegationUsage);
  }

  Certificate no_ds = make_cert("dc.example.com", "ca.test", 22, pki.ee_key, pki.base.ca_key,
                                {.not_after = 5000000, .delegation_usage = true});
  try {
    issue_dc(no_ds, pki.signer, pki.dc_key.pub, 1000, SignatureScheme::Ed25519, Instant{0});
    FAIL("expected MissingDigitalSignatureBit");
  } catch (const DomainError& e) {
    CHECK(e.code() == ReasonCode::MissingDigitalSignatureBit);
  }

  try {
    issue_dc(pki.ee, pki.signer, pki.dc_key.pub, 1000, SignatureScheme::Ed25519,
             Instant{5000000});
    FAIL("expected EeExpired");
  } catch (const DomainError& e) {
    CHECK(e.code() == ReasonCode::EeExpired);
  }
}

TEST_CASE("extension conditions checked again at validation") {
  DcPki pki;
  DelegatedCredential dc = issue_dc(pki.ee, pki.signer, pki.dc_key.pub, kSecondsPerDay,
                                    SignatureScheme::Ed25519, Instant{0});

  // The same credential presented with certificates lacking the extensions:
  // the fingerprint also breaks, but the extension checks fire first.
  Certificate no_du = make_cert("dc.example.com", "ca.test", 23, pki.ee_key, pki.base.ca_key,
                                {.not_after = 5000000, .digital_signature = true});
  CHECK(validate_dc(dc, no_du, Instant{0}, SignatureScheme::Ed25519).reason ==
        ReasonCode::MissingDelegationUsage);

  Certificate no_ds = make_cert("dc.example.com", "ca.test", 24, pki.ee_key, pki.base.ca_key,
                                {.not_after = 5000000, .delegation_usage = true});
  CHECK(validate_dc(dc, no_ds, Instant{0}, SignatureScheme::Ed25519).reason ==
        ReasonCode::MissingDigitalSignatureBit);
}

TEST_CASE("credential window is half-open and bounded") {
  DcPki pki;
  DelegatedCredential dc = issue_dc(pki.ee, pki.signer, pki.dc_key.pub, 2 * kSecondsPerDay,
                                    SignatureScheme::Ed25519, Instant{0});
  Instant expiry = dc_expiry(dc, pki.ee);
  CHECK(expiry.seconds == 2 * kSecondsPerDay);

  CHECK(validate_dc(dc, pki.ee, Instant{expiry.seconds - 1}, SignatureScheme::Ed25519).accepted);
  CHECK(validate_dc(dc, pki.ee, expiry, SignatureScheme::Ed25519).reason ==
        ReasonCode::DcExpired);
}

TEST_CASE("handshake scheme binding") {
  DcPki pki;
  DelegatedCredential dc = issue_dc(pki.ee, pki.signer, pki.dc_key.pub, kSecondsPerDay,
                                    SignatureScheme::Ed25519ph, Instant{0});
  CHECK(validate_dc(dc, pki.ee, Instant{0}, SignatureScheme::Ed25519ph).accepted);
  CHECK(validate_dc(dc, pki.ee, Instant{0}, SignatureScheme::Ed25519).reason ==
        ReasonCode::SchemeMismatch);
}

TEST_CASE("an over-long credential is rejected even if the issuer skipped the check") {
  DcPki pki;
  // Forge a credential with a 30-day accepted window by signing the binding
  // directly, bypassing issue_dc.
  DelegatedCredential dc;
  dc.public_key = pki.dc_key.pub;
  dc.relative_ttl = 30 * kSecondsPerDay;
  dc.handshake_scheme = SignatureScheme::Ed25519;
  dc.signature = sign_message(pki.ee_key.sec, dc_binding_encode(pki.ee, dc));

  // Early in the window more than 7 days of lifetime remain.
  CHECK(validate_dc(dc, pki.ee, Instant{0}, SignatureScheme::Ed25519).reason ==
        ReasonCode::DcLifetimeTooLong);
  // Close to expiry the remaining lifetime is compliant again.
  Instant late{30 * kSecondsPerDay - 100};
  CHECK(validate_dc(dc, pki.ee, late, SignatureScheme::Ed25519).accepted);
}

TEST_CASE("property: accepted window never exceeds seven days") {
  DcPki pki;
  std::mt19937_64 rng(0xdc0001);
  std::uniform_int_distribution<std::uint64_t> now_dist(0, 4000000);
  std::uniform_int_distribution<std::uint64_t> ttl_dist(1, 7 * kSecondsPerDay);
  for (int round = 0; round < 50; ++round) {
    Instant now{now_dist(rng)};
    DelegatedCredential dc = issue_dc(pki.ee, pki.signer, pki.dc_key.pub, ttl_dist(rng),
                                      SignatureScheme::Ed25519, now);
    Instant expiry = dc_expiry(dc, pki.ee);
    // Nothing validates at or past the relative window's end.
    CHECK_FALSE(validate_dc(dc, pki.ee, expiry, SignatureScheme::Ed25519).accepted);
    // Find the earliest accepted instant; the accepted window is capped.
    Instant earliest = expiry;
    for (std::uint64_t probe :
         {std::uint64_t{0}, now.seconds, expiry.seconds > 7 * kSecondsPerDay
                                             ? expiry.seconds - 7 * kSecondsPerDay
                                             : 0}) {
      if (validate_dc(dc, pki.ee, Instant{probe}, SignatureScheme::Ed25519).accepted)
        earliest = std::min(earliest, Instant{probe});
    }
    if (earliest < expiry)
      CHECK(expiry.seconds - earliest.seconds <= 7 * kSecondsPerDay);
  }
}

TEST_CASE("property: credentials are not transferable") {
  DcPki pki;
  std::mt19937_64 rng(0xdc0002);
  std::uniform_int_distribution<std::uint64_t> serial(100, 1000000);

  DelegatedCredential dc = issue_dc(pki.ee, pki.signer, pki.dc_key.pub, kSecondsPerDay,
                                    SignatureScheme::Ed25519, Instant{0});
  for (int round = 0; round < 100; ++round) {
    // Same subject, same key, same extensions; only the serial differs. The
    // fingerprint binding must still reject it.
    Certificate other = make_cert("dc.example.com", "ca.test", serial(rng), pki.ee_key,
                                  pki.base.ca_key,
                                  {.not_after = 5000000,
                                   .delegation_usage = true,
                                   .digital_signature = true});
    DcOutcome out = validate_dc(dc, other, Instant{0}, SignatureScheme::Ed25519);
    REQUIRE_FALSE(out.accepted);
    REQUIRE(out.reason == ReasonCode::BadDcSignature);
  }
}

TEST_CASE("negotiation gate") {
  CHECK(negotiate(true, true) == NegotiationResult::DcCredential);
  CHECK(negotiate(false, true) == NegotiationResult::FullChainOnly);
  CHECK(negotiate(true, false) == NegotiationResult::FullChainOnly);
  CHECK(negotiate(false, false) == NegotiationResult::FullChainOnly);
}
