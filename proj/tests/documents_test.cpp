// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcert/documents.hpp"

#include <doctest.h>

#include <filesystem>

#include "test_pki.hpp"

using namespace pcert;
using testpki::make_cert;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "pcert-doc-tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("certificate documents round-trip exactly") {
  testpki::SmallPki pki;
  Certificate rich = make_cert("www.example.com", "ca.test", 77, pki.ee_key, pki.ca_key,
                               {.not_before = 5,
                                .not_after = 99999,
                                .path_len = 2,
                                .sans = {"a.example.com", "*.b.example.com"},
                                .name_constraints = {".example.com"},
                                .delegation_usage = true,
                                .digital_signature = true,
                                .resumption_policy = ResumptionPolicy::Disallow});

  for (const Certificate& cert : {pki.root, pki.ca, pki.ee, rich}) {
    std::string doc = certificate_to_document(cert);
    Certificate back = certificate_from_document(doc);
    CHECK(back == cert);
    // Re-serialization is byte-stable.
    CHECK(certificate_to_document(back) == doc);
  }
}

TEST_CASE("chain files keep order and concatenate") {
  testpki::SmallPki pki;
  Chain chain = pki.chain({pki.ca, pki.ee});
  auto path = temp_file("chain.pcert");
  save_chain(chain, path);
  Chain back = load_chain(path);
  REQUIRE(back.certs.size() == 2);
  CHECK(back.certs[0] == pki.ca);
  CHECK(back.certs[1] == pki.ee);

  // A single-document file loads as a one-cert chain and as a certificate.
  auto single = temp_file("single.pcert");
  save_certificate(pki.root, single);
  CHECK(load_certificate(single) == pki.root);
  CHECK_THROWS(load_certificate(path));  // two documents is not a certificate
}

TEST_CASE("anchor loading from a file or a directory") {
  testpki::SmallPki pki;
  auto dir = std::filesystem::temp_directory_path() / "pcert-doc-tests/anchors";
  std::filesystem::remove_all(dir);
  save_certificate(pki.root, dir / "b-root.pcert");
  save_certificate(pki.ca, dir / "a-ca.pcert");

  std::vector<Certificate> anchors = load_anchors(dir);
  REQUIRE(anchors.size() == 2);
  CHECK(anchors[0] == pki.ca);  // directory order is sorted by filename
  CHECK(anchors[1] == pki.root);

  CHECK(load_anchors(dir / "b-root.pcert").size() == 1);
}

TEST_CASE("keypair and public key documents") {
  KeyPair kp = testpki::key("doc-key");
  auto path = temp_file("key.pkey");
  save_keypair(kp, path);
  KeyPair back = load_keypair(path);
  CHECK(back.pub == kp.pub);
  CHECK(back.sec == kp.sec);
  CHECK(load_public_key(path) == kp.pub);

  auto pub_path = temp_file("key.pub.pkey");
  save_public_key(kp.pub, pub_path);
  CHECK(load_public_key(pub_path) == kp.pub);
  CHECK_THROWS(load_keypair(pub_path));  // no secret half present
}

TEST_CASE("csr documents") {
  KeyPair kp = testpki::key("csr-key");
  ProxyCsr csr;
  csr.public_key = kp.pub;
  csr.requested_names = NameSet::of({NamePattern::parse("s1.example.com"),
                                     NamePattern::parse("*.cdn.example.com")});
  csr.path_len = 0;
  csr.resumption_policy = ResumptionPolicy::BoundToCredentialExpiry;
  csr.failure_mode = FailureMode::HardFail;

  auto path = temp_file("req.pcsr");
  save_csr(csr, path);
  ProxyCsr back = load_csr(path);
  CHECK(back.public_key == csr.public_key);
  CHECK(back.requested_names == csr.requested_names);
  CHECK(back.path_len == csr.path_len);
  CHECK(back.resumption_policy == csr.resumption_policy);
  CHECK(back.failure_mode == csr.failure_mode);
}

TEST_CASE("delegated credential documents") {
  testpki::SmallPki pki;
  KeyPair ee_key = testpki::key("dc-ee");
  KeyPair dc_key = testpki::key("dc-leaf");
  Certificate ee = make_cert("dc.example.com", "ca.test", 20, ee_key, pki.ca_key,
                             {.not_after = 5000000,
                              .delegation_usage = true,
                              .digital_signature = true});
  LocalKeySigner signer(ee_key);
  DelegatedCredential dc =
      issue_dc(ee, signer, dc_key.pub, kSecondsPerDay, SignatureScheme::Ed25519, Instant{0});

  auto path = temp_file("cred.pdc");
  save_dc(dc, ee, path);
  DelegatedCredential back = load_dc(path);
  CHECK(back == dc);
  CHECK(validate_dc(back, ee, Instant{0}, SignatureScheme::Ed25519).accepted);
}

TEST_CASE("malformed documents are rejected") {
  auto path = temp_file("garbage.pcert");
  write_text_file(path, "not json\n");
  CHECK_THROWS(load_chain(path));

  write_text_file(path, "{\"tbs\":{}}\n");
  CHECK_THROWS(load_chain(path));

  // Name constraints must use the leading-dot spelling.
  testpki::SmallPki pki;
  std::string doc = certificate_to_document(pki.ca);
  auto pos = doc.find("\"extensions\":{");
  std::string patched = doc;
  patched.insert(pos + 14, "\"name_constraints\":[\"example.com\"],");
  CHECK_THROWS_AS(certificate_from_document(patched), std::invalid_argument);

  CHECK_THROWS(load_chain(temp_file("missing.pcert")));
}
