// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcert/validation.hpp"

#include <doctest.h>

#include <random>

#include "name_universe.hpp"
#include "test_pki.hpp"

using namespace pcert;
using testpki::make_cert;
using testpki::Options;

namespace {

const Instant t0{1000};

}  // namespace

TEST_CASE("split path at the first non-CA certificate") {
  testpki::SmallPki pki;

  SplitPath two = split_path(pki.chain({pki.ca, pki.ee}));
  CHECK(two.regular.certs.size() == 2);
  CHECK(two.proxy.empty());
  CHECK(two.split_index == 1);

  Certificate p1 = make_cert("s1.example.com", "*.example.com", 10, pki.edge_key, pki.ee_key);
  Certificate p2 = make_cert("s1.example.com", "s1.example.com", 11, pki.edge2_key, pki.edge_key);
  SplitPath four = split_path(pki.chain({pki.ca, pki.ee, p1, p2}));
  CHECK(four.regular.certs.size() == 2);
  CHECK(four.proxy.size() == 2);
  CHECK(four.split_index == 1);

  CHECK_THROWS_AS(split_path(pki.chain({pki.root, pki.ca})), DomainError);
}

TEST_CASE("regular path: minimal chain and failure reasons") {
  testpki::SmallPki pki;

  CHECK(validate_regular(pki.chain({pki.ca, pki.ee}), pki.anchors, t0).accepted);

  SUBCASE("expired leaf") {
    Certificate dead = make_cert("dead.example.com", "ca.test", 4, pki.ee_key, pki.ca_key,
                                 {.not_after = 500});
    ValidationOutcome out = validate_regular(pki.chain({pki.ca, dead}), pki.anchors, t0);
    CHECK_FALSE(out.accepted);
    CHECK(out.reason == ReasonCode::Expired);
  }
  SUBCASE("not yet valid leaf") {
    Certificate later = make_cert("soon.example.com", "ca.test", 5, pki.ee_key, pki.ca_key,
                                  {.not_before = 2000, .not_after = 3000});
    ValidationOutcome out = validate_regular(pki.chain({pki.ca, later}), pki.anchors, t0);
    CHECK(out.reason == ReasonCode::NotYetValid);
  }
  SUBCASE("untrusted anchor") {
    KeyPair rogue = testpki::key("rogue");
    Certificate stray_ca =
        make_cert("ca.test", "root-ca", 6, pki.ca_key, rogue, {.not_after = 10000000, .is_ca = true});
    ValidationOutcome out = validate_regular(pki.chain({stray_ca, pki.ee}), pki.anchors, t0);
    CHECK(out.reason == ReasonCode::UntrustedAnchor);
  }
  SUBCASE("broken intermediate signature") {
    KeyPair rogue = testpki::key("rogue");
    Certificate forged = make_cert("*.example.com", "ca.test", 7, pki.ee_key, rogue);
    ValidationOutcome out = validate_regular(pki.chain({pki.ca, forged}), pki.anchors, t0);
    CHECK(out.reason == ReasonCode::BadSignature);
  }
  SUBCASE("issuer label mismatch") {
    Certificate mislinked = make_cert("x.example.com", "other.test", 8, pki.ee_key, pki.ca_key);
    ValidationOutcome out = validate_regular(pki.chain({pki.ca, mislinked}), pki.anchors, t0);
    CHECK(out.reason == ReasonCode::BadSignature);
  }
  SUBCASE("non-leaf without CA bit") {
    Certificate middle = make_cert("mid.example.com", "ca.test", 9, pki.ee_key, pki.ca_key);
    Certificate leaf = make_cert("leaf.example.com", "mid.example.com", 10, pki.edge_key,
                                 pki.ee_key);
    ValidationOutcome out = validate_regular(pki.chain({pki.ca, middle, leaf}), pki.anchors, t0);
    CHECK(out.reason == ReasonCode::CaBitMissing);
  }
}

TEST_CASE("regular path: path length bounds subsequent CAs") {
  // Hand-checked count: path_len = 0 permits no CA below the one carrying
  // the constraint, so [CA(0), CA2, EE] must fail and [CA(0), EE] must pass.
  testpki::SmallPki pki;
  KeyPair ca2_key = testpki::key("ca2");

  Certificate ca_pl0 = make_cert("ca.test", "root-ca", 2, pki.ca_key, pki.root_key,
                                 {.not_after = 10000000, .is_ca = true, .path_len = 0});
  Certificate ca2 = make_cert("ca2.test", "ca.test", 3, ca2_key, pki.ca_key,
                              {.not_after = 10000000, .is_ca = true});
  Certificate ee = make_cert("www.example.com", "ca2.test", 4, pki.ee_key, ca2_key);

  ValidationOutcome out = validate_regular(pki.chain({ca_pl0, ca2, ee}), pki.anchors, t0);
  CHECK_FALSE(out.accepted);
  CHECK(out.reason == ReasonCode::PathLenExceeded);

  Certificate direct = make_cert("www.example.com", "ca.test", 5, pki.ee_key, pki.ca_key);
  CHECK(validate_regular(pki.chain({ca_pl0, direct}), pki.anchors, t0).accepted);
}

TEST_CASE("regular path: name constraints propagate to successors") {
  testpki::SmallPki pki;
  Certificate ca_nc = make_cert("ca.test", "root-ca", 2, pki.ca_key, pki.root_key,
                                {.not_after = 10000000,
                                 .is_ca = true,
                                 .name_constraints = {".example.com"}});

  Certificate inside = make_cert("host.example.com", "ca.test", 3, pki.ee_key, pki.ca_key);
  CHECK(validate_regular(pki.chain({ca_nc, inside}), pki.anchors, t0).accepted);

  Certificate outside = make_cert("other.com", "ca.test", 4, pki.ee_key, pki.ca_key);
  ValidationOutcome out = validate_regular(pki.chain({ca_nc, outside}), pki.anchors, t0);
  CHECK(out.reason == ReasonCode::NameConstraintViolation);

  // The apex itself is outside a leading-dot constraint.
  Certificate apex = make_cert("example.com", "ca.test", 5, pki.ee_key, pki.ca_key);
  ValidationOutcome apex_out = validate_regular(pki.chain({ca_nc, apex}), pki.anchors, t0);
  CHECK(apex_out.reason == ReasonCode::NameConstraintViolation);
}

TEST_CASE("proxy path: narrowing accepted, escalation rejected") {
  testpki::SmallPki pki;

  SUBCASE("name narrowing") {
    Certificate p1 = make_cert("www.example.com", "*.example.com", 10, pki.edge_key, pki.ee_key);
    ValidationOutcome out = validate_proxy({p1}, pki.ee, t0);
    REQUIRE(out.accepted);
    REQUIRE(out.effective_names.patterns().size() == 1);
    CHECK(out.effective_names.patterns()[0].to_string() == "www.example.com");
    REQUIRE(out.pst_trace.size() == 1);
    CHECK(out.pst_trace[0] == out.effective_names);
  }
  SUBCASE("www cannot mint admin") {
    Certificate p1 = make_cert("www.example.com", "*.example.com", 10, pki.edge_key, pki.ee_key);
    Certificate p2 = make_cert("admin.example.com", "www.example.com", 11, pki.edge2_key,
                               pki.edge_key);
    ValidationOutcome out = validate_proxy({p1, p2}, pki.ee, t0);
    CHECK_FALSE(out.accepted);
    CHECK(out.reason == ReasonCode::NameEscalation);
  }
  SUBCASE("wildcard depth cannot be escaped") {
    Certificate deep = make_cert("bar.foo.example.com", "*.example.com", 10, pki.edge_key,
                                 pki.ee_key);
    ValidationOutcome out = validate_proxy({deep}, pki.ee, t0);
    CHECK(out.reason == ReasonCode::NameEscalation);
  }
  SUBCASE("expired proxy cannot be revived by a longer-lived child") {
    Certificate p1 = make_cert("s1.example.com", "*.example.com", 10, pki.edge_key, pki.ee_key,
                               {.not_after = 500});
    Certificate p2 = make_cert("s1.example.com", "s1.example.com", 11, pki.edge2_key,
                               pki.edge_key, {.not_after = 100000000});
    ValidationOutcome out = validate_proxy({p1, p2}, pki.ee, t0);
    CHECK(out.reason == ReasonCode::Expired);
  }
  SUBCASE("proxy signature must chain from the end-entity key") {
    KeyPair rogue = testpki::key("rogue");
    Certificate p1 = make_cert("s1.example.com", "*.example.com", 10, pki.edge_key, rogue);
    ValidationOutcome out = validate_proxy({p1}, pki.ee, t0);
    CHECK(out.reason == ReasonCode::BadSignature);
  }
  SUBCASE("CA bit is ignored on proxy certificates") {
    Certificate p1 = make_cert("s1.example.com", "*.example.com", 10, pki.edge_key, pki.ee_key,
                               {.is_ca = true});
    ValidationOutcome out = validate_proxy({p1}, pki.ee, t0);
    CHECK(out.accepted);
  }
}

TEST_CASE("proxy path: length restarts at the end entity") {
  testpki::SmallPki pki;
  KeyPair eepl_key = testpki::key("eepl");
  Certificate ee_pl1 = make_cert("*.example.com", "ca.test", 3, eepl_key, pki.ca_key,
                                 {.path_len = 1});
  Certificate p1 = make_cert("s1.example.com", "*.example.com", 10, pki.edge_key, eepl_key);
  Certificate p2 = make_cert("s1.example.com", "s1.example.com", 11, pki.edge2_key, pki.edge_key);

  CHECK(validate_proxy({p1}, ee_pl1, t0).accepted);
  ValidationOutcome out = validate_proxy({p1, p2}, ee_pl1, t0);
  CHECK_FALSE(out.accepted);
  CHECK(out.reason == ReasonCode::ProxyPathLenExceeded);

  // A proxy certificate may carry its own bound on the remaining path.
  Certificate p1_pl0 = make_cert("s1.example.com", "*.example.com", 12, pki.edge_key,
                                 pki.ee_key, {.path_len = 0});
  Certificate p2b = make_cert("s1.example.com", "s1.example.com", 13, pki.edge2_key,
                              pki.edge_key);
  ValidationOutcome own = validate_proxy({p1_pl0, p2b}, pki.ee, t0);
  CHECK(own.reason == ReasonCode::ProxyPathLenExceeded);
}

TEST_CASE("proxy path: permitted set can empty out") {
  testpki::SmallPki pki;
  KeyPair www_key = testpki::key("www");
  Certificate ee_www = make_cert("www.example.com", "ca.test", 3, www_key, pki.ca_key);
  Certificate p1 = make_cert("www.example.com", "www.example.com", 10, pki.edge_key, www_key,
                             {.name_constraints = {".other.com"}});
  ValidationOutcome out = validate_proxy({p1}, ee_www, t0);
  CHECK_FALSE(out.accepted);
  CHECK(out.reason == ReasonCode::EmptyPermittedSet);
}

TEST_CASE("full validation composes split, regular, proxy and target checks") {
  testpki::SmallPki pki;

  SUBCASE("null proxy path with wildcard target") {
    ValidationOutcome out =
        validate(pki.chain({pki.ca, pki.ee}), pki.anchors, t0, DnsName::parse("foo.example.com"));
    CHECK(out.accepted);
    CHECK(out.path_split == 1);
    CHECK(out.pst_trace.empty());
  }
  SUBCASE("wildcard depth fails the target check") {
    ValidationOutcome out = validate(pki.chain({pki.ca, pki.ee}), pki.anchors, t0,
                                     DnsName::parse("bar.foo.example.com"));
    CHECK_FALSE(out.accepted);
    CHECK(out.reason == ReasonCode::TargetNameMismatch);
  }
  SUBCASE("narrowed proxy chain covers exactly the narrowed name") {
    Certificate p1 = make_cert("s1.example.com", "*.example.com", 10, pki.edge_key, pki.ee_key);
    Chain chain = pki.chain({pki.ca, pki.ee, p1});
    ValidationOutcome ok = validate(chain, pki.anchors, t0, DnsName::parse("s1.example.com"));
    REQUIRE(ok.accepted);
    CHECK(ok.effective_names.patterns().size() == 1);
    CHECK(ok.effective_names.patterns()[0].to_string() == "s1.example.com");

    ValidationOutcome other =
        validate(chain, pki.anchors, t0, DnsName::parse("s2.example.com"));
    CHECK(other.reason == ReasonCode::TargetNameMismatch);
  }
  SUBCASE("no end entity") {
    ValidationOutcome out = validate(pki.chain({pki.root, pki.ca}), pki.anchors, t0,
                                     DnsName::parse("foo.example.com"));
    CHECK(out.reason == ReasonCode::NoEndEntity);
  }
}

TEST_CASE("property: accepted proxy chains narrow monotonically") {
  testpki::SmallPki pki;
  Certificate p1 = make_cert("*.example.com", "*.example.com", 10, pki.edge_key, pki.ee_key);
  Certificate p2 = make_cert("foo.example.com", "*.example.com", 11, pki.edge2_key, pki.edge_key);
  Chain chain = pki.chain({pki.ca, pki.ee, p1, p2});

  ValidationOutcome out = validate_path(chain, pki.anchors, t0);
  REQUIRE(out.accepted);
  NameSet previous = union_san_cn(pki.ee);
  for (const NameSet& pst : out.pst_trace) {
    CHECK(pst.subset_of(previous));
    previous = pst;
  }
}

TEST_CASE("property: expiry dominance") {
  testpki::SmallPki pki;
  Certificate p1 = make_cert("s1.example.com", "*.example.com", 10, pki.edge_key, pki.ee_key);
  Chain chain = pki.chain({pki.ca, pki.ee, p1});
  REQUIRE(validate_path(chain, pki.anchors, t0).accepted);

  Instant latest{0};
  for (const Certificate& cert : chain.certs)
    latest = std::max(latest, cert.validity.not_after);
  for (std::uint64_t offset : {0ULL, 1ULL, 1000000ULL, 10000000000ULL}) {
    ValidationOutcome out = validate_path(chain, pki.anchors, latest + offset);
    CHECK_FALSE(out.accepted);
    CHECK(out.reason == ReasonCode::Expired);
  }
}

TEST_CASE("property: null proxy path equals regular validation plus target check") {
  testpki::SmallPki pki;
  Chain chain = pki.chain({pki.ca, pki.ee});
  DnsName target = DnsName::parse("foo.example.com");

  ValidationOutcome whole = validate(chain, pki.anchors, t0, target);
  ValidationOutcome regular = validate_regular(chain, pki.anchors, t0);
  REQUIRE(whole.accepted);
  REQUIRE(regular.accepted);
  CHECK(whole.effective_names == regular.effective_names);
  CHECK(regular.effective_names.member(target));
}

TEST_CASE("property: random chains accepted only with verifiable links") {
  // Generated chains mix valid links, wrong signing keys, expired windows
  // and escalating names; every acceptance is re-checked from primitives.
  testpki::SmallPki pki;
  std::mt19937_64 rng(0xc4a1ab5);
  std::uniform_int_distribution<int> coin(0, 3);
  std::uniform_int_distribution<int> name_pick(0, 2);
  const char* names[] = {"s1.example.com", "*.example.com", "other.com"};

  int accepted = 0;
  for (int round = 0; round < 200; ++round) {
    Chain chain = pki.chain({pki.ca, pki.ee});
    const KeyPair* prev_key = &pki.ee_key;
    std::string prev_label = pki.ee.subject_label();
    std::uniform_int_distribution<int> len(0, 3);
    int proxies = len(rng);
    for (int i = 0; i < proxies; ++i) {
      const KeyPair& subject = i % 2 == 0 ? pki.edge_key : pki.edge2_key;
      Options opt;
      if (coin(rng) == 0) opt.not_after = 500;  // sometimes already expired
      const KeyPair& signer = coin(rng) == 0 ? pki.edge2_key : *prev_key;  // sometimes forged
      std::string cn = names[name_pick(rng)];
      Certificate proxy =
          make_cert(cn, prev_label, 100 + static_cast<std::uint64_t>(round * 4 + i), subject,
                    signer, opt);
      chain.certs.push_back(proxy);
      prev_label = proxy.subject_label();
      prev_key = &subject;
    }

    ValidationOutcome out = validate_path(chain, pki.anchors, t0);
    if (!out.accepted) continue;
    ++accepted;
    for (std::size_t i = 0; i < chain.certs.size(); ++i) {
      const Certificate& cert = chain.certs[i];
      REQUIRE(within_validity(cert, t0));
      if (i == 0) {
        REQUIRE(verify_signature(cert, pki.root.public_key));
      } else {
        REQUIRE(verify_signature(cert, chain.certs[i - 1].public_key));
      }
    }
  }
  CHECK(accepted > 0);  // the generator does produce valid chains
}
