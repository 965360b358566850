// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcert/fixtures.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "pcert/delegated.hpp"
#include "pcert/documents.hpp"
#include "pcert/errors.hpp"
#include "pcert/issuance.hpp"
#include "pcert/validation.hpp"

namespace pcert {

namespace {

// Fixture timeline (seconds since the simulated epoch).
constexpr std::uint64_t kRootNotAfter = 400000000;   // ~12.7 years
constexpr std::uint64_t kCaNotAfter = 40000000;      // ~1.27 years
constexpr std::uint64_t kEeNotAfter = 2592000;       // 30 days
constexpr std::uint64_t kProbeTime = 1000;

struct CertBuilder {
  std::string cn;
  std::string issuer;
  std::uint64_t serial = 0;
  std::uint64_t not_before = 0;
  std::uint64_t not_after = 0;
  PublicKey public_key;
  bool is_ca = false;
  std::optional<std::uint32_t> path_len;
  std::vector<std::string> sans;
  std::vector<std::string> name_constraints;
  bool delegation_usage = false;
  std::set<KeyUsage> key_usage;
  std::optional<ResumptionPolicy> resumption_policy;

  Certificate sign_with(const KeyPair& issuer_key) const {
    Extensions ext;
    ext.basic_constraints.is_ca = is_ca;
    ext.basic_constraints.path_len = path_len;
    ext.key_usage = key_usage;
    if (is_ca) ext.key_usage.insert(KeyUsage::CertSign);
    if (!name_constraints.empty()) {
      std::vector<NamePattern> nc;
      for (const std::string& p : name_constraints) nc.push_back(NamePattern::parse(p));
      ext.name_constraints = NameSet::of(std::move(nc));
    }
    for (const std::string& s : sans) ext.subject_alt_names.push_back(NamePattern::parse(s));
    ext.delegation_usage = delegation_usage;
    ext.resumption_policy = resumption_policy;
    ext.logged = is_ca;  // only the CA-issued part of the corpus is logged

    Certificate tbs{
        NamePattern::parse(cn),
        issuer,
        serial,
        ValidityPeriod(Instant{not_before}, Instant{not_after}),
        public_key,
        std::move(ext),
        issuer_key.sec.scheme,
        SignatureValue{},
    };
    return sign_certificate(std::move(tbs), issuer_key);
  }
};

struct Expectation {
  std::string name;
  std::string chain;   // path relative to the fixture root
  std::uint64_t at;
  std::string target;
  std::string expected;  // "ACCEPT" or a reason code
};

}  // namespace

KeyPair fixture_keypair(std::uint64_t seed, std::string_view label, SignatureScheme scheme) {
  std::string material = "pcert-fixture/" + std::string(label) + "/" + std::to_string(seed);
  std::vector<std::uint8_t> bytes(material.begin(), material.end());
  Seed expanded = sha256(bytes);
  return keypair_from_seed(scheme, expanded);
}

void generate_fixtures(const FixtureSpec& spec, const std::filesystem::path& out) {
  bool chains = false, credentials = false, scripts = false;
  for (const std::string& shape : spec.shapes) {
    if (shape == "chains") chains = true;
    else if (shape == "credentials") credentials = true;
    else if (shape == "scripts") scripts = true;
    else throw DomainError(ReasonCode::MalformedSpec, "unknown shape '" + shape + "'");
  }
  if (spec.shapes.empty())
    throw DomainError(ReasonCode::MalformedSpec, "no shapes requested");

  auto key = [&](std::string_view label) { return fixture_keypair(spec.seed, label); };

  // Roles used across shape groups.
  KeyPair root_key = key("root");
  KeyPair ca_key = key("ca");
  KeyPair ee_wild_key = key("ee-wildcard");
  KeyPair ee_www_key = key("ee-www");
  KeyPair edge1_key = key("edge1");
  KeyPair edge2_key = key("edge2");

  std::map<std::string, KeyPair> keys = {
      {"root", root_key},       {"ca", ca_key},
      {"ee-wildcard", ee_wild_key}, {"ee-www", ee_www_key},
      {"edge1", edge1_key},     {"edge2", edge2_key},
  };

  // Self-signed trust anchor.
  Certificate root = CertBuilder{.cn = "root-ca",
                                 .issuer = "root-ca",
                                 .serial = 1,
                                 .not_after = kRootNotAfter,
                                 .public_key = root_key.pub,
                                 .is_ca = true}
                         .sign_with(root_key);
  save_certificate(root, out / "anchors/root.pcert");

  Certificate ca = CertBuilder{.cn = "ca.test",
                               .issuer = "root-ca",
                               .serial = 2,
                               .not_after = kCaNotAfter,
                               .public_key = ca_key.pub,
                               .is_ca = true}
                       .sign_with(root_key);

  Certificate ee_wild = CertBuilder{.cn = "*.example.com",
                                    .issuer = "ca.test",
                                    .serial = 10,
                                    .not_after = kEeNotAfter,
                                    .public_key = ee_wild_key.pub}
                            .sign_with(ca_key);
  Certificate ee_www = CertBuilder{.cn = "www.example.com",
                                   .issuer = "ca.test",
                                   .serial = 11,
                                   .not_after = kEeNotAfter,
                                   .public_key = ee_www_key.pub}
                           .sign_with(ca_key);

  for (const auto& [label, kp] : keys) save_keypair(kp, out / ("keys/" + label + ".pkey"));
  save_certificate(ca, out / "certs/ca.pcert");
  save_certificate(ee_wild, out / "certs/ee-wildcard.pcert");
  save_certificate(ee_www, out / "certs/ee-www.pcert");

  auto chain_of = [](std::initializer_list<Certificate> certs) {
    Chain chain;
    chain.certs.assign(certs);
    return chain;
  };

  // The short-lived proxy (one-hour window) is shared between the chains
  // corpus and the resumption scripts.
  Certificate p_short = CertBuilder{.cn = "s1.example.com",
                                    .issuer = "*.example.com",
                                    .serial = 30,
                                    .not_after = 3600,
                                    .public_key = edge1_key.pub}
                            .sign_with(ee_wild_key);
  save_chain(chain_of({ca, ee_wild, p_short}), out / "chains/short_proxy.pcert");

  Certificate p_short_noresume = CertBuilder{.cn = "s1.example.com",
                                             .issuer = "*.example.com",
                                             .serial = 31,
                                             .not_after = 3600,
                                             .public_key = edge1_key.pub,
                                             .resumption_policy = ResumptionPolicy::Disallow}
                                     .sign_with(ee_wild_key);
  save_chain(chain_of({ca, ee_wild, p_short_noresume}), out / "chains/short_proxy_disallow.pcert");

  save_chain(chain_of({ca, ee_wild}), out / "chains/regular_wildcard.pcert");

  if (chains) {
    KeyPair ca2_key = key("ca2");
    KeyPair ca_nc_key = key("ca-nc");
    KeyPair ca_pl0_key = key("ca-pl0");
    KeyPair other_root_key = key("other-root");
    KeyPair other_ca_key = key("other-ca");
    KeyPair ee_misc_key = key("ee-misc");
    KeyPair wrong_key = key("wrong");

    std::vector<Expectation> expect;
    auto emit = [&](const std::string& name, const Chain& chain, std::uint64_t at,
                    const std::string& target, const std::string& expected) {
      std::string rel = "chains/" + name + ".pcert";
      save_chain(chain, out / rel);
      expect.push_back({name, rel, at, target, expected});
    };

    // --- accepted shapes ---
    emit("regular_ee", chain_of({ca, ee_www}), kProbeTime, "www.example.com", "ACCEPT");
    emit("regular_wildcard_match", chain_of({ca, ee_wild}), kProbeTime, "foo.example.com",
         "ACCEPT");

    Certificate ca_nc = CertBuilder{.cn = "ca-nc.test",
                                    .issuer = "root-ca",
                                    .serial = 3,
                                    .not_after = kCaNotAfter,
                                    .public_key = ca_nc_key.pub,
                                    .is_ca = true,
                                    .name_constraints = {".example.com"}}
                            .sign_with(root_key);
    Certificate ee_host = CertBuilder{.cn = "host.example.com",
                                      .issuer = "ca-nc.test",
                                      .serial = 12,
                                      .not_after = kEeNotAfter,
                                      .public_key = ee_misc_key.pub}
                              .sign_with(ca_nc_key);
    emit("nc_chain", chain_of({ca_nc, ee_host}), kProbeTime, "host.example.com", "ACCEPT");

    Certificate p_s1 = CertBuilder{.cn = "s1.example.com",
                                   .issuer = "*.example.com",
                                   .serial = 32,
                                   .not_after = kEeNotAfter,
                                   .public_key = edge1_key.pub}
                           .sign_with(ee_wild_key);
    emit("proxy_narrow", chain_of({ca, ee_wild, p_s1}), kProbeTime, "s1.example.com", "ACCEPT");

    Certificate p_www_eq = CertBuilder{.cn = "www.example.com",
                                       .issuer = "www.example.com",
                                       .serial = 33,
                                       .not_after = kEeNotAfter,
                                       .public_key = edge1_key.pub}
                               .sign_with(ee_www_key);
    emit("proxy_equal_names", chain_of({ca, ee_www, p_www_eq}), kProbeTime, "www.example.com",
         "ACCEPT");

    Certificate p_wild = CertBuilder{.cn = "*.example.com",
                                     .issuer = "*.example.com",
                                     .serial = 34,
                                     .not_after = kEeNotAfter,
                                     .public_key = edge1_key.pub}
                             .sign_with(ee_wild_key);
    Certificate p_foo = CertBuilder{.cn = "foo.example.com",
                                    .issuer = "*.example.com",
                                    .serial = 35,
                                    .not_after = kEeNotAfter,
                                    .public_key = edge2_key.pub}
                            .sign_with(edge1_key);
    emit("proxy_two_level", chain_of({ca, ee_wild, p_wild, p_foo}), kProbeTime,
         "foo.example.com", "ACCEPT");

    emit("short_proxy_live", chain_of({ca, ee_wild, p_short}), kProbeTime, "s1.example.com",
         "ACCEPT");

    Certificate p_own_nc = CertBuilder{.cn = "s1.example.com",
                                       .issuer = "*.example.com",
                                       .serial = 36,
                                       .not_after = kEeNotAfter,
                                       .public_key = edge1_key.pub,
                                       .name_constraints = {".example.com"}}
                               .sign_with(ee_wild_key);
    emit("proxy_own_nc", chain_of({ca, ee_wild, p_own_nc}), kProbeTime, "s1.example.com",
         "ACCEPT");

    // --- name escalation (www -> admin) ---
    Certificate p_www = CertBuilder{.cn = "www.example.com",
                                    .issuer = "*.example.com",
                                    .serial = 37,
                                    .not_after = kEeNotAfter,
                                    .public_key = edge1_key.pub}
                            .sign_with(ee_wild_key);
    Certificate p_admin = CertBuilder{.cn = "admin.example.com",
                                      .issuer = "www.example.com",
                                      .serial = 38,
                                      .not_after = kEeNotAfter,
                                      .public_key = edge2_key.pub}
                              .sign_with(edge1_key);
    emit("escalate_admin", chain_of({ca, ee_wild, p_www, p_admin}), kProbeTime,
         "admin.example.com", "NameEscalation");

    // --- wildcard depth: *.example.com covers foo but not bar.foo ---
    Certificate p_depth = CertBuilder{.cn = "bar.foo.example.com",
                                      .issuer = "*.example.com",
                                      .serial = 39,
                                      .not_after = kEeNotAfter,
                                      .public_key = edge1_key.pub}
                              .sign_with(ee_wild_key);
    emit("wildcard_depth", chain_of({ca, ee_wild, p_depth}), kProbeTime, "bar.foo.example.com",
         "NameEscalation");
    emit("wildcard_depth_target", chain_of({ca, ee_wild}), kProbeTime, "bar.foo.example.com",
         "TargetNameMismatch");

    // --- deferred expiry: a dead mid-chain proxy cannot be revived by a
    // longer-lived child ---
    Certificate p_dies = CertBuilder{.cn = "s1.example.com",
                                     .issuer = "*.example.com",
                                     .serial = 40,
                                     .not_after = kProbeTime,
                                     .public_key = edge1_key.pub}
                             .sign_with(ee_wild_key);
    Certificate p_revive = CertBuilder{.cn = "s1.example.com",
                                       .issuer = "s1.example.com",
                                       .serial = 41,
                                       .not_after = kRootNotAfter,
                                       .public_key = edge2_key.pub}
                               .sign_with(edge1_key);
    Chain deferred = chain_of({ca, ee_wild, p_dies, p_revive});
    emit("deferred_expiry_before", deferred, 500, "s1.example.com", "ACCEPT");
    emit("deferred_expiry", deferred, 2000, "s1.example.com", "Expired");
    emit("deferred_expiry_later", deferred, 5000000, "s1.example.com", "Expired");
    emit("deferred_expiry_much_later", deferred, 10000000000ULL, "s1.example.com", "Expired");

    // --- plain validity failures ---
    Certificate ee_dead = CertBuilder{.cn = "dead.example.com",
                                      .issuer = "ca.test",
                                      .serial = 13,
                                      .not_after = 500,
                                      .public_key = ee_misc_key.pub}
                              .sign_with(ca_key);
    emit("ee_expired", chain_of({ca, ee_dead}), kProbeTime, "dead.example.com", "Expired");

    Certificate ee_future = CertBuilder{.cn = "future.example.com",
                                        .issuer = "ca.test",
                                        .serial = 14,
                                        .not_before = 5000,
                                        .not_after = kEeNotAfter,
                                        .public_key = ee_misc_key.pub}
                                .sign_with(ca_key);
    emit("ee_not_yet_valid", chain_of({ca, ee_future}), kProbeTime, "future.example.com",
         "NotYetValid");

    // --- signature and anchoring failures ---
    Certificate ee_forged = CertBuilder{.cn = "forged.example.com",
                                        .issuer = "ca.test",
                                        .serial = 15,
                                        .not_after = kEeNotAfter,
                                        .public_key = ee_misc_key.pub}
                                .sign_with(wrong_key);
    emit("bad_signature", chain_of({ca, ee_forged}), kProbeTime, "forged.example.com",
         "BadSignature");

    Certificate other_root = CertBuilder{.cn = "other-root",
                                         .issuer = "other-root",
                                         .serial = 4,
                                         .not_after = kRootNotAfter,
                                         .public_key = other_root_key.pub,
                                         .is_ca = true}
                                 .sign_with(other_root_key);
    Certificate other_ca = CertBuilder{.cn = "other-ca.test",
                                       .issuer = "other-root",
                                       .serial = 5,
                                       .not_after = kCaNotAfter,
                                       .public_key = other_ca_key.pub,
                                       .is_ca = true}
                               .sign_with(other_root_key);
    Certificate ee_stray = CertBuilder{.cn = "stray.example.com",
                                       .issuer = "other-ca.test",
                                       .serial = 16,
                                       .not_after = kEeNotAfter,
                                       .public_key = ee_misc_key.pub}
                               .sign_with(other_ca_key);
    emit("untrusted_anchor", chain_of({other_ca, ee_stray}), kProbeTime, "stray.example.com",
         "UntrustedAnchor");
    save_certificate(other_root, out / "certs/other-root.pcert");

    Certificate p_forged = CertBuilder{.cn = "s1.example.com",
                                       .issuer = "*.example.com",
                                       .serial = 42,
                                       .not_after = kEeNotAfter,
                                       .public_key = edge1_key.pub}
                               .sign_with(wrong_key);
    emit("proxy_bad_signature", chain_of({ca, ee_wild, p_forged}), kProbeTime, "s1.example.com",
         "BadSignature");

    // --- degenerate path: no end-entity certificate ---
    Certificate ca2 = CertBuilder{.cn = "ca2.test",
                                  .issuer = "ca.test",
                                  .serial = 6,
                                  .not_after = kCaNotAfter,
                                  .public_key = ca2_key.pub,
                                  .is_ca = true}
                          .sign_with(ca_key);
    emit("no_end_entity", chain_of({ca, ca2}), kProbeTime, "www.example.com", "NoEndEntity");

    // --- path length, regular: path_len=0 forbids a subordinate CA ---
    Certificate ca_pl0 = CertBuilder{.cn = "ca-pl0.test",
                                     .issuer = "root-ca",
                                     .serial = 7,
                                     .not_after = kCaNotAfter,
                                     .public_key = ca_pl0_key.pub,
                                     .is_ca = true,
                                     .path_len = 0}
                             .sign_with(root_key);
    Certificate ca_sub = CertBuilder{.cn = "ca-sub.test",
                                     .issuer = "ca-pl0.test",
                                     .serial = 8,
                                     .not_after = kCaNotAfter,
                                     .public_key = ca2_key.pub,
                                     .is_ca = true}
                             .sign_with(ca_pl0_key);
    Certificate ee_deep = CertBuilder{.cn = "deep.example.com",
                                      .issuer = "ca-sub.test",
                                      .serial = 17,
                                      .not_after = kEeNotAfter,
                                      .public_key = ee_misc_key.pub}
                              .sign_with(ca2_key);
    emit("pathlen_regular", chain_of({ca_pl0, ca_sub, ee_deep}), kProbeTime,
         "deep.example.com", "PathLenExceeded");

    // --- path length, proxy: the count restarts at the end entity ---
    Certificate ee_pl1 = CertBuilder{.cn = "*.example.com",
                                     .issuer = "ca.test",
                                     .serial = 18,
                                     .not_after = kEeNotAfter,
                                     .public_key = ee_wild_key.pub,
                                     .path_len = 1}
                             .sign_with(ca_key);
    Certificate pl_p1 = CertBuilder{.cn = "s1.example.com",
                                    .issuer = "*.example.com",
                                    .serial = 43,
                                    .not_after = kEeNotAfter,
                                    .public_key = edge1_key.pub}
                            .sign_with(ee_wild_key);
    Certificate pl_p2 = CertBuilder{.cn = "s1.example.com",
                                    .issuer = "s1.example.com",
                                    .serial = 44,
                                    .not_after = kEeNotAfter,
                                    .public_key = edge2_key.pub}
                            .sign_with(edge1_key);
    emit("pathlen_proxy", chain_of({ca, ee_pl1, pl_p1, pl_p2}), kProbeTime, "s1.example.com",
         "ProxyPathLenExceeded");
    emit("pathlen_proxy_ok", chain_of({ca, ee_pl1, pl_p1}), kProbeTime, "s1.example.com",
         "ACCEPT");

    // --- name constraints in the regular path ---
    Certificate ee_outside = CertBuilder{.cn = "other.com",
                                         .issuer = "ca-nc.test",
                                         .serial = 19,
                                         .not_after = kEeNotAfter,
                                         .public_key = ee_misc_key.pub}
                                 .sign_with(ca_nc_key);
    emit("nc_violation", chain_of({ca_nc, ee_outside}), kProbeTime, "other.com",
         "NameConstraintViolation");

    // --- a proxy whose own constraints leave nothing permitted ---
    Certificate p_empty = CertBuilder{.cn = "www.example.com",
                                      .issuer = "www.example.com",
                                      .serial = 45,
                                      .not_after = kEeNotAfter,
                                      .public_key = edge1_key.pub,
                                      .name_constraints = {".other.com"}}
                              .sign_with(ee_www_key);
    emit("empty_permitted_set", chain_of({ca, ee_www, p_empty}), kProbeTime, "www.example.com",
         "EmptyPermittedSet");

    std::string manifest = "# name\tchain\tat\ttarget\texpected\n";
    for (const Expectation& e : expect) {
      manifest += e.name + "\t" + e.chain + "\t" + std::to_string(e.at) + "\t" + e.target +
                  "\t" + e.expected + "\n";
    }
    write_text_file(out / "expectations.tsv", manifest);
  }

  if (credentials) {
    KeyPair ee_dc_key = key("ee-dc");
    KeyPair dc_key = key("dc");
    Certificate ee_dc = CertBuilder{.cn = "dc.example.com",
                                    .issuer = "ca.test",
                                    .serial = 20,
                                    .not_after = kEeNotAfter,
                                    .public_key = ee_dc_key.pub,
                                    .delegation_usage = true,
                                    .key_usage = {KeyUsage::DigitalSignature}}
                            .sign_with(ca_key);
    save_certificate(ee_dc, out / "certs/ee-dc.pcert");
    save_chain(chain_of({ca, ee_dc}), out / "chains/regular_dc.pcert");
    save_keypair(ee_dc_key, out / "keys/ee-dc.pkey");
    save_keypair(dc_key, out / "keys/dc.pkey");
    save_public_key(dc_key.pub, out / "keys/dc.pub.pkey");

    LocalKeySigner signer(ee_dc_key);
    DelegatedCredential dc = issue_dc(ee_dc, signer, dc_key.pub, 3 * kSecondsPerDay,
                                      SignatureScheme::Ed25519, Instant{0});
    save_dc(dc, ee_dc, out / "dc/dc-ok.pdc");
  }

  if (scripts) {
    KeyPair s1_key = key("s1-edge");
    save_keypair(s1_key, out / "keys/s1-edge.pkey");
    ProxyCsr csr;
    csr.public_key = s1_key.pub;
    csr.requested_names = NameSet::single(NamePattern::parse("s1.example.com"));
    save_csr(csr, out / "csr/s1.pcsr");

    // The indefinite-chaining attack: one-hour credential, resumptions on
    // days 6, 12 and 18, each inside the previous PSK's seven-day window.
    auto chaining_script = [](std::string_view policy) {
      std::string s;
      s += "ANCHOR ../anchors/root.pcert\n";
      s += "BEHAVIOR malicious-chainer\n";
      s += "AT 0 HANDSHAKE ../chains/short_proxy.pcert POLICY " + std::string(policy) + "\n";
      s += "AT 518400 RESUME\n";
      s += "AT 1036800 RESUME\n";
      s += "AT 1555200 RESUME\n";
      return s;
    };
    write_text_file(out / "scripts/chaining_allow.script", chaining_script("allow"));
    write_text_file(out / "scripts/chaining_bound.script", chaining_script("bound"));
    write_text_file(out / "scripts/chaining_disallow.script", chaining_script("disallow"));

    // Same attack against a proxy certificate whose resumption policy says
    // no; the browser must not weaken the domain policy.
    std::string cert_policy;
    cert_policy += "ANCHOR ../anchors/root.pcert\n";
    cert_policy += "BEHAVIOR malicious-chainer\n";
    cert_policy += "AT 0 HANDSHAKE ../chains/short_proxy_disallow.pcert POLICY allow\n";
    cert_policy += "AT 518400 RESUME\n";
    cert_policy += "AT 1036800 RESUME\n";
    write_text_file(out / "scripts/chaining_cert_disallow.script", cert_policy);

    // Lease lifecycle: hourly reissuance with 90-minute windows, terminated
    // after two certificates; the delegation dies with the last window.
    std::string lease;
    lease += "ANCHOR ../anchors/root.pcert\n";
    lease += "SERVER PARENT ../chains/regular_wildcard.pcert KEY ../keys/ee-wildcard.pkey "
             "CSR ../csr/s1.pcsr START 0 PERIOD 3600 VALIDITY 5400\n";
    lease += "AT 0 TICK\n";
    lease += "AT 0 HANDSHAKE @server POLICY allow\n";
    lease += "AT 3600 TICK\n";
    lease += "AT 3600 HANDSHAKE @server POLICY allow\n";
    lease += "AT 7200 TERMINATE-LEASE\n";
    lease += "AT 7200 TICK\n";
    lease += "AT 9001 HANDSHAKE @server POLICY allow\n";
    write_text_file(out / "scripts/lease.script", lease);
  }
}

}  // namespace pcert
