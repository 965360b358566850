// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcert/certificate.hpp"

#include <algorithm>
#include <stdexcept>

#include "json_codec.hpp"

namespace pcert {

using nlohmann::json;

std::string_view to_string(KeyUsage usage) {
  switch (usage) {
    case KeyUsage::DigitalSignature: return "digital-signature";
    case KeyUsage::CertSign: return "cert-sign";
  }
  return "digital-signature";
}

KeyUsage key_usage_from_string(std::string_view name) {
  if (name == "digital-signature") return KeyUsage::DigitalSignature;
  if (name == "cert-sign") return KeyUsage::CertSign;
  throw std::invalid_argument("unknown key usage '" + std::string(name) + "'");
}

std::string_view to_string(ResumptionPolicy policy) {
  switch (policy) {
    case ResumptionPolicy::Allow: return "allow";
    case ResumptionPolicy::Disallow: return "disallow";
    case ResumptionPolicy::BoundToCredentialExpiry: return "bound";
  }
  return "allow";
}

ResumptionPolicy resumption_policy_from_string(std::string_view name) {
  if (name == "allow") return ResumptionPolicy::Allow;
  if (name == "disallow") return ResumptionPolicy::Disallow;
  if (name == "bound") return ResumptionPolicy::BoundToCredentialExpiry;
  throw std::invalid_argument("unknown resumption policy '" + std::string(name) + "'");
}

std::string_view to_string(FailureMode mode) {
  switch (mode) {
    case FailureMode::HardFail: return "hard-fail";
    case FailureMode::SoftFail: return "soft-fail";
  }
  return "hard-fail";
}

FailureMode failure_mode_from_string(std::string_view name) {
  if (name == "hard-fail") return FailureMode::HardFail;
  if (name == "soft-fail") return FailureMode::SoftFail;
  throw std::invalid_argument("unknown failure mode '" + std::string(name) + "'");
}

namespace codec {

json public_key_to_json(const PublicKey& key) {
  return json{{"bytes", to_hex(key.bytes)}, {"scheme", std::string(to_string(key.scheme))}};
}

PublicKey public_key_from_json(const json& j) {
  PublicKey key;
  key.scheme = scheme_from_string(j.at("scheme").get<std::string>());
  key.bytes = from_hex(j.at("bytes").get<std::string>());
  return key;
}

json signature_to_json(const SignatureValue& sig) {
  return json{{"bytes", to_hex(sig.bytes)}, {"scheme", std::string(to_string(sig.scheme))}};
}

SignatureValue signature_from_json(const json& j) {
  SignatureValue sig;
  sig.scheme = scheme_from_string(j.at("scheme").get<std::string>());
  sig.bytes = from_hex(j.at("bytes").get<std::string>());
  return sig;
}

json tbs_to_json(const Certificate& cert) {
  const Extensions& ext = cert.extensions;

  json bc;
  bc["is_ca"] = ext.basic_constraints.is_ca;
  if (ext.basic_constraints.path_len)
    bc["path_len"] = *ext.basic_constraints.path_len;

  json extensions;
  extensions["basic_constraints"] = std::move(bc);

  std::vector<std::string> usages;
  for (KeyUsage u : ext.key_usage) usages.emplace_back(to_string(u));
  std::sort(usages.begin(), usages.end());
  extensions["key_usage"] = usages;

  if (ext.name_constraints) {
    std::vector<std::string> nc;
    for (const NamePattern& p : ext.name_constraints->patterns()) nc.push_back(p.to_string());
    extensions["name_constraints"] = nc;
  }

  std::vector<std::string> sans;
  for (const NamePattern& p : ext.subject_alt_names) sans.push_back(p.to_string());
  extensions["subject_alt_names"] = sans;

  extensions["delegation_usage"] = ext.delegation_usage;
  if (ext.resumption_policy)
    extensions["resumption_policy"] = std::string(to_string(*ext.resumption_policy));
  if (ext.failure_mode)
    extensions["failure_mode"] = std::string(to_string(*ext.failure_mode));
  extensions["logged"] = ext.logged;

  json tbs;
  tbs["extensions"] = std::move(extensions);
  tbs["issuer"] = cert.issuer;
  tbs["public_key"] = public_key_to_json(cert.public_key);
  tbs["serial"] = cert.serial;
  tbs["signature_scheme"] = std::string(to_string(cert.signature_scheme));
  tbs["subject_common_name"] = cert.subject_common_name.to_string();
  tbs["validity"] =
      json{{"not_after", cert.validity.not_after.seconds},
           {"not_before", cert.validity.not_before.seconds}};
  return tbs;
}

json certificate_to_json(const Certificate& cert) {
  return json{{"signature", signature_to_json(cert.signature)}, {"tbs", tbs_to_json(cert)}};
}

namespace {

NamePattern parse_cn_or_san(const std::string& text) {
  NamePattern p = NamePattern::parse(text);
  if (p.kind() == PatternKind::Subtree)
    throw std::invalid_argument("subject names must be exact or wildcard patterns: '" + text + "'");
  return p;
}

NameSet parse_name_constraints(const json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("name_constraints must be a non-empty pattern list");
  std::vector<NamePattern> patterns;
  for (const auto& entry : j) {
    NamePattern p = NamePattern::parse(entry.get<std::string>());
    // Per the constraint-spelling rule, only leading-dot subtree constraints
    // are accepted in the name-constraints extension.
    if (p.kind() != PatternKind::Subtree)
      throw std::invalid_argument("name constraint without leading dot: '" +
                                  entry.get<std::string>() + "'");
    patterns.push_back(std::move(p));
  }
  return NameSet::of(std::move(patterns));
}

}  // namespace

Certificate certificate_from_json(const json& doc) {
  const json& tbs = doc.at("tbs");
  const json& jext = tbs.at("extensions");

  Extensions ext;
  const json& bc = jext.at("basic_constraints");
  ext.basic_constraints.is_ca = bc.at("is_ca").get<bool>();
  if (bc.contains("path_len"))
    ext.basic_constraints.path_len = bc.at("path_len").get<std::uint32_t>();

  for (const auto& u : jext.at("key_usage"))
    ext.key_usage.insert(key_usage_from_string(u.get<std::string>()));

  if (jext.contains("name_constraints"))
    ext.name_constraints = parse_name_constraints(jext.at("name_constraints"));

  for (const auto& s : jext.at("subject_alt_names"))
    ext.subject_alt_names.push_back(parse_cn_or_san(s.get<std::string>()));

  ext.delegation_usage = jext.at("delegation_usage").get<bool>();
  if (jext.contains("resumption_policy"))
    ext.resumption_policy =
        resumption_policy_from_string(jext.at("resumption_policy").get<std::string>());
  if (jext.contains("failure_mode"))
    ext.failure_mode = failure_mode_from_string(jext.at("failure_mode").get<std::string>());
  ext.logged = jext.at("logged").get<bool>();

  const json& val = tbs.at("validity");
  Certificate cert{
      parse_cn_or_san(tbs.at("subject_common_name").get<std::string>()),
      tbs.at("issuer").get<std::string>(),
      tbs.at("serial").get<std::uint64_t>(),
      ValidityPeriod(Instant{val.at("not_before").get<std::uint64_t>()},
                     Instant{val.at("not_after").get<std::uint64_t>()}),
      public_key_from_json(tbs.at("public_key")),
      std::move(ext),
      scheme_from_string(tbs.at("signature_scheme").get<std::string>()),
      signature_from_json(doc.at("signature")),
  };
  return cert;
}

}  // namespace codec

std::vector<std::uint8_t> canonical_encode(const Certificate& cert) {
  std::string text = codec::tbs_to_json(cert).dump();
  return {text.begin(), text.end()};
}

Certificate sign_certificate(Certificate tbs, const KeyPair& issuer_key) {
  if (issuer_key.sec.scheme != tbs.signature_scheme)
    throw DomainError(ReasonCode::SchemeMismatch,
                      "issuer key scheme does not match certificate signature scheme");
  tbs.signature = sign_message(issuer_key.sec, canonical_encode(tbs));
  return tbs;
}

Certificate sign_certificate(Certificate tbs, const Signer& signer) {
  if (signer.scheme() != tbs.signature_scheme)
    throw DomainError(ReasonCode::SchemeMismatch,
                      "signer scheme does not match certificate signature scheme");
  tbs.signature = signer.sign(canonical_encode(tbs));
  return tbs;
}

bool verify_signature(const Certificate& cert, const PublicKey& issuer_pk) {
  return verify_message(issuer_pk, canonical_encode(cert), cert.signature);
}

bool within_validity(const Certificate& cert, Instant t) {
  return cert.validity.contains(t);
}

NameSet union_san_cn(const Certificate& cert) {
  std::vector<NamePattern> patterns = cert.extensions.subject_alt_names;
  patterns.push_back(cert.subject_common_name);
  return NameSet::of(std::move(patterns));
}

std::array<std::uint8_t, 32> tbs_fingerprint(const Certificate& cert) {
  return sha256(canonical_encode(cert));
}

}  // namespace pcert
