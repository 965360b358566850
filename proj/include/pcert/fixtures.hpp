// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PCERT_FIXTURES_HPP
#define PCERT_FIXTURES_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "pcert/crypto.hpp"

namespace pcert {

/// Declarative description of the fixture corpus to generate. The same seed
/// and shape list always produce byte-identical output.
struct FixtureSpec {
  std::uint64_t seed = 1;
  /// Shape groups: "chains" (the PKI and validation corpus with an
  /// expectations manifest), "credentials" (delegated-credential pairs),
  /// "scripts" (session-resumption scenarios). Unknown names are rejected.
  std::vector<std::string> shapes;

  static FixtureSpec defaults(std::uint64_t seed) {
    return FixtureSpec{seed, {"chains", "credentials", "scripts"}};
  }
};

/// Deterministic key material: one keypair per role label, derived from the
/// fixture seed by SHA-256 expansion of "pcert-fixture/<label>/<seed>".
KeyPair fixture_keypair(std::uint64_t seed, std::string_view label,
                        SignatureScheme scheme = SignatureScheme::Ed25519);

/// Writes the fixture corpus under |out_dir|:
///   keys/ anchors/ certs/ chains/ csr/ dc/ scripts/ expectations.tsv
/// Chains cover the standard shapes (regular, name-constrained, short-lived,
/// proxy, two-level proxy) and the negative cases (name escalation, wildcard
/// depth, deferred expiry, bad signatures, path-length and name-constraint
/// violations). expectations.tsv lists one validation probe per line:
/// name, chain file, time, target, expected verdict or reason.
/// Throws DomainError(MalformedSpec) on unknown shape names.
void generate_fixtures(const FixtureSpec& spec, const std::filesystem::path& out_dir);

}  // namespace pcert

#endif  // PCERT_FIXTURES_HPP
