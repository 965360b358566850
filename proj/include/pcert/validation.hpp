// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PCERT_VALIDATION_HPP
#define PCERT_VALIDATION_HPP

#include <cstddef>
#include <vector>

#include "pcert/certificate.hpp"
#include "pcert/errors.hpp"

namespace pcert {

/// Prospective certification path, trust-anchor-adjacent certificate first,
/// leaf last. The trust anchor itself is not part of the chain.
struct Chain {
  std::vector<Certificate> certs;
};

struct ValidationOutcome {
  bool accepted = false;
  ReasonCode reason = ReasonCode::None;
  /// Names the validated path is good for: the final permitted-subtrees
  /// value, or SAN union CN of the end-entity certificate when the proxy
  /// path is null.
  NameSet effective_names;
  /// Permitted-subtrees value after each proxy-path step.
  std::vector<NameSet> pst_trace;
  /// Index of the first non-CA certificate (the end-entity certificate).
  std::size_t path_split = 0;

  static ValidationOutcome reject(ReasonCode reason) {
    ValidationOutcome out;
    out.accepted = false;
    out.reason = reason;
    return out;
  }
};

struct SplitPath {
  Chain regular;                    // ends at the end-entity certificate
  std::vector<Certificate> proxy;   // possibly empty
  std::size_t split_index = 0;      // index of the end-entity certificate
};

/// Splits a certification path at the first non-CA certificate.
/// Throws DomainError(NoEndEntity) when every certificate has the CA bit.
SplitPath split_path(const Chain& chain);

/// RFC 5280-style checks on the regular path: anchor signature, issuer
/// chaining, validity windows, CA bits on non-leaf certificates, path-length
/// bounds on subsequent CA certificates, and name-constraint propagation.
ValidationOutcome validate_regular(const Chain& regular, const std::vector<Certificate>& anchors,
                                   Instant t);

/// Proxy-path checks with the end-entity certificate as trust-anchor
/// information: signature chaining from the end-entity key, validity at |t|,
/// the permitted-subtrees recurrence
///   PST_i = PST_{i-1} * NC_i * (SAN_i + CN_i),  PST_0 = SAN_0 + CN_0,
/// CA bit ignored, and path-length counting restarted at the end-entity
/// certificate.
ValidationOutcome validate_proxy(const std::vector<Certificate>& proxy, const Certificate& ee,
                                 Instant t);

/// Split + regular + proxy validation, without a target-name requirement.
ValidationOutcome validate_path(const Chain& chain, const std::vector<Certificate>& anchors,
                                Instant t);

/// Full validation: validate_path, then the target name must be a member of
/// the effective name set (TargetNameMismatch otherwise).
ValidationOutcome validate(const Chain& chain, const std::vector<Certificate>& anchors, Instant t,
                           const DnsName& target);

}  // namespace pcert

#endif  // PCERT_VALIDATION_HPP
