// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PCERT_ERRORS_HPP
#define PCERT_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace pcert {

/// Machine-parseable rejection codes. Validation operations return these in
/// their outcome; issuance-style operations throw DomainError carrying one.
enum class ReasonCode {
  None,

  // Path validation
  NoEndEntity,
  UntrustedAnchor,
  BadSignature,
  Expired,
  NotYetValid,
  CaBitMissing,
  PathLenExceeded,
  NameConstraintViolation,
  EmptyPermittedSet,
  NameEscalation,
  ProxyPathLenExceeded,
  TargetNameMismatch,

  // Issuance
  SignerUnavailable,

  // Signatures / delegated credentials
  SchemeMismatch,
  MissingDelegationUsage,
  MissingDigitalSignatureBit,
  TtlTooLong,
  EeExpired,
  DcExpired,
  DcLifetimeTooLong,
  BadDcSignature,

  // Session resumption
  PskExpired,
  PskConsumed,
  PolicyForbidsResumption,
  CredentialExpired,
  NoPskAvailable,
  MalformedScript,

  // Scheme matrix
  UnknownScheme,
  UnknownCriterion,
  UnknownCombination,

  // Fixtures
  MalformedSpec,
};

std::string_view to_string(ReasonCode code);

/// A domain-level rejection raised by an operation that cannot return an
/// outcome value (issuance, credential minting, matrix lookups). The CLI maps
/// it to `REJECT <code>` with exit status 1.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(ReasonCode code, const std::string& detail = "")
      : std::runtime_error(detail.empty() ? std::string(to_string(code))
                                          : std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  ReasonCode code() const { return code_; }

 private:
  ReasonCode code_;
};

}  // namespace pcert

#endif  // PCERT_ERRORS_HPP
