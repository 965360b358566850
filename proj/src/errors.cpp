// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcert/errors.hpp"

namespace pcert {

std::string_view to_string(ReasonCode code) {
  switch (code) {
    case ReasonCode::None: return "None";
    case ReasonCode::NoEndEntity: return "NoEndEntity";
    case ReasonCode::UntrustedAnchor: return "UntrustedAnchor";
    case ReasonCode::BadSignature: return "BadSignature";
    case ReasonCode::Expired: return "Expired";
    case ReasonCode::NotYetValid: return "NotYetValid";
    case ReasonCode::CaBitMissing: return "CaBitMissing";
    case ReasonCode::PathLenExceeded: return "PathLenExceeded";
    case ReasonCode::NameConstraintViolation: return "NameConstraintViolation";
    case ReasonCode::EmptyPermittedSet: return "EmptyPermittedSet";
    case ReasonCode::NameEscalation: return "NameEscalation";
    case ReasonCode::ProxyPathLenExceeded: return "ProxyPathLenExceeded";
    case ReasonCode::TargetNameMismatch: return "TargetNameMismatch";
    case ReasonCode::SignerUnavailable: return "SignerUnavailable";
    case ReasonCode::SchemeMismatch: return "SchemeMismatch";
    case ReasonCode::MissingDelegationUsage: return "MissingDelegationUsage";
    case ReasonCode::MissingDigitalSignatureBit: return "MissingDigitalSignatureBit";
    case ReasonCode::TtlTooLong: return "TtlTooLong";
    case ReasonCode::EeExpired: return "EeExpired";
    case ReasonCode::DcExpired: return "DcExpired";
    case ReasonCode::DcLifetimeTooLong: return "DcLifetimeTooLong";
    case ReasonCode::BadDcSignature: return "BadDcSignature";
    case ReasonCode::PskExpired: return "PskExpired";
    case ReasonCode::PskConsumed: return "PskConsumed";
    case ReasonCode::PolicyForbidsResumption: return "PolicyForbidsResumption";
    case ReasonCode::CredentialExpired: return "CredentialExpired";
    case ReasonCode::NoPskAvailable: return "NoPskAvailable";
    case ReasonCode::MalformedScript: return "MalformedScript";
    case ReasonCode::UnknownScheme: return "UnknownScheme";
    case ReasonCode::UnknownCriterion: return "UnknownCriterion";
    case ReasonCode::UnknownCombination: return "UnknownCombination";
    case ReasonCode::MalformedSpec: return "MalformedSpec";
  }
  return "None";
}

}  // namespace pcert
