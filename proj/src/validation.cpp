// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcert/validation.hpp"

#include <stdexcept>

namespace pcert {

namespace {

/// Reason for a certificate outside its window at |t|.
ReasonCode window_reason(const Certificate& cert, Instant t) {
  return t < cert.validity.not_before ? ReasonCode::NotYetValid : ReasonCode::Expired;
}

}  // namespace

SplitPath split_path(const Chain& chain) {
  if (chain.certs.empty()) throw std::invalid_argument("split_path: empty chain");
  for (std::size_t i = 0; i < chain.certs.size(); ++i) {
    if (!chain.certs[i].is_ca()) {
      SplitPath split;
      split.regular.certs.assign(chain.certs.begin(),
                                 chain.certs.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      split.proxy.assign(chain.certs.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                         chain.certs.end());
      split.split_index = i;
      return split;
    }
  }
  throw DomainError(ReasonCode::NoEndEntity, "every certificate in the path has the CA bit");
}

ValidationOutcome validate_regular(const Chain& regular, const std::vector<Certificate>& anchors,
                                   Instant t) {
  const auto& certs = regular.certs;
  if (certs.empty()) throw std::invalid_argument("validate_regular: empty chain");

  // Running permitted set accumulated from predecessors' name constraints.
  NameSet permitted = NameSet::universal();

  for (std::size_t i = 0; i < certs.size(); ++i) {
    const Certificate& cert = certs[i];

    if (i == 0) {
      bool anchored = false;
      for (const Certificate& anchor : anchors) {
        if (anchor.subject_label() == cert.issuer &&
            verify_signature(cert, anchor.public_key)) {
          anchored = true;
          break;
        }
      }
      if (!anchored) return ValidationOutcome::reject(ReasonCode::UntrustedAnchor);
    } else {
      const Certificate& parent = certs[i - 1];
      if (cert.issuer != parent.subject_label() ||
          !verify_signature(cert, parent.public_key)) {
        return ValidationOutcome::reject(ReasonCode::BadSignature);
      }
    }

    if (!within_validity(cert, t))
      return ValidationOutcome::reject(window_reason(cert, t));

    const bool is_leaf = (i + 1 == certs.size());
    if (!is_leaf && !cert.is_ca())
      return ValidationOutcome::reject(ReasonCode::CaBitMissing);

    // A CA certificate with path_len = k permits at most k subsequent CA
    // certificates.
    if (cert.is_ca() && cert.extensions.basic_constraints.path_len) {
      std::uint32_t later_cas = 0;
      for (std::size_t j = i + 1; j < certs.size(); ++j)
        if (certs[j].is_ca()) ++later_cas;
      if (later_cas > *cert.extensions.basic_constraints.path_len)
        return ValidationOutcome::reject(ReasonCode::PathLenExceeded);
    }

    if (!union_san_cn(cert).subset_of(permitted))
      return ValidationOutcome::reject(ReasonCode::NameConstraintViolation);

    if (cert.extensions.name_constraints)
      permitted = permitted.intersect(*cert.extensions.name_constraints);
  }

  ValidationOutcome out;
  out.accepted = true;
  out.effective_names = union_san_cn(certs.back());
  out.path_split = certs.size() - 1;
  return out;
}

ValidationOutcome validate_proxy(const std::vector<Certificate>& proxy, const Certificate& ee,
                                 Instant t) {
  ValidationOutcome out;
  out.accepted = true;
  out.effective_names = union_san_cn(ee);
  if (proxy.empty()) return out;

  // Path-length counting restarts at the end-entity certificate: a path_len
  // of k on the end-entity certificate bounds the whole proxy path.
  if (ee.extensions.basic_constraints.path_len &&
      proxy.size() > *ee.extensions.basic_constraints.path_len)
    return ValidationOutcome::reject(ReasonCode::ProxyPathLenExceeded);

  NameSet pst = union_san_cn(ee);
  const Certificate* parent = &ee;

  for (std::size_t i = 0; i < proxy.size(); ++i) {
    const Certificate& cert = proxy[i];

    if (cert.issuer != parent->subject_label() ||
        !verify_signature(cert, parent->public_key)) {
      return ValidationOutcome::reject(ReasonCode::BadSignature);
    }

    if (!within_validity(cert, t))
      return ValidationOutcome::reject(window_reason(cert, t));

    // CA boolean ignored on proxy certificates. path_len keeps its meaning,
    // bounding the remaining proxy certificates.
    if (cert.extensions.basic_constraints.path_len &&
        proxy.size() - 1 - i > *cert.extensions.basic_constraints.path_len)
      return ValidationOutcome::reject(ReasonCode::ProxyPathLenExceeded);

    NameSet allowed = pst;
    if (cert.extensions.name_constraints)
      allowed = allowed.intersect(*cert.extensions.name_constraints);
    if (allowed.empty())
      return ValidationOutcome::reject(ReasonCode::EmptyPermittedSet);

    NameSet own = union_san_cn(cert);
    if (!own.subset_of(allowed))
      return ValidationOutcome::reject(ReasonCode::NameEscalation);

    pst = allowed.intersect(own);
    out.pst_trace.push_back(pst);
    parent = &cert;
  }

  out.effective_names = pst;
  return out;
}

ValidationOutcome validate_path(const Chain& chain, const std::vector<Certificate>& anchors,
                                Instant t) {
  SplitPath split;
  try {
    split = split_path(chain);
  } catch (const DomainError& e) {
    return ValidationOutcome::reject(e.code());
  }

  ValidationOutcome regular = validate_regular(split.regular, anchors, t);
  if (!regular.accepted) {
    regular.path_split = split.split_index;
    return regular;
  }

  ValidationOutcome out = validate_proxy(split.proxy, split.regular.certs.back(), t);
  out.path_split = split.split_index;
  return out;
}

ValidationOutcome validate(const Chain& chain, const std::vector<Certificate>& anchors, Instant t,
                           const DnsName& target) {
  ValidationOutcome out = validate_path(chain, anchors, t);
  if (!out.accepted) return out;
  if (!out.effective_names.member(target)) {
    ValidationOutcome reject = ValidationOutcome::reject(ReasonCode::TargetNameMismatch);
    reject.path_split = out.path_split;
    reject.pst_trace = out.pst_trace;
    return reject;
  }
  return out;
}

}  // namespace pcert
