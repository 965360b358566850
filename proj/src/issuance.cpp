// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcert/issuance.hpp"

#include <stdexcept>
#include <utility>

namespace pcert {

void check_csr_shape(const ProxyCsr& csr) {
  if (csr.requested_names.is_universal() || csr.requested_names.empty())
    throw std::invalid_argument("proxy CSR must request a non-empty finite name set");
  for (const NamePattern& p : csr.requested_names.patterns()) {
    if (p.kind() == PatternKind::Subtree)
      throw std::invalid_argument("proxy CSR names must be exact or wildcard patterns");
  }
}

ValidityPeriod window_of(const IssuanceSchedule& schedule, std::uint64_t k) {
  Instant not_before = schedule.start + k * schedule.period;
  return ValidityPeriod(not_before, not_before + schedule.validity);
}

Certificate issue_proxy(const Certificate& parent, const Signer& signer, const ProxyCsr& csr,
                        const ValidityPeriod& window, std::uint64_t serial) {
  check_csr_shape(csr);

  NameSet parent_allowed = union_san_cn(parent);
  if (parent.extensions.name_constraints)
    parent_allowed = parent_allowed.intersect(*parent.extensions.name_constraints);
  if (!csr.requested_names.subset_of(parent_allowed))
    throw DomainError(ReasonCode::NameEscalation,
                      "requested names " + csr.requested_names.to_string() +
                          " exceed parent's permitted set " + parent_allowed.to_string());

  const auto& patterns = csr.requested_names.patterns();
  Extensions ext;
  ext.basic_constraints.is_ca = false;
  ext.basic_constraints.path_len = csr.path_len;
  ext.subject_alt_names = patterns;
  ext.resumption_policy = csr.resumption_policy;
  ext.failure_mode = csr.failure_mode;
  // Proxy certificates are never submitted to transparency logs.
  ext.logged = false;

  Certificate tbs{
      patterns.front(),
      parent.subject_label(),
      serial,
      window,
      csr.public_key,
      std::move(ext),
      signer.scheme(),
      SignatureValue{},
  };
  return sign_certificate(std::move(tbs), signer);
}

CertificateServer::CertificateServer(Certificate parent, std::shared_ptr<const Signer> signer,
                                     IssuanceSchedule schedule, ProxyCsr csr)
    : parent_(std::move(parent)),
      signer_(std::move(signer)),
      schedule_(schedule),
      csr_(std::move(csr)) {
  check_csr_shape(csr_);
}

std::optional<Certificate> CertificateServer::tick(Instant t) {
  if (lease_ != LeaseState::Active) return std::nullopt;
  if (t < schedule_.start + issued_count_ * schedule_.period) return std::nullopt;
  if (!signer_) throw DomainError(ReasonCode::SignerUnavailable);

  Certificate cert =
      issue_proxy(parent_, *signer_, csr_, window_of(schedule_, issued_count_), next_serial_);
  ++next_serial_;
  ++issued_count_;
  latest_ = cert;
  return cert;
}

void CertificateServer::rollover(ProxyCsr new_csr) {
  check_csr_shape(new_csr);
  NameSet parent_allowed = union_san_cn(parent_);
  if (parent_.extensions.name_constraints)
    parent_allowed = parent_allowed.intersect(*parent_.extensions.name_constraints);
  if (!new_csr.requested_names.subset_of(parent_allowed))
    throw DomainError(ReasonCode::NameEscalation, "rollover CSR escalates names");
  csr_ = std::move(new_csr);
}

}  // namespace pcert
