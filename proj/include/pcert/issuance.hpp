// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PCERT_ISSUANCE_HPP
#define PCERT_ISSUANCE_HPP

#include <cstdint>
#include <memory>
#include <optional>

#include "pcert/certificate.hpp"
#include "pcert/errors.hpp"

namespace pcert {

/// Unsigned proxy certificate signing request: the delegate's public key,
/// the names it asks for, and the policy extensions it wants carried.
struct ProxyCsr {
  PublicKey public_key;
  NameSet requested_names;  // finite, non-empty, exact/wildcard patterns only
  std::optional<std::uint32_t> path_len;
  std::optional<ResumptionPolicy> resumption_policy;
  std::optional<FailureMode> failure_mode;
};

/// Throws std::invalid_argument unless requested_names is a non-empty finite
/// set of Exact/Wildcard patterns.
void check_csr_shape(const ProxyCsr& csr);

/// Reissuance timetable. Consecutive windows must overlap, so the validity
/// must strictly exceed the period.
struct IssuanceSchedule {
  Instant start;
  std::uint64_t period;    // seconds between issuances
  std::uint64_t validity;  // seconds each certificate lives

  IssuanceSchedule(Instant start_, std::uint64_t period_, std::uint64_t validity_)
      : start(start_), period(period_), validity(validity_) {
    if (period == 0) throw std::invalid_argument("IssuanceSchedule: period must be positive");
    if (validity <= period)
      throw std::invalid_argument(
          "IssuanceSchedule: validity must exceed period so consecutive windows overlap");
  }
};

/// Validity window of the k-th certificate in a schedule.
ValidityPeriod window_of(const IssuanceSchedule& schedule, std::uint64_t k);

/// Issues one proxy certificate under |parent|. The requested names must
/// fall within the parent's own permitted set (SAN union CN, intersected
/// with the parent's name constraints); otherwise NameEscalation.
Certificate issue_proxy(const Certificate& parent, const Signer& signer, const ProxyCsr& csr,
                        const ValidityPeriod& window, std::uint64_t serial);

enum class LeaseState { Active, Terminated };

/// Certificate server for one delegation lease: reissues proxy certificates
/// for the active CSR on a fixed schedule until the lease is terminated.
/// Between issuances only the validity window and the serial change.
/// Single-writer; issued certificates are immutable values.
class CertificateServer {
 public:
  CertificateServer(Certificate parent, std::shared_ptr<const Signer> signer,
                    IssuanceSchedule schedule, ProxyCsr csr);

  /// Emits the next scheduled certificate when |t| has reached its boundary
  /// and the lease is active; otherwise nothing. Drive at least once per
  /// period for gap-free coverage.
  std::optional<Certificate> tick(Instant t);

  /// Stops issuance. Already-issued certificates live out their windows;
  /// delegation dies with the last one, at most one validity period later.
  void terminate_lease() { lease_ = LeaseState::Terminated; }

  /// Swaps in a new CSR (fresh key and/or extensions). Subsequent emissions
  /// carry the new key; nothing already issued is affected.
  void rollover(ProxyCsr new_csr);

  const std::optional<Certificate>& latest() const { return latest_; }
  LeaseState lease() const { return lease_; }
  std::uint64_t issued_count() const { return issued_count_; }
  const Certificate& parent() const { return parent_; }

 private:
  Certificate parent_;
  std::shared_ptr<const Signer> signer_;
  IssuanceSchedule schedule_;
  ProxyCsr csr_;
  LeaseState lease_ = LeaseState::Active;
  std::uint64_t issued_count_ = 0;
  std::uint64_t next_serial_ = 1;
  std::optional<Certificate> latest_;
};

}  // namespace pcert

#endif  // PCERT_ISSUANCE_HPP
