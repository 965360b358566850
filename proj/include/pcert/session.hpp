// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PCERT_SESSION_HPP
#define PCERT_SESSION_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pcert/delegated.hpp"
#include "pcert/errors.hpp"
#include "pcert/issuance.hpp"
#include "pcert/validation.hpp"

namespace pcert {

/// Single-use pre-shared key provisioned for session resumption.
struct Psk {
  Instant issued_at;
  std::uint64_t lifetime = 0;  // seconds, at most 7 days
  /// Expiry of the credential presented in the full handshake that started
  /// this session; refreshed only by an out-of-band certificate update.
  Instant issuer_credential_expiry;
  std::uint32_t lineage_depth = 0;
  bool consumed = false;

  Instant expiry() const { return issued_at + lifetime; }
};

/// Honest servers coordinate PSK lifetime with the credential's remaining
/// lifetime. A malicious chainer always issues maximum-lifetime PSKs and
/// re-issues on every resumption, keeping a session alive indefinitely; the
/// 7-day per-PSK cap is protocol-enforced either way.
enum class ServerBehavior {
  Honest,
  MaliciousChainer,
};

ServerBehavior behavior_from_string(std::string_view name);

/// Stricter domain policies override more permissive client defaults, never
/// the other way around. Strictness: Allow < BoundToCredentialExpiry <
/// Disallow.
ResumptionPolicy effective_policy(ResumptionPolicy client_default,
                                  std::optional<ResumptionPolicy> domain_policy);

struct HandshakeResult {
  bool accepted = false;
  ReasonCode reason = ReasonCode::None;
  std::optional<Psk> psk;
  Instant credential_expiry;
  ResumptionPolicy policy = ResumptionPolicy::Allow;
};

/// Full handshake over a certificate chain: path validation at |t|, then PSK
/// provisioning unless the effective policy disallows resumption. The
/// effective policy folds in the leaf certificate's resumption_policy
/// extension.
HandshakeResult full_handshake(const Chain& chain, const std::vector<Certificate>& anchors,
                               Instant t, ResumptionPolicy client_policy,
                               ServerBehavior behavior);

/// Full handshake authenticated by a delegated credential.
HandshakeResult full_handshake_dc(const DelegatedCredential& dc, const Certificate& ee, Instant t,
                                  SignatureScheme handshake_scheme,
                                  ResumptionPolicy client_policy, ServerBehavior behavior);

struct ResumeResult {
  bool accepted = false;
  ReasonCode reason = ReasonCode::None;
  std::optional<Psk> next_psk;
};

/// PSK-based resumption at |t|. Marks the PSK consumed on acceptance and,
/// depending on server behavior, provisions a successor with lineage depth
/// one deeper. Under BoundToCredentialExpiry the credential expiry is
/// checked and the successor's expiry is capped by it.
ResumeResult resume(Psk& psk, Instant t, ResumptionPolicy policy, ServerBehavior behavior);

// ---------------------------------------------------------------------------
// Deterministic scenario runner.
//
// Scripts are line-oriented text. Preamble lines (before any event):
//   ANCHOR <pcert-path>
//   BEHAVIOR honest|malicious-chainer
//   SERVER PARENT <chain-path> KEY <pkey-path> CSR <pcsr-path>
//          START <t> PERIOD <seconds> VALIDITY <seconds>
// Timed events, in non-decreasing time order:
//   AT <t> HANDSHAKE <chain-path|@server> POLICY <allow|disallow|bound>
//   AT <t> RESUME
//   AT <t> TICK
//   AT <t> TERMINATE-LEASE
//   AT <t> REFRESH <new-credential-expiry>
// Relative paths resolve against the script's directory. '#' starts a
// comment.

struct ScenarioEvent {
  enum class Kind { Handshake, Resume, Tick, TerminateLease, Refresh };
  Instant at;
  Kind kind = Kind::Resume;
  std::string chain_ref;  // Handshake: path or "@server"
  ResumptionPolicy policy = ResumptionPolicy::Allow;
  Instant refresh_expiry;
};

struct ScenarioServerConfig {
  std::filesystem::path parent_chain;
  std::filesystem::path key;
  std::filesystem::path csr;
  Instant start;
  std::uint64_t period = 0;
  std::uint64_t validity = 0;
};

struct Scenario {
  std::vector<std::filesystem::path> anchor_files;
  ServerBehavior behavior = ServerBehavior::Honest;
  std::optional<ScenarioServerConfig> server;
  std::vector<ScenarioEvent> events;
};

/// Throws DomainError(MalformedScript) on syntax or ordering errors.
Scenario parse_scenario(std::istream& in, const std::filesystem::path& base_dir);
Scenario parse_scenario_file(const std::filesystem::path& path);

struct TraceRow {
  std::string time;     // decimal seconds, or "END" for the summary row
  std::string event;
  std::string outcome;  // ACCEPT | REJECT | ISSUED | NONE | OK
  std::string detail;   // space-separated key=value pairs, or "-"
};

struct Trace {
  std::vector<TraceRow> rows;
  std::uint64_t connections = 0;
  std::uint64_t full_handshakes = 0;
  std::uint64_t resumptions = 0;
  std::optional<Instant> max_connection_instant;
  std::uint32_t max_lineage = 0;

  std::string to_tsv() const;
};

Trace run_scenario(const Scenario& scenario);
Trace run_scenario_file(const std::filesystem::path& path);

}  // namespace pcert

#endif  // PCERT_SESSION_HPP
