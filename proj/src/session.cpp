// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcert/session.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "pcert/documents.hpp"

namespace pcert {

namespace {

int strictness(ResumptionPolicy policy) {
  switch (policy) {
    case ResumptionPolicy::Allow: return 0;
    case ResumptionPolicy::BoundToCredentialExpiry: return 1;
    case ResumptionPolicy::Disallow: return 2;
  }
  return 0;
}

std::uint64_t honest_psk_lifetime(Instant t, Instant credential_expiry) {
  if (credential_expiry <= t) return 0;
  return std::min(kMaxDcLifetimeSeconds, credential_expiry.seconds - t.seconds);
}

/// Server-side PSK provisioning. Returns nothing when the policy forbids
/// resumption or an honest server has no credential lifetime left to cover.
std::optional<Psk> provision_psk(Instant t, Instant credential_expiry, ResumptionPolicy policy,
                                 ServerBehavior behavior, std::uint32_t lineage,
                                 bool cap_to_credential) {
  if (policy == ResumptionPolicy::Disallow) return std::nullopt;
  std::uint64_t lifetime = behavior == ServerBehavior::MaliciousChainer
                               ? kMaxDcLifetimeSeconds
                               : honest_psk_lifetime(t, credential_expiry);
  if (cap_to_credential && credential_expiry > t)
    lifetime = std::min(lifetime, credential_expiry.seconds - t.seconds);
  if (lifetime == 0) return std::nullopt;
  Psk psk;
  psk.issued_at = t;
  psk.lifetime = lifetime;
  psk.issuer_credential_expiry = credential_expiry;
  psk.lineage_depth = lineage;
  return psk;
}

}  // namespace

ServerBehavior behavior_from_string(std::string_view name) {
  if (name == "honest") return ServerBehavior::Honest;
  if (name == "malicious-chainer") return ServerBehavior::MaliciousChainer;
  throw DomainError(ReasonCode::MalformedScript, "unknown behavior '" + std::string(name) + "'");
}

ResumptionPolicy effective_policy(ResumptionPolicy client_default,
                                  std::optional<ResumptionPolicy> domain_policy) {
  if (!domain_policy) return client_default;
  return strictness(*domain_policy) > strictness(client_default) ? *domain_policy
                                                                 : client_default;
}

HandshakeResult full_handshake(const Chain& chain, const std::vector<Certificate>& anchors,
                               Instant t, ResumptionPolicy client_policy,
                               ServerBehavior behavior) {
  HandshakeResult result;
  ValidationOutcome outcome = validate_path(chain, anchors, t);
  if (!outcome.accepted) {
    result.reason = outcome.reason;
    return result;
  }

  // The credential stops being presentable when any certificate in the path
  // lapses.
  Instant expiry = chain.certs.front().validity.not_after;
  for (const Certificate& cert : chain.certs)
    expiry = std::min(expiry, cert.validity.not_after);

  result.accepted = true;
  result.credential_expiry = expiry;
  result.policy = effective_policy(client_policy, chain.certs.back().extensions.resumption_policy);
  result.psk = provision_psk(t, expiry, result.policy, behavior, 0, false);
  return result;
}

HandshakeResult full_handshake_dc(const DelegatedCredential& dc, const Certificate& ee, Instant t,
                                  SignatureScheme handshake_scheme,
                                  ResumptionPolicy client_policy, ServerBehavior behavior) {
  HandshakeResult result;
  DcOutcome outcome = validate_dc(dc, ee, t, handshake_scheme);
  if (!outcome.accepted) {
    result.reason = outcome.reason;
    return result;
  }
  // Delegated credentials carry no policy semantics, so only the client
  // default applies.
  result.accepted = true;
  result.credential_expiry = dc_expiry(dc, ee);
  result.policy = client_policy;
  result.psk = provision_psk(t, result.credential_expiry, result.policy, behavior, 0, false);
  return result;
}

ResumeResult resume(Psk& psk, Instant t, ResumptionPolicy policy, ServerBehavior behavior) {
  if (psk.consumed) return {false, ReasonCode::PskConsumed, std::nullopt};
  if (policy == ResumptionPolicy::Disallow)
    return {false, ReasonCode::PolicyForbidsResumption, std::nullopt};
  if (t >= psk.expiry()) return {false, ReasonCode::PskExpired, std::nullopt};
  if (policy == ResumptionPolicy::BoundToCredentialExpiry && t >= psk.issuer_credential_expiry)
    return {false, ReasonCode::CredentialExpired, std::nullopt};

  psk.consumed = true;
  bool cap = policy == ResumptionPolicy::BoundToCredentialExpiry;
  std::optional<Psk> next = provision_psk(t, psk.issuer_credential_expiry, policy, behavior,
                                          psk.lineage_depth + 1, cap);
  return {true, ReasonCode::None, next};
}

// ---------------------------------------------------------------------------
// Scenario parsing

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string token;
  while (in >> token) {
    if (token.starts_with('#')) break;
    tokens.push_back(token);
  }
  return tokens;
}

std::uint64_t parse_u64(const std::string& text) {
  std::size_t pos = 0;
  std::uint64_t value = std::stoull(text, &pos);
  if (pos != text.size())
    throw DomainError(ReasonCode::MalformedScript, "bad number '" + text + "'");
  return value;
}

ResumptionPolicy parse_policy_token(const std::string& token) {
  try {
    return resumption_policy_from_string(token);
  } catch (const std::invalid_argument&) {
    throw DomainError(ReasonCode::MalformedScript, "unknown policy '" + token + "'");
  }
}

}  // namespace

Scenario parse_scenario(std::istream& in, const std::filesystem::path& base_dir) {
  Scenario scenario;
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };

  std::string line;
  bool events_started = false;
  std::uint64_t last_time = 0;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::vector<std::string> tok = tokenize(line);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& why) -> DomainError {
      return DomainError(ReasonCode::MalformedScript,
                         "line " + std::to_string(line_no) + ": " + why);
    };

    if (tok[0] == "ANCHOR") {
      if (events_started || tok.size() != 2) throw fail("ANCHOR belongs in the preamble");
      scenario.anchor_files.push_back(resolve(tok[1]));
    } else if (tok[0] == "BEHAVIOR") {
      if (events_started || tok.size() != 2) throw fail("BEHAVIOR belongs in the preamble");
      scenario.behavior = behavior_from_string(tok[1]);
    } else if (tok[0] == "SERVER") {
      if (events_started || tok.size() != 13 || tok[1] != "PARENT" || tok[3] != "KEY" ||
          tok[5] != "CSR" || tok[7] != "START" || tok[9] != "PERIOD" || tok[11] != "VALIDITY")
        throw fail("SERVER PARENT <chain> KEY <key> CSR <csr> START <t> PERIOD <s> VALIDITY <s>");
      ScenarioServerConfig cfg;
      cfg.parent_chain = resolve(tok[2]);
      cfg.key = resolve(tok[4]);
      cfg.csr = resolve(tok[6]);
      cfg.start = Instant{parse_u64(tok[8])};
      cfg.period = parse_u64(tok[10]);
      cfg.validity = parse_u64(tok[12]);
      scenario.server = std::move(cfg);
    } else if (tok[0] == "AT") {
      if (tok.size() < 3) throw fail("AT <t> <event>");
      ScenarioEvent event;
      event.at = Instant{parse_u64(tok[1])};
      if (events_started && event.at.seconds < last_time) throw fail("events not time-ordered");
      events_started = true;
      last_time = event.at.seconds;

      const std::string& kind = tok[2];
      if (kind == "HANDSHAKE") {
        if (tok.size() != 6 || tok[4] != "POLICY")
          throw fail("AT <t> HANDSHAKE <chain|@server> POLICY <allow|disallow|bound>");
        event.kind = ScenarioEvent::Kind::Handshake;
        event.chain_ref = tok[3] == "@server" ? tok[3] : resolve(tok[3]).string();
        event.policy = parse_policy_token(tok[5]);
      } else if (kind == "RESUME") {
        if (tok.size() != 3) throw fail("AT <t> RESUME");
        event.kind = ScenarioEvent::Kind::Resume;
      } else if (kind == "TICK") {
        if (tok.size() != 3) throw fail("AT <t> TICK");
        event.kind = ScenarioEvent::Kind::Tick;
      } else if (kind == "TERMINATE-LEASE") {
        if (tok.size() != 3) throw fail("AT <t> TERMINATE-LEASE");
        event.kind = ScenarioEvent::Kind::TerminateLease;
      } else if (kind == "REFRESH") {
        if (tok.size() != 4) throw fail("AT <t> REFRESH <credential-expiry>");
        event.kind = ScenarioEvent::Kind::Refresh;
        event.refresh_expiry = Instant{parse_u64(tok[3])};
      } else {
        throw fail("unknown event '" + kind + "'");
      }
      scenario.events.push_back(std::move(event));
    } else {
      throw fail("unknown directive '" + tok[0] + "'");
    }
  }
  return scenario;
}

Scenario parse_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_scenario(in, path.parent_path());
}

// ---------------------------------------------------------------------------
// Scenario execution

namespace {

struct ClientSession {
  ResumptionPolicy policy = ResumptionPolicy::Allow;
  Instant credential_expiry;
  std::optional<Psk> psk;
};

std::string psk_detail(const std::optional<Psk>& psk) {
  if (!psk) return "psk=none";
  return "psk_lineage=" + std::to_string(psk->lineage_depth) +
         " psk_expiry=" + std::to_string(psk->expiry().seconds);
}

}  // namespace

std::string Trace::to_tsv() const {
  std::string out;
  for (const TraceRow& row : rows)
    out += row.time + "\t" + row.event + "\t" + row.outcome + "\t" + row.detail + "\n";
  return out;
}

Trace run_scenario(const Scenario& scenario) {
  Trace trace;

  std::vector<Certificate> anchors;
  for (const auto& file : scenario.anchor_files) {
    auto loaded = load_anchors(file);
    anchors.insert(anchors.end(), loaded.begin(), loaded.end());
  }

  std::optional<CertificateServer> server;
  Chain server_parent_chain;
  if (scenario.server) {
    const ScenarioServerConfig& cfg = *scenario.server;
    server_parent_chain = load_chain(cfg.parent_chain);
    KeyPair key = load_keypair(cfg.key);
    ProxyCsr csr = load_csr(cfg.csr);
    server.emplace(server_parent_chain.certs.back(),
                   std::make_shared<LocalKeySigner>(std::move(key)),
                   IssuanceSchedule(cfg.start, cfg.period, cfg.validity), std::move(csr));
  }

  std::optional<ClientSession> session;

  auto note_connection = [&](Instant t, std::uint32_t lineage) {
    ++trace.connections;
    if (!trace.max_connection_instant || *trace.max_connection_instant < t)
      trace.max_connection_instant = t;
    trace.max_lineage = std::max(trace.max_lineage, lineage);
  };

  for (const ScenarioEvent& event : scenario.events) {
    const std::string at = std::to_string(event.at.seconds);
    switch (event.kind) {
      case ScenarioEvent::Kind::Handshake: {
        Chain chain;
        if (event.chain_ref == "@server") {
          if (!server || !server->latest())
            throw DomainError(ReasonCode::MalformedScript,
                              "HANDSHAKE @server before any certificate was issued");
          chain = server_parent_chain;
          chain.certs.push_back(*server->latest());
        } else {
          chain = load_chain(event.chain_ref);
        }
        HandshakeResult result =
            full_handshake(chain, anchors, event.at, event.policy, scenario.behavior);
        ++trace.full_handshakes;
        if (result.accepted) {
          note_connection(event.at, 0);
          session = ClientSession{result.policy, result.credential_expiry, result.psk};
          trace.rows.push_back(
              {at, "HANDSHAKE", "ACCEPT",
               "policy=" + std::string(to_string(result.policy)) +
                   " cred_expiry=" + std::to_string(result.credential_expiry.seconds) + " " +
                   psk_detail(result.psk)});
        } else {
          trace.rows.push_back(
              {at, "HANDSHAKE", "REJECT", "reason=" + std::string(to_string(result.reason))});
        }
        break;
      }
      case ScenarioEvent::Kind::Resume: {
        if (!session)
          throw DomainError(ReasonCode::MalformedScript, "RESUME before any handshake");
        if (session->policy == ResumptionPolicy::Disallow) {
          trace.rows.push_back({at, "RESUME", "REJECT",
                                "reason=" + std::string(to_string(
                                                ReasonCode::PolicyForbidsResumption))});
          break;
        }
        if (!session->psk) {
          trace.rows.push_back(
              {at, "RESUME", "REJECT",
               "reason=" + std::string(to_string(ReasonCode::NoPskAvailable))});
          break;
        }
        ResumeResult result =
            resume(*session->psk, event.at, session->policy, scenario.behavior);
        if (result.accepted) {
          ++trace.resumptions;
          std::uint32_t lineage = session->psk->lineage_depth + 1;
          note_connection(event.at, lineage);
          std::string detail = psk_detail(result.next_psk) +
                               " cred_expiry=" + std::to_string(session->credential_expiry.seconds);
          if (result.next_psk)
            session->psk = result.next_psk;
          trace.rows.push_back({at, "RESUME", "ACCEPT", detail});
        } else {
          trace.rows.push_back(
              {at, "RESUME", "REJECT", "reason=" + std::string(to_string(result.reason))});
        }
        break;
      }
      case ScenarioEvent::Kind::Tick: {
        if (!server)
          throw DomainError(ReasonCode::MalformedScript, "TICK without a SERVER directive");
        std::optional<Certificate> issued = server->tick(event.at);
        if (issued) {
          trace.rows.push_back({at, "TICK", "ISSUED",
                                "serial=" + std::to_string(issued->serial) + " not_before=" +
                                    std::to_string(issued->validity.not_before.seconds) +
                                    " not_after=" +
                                    std::to_string(issued->validity.not_after.seconds)});
        } else {
          trace.rows.push_back({at, "TICK", "NONE", "-"});
        }
        break;
      }
      case ScenarioEvent::Kind::TerminateLease: {
        if (!server)
          throw DomainError(ReasonCode::MalformedScript,
                            "TERMINATE-LEASE without a SERVER directive");
        server->terminate_lease();
        trace.rows.push_back({at, "TERMINATE-LEASE", "OK", "-"});
        break;
      }
      case ScenarioEvent::Kind::Refresh: {
        if (!session)
          throw DomainError(ReasonCode::MalformedScript, "REFRESH before any handshake");
        session->credential_expiry = event.refresh_expiry;
        if (session->psk) session->psk->issuer_credential_expiry = event.refresh_expiry;
        trace.rows.push_back(
            {at, "REFRESH", "OK",
             "cred_expiry=" + std::to_string(event.refresh_expiry.seconds)});
        break;
      }
    }
  }

  std::string summary =
      "connections=" + std::to_string(trace.connections) +
      " full_handshakes=" + std::to_string(trace.full_handshakes) +
      " resumptions=" + std::to_string(trace.resumptions) + " max_connection_instant=" +
      (trace.max_connection_instant ? std::to_string(trace.max_connection_instant->seconds)
                                    : std::string("none")) +
      " max_lineage=" + std::to_string(trace.max_lineage);
  trace.rows.push_back({"END", "SUMMARY", "OK", summary});
  return trace;
}

Trace run_scenario_file(const std::filesystem::path& path) {
  return run_scenario(parse_scenario_file(path));
}

}  // namespace pcert
