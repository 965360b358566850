// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

// Operator-facing command line: key generation, certificate and credential
// issuance, chain and credential validation, the certificate-server loop,
// the session-resumption simulator, and the scheme-comparison matrix.
//
// Exit status: 0 on success or an accepting verdict, 1 on a domain
// rejection (one machine-parseable line `REJECT <ReasonCode>`), 2 on usage
// or I/O errors. Validation commands take simulated time through the
// mandatory --at flag; nothing reads the wall clock.

#include <CLI11.hpp>

#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcert/delegated.hpp"
#include "pcert/documents.hpp"
#include "pcert/fixtures.hpp"
#include "pcert/issuance.hpp"
#include "pcert/matrix.hpp"
#include "pcert/session.hpp"
#include "pcert/validation.hpp"

namespace {

using namespace pcert;

struct CommonCertOptions {
  std::string cn;
  std::vector<std::string> sans;
  std::uint64_t not_before = 0;
  std::uint64_t not_after = 0;
  std::uint64_t serial = 1;
};

NamePattern parse_subject_pattern(const std::string& text) {
  NamePattern p = NamePattern::parse(text);
  if (p.kind() == PatternKind::Subtree)
    throw CLI::ValidationError("--cn/--san", "subject names must be exact or wildcard patterns");
  return p;
}

Certificate build_certificate(const CommonCertOptions& opt, const PublicKey& subject_key,
                              const std::string& issuer_label, SignatureScheme scheme,
                              Extensions ext) {
  for (const std::string& san : opt.sans)
    ext.subject_alt_names.push_back(parse_subject_pattern(san));
  return Certificate{
      parse_subject_pattern(opt.cn),
      issuer_label,
      opt.serial,
      ValidityPeriod(Instant{opt.not_before}, Instant{opt.not_after}),
      subject_key,
      std::move(ext),
      scheme,
      SignatureValue{},
  };
}

std::string effective_names_text(const NameSet& names) {
  std::string out = "[";
  const auto& patterns = names.patterns();
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    if (i) out += ",";
    out += patterns[i].to_string();
  }
  out += "]";
  return out;
}

int report_outcome(const ValidationOutcome& outcome, bool records) {
  if (records) {
    nlohmann::json doc;
    doc["verdict"] = outcome.accepted ? "accept" : "reject";
    if (!outcome.accepted) doc["reason"] = std::string(to_string(outcome.reason));
    std::vector<std::string> names;
    for (const NamePattern& p : outcome.effective_names.patterns())
      names.push_back(p.to_string());
    doc["effective_names"] = names;
    doc["path_split"] = outcome.path_split;
    nlohmann::json trace = nlohmann::json::array();
    for (const NameSet& pst : outcome.pst_trace) {
      std::vector<std::string> step;
      for (const NamePattern& p : pst.patterns()) step.push_back(p.to_string());
      trace.push_back(step);
    }
    doc["pst_trace"] = trace;
    std::cout << doc.dump() << "\n";
    return outcome.accepted ? 0 : 1;
  }
  if (outcome.accepted) {
    std::cout << "ACCEPT effective=" << effective_names_text(outcome.effective_names) << "\n";
    return 0;
  }
  std::cout << "REJECT " << to_string(outcome.reason) << "\n";
  return 1;
}

int run(int argc, char** argv) {
  CLI::App app{"pcert - proxy-certificate and delegated-credential toolkit"};
  app.require_subcommand(1);

  // --- keygen ---
  auto* keygen = app.add_subcommand("keygen", "generate a keypair document");
  std::string kg_scheme = "ed25519", kg_out, kg_label;
  std::uint64_t kg_seed = 0;
  bool kg_seeded = false;
  keygen->add_option("--scheme", kg_scheme, "signature scheme")->capture_default_str();
  keygen->add_option("--out", kg_out, "output .pkey path")->required();
  keygen->add_option("--seed", kg_seed, "derive deterministically from this seed")
      ->each([&](const std::string&) { kg_seeded = true; });
  keygen->add_option("--label", kg_label, "role label for seeded derivation");
  keygen->callback([&] {
    SignatureScheme scheme = scheme_from_string(kg_scheme);
    KeyPair kp = kg_seeded ? fixture_keypair(kg_seed, kg_label.empty() ? "key" : kg_label, scheme)
                           : generate_keypair(scheme);
    save_keypair(kp, kg_out);
    std::cout << "WROTE " << kg_out << "\n";
  });

  // --- issue-root / issue-ca / issue-ee ---
  CommonCertOptions root_opt;
  std::string root_key_file, root_out;
  auto* issue_root = app.add_subcommand("issue-root", "self-signed trust anchor");
  issue_root->add_option("--cn", root_opt.cn)->required();
  issue_root->add_option("--key", root_key_file, "subject keypair (.pkey)")->required();
  issue_root->add_option("--not-before", root_opt.not_before)->capture_default_str();
  issue_root->add_option("--not-after", root_opt.not_after)->required();
  issue_root->add_option("--serial", root_opt.serial)->capture_default_str();
  issue_root->add_option("--out", root_out)->required();
  issue_root->callback([&] {
    KeyPair kp = load_keypair(root_key_file);
    Extensions ext;
    ext.basic_constraints.is_ca = true;
    ext.key_usage.insert(KeyUsage::CertSign);
    ext.logged = true;
    Certificate tbs =
        build_certificate(root_opt, kp.pub, root_opt.cn, kp.sec.scheme, std::move(ext));
    save_certificate(sign_certificate(std::move(tbs), kp), root_out);
    std::cout << "WROTE " << root_out << "\n";
  });

  CommonCertOptions ca_opt;
  std::string ca_key_file, ca_issuer_cert, ca_issuer_key, ca_out;
  std::vector<std::string> ca_constraints;
  std::int64_t ca_path_len = -1;
  auto* issue_ca = app.add_subcommand("issue-ca", "CA certificate");
  issue_ca->add_option("--cn", ca_opt.cn)->required();
  issue_ca->add_option("--key", ca_key_file, "subject keypair (.pkey)")->required();
  issue_ca->add_option("--issuer-cert", ca_issuer_cert)->required();
  issue_ca->add_option("--issuer-key", ca_issuer_key)->required();
  issue_ca->add_option("--not-before", ca_opt.not_before)->capture_default_str();
  issue_ca->add_option("--not-after", ca_opt.not_after)->required();
  issue_ca->add_option("--serial", ca_opt.serial)->capture_default_str();
  issue_ca->add_option("--path-len", ca_path_len, "bound on subsequent CA certificates");
  issue_ca->add_option("--name-constraint", ca_constraints,
                       "permitted subtree (leading-dot pattern); repeatable");
  issue_ca->add_option("--out", ca_out)->required();
  issue_ca->callback([&] {
    KeyPair subject = load_keypair(ca_key_file);
    Certificate issuer = load_certificate(ca_issuer_cert);
    KeyPair issuer_key = load_keypair(ca_issuer_key);
    Extensions ext;
    ext.basic_constraints.is_ca = true;
    if (ca_path_len >= 0) ext.basic_constraints.path_len = static_cast<std::uint32_t>(ca_path_len);
    ext.key_usage.insert(KeyUsage::CertSign);
    ext.logged = true;
    if (!ca_constraints.empty()) {
      std::vector<NamePattern> nc;
      for (const std::string& c : ca_constraints) {
        NamePattern p = NamePattern::parse(c);
        if (p.kind() != PatternKind::Subtree)
          throw CLI::ValidationError("--name-constraint", "constraint needs a leading dot");
        nc.push_back(std::move(p));
      }
      ext.name_constraints = NameSet::of(std::move(nc));
    }
    Certificate tbs = build_certificate(ca_opt, subject.pub, issuer.subject_label(),
                                        issuer_key.sec.scheme, std::move(ext));
    save_certificate(sign_certificate(std::move(tbs), issuer_key), ca_out);
    std::cout << "WROTE " << ca_out << "\n";
  });

  CommonCertOptions ee_opt;
  std::string ee_key_file, ee_issuer_cert, ee_issuer_key, ee_out, ee_policy, ee_failure;
  std::int64_t ee_path_len = -1;
  bool ee_delegation_usage = false, ee_digital_signature = false;
  auto* issue_ee = app.add_subcommand("issue-ee", "end-entity certificate");
  issue_ee->add_option("--cn", ee_opt.cn)->required();
  issue_ee->add_option("--san", ee_opt.sans, "subject alternative name; repeatable");
  issue_ee->add_option("--key", ee_key_file)->required();
  issue_ee->add_option("--issuer-cert", ee_issuer_cert)->required();
  issue_ee->add_option("--issuer-key", ee_issuer_key)->required();
  issue_ee->add_option("--not-before", ee_opt.not_before)->capture_default_str();
  issue_ee->add_option("--not-after", ee_opt.not_after)->required();
  issue_ee->add_option("--serial", ee_opt.serial)->capture_default_str();
  issue_ee->add_option("--path-len", ee_path_len, "bound on subsequent proxy certificates");
  issue_ee->add_flag("--delegation-usage", ee_delegation_usage);
  issue_ee->add_flag("--digital-signature", ee_digital_signature);
  issue_ee->add_option("--resumption-policy", ee_policy, "allow|disallow|bound");
  issue_ee->add_option("--failure-mode", ee_failure, "hard-fail|soft-fail");
  issue_ee->add_option("--out", ee_out)->required();
  issue_ee->callback([&] {
    KeyPair subject = load_keypair(ee_key_file);
    Certificate issuer = load_certificate(ee_issuer_cert);
    KeyPair issuer_key = load_keypair(ee_issuer_key);
    Extensions ext;
    ext.basic_constraints.is_ca = false;
    if (ee_path_len >= 0) ext.basic_constraints.path_len = static_cast<std::uint32_t>(ee_path_len);
    ext.delegation_usage = ee_delegation_usage;
    if (ee_digital_signature) ext.key_usage.insert(KeyUsage::DigitalSignature);
    if (!ee_policy.empty()) ext.resumption_policy = resumption_policy_from_string(ee_policy);
    if (!ee_failure.empty()) ext.failure_mode = failure_mode_from_string(ee_failure);
    ext.logged = true;
    Certificate tbs = build_certificate(ee_opt, subject.pub, issuer.subject_label(),
                                        issuer_key.sec.scheme, std::move(ext));
    save_certificate(sign_certificate(std::move(tbs), issuer_key), ee_out);
    std::cout << "WROTE " << ee_out << "\n";
  });

  // --- csr ---
  std::string csr_key_file, csr_out, csr_policy, csr_failure;
  std::vector<std::string> csr_names;
  std::int64_t csr_path_len = -1;
  auto* csr_cmd = app.add_subcommand("csr", "proxy certificate signing request");
  csr_cmd->add_option("--key", csr_key_file, "delegate keypair or public key")->required();
  csr_cmd->add_option("--name", csr_names, "requested name pattern; repeatable")->required();
  csr_cmd->add_option("--path-len", csr_path_len);
  csr_cmd->add_option("--resumption-policy", csr_policy);
  csr_cmd->add_option("--failure-mode", csr_failure);
  csr_cmd->add_option("--out", csr_out)->required();
  csr_cmd->callback([&] {
    ProxyCsr csr;
    csr.public_key = load_public_key(csr_key_file);
    std::vector<NamePattern> patterns;
    for (const std::string& name : csr_names) patterns.push_back(NamePattern::parse(name));
    csr.requested_names = NameSet::of(std::move(patterns));
    if (csr_path_len >= 0) csr.path_len = static_cast<std::uint32_t>(csr_path_len);
    if (!csr_policy.empty()) csr.resumption_policy = resumption_policy_from_string(csr_policy);
    if (!csr_failure.empty()) csr.failure_mode = failure_mode_from_string(csr_failure);
    save_csr(csr, csr_out);
    std::cout << "WROTE " << csr_out << "\n";
  });

  // --- issue-proxy ---
  std::string ip_parent, ip_signer_key, ip_csr, ip_out;
  std::uint64_t ip_nb = 0, ip_na = 0, ip_serial = 1;
  auto* issue_proxy_cmd = app.add_subcommand("issue-proxy", "proxy certificate from a CSR");
  issue_proxy_cmd->add_option("--parent", ip_parent, "parent certificate (.pcert)")->required();
  issue_proxy_cmd->add_option("--signer-key", ip_signer_key, "parent keypair (.pkey)")->required();
  issue_proxy_cmd->add_option("--csr", ip_csr)->required();
  issue_proxy_cmd->add_option("--not-before", ip_nb)->capture_default_str();
  issue_proxy_cmd->add_option("--not-after", ip_na)->required();
  issue_proxy_cmd->add_option("--serial", ip_serial)->capture_default_str();
  issue_proxy_cmd->add_option("--out", ip_out)->required();
  issue_proxy_cmd->callback([&] {
    Certificate parent = load_certificate(ip_parent);
    LocalKeySigner signer(load_keypair(ip_signer_key));
    ProxyCsr csr = load_csr(ip_csr);
    Certificate proxy = issue_proxy(parent, signer, csr,
                                    ValidityPeriod(Instant{ip_nb}, Instant{ip_na}), ip_serial);
    save_certificate(proxy, ip_out);
    std::cout << "WROTE " << ip_out << "\n";
  });

  // --- issue-dc ---
  std::string dc_ee, dc_ee_key, dc_pub, dc_scheme = "ed25519", dc_out;
  std::uint64_t dc_ttl = 0, dc_at = 0;
  auto* issue_dc_cmd = app.add_subcommand("issue-dc", "delegated credential");
  issue_dc_cmd->add_option("--ee", dc_ee, "end-entity certificate")->required();
  issue_dc_cmd->add_option("--ee-key", dc_ee_key, "end-entity keypair")->required();
  issue_dc_cmd->add_option("--dc-pub", dc_pub, "credential public key (.pkey)")->required();
  issue_dc_cmd->add_option("--ttl", dc_ttl, "lifetime in seconds from --at")->required();
  issue_dc_cmd->add_option("--scheme", dc_scheme, "handshake signature scheme")
      ->capture_default_str();
  issue_dc_cmd->add_option("--at", dc_at, "simulated issuance time")->required();
  issue_dc_cmd->add_option("--out", dc_out)->required();
  issue_dc_cmd->callback([&] {
    Certificate ee = load_certificate(dc_ee);
    LocalKeySigner signer(load_keypair(dc_ee_key));
    DelegatedCredential dc = issue_dc(ee, signer, load_public_key(dc_pub), dc_ttl,
                                      scheme_from_string(dc_scheme), Instant{dc_at});
    save_dc(dc, ee, dc_out);
    std::cout << "WROTE " << dc_out << "\n";
  });

  // --- validate-chain ---
  std::string vc_chain, vc_anchors, vc_target, vc_format = "text";
  std::uint64_t vc_at = 0;
  int vc_status = 0;
  auto* validate_chain = app.add_subcommand("validate-chain", "certification-path validation");
  validate_chain->add_option("chain", vc_chain, "chain file (concatenated .pcert)")->required();
  validate_chain->add_option("--anchors", vc_anchors, "trust anchor file or directory")
      ->required();
  validate_chain->add_option("--target", vc_target, "DNS name the chain must cover")->required();
  validate_chain->add_option("--at", vc_at, "simulated validation time")->required();
  validate_chain->add_option("--format", vc_format, "text|records")->capture_default_str();
  validate_chain->callback([&] {
    Chain chain = load_chain(vc_chain);
    std::vector<Certificate> anchors = load_anchors(vc_anchors);
    ValidationOutcome outcome =
        validate(chain, anchors, Instant{vc_at}, DnsName::parse(vc_target));
    vc_status = report_outcome(outcome, vc_format == "records");
  });

  // --- validate-dc ---
  std::string vd_dc, vd_ee, vd_scheme = "ed25519";
  std::uint64_t vd_at = 0;
  int vd_status = 0;
  auto* validate_dc_cmd = app.add_subcommand("validate-dc", "delegated-credential validation");
  validate_dc_cmd->add_option("credential", vd_dc, ".pdc file")->required();
  validate_dc_cmd->add_option("--ee", vd_ee, "issuing end-entity certificate")->required();
  validate_dc_cmd->add_option("--scheme", vd_scheme, "handshake signature scheme")
      ->capture_default_str();
  validate_dc_cmd->add_option("--at", vd_at, "simulated validation time")->required();
  validate_dc_cmd->callback([&] {
    DelegatedCredential dc = load_dc(vd_dc);
    Certificate ee = load_certificate(vd_ee);
    DcOutcome outcome = validate_dc(dc, ee, Instant{vd_at}, scheme_from_string(vd_scheme));
    if (outcome.accepted) {
      std::cout << "ACCEPT\n";
      vd_status = 0;
    } else {
      std::cout << "REJECT " << to_string(outcome.reason) << "\n";
      vd_status = 1;
    }
  });

  // --- server run ---
  auto* server = app.add_subcommand("server", "certificate server");
  std::string sr_parent, sr_key, sr_csr, sr_out_dir;
  std::uint64_t sr_start = 0, sr_period = 0, sr_validity = 0, sr_until = 0;
  auto* server_run = server->add_subcommand("run", "drive the reissuance schedule");
  server_run->add_option("--parent", sr_parent, "parent certificate or chain")->required();
  server_run->add_option("--signer-key", sr_key)->required();
  server_run->add_option("--csr", sr_csr)->required();
  server_run->add_option("--start", sr_start)->capture_default_str();
  server_run->add_option("--period", sr_period)->required();
  server_run->add_option("--validity", sr_validity)->required();
  server_run->add_option("--until", sr_until, "simulated stop time")->required();
  server_run->add_option("--out-dir", sr_out_dir)->required();
  server_run->callback([&] {
    Chain parent_chain = load_chain(sr_parent);
    CertificateServer srv(parent_chain.certs.back(),
                          std::make_shared<LocalKeySigner>(load_keypair(sr_key)),
                          IssuanceSchedule(Instant{sr_start}, sr_period, sr_validity),
                          load_csr(sr_csr));
    for (std::uint64_t t = sr_start; t <= sr_until; t += sr_period) {
      if (auto cert = srv.tick(Instant{t})) {
        std::string file = sr_out_dir + "/proxy-" + std::to_string(cert->serial) + ".pcert";
        save_certificate(*cert, file);
        std::cout << "ISSUED serial=" << cert->serial
                  << " not_before=" << cert->validity.not_before.seconds
                  << " not_after=" << cert->validity.not_after.seconds << " " << file << "\n";
      }
    }
  });

  // --- simulate ---
  std::string sim_script;
  auto* simulate = app.add_subcommand("simulate", "run a session-resumption scenario");
  simulate->add_option("script", sim_script)->required();
  simulate->callback([&] { std::cout << run_scenario_file(sim_script).to_tsv(); });

  // --- matrix ---
  auto* matrix = app.add_subcommand("matrix", "scheme-evaluation matrix");
  std::string mx_scheme;
  auto* matrix_show = matrix->add_subcommand("show", "one row of the matrix");
  matrix_show->add_option("scheme", mx_scheme, "scheme key (a-s or a combination label)")
      ->required();
  matrix_show->callback([&] {
    std::vector<BenefitLevel> levels;
    for (const CriterionInfo& c : criteria()) levels.push_back(lookup(mx_scheme, c.id));
    const auto& crits = criteria();
    for (std::size_t i = 0; i < crits.size(); ++i)
      std::cout << crits[i].id << "\t" << to_string(levels[i]) << "\t" << crits[i].name << "\n";
  });

  std::vector<std::string> mx_combine;
  auto* matrix_combine = matrix->add_subcommand("combine", "evaluate a scheme combination");
  matrix_combine->add_option("schemes", mx_combine, "scheme keys")->required()->expected(-1);
  matrix_combine->callback([&] {
    SchemeProfile profile = combine(std::set<std::string>(mx_combine.begin(), mx_combine.end()));
    const auto& crits = criteria();
    for (std::size_t i = 0; i < crits.size(); ++i)
      std::cout << crits[i].id << "\t" << to_string(profile.levels[i]) << "\t" << crits[i].name
                << "\n";
  });

  std::string mx_file;
  int mx_status = 0;
  auto* matrix_check = matrix->add_subcommand("check", "verify table data and calculus");
  matrix_check->add_option("--file", mx_file, "matrix data file to byte-compare");
  matrix_check->callback([&] {
    std::string content = mx_file.empty() ? std::string() : read_text_file(mx_file);
    MatrixCheckReport report = check_matrix(content);
    for (const auto& [combo, diff] : report.deviations)
      std::cout << "DEVIATION " << combo << " " << diff.criterion_id << " predicted="
                << to_string(diff.predicted) << " table=" << to_string(diff.table) << "\n";
    std::cout << "CELLS " << report.matching_cells << "/" << report.combination_cells << "\n";
    if (!mx_file.empty())
      std::cout << "DATA-FILE " << (report.data_file_matches ? "MATCH" : "MISMATCH") << "\n";
    bool ok = report.matching_cells >= 130 && report.deviations_confined &&
              (mx_file.empty() || report.data_file_matches);
    std::cout << (ok ? "OK" : "FAIL") << "\n";
    mx_status = ok ? 0 : 1;
  });

  // --- fixtures ---
  auto* fixtures = app.add_subcommand("fixtures", "deterministic test PKI");
  std::uint64_t fx_seed = 1;
  std::string fx_out;
  std::vector<std::string> fx_shapes;
  auto* fixtures_generate = fixtures->add_subcommand("generate", "write the fixture corpus");
  fixtures_generate->add_option("--seed", fx_seed)->capture_default_str();
  fixtures_generate->add_option("--out", fx_out)->required();
  fixtures_generate->add_option("--shape", fx_shapes, "chains|credentials|scripts; repeatable");
  fixtures_generate->callback([&] {
    FixtureSpec spec = fx_shapes.empty() ? FixtureSpec::defaults(fx_seed)
                                         : FixtureSpec{fx_seed, fx_shapes};
    generate_fixtures(spec, fx_out);
    std::cout << "WROTE " << fx_out << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return vc_status + vd_status + mx_status;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const pcert::DomainError& e) {
    std::cout << "REJECT " << pcert::to_string(e.code()) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
