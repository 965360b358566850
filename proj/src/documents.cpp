// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcert/documents.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "json_codec.hpp"

namespace pcert {

using nlohmann::json;

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string certificate_to_document(const Certificate& cert) {
  return codec::certificate_to_json(cert).dump() + "\n";
}

Certificate certificate_from_document(std::string_view text) {
  return codec::certificate_from_json(json::parse(text));
}

void save_certificate(const Certificate& cert, const std::filesystem::path& path) {
  write_text_file(path, certificate_to_document(cert));
}

Certificate load_certificate(const std::filesystem::path& path) {
  Chain chain = load_chain(path);
  if (chain.certs.size() != 1)
    throw std::runtime_error(path.string() + ": expected a single certificate document");
  return chain.certs.front();
}

void save_chain(const Chain& chain, const std::filesystem::path& path) {
  std::string out;
  for (const Certificate& cert : chain.certs) out += certificate_to_document(cert);
  write_text_file(path, out);
}

Chain load_chain(const std::filesystem::path& path) {
  std::istringstream in(read_text_file(path));
  Chain chain;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    chain.certs.push_back(certificate_from_document(line));
  }
  if (chain.certs.empty()) throw std::runtime_error(path.string() + ": no certificates");
  return chain;
}

std::vector<Certificate> load_anchors(const std::filesystem::path& path) {
  std::vector<Certificate> anchors;
  if (std::filesystem::is_directory(path)) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(path)) {
      if (entry.path().extension() == ".pcert") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      Chain chain = load_chain(file);
      anchors.insert(anchors.end(), chain.certs.begin(), chain.certs.end());
    }
  } else {
    Chain chain = load_chain(path);
    anchors = std::move(chain.certs);
  }
  if (anchors.empty()) throw std::runtime_error(path.string() + ": no trust anchors found");
  return anchors;
}

void save_keypair(const KeyPair& keypair, const std::filesystem::path& path) {
  json doc;
  doc["public_key"] = to_hex(keypair.pub.bytes);
  doc["scheme"] = std::string(to_string(keypair.sec.scheme));
  doc["secret_key"] = to_hex(keypair.sec.bytes);
  write_text_file(path, doc.dump() + "\n");
}

KeyPair load_keypair(const std::filesystem::path& path) {
  json doc = json::parse(read_text_file(path));
  KeyPair kp;
  SignatureScheme scheme = scheme_from_string(doc.at("scheme").get<std::string>());
  kp.pub = PublicKey{scheme, from_hex(doc.at("public_key").get<std::string>())};
  kp.sec = SecretKey{scheme, from_hex(doc.at("secret_key").get<std::string>())};
  return kp;
}

void save_public_key(const PublicKey& key, const std::filesystem::path& path) {
  json doc;
  doc["public_key"] = to_hex(key.bytes);
  doc["scheme"] = std::string(to_string(key.scheme));
  write_text_file(path, doc.dump() + "\n");
}

PublicKey load_public_key(const std::filesystem::path& path) {
  json doc = json::parse(read_text_file(path));
  return PublicKey{scheme_from_string(doc.at("scheme").get<std::string>()),
                   from_hex(doc.at("public_key").get<std::string>())};
}

void save_csr(const ProxyCsr& csr, const std::filesystem::path& path) {
  check_csr_shape(csr);
  json doc;
  if (csr.path_len) doc["path_len"] = *csr.path_len;
  doc["public_key"] = codec::public_key_to_json(csr.public_key);
  std::vector<std::string> names;
  for (const NamePattern& p : csr.requested_names.patterns()) names.push_back(p.to_string());
  doc["requested_names"] = names;
  if (csr.resumption_policy)
    doc["resumption_policy"] = std::string(to_string(*csr.resumption_policy));
  if (csr.failure_mode) doc["failure_mode"] = std::string(to_string(*csr.failure_mode));
  write_text_file(path, doc.dump() + "\n");
}

ProxyCsr load_csr(const std::filesystem::path& path) {
  json doc = json::parse(read_text_file(path));
  ProxyCsr csr;
  csr.public_key = codec::public_key_from_json(doc.at("public_key"));
  std::vector<NamePattern> patterns;
  for (const auto& name : doc.at("requested_names"))
    patterns.push_back(NamePattern::parse(name.get<std::string>()));
  csr.requested_names = NameSet::of(std::move(patterns));
  if (doc.contains("path_len")) csr.path_len = doc.at("path_len").get<std::uint32_t>();
  if (doc.contains("resumption_policy"))
    csr.resumption_policy =
        resumption_policy_from_string(doc.at("resumption_policy").get<std::string>());
  if (doc.contains("failure_mode"))
    csr.failure_mode = failure_mode_from_string(doc.at("failure_mode").get<std::string>());
  check_csr_shape(csr);
  return csr;
}

void save_dc(const DelegatedCredential& dc, const Certificate& ee,
             const std::filesystem::path& path) {
  auto binding = dc_binding_encode(ee, dc);
  json doc;
  doc["binding"] = json::parse(std::string(binding.begin(), binding.end()));
  doc["signature"] = codec::signature_to_json(dc.signature);
  write_text_file(path, doc.dump() + "\n");
}

DelegatedCredential load_dc(const std::filesystem::path& path) {
  json doc = json::parse(read_text_file(path));
  const json& binding = doc.at("binding");
  DelegatedCredential dc;
  dc.public_key = codec::public_key_from_json(binding.at("public_key"));
  dc.relative_ttl = binding.at("relative_ttl").get<std::uint64_t>();
  dc.handshake_scheme = scheme_from_string(binding.at("handshake_scheme").get<std::string>());
  dc.signature = codec::signature_from_json(doc.at("signature"));
  return dc;
}

}  // namespace pcert
