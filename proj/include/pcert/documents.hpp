// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PCERT_DOCUMENTS_HPP
#define PCERT_DOCUMENTS_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pcert/certificate.hpp"
#include "pcert/delegated.hpp"
#include "pcert/issuance.hpp"
#include "pcert/validation.hpp"

namespace pcert {

// One-line canonical JSON documents. A .pcert file holds the canonical TBS
// encoding plus a detached signature block in a single document; chain files
// are concatenated documents, anchor-adjacent certificate first. Keys are
// scheme-tagged byte documents (.pkey), CSRs .pcsr, delegated credentials
// .pdc.

std::string certificate_to_document(const Certificate& cert);
Certificate certificate_from_document(std::string_view text);

void save_certificate(const Certificate& cert, const std::filesystem::path& path);
Certificate load_certificate(const std::filesystem::path& path);

void save_chain(const Chain& chain, const std::filesystem::path& path);
Chain load_chain(const std::filesystem::path& path);

/// A single .pcert file or a directory of them.
std::vector<Certificate> load_anchors(const std::filesystem::path& path);

void save_keypair(const KeyPair& keypair, const std::filesystem::path& path);
KeyPair load_keypair(const std::filesystem::path& path);

void save_public_key(const PublicKey& key, const std::filesystem::path& path);
/// Accepts either a public-only document or a full keypair document.
PublicKey load_public_key(const std::filesystem::path& path);

void save_csr(const ProxyCsr& csr, const std::filesystem::path& path);
ProxyCsr load_csr(const std::filesystem::path& path);

void save_dc(const DelegatedCredential& dc, const Certificate& ee,
             const std::filesystem::path& path);
DelegatedCredential load_dc(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace pcert

#endif  // PCERT_DOCUMENTS_HPP
