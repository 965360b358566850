// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

// Internal JSON codec shared by the canonical encoder and the document I/O
// layer. Not part of the public headers.

#ifndef PCERT_SRC_JSON_CODEC_HPP
#define PCERT_SRC_JSON_CODEC_HPP

#include <json.hpp>

#include "pcert/certificate.hpp"

namespace pcert::codec {

nlohmann::json tbs_to_json(const Certificate& cert);
nlohmann::json certificate_to_json(const Certificate& cert);  // tbs + signature
Certificate certificate_from_json(const nlohmann::json& doc);  // throws std::invalid_argument

nlohmann::json public_key_to_json(const PublicKey& key);
PublicKey public_key_from_json(const nlohmann::json& j);

nlohmann::json signature_to_json(const SignatureValue& sig);
SignatureValue signature_from_json(const nlohmann::json& j);

}  // namespace pcert::codec

#endif  // PCERT_SRC_JSON_CODEC_HPP
