// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcert/matrix.hpp"

#include <algorithm>
#include <json.hpp>

namespace pcert {

namespace {

std::array<BenefitLevel, kCriterionCount> levels_from_string(std::string_view row) {
  std::array<BenefitLevel, kCriterionCount> levels{};
  if (row.size() != kCriterionCount)
    throw std::invalid_argument("benefit row must have 19 cells");
  for (std::size_t i = 0; i < kCriterionCount; ++i) levels[i] = benefit_from_char(row[i]);
  return levels;
}

std::string levels_to_string(const std::array<BenefitLevel, kCriterionCount>& levels) {
  std::string out;
  for (BenefitLevel level : levels) out.push_back(to_char(level));
  return out;
}

SchemeInfo row(std::string key, std::string name, std::string_view cells,
               std::vector<std::string> members = {}) {
  return SchemeInfo{std::move(key), std::move(name), std::move(members),
                    levels_from_string(cells)};
}

}  // namespace

char to_char(BenefitLevel level) {
  switch (level) {
    case BenefitLevel::No: return 'n';
    case BenefitLevel::Partial: return 'p';
    case BenefitLevel::Yes: return 'y';
  }
  return 'n';
}

std::string_view to_string(BenefitLevel level) {
  switch (level) {
    case BenefitLevel::No: return "No";
    case BenefitLevel::Partial: return "Partial";
    case BenefitLevel::Yes: return "Yes";
  }
  return "No";
}

BenefitLevel benefit_from_char(char c) {
  switch (c) {
    case 'n': return BenefitLevel::No;
    case 'p': return BenefitLevel::Partial;
    case 'y': return BenefitLevel::Yes;
  }
  throw std::invalid_argument(std::string("bad benefit cell '") + c + "'");
}

const std::vector<CriterionInfo>& criteria() {
  static const std::vector<CriterionInfo> list = {
      {"A1", 'A', "Supports CA revocation"},
      {"A2", 'A', "Supports damage-free CA revocation"},
      {"A3", 'A', "Supports leaf revocation"},
      {"A4", 'A', "Supports autonomous revocation"},
      {"B1", 'B', "Supports delegation"},
      {"B2", 'B', "Delegation without key sharing"},
      {"C1", 'C', "Supports domain-based policies"},
      {"C2", 'C', "No trust-on-first-use required"},
      {"C3", 'C', "Preserves user privacy"},
      {"D1", 'D', "Does not increase page-load delay"},
      {"D2", 'D', "Low burden on CAs"},
      {"D3", 'D', "Reasonable logging overhead"},
      {"E1", 'E', "Non-proprietary"},
      {"E2", 'E', "No special hardware required"},
      {"E3", 'E', "No extra CA involvement"},
      {"E4", 'E', "No browser-vendor involvement"},
      {"E5", 'E', "Server compatible"},
      {"E6", 'E', "Browser compatible"},
      {"F1", 'F', "No out-of-band communication"},
  };
  return list;
}

const std::vector<SchemeInfo>& base_schemes() {
  static const std::vector<SchemeInfo> list = {
      row("a", "Regular CRL", "pnynnnnynnnyyynyypn"),
      row("b", "Hard-fail OCSP", "pnynnnnynnnyyynyypn"),
      row("c", "OCSP stapling", "pnynnnnyyynyyynyppy"),
      row("d", "PKISN", "yyynnnnyyyyyyyppnny"),
      row("e", "CRLSets", "ynpnnnnyyyyynyynypy"),
      row("f", "OneCRL", "ynpnnnnyyyyynyynypy"),
      row("g", "CRLite", "ynynnnnyyyyyyyynyny"),
      row("h", "RevCast", "ynynnnnyyyyyynnyyny"),
      row("i", "RITM", "ynynnnnyyyyyypnyyny"),
      row("j", "SSL splitting", "nnnnyynyynyyyyyynyy"),
      row("k", "Keyless SSL", "nnnnyynyynyyyyyynyy"),
      row("l", "Key sharing", "nnnnynnyyyyyyyyyyyy"),
      row("m", "DANE-based delegation", "nnnnyynyynyyyyyyyny"),
      row("n", "Delegated credentials", "nnyyyypyyyyyyypynny"),
      row("o", "Self-signed certificates", "nnnnyyypyyyyyyyyypp"),
      row("p", "Short-lived certificates", "nnynnnnyyynnyynyyyy"),
      row("q", "Name-constrained certificates", "nnnnyyyyyyynyynyypy"),
      row("r", "Cruise-liner certificates", "nnnnynnyyyyyyynyyyy"),
      row("s", "Proxy certificates", "nnppyyyyyyyyyyyypny"),
  };
  return list;
}

const std::vector<SchemeInfo>& combination_rows() {
  static const std::vector<SchemeInfo> list = {
      row("n+d", "Delegated credentials + PKISN", "yyyyyynyyyyyyyppnny", {"n", "d"}),
      row("n+(e|f)", "Delegated credentials + CRLSets/OneCRL", "ynyyyynyyyyynypnnny",
          {"n", "e"}),
      row("n+g", "Delegated credentials + CRLite", "ynyyyynyyyyyyypnnny", {"n", "g"}),
      row("p+s", "Short-lived proxy certificates", "nnyyyyyyyyyyyyyypny", {"p", "s"}),
      row("p+s+d", "Short-lived proxy certificates + PKISN", "yyyyyyyyyyyyyyppnny",
          {"p", "s", "d"}),
      row("p+s+(e|f)", "Short-lived proxy certificates + CRLSets/OneCRL",
          "ynyyyyyyyyyynyynpny", {"p", "s", "e"}),
      row("p+s+g", "Short-lived proxy certificates + CRLite", "ynyyyyyyyyyyyyynpny",
          {"p", "s", "g"}),
  };
  return list;
}

std::size_t criterion_index(std::string_view id) {
  const auto& list = criteria();
  for (std::size_t i = 0; i < list.size(); ++i)
    if (list[i].id == id) return i;
  throw DomainError(ReasonCode::UnknownCriterion, std::string(id));
}

namespace {

const SchemeInfo* find_scheme(std::string_view key) {
  for (const SchemeInfo& scheme : base_schemes())
    if (scheme.key == key) return &scheme;
  for (const SchemeInfo& scheme : combination_rows())
    if (scheme.key == key) return &scheme;
  return nullptr;
}

}  // namespace

BenefitLevel lookup(std::string_view scheme_key, std::string_view criterion_id) {
  const SchemeInfo* scheme = find_scheme(scheme_key);
  if (!scheme) throw DomainError(ReasonCode::UnknownScheme, std::string(scheme_key));
  return scheme->levels[criterion_index(criterion_id)];
}

SchemeProfile combine(const std::set<std::string>& scheme_keys) {
  if (scheme_keys.empty()) throw std::invalid_argument("combine: empty scheme set");

  std::vector<const SchemeInfo*> members;
  std::set<std::string> keys = scheme_keys;

  // Short-lived proxy certificates are more than the sum of the parts:
  // reissuance-based revocation only materializes when both are present, so
  // the fused profile stands in for the pair.
  if (keys.contains("p") && keys.contains("s")) {
    keys.erase("p");
    keys.erase("s");
    members.push_back(find_scheme("p+s"));
  }
  for (const std::string& key : keys) {
    const SchemeInfo* scheme = nullptr;
    for (const SchemeInfo& base : base_schemes())
      if (base.key == key) scheme = &base;
    if (!scheme) throw DomainError(ReasonCode::UnknownScheme, key);
    members.push_back(scheme);
  }

  SchemeProfile profile;
  {
    std::string label;
    for (const std::string& key : scheme_keys) {
      if (!label.empty()) label += "+";
      label += key;
    }
    profile.key = label;
  }

  const auto& crits = criteria();
  for (std::size_t i = 0; i < kCriterionCount; ++i) {
    const bool benefit_category =
        crits[i].category == 'A' || crits[i].category == 'B' || crits[i].category == 'C';
    BenefitLevel level = members.front()->levels[i];
    for (const SchemeInfo* member : members) {
      level = benefit_category ? std::max(level, member->levels[i])
                               : std::min(level, member->levels[i]);
    }
    profile.levels[i] = level;
  }
  return profile;
}

std::vector<CellDiff> diff_against_table(std::string_view combination_label) {
  const SchemeInfo* combo = nullptr;
  for (const SchemeInfo& c : combination_rows())
    if (c.key == combination_label) combo = &c;
  if (!combo) throw DomainError(ReasonCode::UnknownCombination, std::string(combination_label));

  std::set<std::string> members(combo->members.begin(), combo->members.end());
  SchemeProfile predicted = combine(members);

  std::vector<CellDiff> diffs;
  const auto& crits = criteria();
  for (std::size_t i = 0; i < kCriterionCount; ++i) {
    if (predicted.levels[i] != combo->levels[i])
      diffs.push_back({crits[i].id, predicted.levels[i], combo->levels[i]});
  }
  return diffs;
}

bool satisfies_r1(const SchemeProfile& profile) {
  return profile.levels[criterion_index("A4")] == BenefitLevel::Yes;
}

bool satisfies_r2(const SchemeProfile& profile) {
  return profile.levels[criterion_index("B2")] == BenefitLevel::Yes;
}

std::string matrix_to_json() {
  using nlohmann::json;
  json doc;
  json jcrit = json::array();
  for (const CriterionInfo& c : criteria())
    jcrit.push_back(json{{"category", std::string(1, c.category)}, {"id", c.id}, {"name", c.name}});
  doc["criteria"] = std::move(jcrit);

  json jschemes = json::array();
  for (const SchemeInfo& s : base_schemes())
    jschemes.push_back(json{{"key", s.key}, {"levels", levels_to_string(s.levels)},
                            {"name", s.name}});
  doc["schemes"] = std::move(jschemes);

  json jcombos = json::array();
  for (const SchemeInfo& s : combination_rows())
    jcombos.push_back(json{{"key", s.key},
                           {"levels", levels_to_string(s.levels)},
                           {"members", s.members},
                           {"name", s.name}});
  doc["combinations"] = std::move(jcombos);
  doc["version"] = 1;
  return doc.dump() + "\n";
}

MatrixCheckReport check_matrix(std::string_view data_file_content) {
  MatrixCheckReport report;
  report.data_file_matches =
      !data_file_content.empty() && data_file_content == matrix_to_json();

  report.deviations_confined = true;
  for (const SchemeInfo& combo : combination_rows()) {
    report.combination_cells += kCriterionCount;
    std::vector<CellDiff> diffs = diff_against_table(combo.key);
    report.matching_cells += kCriterionCount - diffs.size();
    bool has_n = std::find(combo.members.begin(), combo.members.end(), "n") !=
                 combo.members.end();
    for (CellDiff& diff : diffs) {
      if (diff.criterion_id != "C1" || !has_n) report.deviations_confined = false;
      report.deviations.emplace_back(combo.key, std::move(diff));
    }
  }
  return report;
}

}  // namespace pcert
