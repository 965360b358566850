// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PCERT_MATRIX_HPP
#define PCERT_MATRIX_HPP

#include <array>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pcert/errors.hpp"

namespace pcert {

constexpr std::size_t kCriterionCount = 19;

/// Ordered: a scheme either misses, partially offers, or offers a benefit.
enum class BenefitLevel {
  No,
  Partial,
  Yes,
};

char to_char(BenefitLevel level);               // 'n' | 'p' | 'y'
std::string_view to_string(BenefitLevel level); // "No" | "Partial" | "Yes"
BenefitLevel benefit_from_char(char c);

struct CriterionInfo {
  std::string id;    // "A1" .. "F1"
  char category;     // 'A'..'F'
  std::string name;
};

struct SchemeInfo {
  std::string key;   // "a".."s" for base rows, "p+s" style for combinations
  std::string name;
  std::vector<std::string> members;  // combination rows only
  std::array<BenefitLevel, kCriterionCount> levels;
};

struct SchemeProfile {
  std::string key;
  std::array<BenefitLevel, kCriterionCount> levels;
};

/// The 19 criteria, categories sized A:4 B:2 C:3 D:3 E:6 F:1.
const std::vector<CriterionInfo>& criteria();

/// The 19 base scheme rows, keys a through s.
const std::vector<SchemeInfo>& base_schemes();

/// The 7 combination rows as published.
const std::vector<SchemeInfo>& combination_rows();

std::size_t criterion_index(std::string_view id);  // throws DomainError(UnknownCriterion)

BenefitLevel lookup(std::string_view scheme_key, std::string_view criterion_id);

/// Combination calculus: when short-lived certificates and proxy
/// certificates are both present, the fused short-lived-proxy-certificate
/// profile replaces the pair; then benefit categories A, B, C take the
/// maximum level across members and cost categories D, E, F the minimum.
SchemeProfile combine(const std::set<std::string>& scheme_keys);

struct CellDiff {
  std::string criterion_id;
  BenefitLevel predicted;
  BenefitLevel table;
};

/// Cells where the calculus disagrees with the published combination row.
std::vector<CellDiff> diff_against_table(std::string_view combination_label);

/// Requirement queries: autonomous revocation and delegation without key
/// sharing.
bool satisfies_r1(const SchemeProfile& profile);
bool satisfies_r2(const SchemeProfile& profile);

/// Canonical serialization of the whole matrix (the versioned data file).
std::string matrix_to_json();

struct MatrixCheckReport {
  bool data_file_matches = false;  // meaningful only when a file was given
  std::size_t combination_cells = 0;
  std::size_t matching_cells = 0;
  std::vector<std::pair<std::string, CellDiff>> deviations;  // (combination, cell)
  bool deviations_confined = false;  // all deviations are C1 on n-combinations
};

/// Runs the calculus over every combination row; when |data_file_content| is
/// non-empty it is also byte-compared against the canonical serialization.
MatrixCheckReport check_matrix(std::string_view data_file_content);

}  // namespace pcert

#endif  // PCERT_MATRIX_HPP
