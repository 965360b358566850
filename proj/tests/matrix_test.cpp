// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcert/matrix.hpp"

#include <doctest.h>

#include <fstream>
#include <map>
#include <sstream>

using namespace pcert;

TEST_CASE("criteria shape: 19 criteria in categories sized 4/2/3/3/6/1") {
  const auto& crits = criteria();
  REQUIRE(crits.size() == 19);
  std::map<char, int> sizes;
  for (const CriterionInfo& c : crits) sizes[c.category]++;
  CHECK(sizes['A'] == 4);
  CHECK(sizes['B'] == 2);
  CHECK(sizes['C'] == 3);
  CHECK(sizes['D'] == 3);
  CHECK(sizes['E'] == 6);
  CHECK(sizes['F'] == 1);
  CHECK(base_schemes().size() == 19);
  CHECK(combination_rows().size() == 7);
}

TEST_CASE("published cells") {
  CHECK(lookup("s", "B2") == BenefitLevel::Yes);       // proxy certs delegate w/o key sharing
  CHECK(lookup("p", "A4") == BenefitLevel::No);        // short-lived certs depend on the CA
  CHECK(lookup("n", "C1") == BenefitLevel::Partial);   // limited credential semantics
  CHECK(lookup("s", "A3") == BenefitLevel::Partial);   // not necessarily short-lived
  CHECK(lookup("a", "A1") == BenefitLevel::Partial);
  CHECK(lookup("l", "B2") == BenefitLevel::No);
  CHECK(lookup("o", "C2") == BenefitLevel::Partial);   // self-signed requires TOFU

  CHECK_THROWS_AS(lookup("z", "A1"), DomainError);
  CHECK_THROWS_AS(lookup("a", "G9"), DomainError);
}

TEST_CASE("combining short-lived with proxy certificates meets both requirements") {
  SchemeProfile ps = combine({"p", "s"});
  CHECK(ps.levels[criterion_index("A3")] == BenefitLevel::Yes);
  CHECK(ps.levels[criterion_index("A4")] == BenefitLevel::Yes);
  CHECK(ps.levels[criterion_index("B2")] == BenefitLevel::Yes);
  CHECK(satisfies_r1(ps));
  CHECK(satisfies_r2(ps));

  // Neither part alone satisfies the requirements.
  CHECK_FALSE(satisfies_r1(combine({"p"})));
  CHECK_FALSE(satisfies_r1(combine({"s"})));
}

TEST_CASE("combine of a single scheme is the scheme's own row") {
  for (const SchemeInfo& scheme : base_schemes()) {
    SchemeProfile profile = combine({scheme.key});
    CHECK(profile.levels == scheme.levels);
  }
}

TEST_CASE("benefits take the maximum, costs the minimum") {
  SchemeProfile psd = combine({"p", "s", "d"});
  // E3 (no extra CA involvement): fused p+s says Yes, PKISN says Partial.
  CHECK(psd.levels[criterion_index("E3")] == BenefitLevel::Partial);
  // A2 (damage-free CA revocation): only PKISN offers it; max wins.
  CHECK(psd.levels[criterion_index("A2")] == BenefitLevel::Yes);
}

TEST_CASE("combine is insensitive to duplicates") {
  CHECK(combine({"p", "s"}).levels == combine({"s", "p", "p"}).levels);
  CHECK(combine({"n", "g"}).levels == combine({"g", "n"}).levels);
}

TEST_CASE("calculus against the published combination rows") {
  CHECK(diff_against_table("p+s").empty());
  CHECK(diff_against_table("p+s+d").empty());
  CHECK(diff_against_table("p+s+(e|f)").empty());
  CHECK(diff_against_table("p+s+g").empty());

  // The n-combinations drop C1 from Partial to No in the published data; the
  // calculus surfaces the discrepancy instead of patching it.
  for (const char* label : {"n+d", "n+(e|f)", "n+g"}) {
    std::vector<CellDiff> diffs = diff_against_table(label);
    REQUIRE(diffs.size() == 1);
    CHECK(diffs[0].criterion_id == "C1");
    CHECK(diffs[0].predicted == BenefitLevel::Partial);
    CHECK(diffs[0].table == BenefitLevel::No);
  }

  CHECK_THROWS_AS(diff_against_table("x+y"), DomainError);
}

TEST_CASE("matrix check report") {
  MatrixCheckReport report = check_matrix("");
  CHECK(report.combination_cells == 133);
  CHECK(report.matching_cells == 130);
  CHECK(report.deviations.size() == 3);
  CHECK(report.deviations_confined);
}

TEST_CASE("the shipped data file matches the transcription byte for byte") {
  std::ifstream in(std::string(PCERT_REPO_DIR) + "/data/scheme_matrix.json", std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == matrix_to_json());
  MatrixCheckReport report = check_matrix(buf.str());
  CHECK(report.data_file_matches);
}
