// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcert/names.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>

#include "name_universe.hpp"

using namespace pcert;

namespace {

NameSet set_of(std::initializer_list<const char*> patterns) {
  std::vector<NamePattern> out;
  for (const char* p : patterns) out.push_back(NamePattern::parse(p));
  return NameSet::of(std::move(out));
}

}  // namespace

TEST_CASE("dns name parsing and normalization") {
  DnsName name = DnsName::parse("WWW.Example.COM");
  CHECK(name.to_string() == "www.example.com");
  CHECK(name.labels() == std::vector<std::string>{"www", "example", "com"});

  CHECK_THROWS_AS(DnsName::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(DnsName::parse("a..b"), std::invalid_argument);
  CHECK_THROWS_AS(DnsName::parse("a.b."), std::invalid_argument);
  CHECK_THROWS_AS(DnsName::parse("bad_label.com"), std::invalid_argument);
}

TEST_CASE("pattern parsing") {
  CHECK(NamePattern::parse("example.com").kind() == PatternKind::Exact);
  CHECK(NamePattern::parse("*.example.com").kind() == PatternKind::Wildcard);
  CHECK(NamePattern::parse(".example.com").kind() == PatternKind::Subtree);
  CHECK(NamePattern::parse("*.Example.COM").to_string() == "*.example.com");

  CHECK_THROWS_AS(NamePattern::parse("foo.*.com"), std::invalid_argument);
  CHECK_THROWS_AS(NamePattern::parse("*.*.com"), std::invalid_argument);
  CHECK_THROWS_AS(NamePattern::parse(""), std::invalid_argument);
}

TEST_CASE("wildcard matches one level only") {
  NamePattern wild = NamePattern::parse("*.example.com");
  CHECK(wild.matches(DnsName::parse("foo.example.com")));
  CHECK_FALSE(wild.matches(DnsName::parse("bar.foo.example.com")));
  CHECK_FALSE(wild.matches(DnsName::parse("example.com")));
}

TEST_CASE("subtree constraint covers proper subdomains at any depth") {
  NamePattern subtree = NamePattern::parse(".example.com");
  CHECK(subtree.matches(DnsName::parse("host.example.com")));
  CHECK(subtree.matches(DnsName::parse("my.host.example.com")));
  CHECK_FALSE(subtree.matches(DnsName::parse("example.com")));
  CHECK_FALSE(subtree.matches(DnsName::parse("badexample.com")));
}

TEST_CASE("set membership") {
  CHECK(NameSet::universal().member(DnsName::parse("anything.at.all")));
  CHECK_FALSE(NameSet().member(DnsName::parse("a.com")));

  NameSet s = set_of({"a.com", ".b.com"});
  CHECK(s.member(DnsName::parse("a.com")));
  CHECK(s.member(DnsName::parse("x.b.com")));
  CHECK(oracle::set_member(s, "x.b.com"));  // agrees with the brute-force route
  CHECK_FALSE(s.member(DnsName::parse("b.com")));
  CHECK_FALSE(s.member(DnsName::parse("c.com")));
}

TEST_CASE("normalization removes subsumed patterns") {
  NameSet s = set_of({"*.ex.com", "s1.ex.com"});
  REQUIRE(s.patterns().size() == 1);
  CHECK(s.patterns()[0].to_string() == "*.ex.com");

  NameSet dedup = set_of({"a.com", "a.com"});
  CHECK(dedup.patterns().size() == 1);

  NameSet nested = set_of({".example.com", "*.example.com", "host.example.com"});
  REQUIRE(nested.patterns().size() == 1);
  CHECK(nested.patterns()[0].to_string() == ".example.com");
}

TEST_CASE("intersection pairwise rules") {
  CHECK(set_of({".example.com"}).intersect(set_of({"host.example.com"})) ==
        set_of({"host.example.com"}));
  CHECK(set_of({"*.example.com"}).intersect(set_of({"bar.foo.example.com"})).empty());
  CHECK(set_of({".b.com"}).intersect(set_of({"*.a.b.com"})) == set_of({"*.a.b.com"}));
  CHECK(set_of({"*.example.com"}).intersect(set_of({".example.com"})) ==
        set_of({"*.example.com"}));
  CHECK(set_of({".a.com"}).intersect(set_of({".com"})) == set_of({".a.com"}));
  CHECK(set_of({".a.com"}).intersect(set_of({".b.com"})).empty());
  CHECK(set_of({"a.com"}).intersect(set_of({"b.com"})).empty());
  CHECK(set_of({"*.a.com"}).intersect(set_of({"*.b.com"})).empty());

  NameSet s = set_of({"a.com", "*.b.com", ".c.com"});
  CHECK(NameSet::universal().intersect(s) == s);
  CHECK(s.intersect(NameSet::universal()) == s);
  CHECK(s.intersect(s) == s);
}

TEST_CASE("subset via intersection") {
  CHECK(set_of({"s1.ex.com"}).subset_of(set_of({"*.ex.com"})));
  CHECK(set_of({"*.ex.com"}).subset_of(set_of({".ex.com"})));
  CHECK_FALSE(set_of({".ex.com"}).subset_of(set_of({"*.ex.com"})));
  CHECK(set_of({}).subset_of(set_of({"a.com"})));
  CHECK(set_of({"a.com"}).subset_of(NameSet::universal()));
}

TEST_CASE("oracle equivalence over the exhaustive universe") {
  std::mt19937_64 rng(0x5eed0001);
  const auto& names = oracle::universe();
  REQUIRE(names.size() == 780);  // 5 + 25 + 125 + 625

  for (int round = 0; round < 400; ++round) {
    NameSet a = oracle::random_set(rng);
    NameSet b = oracle::random_set(rng);
    NameSet both = a.intersect(b);
    for (std::size_t i = 0; i < names.size(); ++i) {
      DnsName name = DnsName::parse(names[i]);
      bool oa = oracle::set_member(a, names[i]);
      bool ob = oracle::set_member(b, names[i]);
      // member agrees with the string-based route.
      REQUIRE(a.member(name) == oa);
      REQUIRE(b.member(name) == ob);
      // intersection denotation is exactly the conjunction.
      REQUIRE(oracle::set_member(both, names[i]) == (oa && ob));
      REQUIRE(both.member(name) == (oa && ob));
    }
  }
}

TEST_CASE("intersection is commutative, associative, idempotent") {
  std::mt19937_64 rng(0x5eed0002);
  for (int round = 0; round < 200; ++round) {
    NameSet a = oracle::random_set(rng);
    NameSet b = oracle::random_set(rng);
    NameSet c = oracle::random_set(rng);
    CHECK(a.intersect(b) == b.intersect(a));
    CHECK(a.intersect(a) == a);
    CHECK(a.intersect(b).intersect(c) == a.intersect(b.intersect(c)));
  }
}

TEST_CASE("anti-extension: intersection never widens") {
  std::mt19937_64 rng(0x5eed0003);
  for (int round = 0; round < 200; ++round) {
    NameSet a = oracle::random_set(rng);
    NameSet b = oracle::random_set(rng);
    NameSet both = a.intersect(b);
    CHECK(both.subset_of(a));
    CHECK(both.subset_of(b));
    for (const std::string& name : oracle::universe()) {
      if (oracle::set_member(both, name)) {
        REQUIRE(oracle::set_member(a, name));
      }
    }
  }
}

TEST_CASE("normalization is a semantic no-op") {
  std::mt19937_64 rng(0x5eed0004);
  for (int round = 0; round < 100; ++round) {
    std::vector<NamePattern> raw;
    std::uniform_int_distribution<int> count(0, 5);
    int n = count(rng);
    for (int i = 0; i < n; ++i) raw.push_back(oracle::random_pattern(rng));
    NameSet normalized = NameSet::of(raw);
    for (const std::string& name : oracle::universe()) {
      bool any = false;
      for (const NamePattern& p : raw)
        if (oracle::pattern_matches(p.to_string(), name)) any = true;
      REQUIRE(normalized.member(DnsName::parse(name)) == any);
    }
  }
}
