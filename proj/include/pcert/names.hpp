// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PCERT_NAMES_HPP
#define PCERT_NAMES_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pcert {

/// DNS name as an ordered label list, leftmost label first
/// ("www.example.com" -> ["www","example","com"]). Labels are normalized to
/// lowercase at construction and restricted to [a-z0-9-]+.
class DnsName {
 public:
  static DnsName parse(std::string_view text);  // throws std::invalid_argument

  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t depth() const { return labels_.size(); }
  std::string to_string() const;

  /// True when this name is a proper subdomain of |suffix| (strictly deeper,
  /// trailing labels equal). "example.com" is not a proper subdomain of
  /// itself.
  bool proper_subdomain_of(const DnsName& suffix) const;

  auto operator<=>(const DnsName&) const = default;

 private:
  explicit DnsName(std::vector<std::string> labels) : labels_(std::move(labels)) {}
  std::vector<std::string> labels_;
};

enum class PatternKind {
  Exact,     // "host.example.com"   denotes { host.example.com }
  Wildcard,  // "*.example.com"      denotes { l.example.com : l a single label }
  Subtree,   // ".example.com"       denotes proper subdomains of example.com, any depth >= 1
};

/// One DNS-name pattern. Wildcards are only legal as the entire leftmost
/// label; a wildcard matches exactly one label (foo.example.com but not
/// bar.foo.example.com). A subtree excludes its own apex.
class NamePattern {
 public:
  NamePattern(PatternKind kind, DnsName base) : kind_(kind), base_(std::move(base)) {}

  /// Textual syntax: "example.com" (Exact), "*.example.com" (Wildcard),
  /// ".example.com" (Subtree). Embedded wildcards are rejected.
  static NamePattern parse(std::string_view text);  // throws std::invalid_argument

  PatternKind kind() const { return kind_; }
  /// The full name for Exact, the suffix for Wildcard/Subtree.
  const DnsName& base() const { return base_; }

  std::string to_string() const;

  bool matches(const DnsName& name) const;

  /// True when denotation(other) is contained in denotation(*this).
  bool subsumes(const NamePattern& other) const;

  auto operator<=>(const NamePattern&) const = default;

 private:
  PatternKind kind_;
  DnsName base_;
};

/// Pairwise intersection is always a single pattern or empty.
std::optional<NamePattern> intersect_patterns(const NamePattern& a, const NamePattern& b);

/// Finite algebra of name patterns; the type of the "permitted subtrees"
/// state variable. Finite sets are kept normalized: sorted, deduplicated,
/// and with no pattern subsumed by another.
class NameSet {
 public:
  NameSet() : universal_(false) {}  // empty finite set

  static NameSet universal();
  static NameSet of(std::vector<NamePattern> patterns);  // normalizes
  static NameSet single(NamePattern pattern);

  bool is_universal() const { return universal_; }
  bool empty() const { return !universal_ && patterns_.empty(); }
  const std::vector<NamePattern>& patterns() const { return patterns_; }

  bool member(const DnsName& name) const;

  /// Denotation of the result is the intersection of the denotations.
  NameSet intersect(const NameSet& other) const;

  /// denotation(*this) contained in denotation(other), decided as
  /// intersect(other) == *this on normalized forms.
  bool subset_of(const NameSet& other) const;

  std::string to_string() const;  // "{a.com, *.b.com}" or "universal"

  bool operator==(const NameSet&) const = default;

 private:
  bool universal_;
  std::vector<NamePattern> patterns_;
};

}  // namespace pcert

#endif  // PCERT_NAMES_HPP
