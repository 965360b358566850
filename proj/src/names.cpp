// Copyright The pcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcert/names.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace pcert {

namespace {

bool valid_label(std::string_view label) {
  if (label.empty()) return false;
  for (char c : label) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-')) return false;
  }
  return true;
}

/// True when |name| ends with the labels of |suffix| and is |extra| labels
/// deeper.
bool deeper_by(const DnsName& name, const DnsName& suffix, std::size_t extra) {
  if (name.depth() != suffix.depth() + extra) return false;
  const auto& nl = name.labels();
  const auto& sl = suffix.labels();
  return std::equal(sl.begin(), sl.end(), nl.end() - static_cast<std::ptrdiff_t>(sl.size()));
}

bool ends_with(const DnsName& name, const DnsName& suffix) {
  if (name.depth() < suffix.depth()) return false;
  const auto& nl = name.labels();
  const auto& sl = suffix.labels();
  return std::equal(sl.begin(), sl.end(), nl.end() - static_cast<std::ptrdiff_t>(sl.size()));
}

}  // namespace

DnsName DnsName::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("DnsName: empty name");
  std::vector<std::string> labels;
  std::string current;
  std::string lowered(text);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  std::stringstream ss(lowered);
  while (std::getline(ss, current, '.')) {
    if (!valid_label(current))
      throw std::invalid_argument("DnsName: bad label '" + current + "' in '" + lowered + "'");
    labels.push_back(current);
  }
  if (labels.empty() || lowered.back() == '.')
    throw std::invalid_argument("DnsName: malformed name '" + lowered + "'");
  return DnsName(std::move(labels));
}

std::string DnsName::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (i) out.push_back('.');
    out += labels_[i];
  }
  return out;
}

bool DnsName::proper_subdomain_of(const DnsName& suffix) const {
  return depth() > suffix.depth() && ends_with(*this, suffix);
}

NamePattern NamePattern::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("NamePattern: empty pattern");
  if (text.starts_with("*.")) {
    auto suffix = text.substr(2);
    if (suffix.find('*') != std::string_view::npos)
      throw std::invalid_argument("NamePattern: embedded wildcard in '" + std::string(text) + "'");
    return NamePattern(PatternKind::Wildcard, DnsName::parse(suffix));
  }
  if (text.front() == '.') {
    return NamePattern(PatternKind::Subtree, DnsName::parse(text.substr(1)));
  }
  if (text.find('*') != std::string_view::npos)
    throw std::invalid_argument("NamePattern: embedded wildcard in '" + std::string(text) + "'");
  return NamePattern(PatternKind::Exact, DnsName::parse(text));
}

std::string NamePattern::to_string() const {
  switch (kind_) {
    case PatternKind::Exact: return base_.to_string();
    case PatternKind::Wildcard: return "*." + base_.to_string();
    case PatternKind::Subtree: return "." + base_.to_string();
  }
  return base_.to_string();
}

bool NamePattern::matches(const DnsName& name) const {
  switch (kind_) {
    case PatternKind::Exact:
      return name == base_;
    case PatternKind::Wildcard:
      // Exactly one label below the suffix, per RFC 6125: *.example.com
      // matches foo.example.com but not bar.foo.example.com.
      return deeper_by(name, base_, 1);
    case PatternKind::Subtree:
      // Proper subdomains only; the apex itself does not satisfy the
      // constraint.
      return name.proper_subdomain_of(base_);
  }
  return false;
}

bool NamePattern::subsumes(const NamePattern& other) const {
  if (*this == other) return true;
  switch (kind_) {
    case PatternKind::Exact:
      return false;  // a singleton only contains itself
    case PatternKind::Wildcard:
      // Wildcard(*.s) covers Exact(l.s) and nothing wider.
      return other.kind_ == PatternKind::Exact && deeper_by(other.base_, base_, 1);
    case PatternKind::Subtree:
      switch (other.kind_) {
        case PatternKind::Exact:
          return other.base_.proper_subdomain_of(base_);
        case PatternKind::Wildcard:
          // Every l.t lies strictly below s iff t = s or t below s.
          return other.base_ == base_ || other.base_.proper_subdomain_of(base_);
        case PatternKind::Subtree:
          return other.base_.proper_subdomain_of(base_);
      }
  }
  return false;
}

std::optional<NamePattern> intersect_patterns(const NamePattern& a, const NamePattern& b) {
  if (a.subsumes(b)) return b;
  if (b.subsumes(a)) return a;
  // No containment either way means no overlap: distinct exacts, distinct
  // wildcard suffixes, and non-nested subtrees are pairwise disjoint.
  return std::nullopt;
}

NameSet NameSet::universal() {
  NameSet s;
  s.universal_ = true;
  return s;
}

NameSet NameSet::of(std::vector<NamePattern> patterns) {
  std::sort(patterns.begin(), patterns.end());
  patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
  // Drop any pattern subsumed by a different one.
  std::vector<NamePattern> kept;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    bool subsumed = false;
    for (std::size_t j = 0; j < patterns.size(); ++j) {
      if (i != j && patterns[j].subsumes(patterns[i])) {
        subsumed = true;
        break;
      }
    }
    if (!subsumed) kept.push_back(patterns[i]);
  }
  NameSet s;
  s.patterns_ = std::move(kept);
  return s;
}

NameSet NameSet::single(NamePattern pattern) {
  NameSet s;
  s.patterns_.push_back(std::move(pattern));
  return s;
}

bool NameSet::member(const DnsName& name) const {
  if (universal_) return true;
  return std::any_of(patterns_.begin(), patterns_.end(),
                     [&](const NamePattern& p) { return p.matches(name); });
}

NameSet NameSet::intersect(const NameSet& other) const {
  if (universal_) return other;
  if (other.universal_) return *this;
  std::vector<NamePattern> result;
  for (const NamePattern& p : patterns_) {
    for (const NamePattern& q : other.patterns_) {
      if (auto r = intersect_patterns(p, q)) result.push_back(*r);
    }
  }
  return NameSet::of(std::move(result));
}

bool NameSet::subset_of(const NameSet& other) const {
  return intersect(other) == *this;
}

std::string NameSet::to_string() const {
  if (universal_) return "universal";
  std::string out = "{";
  for (std::size_t i = 0; i < patterns_.size(); ++i) {
    if (i) out += ", ";
    out += patterns_[i].to_string();
  }
  out += "}";
  return out;
}

}  // namespace pcert
