#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ipeg {

using Col = std::uint32_t;

/// A binary relation on naturals represented by an allowed-difference
/// interval: (n, m) is related iff lo <= n - m <= hi.  An absent bound
/// means -inf (lo) or +inf (hi).  Covers =, >, >=, the all-pairs
/// relation and every diff[lo..hi] literal of the grammar DSL; closed
/// under inverse and interval composition.
struct DiffRel {
  std::optional<std::int64_t> lo;
  std::optional<std::int64_t> hi;

  DiffRel() = default;
  DiffRel(std::optional<std::int64_t> l, std::optional<std::int64_t> h);

  static DiffRel eq() { return DiffRel(0, 0); }
  static DiffRel gt() { return DiffRel(1, std::nullopt); }
  static DiffRel ge() { return DiffRel(0, std::nullopt); }
  static DiffRel lt() { return DiffRel(std::nullopt, -1); }
  static DiffRel any() { return DiffRel(std::nullopt, std::nullopt); }

  bool member(Col n, Col m) const;

  /// [-hi, -lo]; an involution.
  DiffRel inverse() const;

  /// Interval sum; equals true composition over the naturals whenever
  /// both operands have lo >= 0 or either is the all-pairs relation.
  /// Otherwise it over-approximates near column 0 (see compose_exact).
  DiffRel compose(const DiffRel& inner) const;

  /// True when compose() is guaranteed to equal set-theoretic
  /// composition over the naturals.
  static bool compose_exact(const DiffRel& outer, const DiffRel& inner);

  /// Membership in Rel+: the image of the naturals is all naturals,
  /// equivalently hi >= 0.
  bool is_total() const;

  bool operator==(const DiffRel& o) const = default;
};

/// Parses `=`, `>`, `>=`, `any` or `diff[lo..hi]` (either bound may be
/// omitted for an infinity).  Throws SyntaxError on malformed input.
DiffRel parse_rel(const std::string& text);
std::string format_rel(const DiffRel& r);

/// A set of candidate indentation columns, kept as a sorted union of
/// disjoint, non-adjacent intervals.  The upper bound of the last
/// interval may be +inf (absent).  Normalization is canonical: equal
/// sets compare structurally equal.
class IndentSet {
 public:
  struct Interval {
    Col lo = 0;
    std::optional<Col> hi;  // absent = +inf
    bool operator==(const Interval& o) const = default;
  };

  IndentSet() = default;  // empty set

  static IndentSet none() { return IndentSet(); }
  static IndentSet all();
  static IndentSet single(Col c);
  static IndentSet range(Col lo, std::optional<Col> hi);
  static IndentSet of(std::vector<Interval> ivs);  // normalizes

  bool empty() const { return ivs_.empty(); }
  bool contains(Col c) const;
  IndentSet intersect(const IndentSet& o) const;
  IndentSet unite(const IndentSet& o) const;

  /// r(this) = { x : exists y in this, (y, x) in r }.
  IndentSet image(const DiffRel& r) const;
  /// r^-1(this), equal to image under the inverse relation.
  IndentSet preimage(const DiffRel& r) const;

  const std::vector<Interval>& intervals() const { return ivs_; }
  bool operator==(const IndentSet& o) const = default;

  std::string to_string() const;

 private:
  std::vector<Interval> ivs_;
};

}  // namespace ipeg
