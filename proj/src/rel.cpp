#include "ipeg/rel.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "ipeg/errors.hpp"

namespace ipeg {

DiffRel::DiffRel(std::optional<std::int64_t> l, std::optional<std::int64_t> h)
    : lo(l), hi(h) {
  if (lo && hi && *lo > *hi) throw Error("empty difference interval");
}

bool DiffRel::member(Col n, Col m) const {
  const std::int64_t d =
      static_cast<std::int64_t>(n) - static_cast<std::int64_t>(m);
  if (lo && d < *lo) return false;
  if (hi && d > *hi) return false;
  return true;
}

DiffRel DiffRel::inverse() const {
  DiffRel r;
  if (hi) r.lo = -*hi;
  if (lo) r.hi = -*lo;
  return r;
}

DiffRel DiffRel::compose(const DiffRel& inner) const {
  DiffRel r;
  if (lo && inner.lo) r.lo = *lo + *inner.lo;
  if (hi && inner.hi) r.hi = *hi + *inner.hi;
  return r;
}

bool DiffRel::compose_exact(const DiffRel& outer, const DiffRel& inner) {
  const bool outer_nonneg = outer.lo && *outer.lo >= 0;
  const bool inner_nonneg = inner.lo && *inner.lo >= 0;
  const bool outer_any = !outer.lo && !outer.hi;
  const bool inner_any = !inner.lo && !inner.hi;
  return (outer_nonneg && inner_nonneg) || outer_any || inner_any;
}

bool DiffRel::is_total() const { return !hi || *hi >= 0; }

namespace {

std::optional<std::int64_t> parse_bound(const std::string& s, bool* ok) {
  *ok = true;
  if (s.empty()) return std::nullopt;
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    *ok = false;
    return std::nullopt;
  }
  if (pos != s.size()) *ok = false;
  return v;
}

}  // namespace

DiffRel parse_rel(const std::string& text) {
  if (text == "=" || text == "eq") return DiffRel::eq();
  if (text == ">" || text == "gt") return DiffRel::gt();
  if (text == ">=" || text == "ge") return DiffRel::ge();
  if (text == "any") return DiffRel::any();
  if (text.rfind("diff[", 0) == 0 && text.back() == ']') {
    const std::string body = text.substr(5, text.size() - 6);
    const auto dots = body.find("..");
    if (dots != std::string::npos) {
      bool ok_lo = false, ok_hi = false;
      auto lo = parse_bound(body.substr(0, dots), &ok_lo);
      auto hi = parse_bound(body.substr(dots + 2), &ok_hi);
      if (ok_lo && ok_hi && (!lo || !hi || *lo <= *hi)) return DiffRel(lo, hi);
    }
  }
  throw SyntaxError("malformed relation literal '" + text + "'", 1, 1);
}

std::string format_rel(const DiffRel& r) {
  if (r == DiffRel::eq()) return "=";
  if (r == DiffRel::gt()) return ">";
  if (r == DiffRel::ge()) return ">=";
  if (r == DiffRel::any()) return "any";
  std::string out = "diff[";
  if (r.lo) out += std::to_string(*r.lo);
  out += "..";
  if (r.hi) out += std::to_string(*r.hi);
  out += "]";
  return out;
}

IndentSet IndentSet::all() { return range(0, std::nullopt); }

IndentSet IndentSet::single(Col c) { return range(c, c); }

IndentSet IndentSet::range(Col lo, std::optional<Col> hi) {
  IndentSet s;
  if (hi && *hi < lo) return s;
  s.ivs_.push_back(Interval{lo, hi});
  return s;
}

IndentSet IndentSet::of(std::vector<Interval> ivs) {
  std::erase_if(ivs, [](const Interval& iv) { return iv.hi && *iv.hi < iv.lo; });
  std::sort(ivs.begin(), ivs.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo;
  });
  IndentSet s;
  for (const Interval& iv : ivs) {
    if (!s.ivs_.empty()) {
      Interval& last = s.ivs_.back();
      // Merge overlapping or adjacent intervals (gap < 2).
      if (!last.hi || static_cast<std::int64_t>(iv.lo) <=
                          static_cast<std::int64_t>(*last.hi) + 1) {
        if (last.hi && (!iv.hi || *iv.hi > *last.hi)) last.hi = iv.hi;
        continue;
      }
    }
    s.ivs_.push_back(iv);
  }
  return s;
}

bool IndentSet::contains(Col c) const {
  for (const Interval& iv : ivs_) {
    if (c < iv.lo) return false;
    if (!iv.hi || c <= *iv.hi) return true;
  }
  return false;
}

IndentSet IndentSet::intersect(const IndentSet& o) const {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < ivs_.size() && j < o.ivs_.size()) {
    const Interval& a = ivs_[i];
    const Interval& b = o.ivs_[j];
    const Col lo = std::max(a.lo, b.lo);
    std::optional<Col> hi;
    if (a.hi && b.hi)
      hi = std::min(*a.hi, *b.hi);
    else if (a.hi)
      hi = a.hi;
    else
      hi = b.hi;
    if (!hi || lo <= *hi) out.push_back(Interval{lo, hi});
    // Advance whichever interval ends first.
    const bool a_ends_first = a.hi && (!b.hi || *a.hi <= *b.hi);
    if (a_ends_first)
      ++i;
    else
      ++j;
  }
  return of(std::move(out));
}

IndentSet IndentSet::unite(const IndentSet& o) const {
  std::vector<Interval> out = ivs_;
  out.insert(out.end(), o.ivs_.begin(), o.ivs_.end());
  return of(std::move(out));
}

IndentSet IndentSet::image(const DiffRel& r) const {
  // The image of [a, b] is [a - hi, b - lo] clipped to the naturals:
  // consecutive columns give overlapping shifted intervals, so the
  // union over y in [a, b] stays contiguous.
  std::vector<Interval> out;
  for (const Interval& iv : ivs_) {
    std::int64_t lo64 = 0;
    if (r.hi) lo64 = static_cast<std::int64_t>(iv.lo) - *r.hi;
    if (lo64 < 0) lo64 = 0;
    std::optional<Col> hi;
    if (iv.hi && r.lo) {
      const std::int64_t hi64 = static_cast<std::int64_t>(*iv.hi) - *r.lo;
      if (hi64 < lo64) continue;
      hi = static_cast<Col>(hi64);
    }
    out.push_back(Interval{static_cast<Col>(lo64), hi});
  }
  return of(std::move(out));
}

IndentSet IndentSet::preimage(const DiffRel& r) const {
  return image(r.inverse());
}

std::string IndentSet::to_string() const {
  if (ivs_.empty()) return "{}";
  std::string out = "{";
  bool first = true;
  for (const Interval& iv : ivs_) {
    if (!first) out += ", ";
    first = false;
    out += std::to_string(iv.lo);
    if (!iv.hi)
      out += "..";
    else if (*iv.hi != iv.lo)
      out += ".." + std::to_string(*iv.hi);
  }
  return out + "}";
}

}  // namespace ipeg
