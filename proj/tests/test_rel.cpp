#include <doctest.h>

#include <set>

#include "ipeg/errors.hpp"
#include "ipeg/gen.hpp"
#include "ipeg/rel.hpp"
#include "support.hpp"

using namespace ipeg;
using namespace ipeg::testing;

TEST_SUITE_BEGIN("rel");

TEST_CASE("named relations agree with their mathematical definitions") {
  // Brute-force tables over [0,4]^2.
  for (Col n = 0; n <= 4; ++n)
    for (Col m = 0; m <= 4; ++m) {
      CHECK(DiffRel::eq().member(n, m) == (n == m));
      CHECK(DiffRel::gt().member(n, m) == (n > m));
      CHECK(DiffRel::ge().member(n, m) == (n >= m));
      CHECK(DiffRel::lt().member(n, m) == (n < m));
      CHECK(DiffRel::any().member(n, m));
    }
}

TEST_CASE("member examples") {
  CHECK(DiffRel::gt().member(2, 1));
  CHECK(DiffRel::eq().member(3, 3));
  CHECK_FALSE(DiffRel::ge().member(2, 3));  // frozen from the >= table
}

TEST_CASE("empty difference interval is rejected") {
  CHECK_THROWS_AS(DiffRel(2, 1), Error);
}

TEST_CASE("image matches the paper's computations") {
  CHECK(IndentSet::single(1).image(DiffRel::gt()) == IndentSet::single(0));
  CHECK(IndentSet::single(2).image(DiffRel::gt()) == IndentSet::range(0, 1));
  CHECK(IndentSet::none().image(DiffRel::any()) == IndentSet::none());
}

TEST_CASE("preimage matches the paper's computations") {
  // >^-1(N) = N \ {0}
  CHECK(IndentSet::all().preimage(DiffRel::gt()) ==
        IndentSet::range(1, std::nullopt));
  CHECK(IndentSet::single(0).preimage(DiffRel::gt()) ==
        IndentSet::range(1, std::nullopt));
  CHECK(IndentSet::single(5).preimage(DiffRel::eq()) == IndentSet::single(5));
}

TEST_CASE("inverse is the pair swap and an involution") {
  gen::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const DiffRel r = gen::random_rel(rng);
    const DiffRel inv = r.inverse();
    for (Col n = 0; n <= 4; ++n)
      for (Col m = 0; m <= 4; ++m) CHECK(inv.member(n, m) == r.member(m, n));
    CHECK(inv.inverse() == r);
  }
  CHECK(DiffRel::gt().inverse() == DiffRel(std::nullopt, -1));  // frozen
  CHECK(DiffRel::eq().inverse() == DiffRel::eq());
  CHECK(DiffRel::any().inverse() == DiffRel::any());
}

TEST_CASE("composition agrees with exists-composition for nonnegative lo") {
  gen::Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const DiffRel s = gen::random_nonneg_rel(rng);
    const DiffRel r = gen::random_nonneg_rel(rng);
    const DiffRel c = s.compose(r);
    REQUIRE(DiffRel::compose_exact(s, r));
    // exists y in [0,10]: (x,y) in s and (y,z) in r -- enough slack to
    // decide membership for x, z in [0,4] with our small bounds.
    for (Col x = 0; x <= 4; ++x)
      for (Col z = 0; z <= 4; ++z) {
        bool brute = false;
        for (Col y = 0; y <= 10; ++y)
          brute = brute || (s.member(x, y) && r.member(y, z));
        CHECK(c.member(x, z) == brute);
      }
  }
  CHECK(DiffRel::gt().compose(DiffRel::gt()) == DiffRel(2, std::nullopt));
  const DiffRel r = DiffRel(-1, 3);
  CHECK(DiffRel::eq().compose(r) == r);
  CHECK(DiffRel::ge().compose(DiffRel::gt()) == DiffRel::gt());
}

TEST_CASE("totality test equals image-covers-everything") {
  auto brute_total = [](const DiffRel& r) {
    // r(N) = N iff every x in [0,20] has a preimage point; y range is
    // wide enough for the finite bounds used by the generator.
    for (Col x = 0; x <= 20; ++x) {
      bool hit = false;
      for (Col y = 0; y <= 64; ++y) hit = hit || r.member(y, x);
      if (!hit) return false;
    }
    return true;
  };
  gen::Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const DiffRel r = gen::random_rel(rng);
    CHECK(r.is_total() == brute_total(r));
  }
  CHECK(DiffRel::gt().is_total());
  CHECK_FALSE(DiffRel::lt().is_total());
  CHECK(DiffRel::eq().is_total());
}

TEST_CASE("indent set operations agree with brute-force sets") {
  gen::Rng rng(14);
  const int B = 40;
  for (int trial = 0; trial < 300; ++trial) {
    const IndentSet a = gen::random_iset(rng, 20);
    const IndentSet b = gen::random_iset(rng, 20);
    const std::set<int> sa = iset_to_set(a, B);
    const std::set<int> sb = iset_to_set(b, B);

    std::set<int> si, su;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                          std::inserter(si, si.end()));
    std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(),
                   std::inserter(su, su.end()));
    CHECK(iset_to_set(a.intersect(b), B) == si);
    CHECK(iset_to_set(a.unite(b), B) == su);
    CHECK(a.intersect(b).empty() ==
          a.intersect(b).intervals().empty());
  }
}

TEST_CASE("image and preimage agree with enumeration") {
  gen::Rng rng(15);
  const int B = 48;
  for (int trial = 0; trial < 300; ++trial) {
    const DiffRel r = gen::random_rel(rng);
    const IndentSet ys = gen::random_iset(rng, 20);
    const std::set<int> brute = iset_to_set(ys, B);
    // Inputs live within [0, B-8]; the slack absorbs finite shifts of
    // the generated relations.
    CHECK(iset_to_set(ys.image(r), 28) ==
          [&] {
            std::set<int> out;
            for (int x : brute_image(r, brute, B))
              if (x <= 28) out.insert(x);
            return out;
          }());
    CHECK(iset_to_set(ys.preimage(r), 28) ==
          [&] {
            std::set<int> out;
            for (int x : brute_preimage(r, brute, B))
              if (x <= 28) out.insert(x);
            return out;
          }());
  }
}

TEST_CASE("image preserves monotonicity and totality keeps sets nonempty") {
  gen::Rng rng(16);
  for (int trial = 0; trial < 300; ++trial) {
    const DiffRel r = gen::random_rel(rng);
    const IndentSet a = gen::random_iset(rng, 12);
    const IndentSet sub = a.intersect(gen::random_iset(rng, 12));
    CHECK(sub.image(r).unite(a.image(r)) == a.image(r));
    CHECK(sub.preimage(r).unite(a.preimage(r)) == a.preimage(r));
    if (r.is_total() && !a.empty()) {
      CHECK_FALSE(a.image(r).empty());
      CHECK_FALSE(a.preimage(r.inverse()).empty());
    }
  }
}

TEST_CASE("normalization is canonical") {
  // Same set assembled in different orders and fragment sizes.
  const IndentSet a = IndentSet::of({{4, 6}, {0, 2}, {7, 9}});
  const IndentSet b = IndentSet::of({{0, 1}, {1, 2}, {4, 9}});
  CHECK(a == b);
  CHECK(a.intervals().size() == 2);  // {0..2} and {4..9}
  const IndentSet c = IndentSet::of({{3, std::nullopt}, {0, 2}});
  CHECK(c == IndentSet::all());

  // Adjacent intervals must merge; a gap of two must not.
  CHECK(IndentSet::of({{0, 1}, {2, 3}}).intervals().size() == 1);
  CHECK(IndentSet::of({{0, 1}, {3, 4}}).intervals().size() == 2);
}

TEST_CASE("intersection with the toy example sets") {
  CHECK(IndentSet::all().intersect(IndentSet::range(0, 1)) ==
        IndentSet::range(0, 1));
  CHECK(IndentSet::single(2).intersect(IndentSet::range(0, 3)) ==
        IndentSet::single(2));
  const IndentSet x = IndentSet::range(3, 7);
  CHECK(IndentSet::none().unite(x) == x);
}

TEST_CASE("relation literals round-trip") {
  for (const char* text : {"=", ">", ">=", "any", "diff[2..5]", "diff[-3..-1]",
                           "diff[..4]", "diff[0..]", "diff[..]"}) {
    const DiffRel r = parse_rel(text);
    CHECK(parse_rel(format_rel(r)) == r);
  }
  CHECK(format_rel(parse_rel("diff[1..]")) == ">");
  CHECK(format_rel(parse_rel("diff[2..5]")) == "diff[2..5]");
  CHECK_THROWS_AS(parse_rel("diff[5..2]"), SyntaxError);
  CHECK_THROWS_AS(parse_rel("<="), SyntaxError);
}

TEST_SUITE_END();
