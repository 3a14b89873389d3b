#include <doctest.h>

#include <set>

#include "ekr/arith.hpp"
#include "ekr/error.hpp"
#include "ekr/genperm.hpp"
#include "oracle.hpp"

using namespace ekr;

namespace {

oracle::Member as_oracle(const GenPerm& g) {
  oracle::Member m;
  for (auto p : g.pairs()) m.insert({p.x, p.y});
  return m;
}

GenPerm gp(std::initializer_list<OrderedPair> pairs) { return GenPerm(std::vector(pairs)); }

}  // namespace

TEST_CASE("instance validation") {
  CHECK_NOTHROW(Instance(3, 2, 3));
  CHECK_NOTHROW(Instance(5, 2, 3));  // k > n is allowed here
  CHECK_THROWS_AS(Instance(3, 0, 3), InvalidArgument);
  CHECK_THROWS_AS(Instance(2, 3, 4), InvalidArgument);
  CHECK_THROWS_AS(Instance(0, 1, 1), InvalidArgument);
  CHECK_THROWS_AS(Instance(200, 30, 200), InstanceTooLarge);
}

TEST_CASE("family_size") {
  CHECK(family_size(Instance(2, 1, 2)) == 4);
  // Frozen from oracle::members.
  CHECK(family_size(Instance(3, 2, 3)) == 18);
  CHECK(family_size(Instance(5, 2, 7)) == 420);
  CHECK(family_size(Instance(4, 2, 4)) == 72);

  for (std::uint32_t k = 1; k <= 4; ++k)
    for (std::uint32_t n = 1; n <= 4; ++n)
      for (std::uint32_t r = 1; r <= std::min(k, n); ++r)
        CHECK(family_size(Instance(k, r, n)) == oracle::members(k, r, n).size());
}

TEST_CASE("star_bound") {
  CHECK(star_bound(Instance(3, 2, 3)) == 4);
  CHECK(star_bound(Instance(5, 2, 7)) == 24);
  CHECK(star_bound(Instance(4, 2, 4)) == 9);
  for (std::uint32_t k = 1; k <= 6; ++k)
    for (std::uint32_t n = 1; n <= 6; ++n) CHECK(star_bound(Instance(k, 1, n)) == 1);
}

TEST_CASE("star_bound closed forms agree for min(k,n) <= 9") {
  for (std::uint32_t k = 1; k <= 12; ++k)
    for (std::uint32_t n = 1; n <= 12; ++n) {
      if (std::min(k, n) > 9) continue;
      for (std::uint32_t r = 1; r <= std::min(k, n); ++r) {
        const Instance inst(k, r, n);
        const auto a = *binomial(k - 1, r - 1) * *falling_factorial(n - 1, r - 1);
        const auto b = *binomial(n - 1, r - 1) * *falling_factorial(k - 1, r - 1);
        CHECK(a == b);
        CHECK(star_bound(inst) == a);
      }
    }
}

TEST_CASE("rank and unrank examples") {
  const Instance inst(3, 2, 3);
  CHECK(rank(gp({{1, 1}, {2, 2}}), inst) == 0);
  CHECK(rank(gp({{2, 3}, {3, 2}}), inst) == 17);
  CHECK(rank(gp({{3, 2}, {2, 3}}), inst) == 17);  // input order is irrelevant
  CHECK(unrank(0, inst) == gp({{1, 1}, {2, 2}}));
  CHECK(unrank(17, inst) == gp({{2, 3}, {3, 2}}));
  CHECK_THROWS_AS(unrank(18, inst), InvalidArgument);
  CHECK_THROWS_AS(rank(gp({{1, 1}, {4, 2}}), inst), InvalidArgument);
  CHECK_THROWS_AS(rank(gp({{1, 1}}), inst), InvalidArgument);
}

TEST_CASE("malformed members are rejected") {
  CHECK_THROWS_AS(gp({{1, 1}, {1, 2}}), InvalidArgument);
  CHECK_THROWS_AS(gp({{1, 2}, {2, 2}}), InvalidArgument);
  CHECK_THROWS_AS(gp({{0, 1}}), InvalidArgument);
}

TEST_CASE("rank/unrank are inverse bijections on a grid") {
  for (std::uint32_t k = 1; k <= 7; ++k)
    for (std::uint32_t n = 1; n <= 7; ++n)
      for (std::uint32_t r = 1; r <= std::min(k, n); ++r) {
        const Instance inst(k, r, n);
        const auto size = family_size(inst);
        if (size > 1'000'000) continue;
        // Every index for small families, a stride through large ones.
        const std::uint64_t step = size > 20'000 ? size / 20'000 + 1 : 1;
        for (Rank i = 0; i < size; i += step) {
          const auto g = unrank(i, inst);
          REQUIRE(g.fits(inst));
          REQUIRE(rank(g, inst) == i);
        }
      }
}

TEST_CASE("unrank round trip over all members at (3,2,3) and (3,2,4)") {
  for (auto inst : {Instance(3, 2, 3), Instance(3, 2, 4)}) {
    std::set<oracle::Member> seen;
    for (Rank i = 0; i < family_size(inst); ++i) {
      const auto g = unrank(i, inst);
      CHECK(unrank(rank(g, inst), inst) == g);
      seen.insert(as_oracle(g));
    }
    const auto all = oracle::members(inst.k(), inst.r(), inst.n());
    CHECK(seen == std::set<oracle::Member>(all.begin(), all.end()));
  }
}

TEST_CASE("enumerate") {
  std::vector<GenPerm> got;
  for (const auto& g : enumerate(Instance(2, 1, 2))) got.push_back(g);
  CHECK(got == std::vector{gp({{1, 1}}), gp({{1, 2}}), gp({{2, 1}}), gp({{2, 2}})});

  for (auto inst : {Instance(3, 2, 3), Instance(4, 2, 4)}) {
    std::set<GenPerm> distinct;
    Rank expected = 0;
    for (auto it = enumerate(inst).begin(); it != enumerate(inst).end(); ++it) {
      CHECK(rank(*it, inst) == expected++);
      distinct.insert(*it);
    }
    CHECK(distinct.size() == oracle::members(inst.k(), inst.r(), inst.n()).size());
  }
  CHECK(enumerate(Instance(4, 2, 4)).size() == 72);
}

TEST_CASE("intersects") {
  CHECK(intersects(gp({{1, 1}, {2, 2}}), gp({{1, 1}, {2, 3}})));
  CHECK_FALSE(intersects(gp({{1, 1}, {2, 2}}), gp({{1, 2}, {2, 1}})));
  CHECK_FALSE(intersects(gp({{1, 2}}), gp({{2, 2}})));

  const Instance inst(3, 2, 4);
  for (const auto& a : enumerate(inst))
    for (const auto& b : enumerate(inst))
      REQUIRE(intersects(a, b) == oracle::intersects(as_oracle(a), as_oracle(b)));
}

TEST_CASE("star") {
  const Instance inst(3, 2, 3);
  const auto s = star(inst, {1, 1});
  CHECK(s.members() ==
        std::vector{gp({{1, 1}, {2, 2}}), gp({{1, 1}, {2, 3}}), gp({{1, 1}, {3, 2}}),
                    gp({{1, 1}, {3, 3}})});
  CHECK(s.size() == 4);

  const Instance singles(3, 1, 4);
  CHECK(star(singles, {2, 3}).members() == std::vector{gp({{2, 3}})});

  const Instance grid(4, 2, 4);
  for (std::uint32_t a = 1; a <= 4; ++a)
    for (std::uint32_t b = 1; b <= 4; ++b) {
      const auto f = star(grid, {a, b});
      CHECK(f.size() == star_bound(grid));
      std::size_t filtered = 0;
      for (const auto& m : oracle::members(4, 2, 4)) filtered += m.count({a, b});
      CHECK(f.size() == filtered);
    }
  CHECK_THROWS_AS(star(inst, {4, 1}), InvalidArgument);
  CHECK_THROWS_AS(star(inst, {1, 0}), InvalidArgument);
}

TEST_CASE("classify_star") {
  const Instance inst(3, 2, 3);
  CHECK(classify_star(star(inst, {2, 3})) == OrderedPair{2, 3});
  for (std::uint32_t a = 1; a <= 3; ++a)
    for (std::uint32_t b = 1; b <= 3; ++b) {
      const auto s = star(inst, {a, b});
      CHECK(classify_star(s) == OrderedPair{a, b});
      for (auto i : s.ranks()) {
        auto sub = s;
        sub.erase_rank(i);
        CHECK_FALSE(classify_star(sub).has_value());
      }
    }
  Family pair(Instance(2, 2, 2));
  pair.insert(gp({{1, 1}, {2, 2}}));
  pair.insert(gp({{1, 2}, {2, 1}}));
  CHECK_FALSE(classify_star(pair).has_value());

  // A star plus one outsider is not a star either.
  auto bigger = star(inst, {1, 1});
  bigger.insert(gp({{2, 1}, {3, 2}}));
  CHECK_FALSE(classify_star(bigger).has_value());

  CHECK_THROWS_AS(classify_star(Family(inst)), InvalidArgument);
}

TEST_CASE("is_intersecting_family") {
  const Instance inst(3, 2, 3);
  CHECK(is_intersecting_family(star(inst, {3, 1})));
  CHECK(is_intersecting_family(Family(inst)));
  Family one(inst);
  one.insert_rank(5);
  CHECK(is_intersecting_family(one));
  const auto full = Family::full(inst);
  CHECK_FALSE(is_intersecting_family(full));
  const auto bad = find_disjoint_pair(full);
  REQUIRE(bad.has_value());
  CHECK_FALSE(intersects(unrank(bad->first, inst), unrank(bad->second, inst)));
}

TEST_CASE("transpose") {
  CHECK(transpose(gp({{1, 3}, {2, 1}})) == gp({{1, 2}, {3, 1}}));
  CHECK(transpose(gp({{1, 3}, {2, 1}})).fits(Instance(3, 2, 2)));

  const Instance inst(2, 2, 3);
  std::vector<GenPerm> ms;
  for (const auto& g : enumerate(inst)) ms.push_back(g);
  CHECK(ms.size() == 6);
  for (const auto& a : ms) {
    CHECK(transpose(transpose(a)) == a);
    CHECK(transpose(a).fits(inst.transposed()));
    for (const auto& b : ms) CHECK(intersects(a, b) == intersects(transpose(a), transpose(b)));
  }

  const auto s = star(inst, {2, 3});
  CHECK(transpose(s) == star(inst.transposed(), {3, 2}));
  CHECK(transpose(transpose(s)) == s);
}
