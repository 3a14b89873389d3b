#include <doctest.h>

#include <set>

#include "ekr/cycle.hpp"
#include "ekr/error.hpp"
#include "ekr/reference.hpp"
#include "ekr/rng.hpp"
#include "oracle.hpp"

using namespace ekr;

namespace {

GenPerm gp(std::initializer_list<OrderedPair> pairs) { return GenPerm(std::vector(pairs)); }

// Rows y = 7..1, columns x = 1..5, as printed in the reference table.
constexpr Label kTable[7][5] = {
    {31, 27, 23, 19, 15}, {26, 22, 18, 14, 10}, {21, 17, 13, 9, 5}, {16, 12, 8, 4, 35},
    {11, 7, 3, 34, 30},   {6, 2, 33, 29, 25},   {1, 32, 28, 24, 20},
};

PermutationPair random_pp(std::uint32_t k, std::uint32_t n, std::uint64_t seed) {
  CounterRng rng(seed);
  auto phi = random_permutation(k, rng);
  auto psi = random_permutation(n, rng);
  return {std::move(phi), std::move(psi)};
}

}  // namespace

TEST_CASE("cyclic_mod") {
  CHECK(cyclic_mod(14, 7) == 7);
  CHECK(cyclic_mod(0, 7) == 0);
  CHECK(cyclic_mod(-1, 7) == 6);
  CHECK(cyclic_mod(-7, 7) == 7);
  CHECK(cyclic_mod(3, 7) == 3);
  CHECK(cyclic_mod(5, 1) == 1);
  CHECK_THROWS_AS(cyclic_mod(3, 0), InvalidArgument);
}

TEST_CASE("tau reproduces the 5x7 table") {
  CHECK(tau(5, 7, {1, 1}) == 1);
  CHECK(tau(5, 7, {5, 4}) == 35);
  CHECK(tau(5, 7, {1, 7}) == 31);
  for (std::uint32_t row = 0; row < 7; ++row)
    for (std::uint32_t x = 1; x <= 5; ++x) CHECK(tau(5, 7, {x, 7 - row}) == kTable[row][x - 1]);
  CHECK_THROWS_AS(tau(7, 5, {1, 1}), UseTranspose);
}

TEST_CASE("tau is a bijection for 2 <= k <= n <= 9") {
  for (std::uint32_t k = 2; k <= 9; ++k)
    for (std::uint32_t n = k; n <= 9; ++n) {
      std::set<Label> image;
      for (std::uint32_t x = 1; x <= k; ++x)
        for (std::uint32_t y = 1; y <= n; ++y) image.insert(tau(k, n, {x, y}));
      CHECK(image.size() == k * n);
      CHECK(*image.begin() == 1);
      CHECK(*image.rbegin() == k * n);
    }
}

TEST_CASE("tau_phi_psi and materialize") {
  const auto id = PermutationPair::identity(5, 7);
  const auto base = materialize(id);
  for (std::uint32_t x = 1; x <= 5; ++x)
    for (std::uint32_t y = 1; y <= 7; ++y) {
      CHECK(tau_phi_psi(id, {x, y}) == tau(5, 7, {x, y}));
      CHECK(base.label_of({x, y}) == tau(5, 7, {x, y}));
      CHECK(base.pair_at(base.label_of({x, y})) == OrderedPair{x, y});
    }

  const auto pp = random_pp(3, 4, 42);
  const auto o = materialize(pp);
  for (std::uint32_t i = 1; i <= 3; ++i)
    for (std::uint32_t j = 1; j <= 4; ++j) {
      CHECK(tau_phi_psi(pp, {pp.phi(i), pp.psi(j)}) == tau(3, 4, {i, j}));
      CHECK(o.label_of({pp.phi(i), pp.psi(j)}) == tau(3, 4, {i, j}));
    }

  std::set<std::vector<OrderedPair>> orderings;
  auto stream = enumerate_t(2, 2);
  while (auto next = stream.next()) {
    const auto m = materialize(*next);
    orderings.emplace(m.pairs().begin(), m.pairs().end());
  }
  CHECK(orderings.size() == 4);
  CHECK_THROWS_AS(materialize(PermutationPair::identity(3, 2)), UseTranspose);
}

TEST_CASE("PermutationPair validation and composition") {
  CHECK_THROWS_AS(PermutationPair({1, 1}, {1, 2}), InvalidArgument);
  CHECK_THROWS_AS(PermutationPair({1, 3}, {1, 2}), InvalidArgument);
  const PermutationPair a({2, 3, 1}, {1, 2, 3});
  const PermutationPair b({3, 1, 2}, {2, 1, 3});
  const auto c = a.compose_after(b);  // (b.phi o a.phi, b.psi o a.psi)
  CHECK(c.phi() == std::vector<std::uint32_t>{1, 2, 3});
  CHECK(c.psi() == std::vector<std::uint32_t>{2, 1, 3});
}

TEST_CASE("CyclicOrdering rejects non-bijections") {
  std::vector<OrderedPair> dup = {{1, 1}, {1, 1}, {2, 1}, {2, 2}};
  CHECK_THROWS_AS(CyclicOrdering(2, 2, dup), InvalidArgument);
  std::vector<OrderedPair> short_list = {{1, 1}, {1, 2}, {2, 1}};
  CHECK_THROWS_AS(CyclicOrdering(2, 2, short_list), InvalidArgument);
  std::vector<OrderedPair> outside = {{1, 1}, {1, 2}, {2, 1}, {3, 2}};
  CHECK_THROWS_AS(CyclicOrdering(2, 2, outside), InvalidArgument);
}

TEST_CASE("is_r_good") {
  const auto t = tau_ordering(5, 7);
  CHECK(is_r_good(t, 4));
  CHECK_FALSE(is_r_good(t, 5));  // k consecutive labels repeat a y coordinate
  for (std::uint32_t r = 1; r <= 4; ++r) CHECK(is_r_good(t, r));

  std::vector<OrderedPair> bad = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
  const CyclicOrdering o(2, 2, bad);
  CHECK(is_r_good(o, 1));
  CHECK_FALSE(is_r_good(o, 2));
  CHECK(first_bad_window(o, 2) == Label{1});

  // Only the wraparound window (labels 9, 1) repeats a coordinate here.
  std::vector<OrderedPair> wrap = {{1, 1}, {2, 2}, {1, 3}, {3, 1}, {2, 3},
                                   {3, 2}, {2, 1}, {3, 3}, {1, 2}};
  const CyclicOrdering w(3, 3, wrap);
  CHECK(first_bad_window(w, 2) == Label{9});
  CHECK_THROWS_AS(first_bad_window(w, 10), InvalidArgument);
}

TEST_CASE("tau_{phi,psi} is r-good for r in [k-1]: full T for k, n <= 3") {
  for (std::uint32_t k = 1; k <= 3; ++k)
    for (std::uint32_t n = k; n <= 3; ++n) {
      const PermutationPairSpace space(k, n);
      for (std::uint64_t i = 0; i < space.size(); ++i) {
        const auto o = materialize(space.at(i));
        for (std::uint32_t r = 1; r + 1 <= k; ++r) REQUIRE(is_r_good(o, r));
      }
    }
}

TEST_CASE("tau_{phi,psi} is r-good for r in [k-1]: sampled for k, n <= 8") {
  for (std::uint32_t k = 2; k <= 8; ++k)
    for (std::uint32_t n = k; n <= 8; ++n)
      for (std::uint64_t s = 0; s < 1000; ++s) {
        const auto o = materialize(random_pp(k, n, derive_seed(7, {k, n, s})));
        for (std::uint32_t r = 1; r + 1 <= k; ++r) REQUIRE(is_r_good(o, r));
      }
}

TEST_CASE("meets") {
  const auto t = tau_ordering(5, 7);
  const auto g = gp({t.pair_at(3), t.pair_at(4), t.pair_at(5)});
  CHECK(meets(g, t));
  CHECK(meets(g, PermutationPair::identity(5, 7)));

  const auto gap = gp({t.pair_at(1), t.pair_at(3)});
  CHECK_FALSE(meets(gap, t));
  const auto wrap = gp({t.pair_at(35), t.pair_at(1)});
  CHECK(meets(wrap, t));
  for (Label l = 1; l <= 35; ++l) CHECK(meets(gp({t.pair_at(l)}), t));

  // Cross-check against the oracle's window scan on random orderings.
  const Instance inst(3, 2, 4);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto pp = random_pp(3, 4, s);
    const auto lab = oracle::labels(pp.phi(), pp.psi());
    const auto o = materialize(pp);
    for (const auto& m : enumerate(inst)) {
      std::set<std::uint32_t> ls;
      for (auto p : m.pairs()) ls.insert(lab.at({p.x, p.y}));
      REQUIRE(meets(m, o) == oracle::consecutive(ls, 12));
      REQUIRE(meets(m, pp) == meets(m, o));
    }
  }
}

TEST_CASE("r_intervals") {
  const auto o = tau_ordering(3, 3);
  const auto iv = r_intervals(o, 2);
  CHECK(iv.size() == 9);
  CHECK(std::set<GenPerm>(iv.begin(), iv.end()).size() == 9);
  const Instance inst(3, 2, 3);
  for (const auto& g : iv) {
    CHECK(g.fits(inst));
    CHECK(meets(g, o));
  }

  const auto singles = r_intervals(tau_ordering(2, 2), 1);
  CHECK(std::set<GenPerm>(singles.begin(), singles.end()) ==
        std::set{gp({{1, 1}}), gp({{1, 2}}), gp({{2, 1}}), gp({{2, 2}})});

  std::vector<OrderedPair> bad = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
  CHECK_THROWS_AS(r_intervals(CyclicOrdering(2, 2, bad), 2), PreconditionViolation);
}

TEST_CASE("enumerate_t") {
  auto count = [](std::uint32_t k, std::uint32_t n) {
    std::uint64_t c = 0;
    auto s = enumerate_t(k, n);
    while (s.next()) ++c;
    return c;
  };
  CHECK(count(2, 2) == 4);
  CHECK(count(3, 3) == 36);

  // Lex order of (Lehmer(phi), Lehmer(psi)) is the next_permutation order.
  std::vector<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>> walk;
  oracle::all_permutation_pairs(3, 4, [&](const auto& phi, const auto& psi) {
    walk.emplace_back(phi, psi);
  });
  const PermutationPairSpace space(3, 4);
  REQUIRE(space.size() == walk.size());
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    CHECK(space.at(i).phi() == walk[i].first);
    CHECK(space.at(i).psi() == walk[i].second);
  }

  std::set<std::vector<OrderedPair>> distinct;
  for (std::uint64_t i = 0; i < 36; ++i) {
    const auto o = materialize(PermutationPairSpace(3, 3).at(i));
    distinct.emplace(o.pairs().begin(), o.pairs().end());
  }
  CHECK(distinct.size() == 36);

  CHECK_THROWS_AS(PermutationPairSpace(7, 8), InstanceTooLarge);
  CHECK_THROWS_AS(PermutationPairSpace(3, 3, 35), InstanceTooLarge);
  CHECK_THROWS_AS(PermutationPairSpace(21, 21, UINT64_MAX), InstanceTooLarge);
}

TEST_CASE("relabel") {
  const Instance inst(3, 2, 3);
  const auto id = PermutationPair::identity(3, 3);
  const auto pp = random_pp(3, 3, 99);
  std::set<GenPerm> image;
  for (const auto& g : enumerate(inst)) {
    CHECK(relabel(g, id) == g);
    image.insert(relabel(g, pp));
    CHECK(relabel(g, pp).fits(inst));
  }
  CHECK(image.size() == 18);
  for (const auto& a : enumerate(inst))
    for (const auto& b : enumerate(inst))
      CHECK(intersects(a, b) == intersects(relabel(a, pp), relabel(b, pp)));
}

TEST_CASE("meets is equivariant under relabelling") {
  for (std::uint32_t k = 2; k <= 5; ++k)
    for (std::uint32_t n = k; n <= 6; ++n)
      for (std::uint32_t r = 1; r < k; ++r) {
        const Instance inst(k, r, n);
        for (std::uint64_t s = 0; s < 30; ++s) {
          const auto base = random_pp(k, n, derive_seed(1, {k, n, r, s}));
          const auto outer = random_pp(k, n, derive_seed(2, {k, n, r, s}));
          const auto composed = base.compose_after(outer);
          const auto o = materialize(base);
          const auto oc = materialize(composed);
          for (Label l = 1; l <= o.size(); l += 3) {
            const auto g = window_member(o, l, r);
            REQUIRE(meets(g, o) == meets(relabel(g, outer), oc));
          }
          const auto g = unrank(s % family_size(inst), inst);
          REQUIRE(meets(g, o) == meets(relabel(g, outer), oc));
        }
      }
}

TEST_CASE("count_meeting_orderings") {
  const Instance small(2, 1, 2);
  for (const auto& g : enumerate(small)) {
    CHECK(count_meeting_orderings(g, small) == 4);
    CHECK(oracle::meeting_count({{g.pairs()[0].x, g.pairs()[0].y}}, 2, 2) == 4);
  }
  const Instance inst(3, 2, 3);
  for (const auto& g : enumerate(inst)) CHECK(count_meeting_orderings(g, inst) == 18);
  CHECK(expected_meeting_count(inst) == 18);

  CHECK_THROWS_AS(count_meeting_orderings(gp({{1, 1}, {2, 2}}), Instance(2, 2, 3)),
                  PreconditionViolation);
  CHECK_THROWS_AS(count_meeting_orderings(gp({{1, 1}}), Instance(3, 1, 2)), UseTranspose);
  CHECK_THROWS_AS(count_meeting_orderings(gp({{1, 1}}), Instance(3, 1, 3), 10),
                  InstanceTooLarge);
}

TEST_CASE("meeting counts: parallel kernel, serial reference and oracle agree") {
  for (auto inst : {Instance(2, 1, 3), Instance(3, 1, 3), Instance(3, 2, 4)}) {
    const auto all = meeting_counts_all(inst, kDefaultEnumerationCap, 4);
    const auto expected = expected_meeting_count(inst);
    REQUIRE(all.size() == family_size(inst));
    for (Rank i = 0; i < all.size(); ++i) {
      const auto g = unrank(i, inst);
      CHECK(all[i] == expected);
      CHECK(count_meeting_orderings(g, inst, kDefaultEnumerationCap, 3) == expected);
      CHECK(reference::count_meeting_orderings(g, inst) == expected);
    }
    const auto g0 = unrank(0, inst);
    oracle::Member first;
    for (auto p : g0.pairs()) first.insert({p.x, p.y});
    CHECK(oracle::meeting_count(first, inst.k(), inst.n()) == expected);
  }
}

TEST_CASE("incidence totals match on both sides") {
  // Sum over T of r-windows equals |P| times the per-member count.
  for (std::uint32_t k = 2; k <= 3; ++k)
    for (std::uint32_t n = k; n <= 3; ++n)
      for (std::uint32_t r = 1; r < k; ++r) {
        const Instance inst(k, r, n);
        const PermutationPairSpace space(k, n);
        std::uint64_t windows = 0;
        for (std::uint64_t i = 0; i < space.size(); ++i) {
          const auto iv = r_intervals(materialize(space.at(i)), r);
          REQUIRE(std::set<GenPerm>(iv.begin(), iv.end()).size() == k * n);
          windows += iv.size();
        }
        CHECK(windows == oracle::factorial(k) * oracle::factorial(n) * k * n);
        CHECK(windows == family_size(inst) * expected_meeting_count(inst));
      }
}

TEST_CASE("sampled meeting count is flagged approximate and near the exact value") {
  const Instance inst(3, 2, 4);
  const auto g = unrank(7, inst);
  const auto s = sample_meeting_orderings(g, inst, 4000, 5);
  CHECK(s.samples == 4000);
  const auto exact = static_cast<double>(expected_meeting_count(inst));
  CHECK(s.estimate == doctest::Approx(exact).epsilon(0.15));
  CHECK(sample_meeting_orderings(g, inst, 4000, 5).hits == s.hits);
}

TEST_CASE("katona_verify") {
  std::vector<std::uint32_t> c4 = {0, 1, 2, 3};
  auto r4 = katona_verify(c4, 2);
  CHECK(r4.max_size == 2);
  CHECK(r4.lemma_holds);

  std::vector<std::uint32_t> c7 = {0, 1, 2, 3, 4, 5, 6};
  auto r7 = katona_verify(c7, 3);
  CHECK(r7.max_size == 3);
  CHECK(r7.all_optima_are_stars);
  CHECK(r7.optima_count == 7);  // one star per element
  CHECK(r7.lemma_holds);

  // m = 2r: windows {0,1,2}, {2,3,4}, {4,5,0} pairwise meet with no common
  // element, so star uniqueness fails while the bound holds.
  std::vector<std::uint32_t> c6 = {0, 1, 2, 3, 4, 5};
  auto r6 = katona_verify(c6, 3);
  CHECK(r6.max_size == 3);
  CHECK_FALSE(r6.all_optima_are_stars);
  CHECK(r6.non_star_witness.size() == 3);
  CHECK(r6.lemma_holds);

  CHECK_THROWS_AS(katona_verify(c6, 4), PreconditionViolation);

  const auto t = tau_ordering(3, 4);
  auto rt = katona_verify(t, 2);
  CHECK(rt.max_size == 2);
  CHECK(rt.lemma_holds);

  for (std::uint32_t r = 1; r <= 4; ++r)
    for (std::uint32_t m = 2 * r; m <= 12; ++m)
      for (std::uint64_t s = 0; s < 100; ++s) {
        const auto rep = katona_verify_random(m, r, derive_seed(3, {m, r, s}));
        REQUIRE(rep.max_size == r);
        if (m > 2 * r) REQUIRE(rep.all_optima_are_stars);
      }
}

TEST_CASE("no_good_ordering_exists") {
  CHECK(no_good_ordering_exists(2));
  CHECK(no_good_ordering_exists(3));
  CHECK_THROWS_AS(no_good_ordering_exists(4), InstanceTooLarge);
  // For k = 2, n = 3 a 2-good ordering does exist, though tau is only
  // guaranteed (k-1)-good and puts (2,2) next to (1,2).
  std::vector<OrderedPair> good = {{1, 1}, {2, 2}, {1, 3}, {2, 1}, {1, 2}, {2, 3}};
  CHECK(is_r_good(CyclicOrdering(2, 3, good), 2));
  CHECK(is_r_good(tau_ordering(2, 3), 1));
  CHECK(first_bad_window(tau_ordering(2, 3), 2) == Label{2});
}
