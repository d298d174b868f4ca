#include "doctest.h"
#include "ffp/errors.hpp"
#include "ffp/partitions.hpp"
#include "oracles.hpp"

using namespace ffp;

namespace {

SetPartition P(int n, const std::vector<std::vector<int>>& b) { return SetPartition::from_blocks(n, b); }

oracle::Blocks as_blocks(const SetPartition& p) { return oracle::normalize(p.blocks()); }

}  // namespace

TEST_CASE("enumeration counts match Bell numbers") {
  CHECK(enumerate_partitions(1).size() == 1);
  CHECK(enumerate_partitions(3).size() == 5);
  CHECK(enumerate_partitions(10).size() == 115975);
  for (int n = 1; n <= 9; ++n) CHECK(Integer(enumerate_partitions(n).size()) == oracle::bell(n));
}

TEST_CASE("enumeration visits every partition exactly once, 1_n first and 0_n last") {
  for (int n = 1; n <= 7; ++n) {
    const auto ps = enumerate_partitions(n);
    std::set<oracle::Blocks> seen;
    for (const auto& p : ps) seen.insert(as_blocks(p));
    std::set<oracle::Blocks> expected;
    for (const auto& b : oracle::partitions(n)) expected.insert(oracle::normalize(b));
    CHECK(seen == expected);
    CHECK(ps.front() == SetPartition::coarsest(n));
    CHECK(ps.back() == SetPartition::finest(n));
    for (std::size_t i = 1; i < ps.size(); ++i) CHECK(ps[i - 1].rgs() < ps[i].rgs());
  }
}

TEST_CASE("enumeration cap is enforced") {
  CHECK_THROWS_AS(enumerate_partitions(13), CapExceeded);
  CHECK_NOTHROW(PartitionEnumerator(13, 13));
  CHECK_THROWS_AS(enumerate_noncrossing(13), CapExceeded);
  CHECK_NOTHROW(enumerate_noncrossing(5, 5));
}

TEST_CASE("independent enumerators do not share state") {
  PartitionEnumerator a(4), b(4);
  a.advance();
  a.advance();
  CHECK(b.rgs() == std::vector<int>{0, 0, 0, 0});
  CHECK(a.rgs() != b.rgs());
}

TEST_CASE("block types and multiplicities") {
  auto t3 = enumerate_by_type(3);
  REQUIRE(t3->size() == 3);
  std::map<std::vector<int>, Integer> mult;
  for (const auto& t : *t3) mult[t.counts] = t.multiplicity;
  CHECK(mult[{0, 0, 1}] == 1);
  CHECK(mult[{1, 1, 0}] == 3);
  CHECK(mult[{3, 0, 0}] == 1);
  bool found = false;
  for (const auto& t : *enumerate_by_type(4)) {
    if (t.counts == std::vector<int>{0, 2, 0, 0}) {
      CHECK(t.multiplicity == 3);
      found = true;
    }
  }
  CHECK(found);
  for (int n = 1; n <= 10; ++n) {
    Integer total = 0;
    for (const auto& t : *enumerate_by_type(n)) total += t.multiplicity;
    CHECK(total == oracle::bell(n));
  }
}

TEST_CASE("type-grouped sums equal full enumeration for block-size symmetric functions") {
  for (int n = 1; n <= 10; ++n) {
    // f(pi) = prod_V (|V|^2 + 1) * (-1)^{|pi|}
    Integer full = 0;
    for_each_partition(n, [&](const std::vector<int>& rgs, int blocks) {
      std::vector<int> sizes(static_cast<std::size_t>(blocks), 0);
      for (int l : rgs) ++sizes[static_cast<std::size_t>(l)];
      Integer v = (blocks % 2) ? -1 : 1;
      for (int s : sizes) v *= s * s + 1;
      full += v;
    });
    Integer grouped = 0;
    for (const auto& t : *enumerate_by_type(n)) {
      Integer v = (t.blocks % 2) ? -1 : 1;
      for (std::size_t i = 0; i < t.counts.size(); ++i)
        for (int c = 0; c < t.counts[i]; ++c) v *= static_cast<int>((i + 1) * (i + 1) + 1);
      grouped += v * t.multiplicity;
    }
    CHECK(full == grouped);
  }
}

TEST_CASE("join") {
  CHECK(join(P(3, {{1, 2}, {3}}), P(3, {{1}, {2, 3}})) == SetPartition::coarsest(3));
  const auto pi = P(4, {{1, 3}, {2}, {4}});
  CHECK(join(pi, pi) == pi);
  CHECK(join(pi, P(4, {{1}, {2, 4}, {3}})) == P(4, {{1, 3}, {2, 4}}));
  CHECK(join(pi, SetPartition::finest(4)) == pi);
  CHECK(join(pi, SetPartition::coarsest(4)) == SetPartition::coarsest(4));
  CHECK_THROWS_AS(join(pi, SetPartition::finest(3)), InvalidInput);
  const auto all = enumerate_partitions(5);
  for (std::size_t i = 0; i < all.size(); i += 3)
    for (std::size_t j = 0; j < all.size(); j += 5)
      CHECK(as_blocks(join(all[i], all[j])) == oracle::join(as_blocks(all[i]), as_blocks(all[j])));
}

TEST_CASE("refinement order") {
  CHECK(is_refinement(SetPartition::finest(4), P(4, {{1, 4}, {2, 3}})));
  CHECK_FALSE(is_refinement(P(3, {{1, 2}, {3}}), P(3, {{1, 3}, {2}})));
  CHECK(is_refinement(P(4, {{1}, {2}, {3, 4}}), P(4, {{1, 2}, {3, 4}})));
  CHECK_THROWS_AS(is_refinement(SetPartition::finest(2), SetPartition::finest(3)), InvalidInput);
  const auto all = enumerate_partitions(4);
  for (const auto& a : all)
    for (const auto& b : all) CHECK(is_refinement(a, b) == oracle::leq(as_blocks(a), as_blocks(b)));
}

TEST_CASE("Mobius function values") {
  CHECK(mobius(SetPartition::finest(4), SetPartition::coarsest(4)) == -6);
  CHECK(mobius(SetPartition::coarsest(5), SetPartition::coarsest(5)) == 1);
  CHECK(mobius(SetPartition::finest(4), P(4, {{1, 2, 3}, {4}})) == 2);
  CHECK_THROWS_AS(mobius(SetPartition::coarsest(3), SetPartition::finest(3)), InvalidInput);
}

TEST_CASE("Mobius function agrees with the recursive definition") {
  for (int n = 1; n <= 5; ++n) {
    const auto all = enumerate_partitions(n);
    for (const auto& a : all)
      for (const auto& b : all) {
        if (!is_refinement(a, b)) continue;
        CHECK(mobius(a, b) == oracle::mobius_recursive(as_blocks(a), as_blocks(b), n));
      }
    for (const auto& a : all) {
      CHECK(mobius_to_top(a.block_count()) == mobius(a, SetPartition::coarsest(n)));
      const auto sizes = a.block_sizes();
      CHECK(mobius_from_bottom(sizes) == mobius(SetPartition::finest(n), a));
    }
  }
}

TEST_CASE("sum of mu(sigma, 1_n) over sigma >= pi vanishes unless pi = 1_n") {
  for (int n = 1; n <= 8; ++n) {
    const auto all = enumerate_partitions(n);
    std::vector<Integer> mu_top;
    for (const auto& s : all) mu_top.push_back(mobius_to_top(s.block_count()));
    for (std::size_t i = 0; i < all.size(); i += (n >= 7 ? 97 : 1)) {
      Integer sum = 0;
      for (std::size_t j = 0; j < all.size(); ++j)
        if (is_refinement(all[i], all[j])) sum += mu_top[j];
      CHECK(sum == (all[i] == SetPartition::coarsest(n) ? 1 : 0));
    }
  }
}

TEST_CASE("Mobius inversion round trip") {
  oracle::RandomRationals rng(7);
  for (int n = 1; n <= 6; ++n) {
    const auto all = enumerate_partitions(n);
    std::vector<Rational> g;
    for (std::size_t i = 0; i < all.size(); ++i) g.push_back(rng.next());
    std::vector<Rational> f(all.size(), Rational(0));
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = 0; j < all.size(); ++j)
        if (is_refinement(all[j], all[i])) f[i] += g[j];
    for (std::size_t i = 0; i < all.size(); ++i) {
      Rational back = 0;
      for (std::size_t j = 0; j < all.size(); ++j)
        if (is_refinement(all[j], all[i])) back += f[j] * Rational(mobius(all[j], all[i]));
      CHECK(back == g[i]);
    }
  }
}

TEST_CASE("subset lattice") {
  CHECK(mobius_subset(Subset::make(3, {1, 2}), Subset::make(3, {1, 2})) == 1);
  CHECK(mobius_subset(Subset::make(3, {}), Subset::make(3, {1, 2, 3})) == -1);
  CHECK(mobius_subset(Subset::make(4, {2}), Subset::make(4, {1, 2, 3})) == 1);
  CHECK_THROWS_AS(mobius_subset(Subset::make(3, {1}), Subset::make(3, {2})), InvalidInput);
}

TEST_CASE("tau and hat embeddings") {
  CHECK(tau_embed(Subset::make(5, {1, 4})) == P(5, {{1, 4}, {2}, {3}, {5}}));
  CHECK(tau_embed(Subset::make(4, {1, 2, 3, 4})) == SetPartition::coarsest(4));
  CHECK(tau_embed(Subset::make(4, {3})) == SetPartition::finest(4));
  CHECK_THROWS_AS(tau_embed(Subset::make(4, {})), InvalidInput);
  const std::vector<int> s22{2, 2};
  CHECK(hat_embed(SetPartition::finest(2), s22) == P(4, {{1, 2}, {3, 4}}));
  CHECK(hat_embed(SetPartition::coarsest(3), std::vector<int>{1, 2, 3}) == SetPartition::coarsest(6));
  CHECK(hat_embed(P(3, {{1}, {2, 3}}), std::vector<int>{1, 2, 2}) == P(5, {{1}, {2, 3, 4, 5}}));
  const std::vector<int> sizes{2, 1, 3, 1};
  const auto all = enumerate_partitions(4);
  for (const auto& a : all)
    for (const auto& b : all) CHECK(is_refinement(a, b) == is_refinement(hat_embed(a, sizes), hat_embed(b, sizes)));
}

TEST_CASE("non-crossing partitions") {
  CHECK(enumerate_noncrossing(3).size() == 5);
  CHECK(enumerate_noncrossing(4).size() == 14);
  CHECK_FALSE(is_noncrossing(P(4, {{1, 3}, {2, 4}})));
  for (int n = 1; n <= 8; ++n) {
    CHECK(Integer(enumerate_noncrossing(n).size()) == oracle::catalan(n));
    for (const auto& p : enumerate_partitions(n)) {
      if (n <= 6) CHECK(is_noncrossing(p) == !oracle::crossing(as_blocks(p), n));
    }
  }
}

TEST_CASE("covering tuples") {
  const std::vector<int> s11{1, 1}, s2{2};
  CHECK(count_R(2, s11) == 2);
  CHECK(count_R(3, s2) == 0);
  CHECK(count_R(1, std::vector<int>{3}) == 0);
  const std::vector<int> s121{1, 2, 1};
  CHECK(count_R(4, s121) == 12);  // 4!/(1!2!1!)
  for (int n = 1; n <= 6; ++n)
    for (const auto& sz : std::vector<std::vector<int>>{{1}, {2, 1}, {2, 2}, {3, 1, 2}, {1, 1, 1}})
      CHECK(count_R(n, sz) == oracle::count_covering(n, sz));
}

TEST_CASE("essential tuples") {
  const std::vector<int> s11{1, 1}, s22{2, 2};
  CHECK(count_S(1, s11) == 1);
  CHECK(count_S(2, s11) == 0);
  CHECK(count_S(3, s22) == 6);
  CHECK(count_S(4, s22) == 0);
  for (int n = 1; n <= 5; ++n)
    for (const auto& sz : std::vector<std::vector<int>>{{2}, {2, 2}, {3, 2}, {2, 2, 2}, {1, 3}})
      CHECK(count_S(n, sz) == oracle::count_essential(n, sz));
}

TEST_CASE("interval-augmented tuples") {
  CHECK(count_T(std::vector<int>{3}, std::vector<int>{2, 1, 3}) == 6);
  CHECK(count_T(std::vector<int>{2, 2}, std::vector<int>{1, 1, 1}) == 6);
  CHECK(count_T(std::vector<int>{1, 1}, std::vector<int>{1}) == 1);
  CHECK_THROWS_AS(count_T(std::vector<int>{2, 2}, std::vector<int>{1, 1}), InvalidInput);
  CHECK(count_T_closed(std::vector<int>{2, 2}, std::vector<int>{1, 2, 1}) ==
        count_T(std::vector<int>{2, 2}, std::vector<int>{1, 2, 1}));
}

TEST_CASE("join-full counts") {
  CHECK(count_join_full(std::vector<int>{2, 2}) == 4);
  CHECK(count_join_full(std::vector<int>{5}) == 1);
  CHECK(count_join_full(std::vector<int>{1, 1}) == 1);
  CHECK(count_join_full_closed(std::vector<int>{2, 2}) == 4);
  CHECK(count_join_full_closed(std::vector<int>{5}) == 1);
  CHECK(count_join_full(std::vector<int>{2, 2, 2}) == 32);
}

TEST_CASE("rendering") {
  CHECK(to_string(P(3, {{2}, {1, 3}})) == "{{1,3},{2}}");
  CHECK_THROWS_AS(SetPartition::from_blocks(3, {{1, 2}, {2, 3}}), InvalidInput);
  CHECK_THROWS_AS(SetPartition::from_blocks(3, {{1, 2}}), InvalidInput);
  CHECK_THROWS_AS(SetPartition::from_rgs({1, 0}), InvalidInput);
}
