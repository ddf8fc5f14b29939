#include "doctest.h"

#include <map>
#include <random>

#include "fcg/errors.hpp"
#include "fcg/tree.hpp"

using namespace fcg;

namespace {

Element P(const char* s) { return Element::from_portrait(s); }
Word W(const char* s) { return Word::from_string(s); }

Element random_element(int d, std::mt19937_64& rng) {
  BitVector bits(portrait_size(d));
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (rng() & 1U) bits.set(i);
  return Element::from_labels(d, bits);
}

std::vector<Element> all_elements(int d) {
  std::vector<Element> out;
  const std::size_t n = portrait_size(d);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    BitVector bits(n);
    for (std::size_t i = 0; i < n; ++i)
      if ((m >> i) & 1U) bits.set(i);
    out.push_back(Element::from_labels(d, bits));
  }
  return out;
}

// Permutation of all words of length <= d, built only from act().
using Perm = std::map<Word, Word>;
Perm as_perm(const Element& g) {
  Perm p;
  for (int len = 0; len <= g.depth(); ++len)
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      Word w(len, v);
      p[w] = act(g, w);
    }
  return p;
}

}  // namespace

TEST_CASE("generators and portraits") {
  CHECK(generator(2, 0).portrait() == "1|00");
  CHECK(generator(2, 1).portrait() == "0|10");
  CHECK(generator(3, 1).portrait() == "0|10|0000");
  CHECK(compose(generator(3, 2), generator(3, 2)).is_identity());
  CHECK_THROWS_AS(generator(2, 2), DomainError);
  CHECK(P("1|01|0110").portrait() == "1|01|0110");
  CHECK_THROWS_AS(P("1|0"), DomainError);
  CHECK_THROWS_AS(P("1|0x"), DomainError);
}

TEST_CASE("compose and inverse worked values") {
  const Element a0 = generator(2, 0), a1 = generator(2, 1);
  CHECK(compose(a0, a0).is_identity());
  CHECK(compose(a1, a0).portrait() == "1|01");
  CHECK(compose(a0, a1).portrait() == "1|10");
  CHECK(inverse(Element(3)).is_identity());
  for (int i = 0; i < 4; ++i) CHECK(inverse(generator(4, i)) == generator(4, i));
  CHECK(inverse(compose(a1, a0)) == compose(a0, a1));
  CHECK_THROWS_AS(compose(a0, generator(3, 0)), DomainError);
}

TEST_CASE("compose matches permutation composition exhaustively for d <= 3") {
  for (int d = 1; d <= 3; ++d) {
    const auto all = all_elements(d);
    std::map<Perm, Element> by_perm;
    for (const Element& g : all) by_perm.emplace(as_perm(g), g);
    REQUIRE(by_perm.size() == all.size());
    for (const Element& g : all) {
      const Perm pg = as_perm(g);
      for (const Element& h : all) {
        const Perm ph = as_perm(h);
        Perm gh;
        for (const auto& [w, hw] : ph) gh[w] = pg.at(hw);
        CHECK(compose(g, h) == by_perm.at(gh));
      }
    }
  }
}

TEST_CASE("group laws on random samples") {
  std::mt19937_64 rng(7);
  for (int d = 1; d <= 6; ++d) {
    for (int trial = 0; trial < 40; ++trial) {
      const Element g = random_element(d, rng), h = random_element(d, rng),
                    k = random_element(d, rng);
      CHECK(compose(compose(g, h), k) == compose(g, compose(h, k)));
      CHECK(compose(g, inverse(g)).is_identity());
      CHECK(compose(inverse(g), g).is_identity());
      CHECK(compose(g, Element(d)) == g);
      CHECK(compose(Element(d), g) == g);
    }
  }
}

TEST_CASE("act") {
  CHECK(act(generator(3, 0), W("01")) == W("11"));
  CHECK(act(generator(2, 1), W("00")) == W("01"));
  CHECK(act(Element(3), W("101")) == W("101"));
  CHECK_THROWS_AS(act(Element(2), W("101")), DomainError);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Element g = random_element(5, rng);
    const Word w(5, rng() & 31U);
    for (int k = 0; k <= 5; ++k) CHECK(act(g, w.prefix(k)) == act(g, w).prefix(k));
  }
}

TEST_CASE("sections and branches") {
  CHECK(section(generator(2, 1), W("0")) == generator(1, 0));
  CHECK(section(Element(4), W("10")).is_identity());
  CHECK(section(compose(generator(2, 1), generator(2, 0)), W("1")) == generator(1, 0));
  CHECK_THROWS_AS(section(Element(2), W("10")), DomainError);

  CHECK(embed_branch(2, W("0"), generator(1, 0)) == generator(2, 1));
  const Element g = P("1|10|0110");
  CHECK(embed_branch(3, Word(), g) == g);
  CHECK(conjugate(embed_branch(3, W("1"), generator(1, 0)), generator(3, 0)) ==
        embed_branch(3, W("0"), generator(1, 0)));
  CHECK_THROWS_AS(embed_branch(2, W("0"), Element(2)), DomainError);
  CHECK(section(embed_branch(5, W("01"), g), W("01")) == g);
}

TEST_CASE("section cocycle") {
  for (int d = 1; d <= 3; ++d) {
    const auto all = all_elements(d);
    for (const Element& g : all)
      for (const Element& h : all)
        for (int len = 0; len < d; ++len)
          for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
            const Word w(len, v);
            CHECK(section(compose(g, h), w) ==
                  compose(section(g, act(h, w)), section(h, w)));
          }
  }
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 4 + static_cast<int>(rng() % 3);
    const Element g = random_element(d, rng), h = random_element(d, rng);
    const int len = static_cast<int>(rng() % static_cast<unsigned>(d));
    const Word w(len, rng() & ((std::uint64_t{1} << len) - 1));
    CHECK(section(compose(g, h), w) == compose(section(g, act(h, w)), section(h, w)));
  }
}

TEST_CASE("projection") {
  CHECK(project(generator(2, 1), 1).is_identity());
  CHECK(project(generator(3, 0), 1) == generator(1, 0));
  const Element g = P("1|10|0110");
  CHECK(project(g, 3) == g);
  CHECK_THROWS_AS(project(g, 0), DomainError);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Element a = random_element(5, rng), b = random_element(5, rng);
    for (int k = 1; k <= 5; ++k)
      CHECK(project(compose(a, b), k) == compose(project(a, k), project(b, k)));
  }
}

TEST_CASE("first disagreement level is the profinite metric") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Element a = random_element(5, rng);
    Element b = a;
    if (trial % 3) b.set_label_at(rng() % b.labels().size(), !b.label_at(0) ? 1 : 0);
    const auto n = first_disagreement_level(a, b);
    for (int k = 1; k <= 5; ++k) {
      const bool agree = project(a, k) == project(b, k);
      CHECK(agree == (!n || k < *n));
    }
  }
  CHECK(!first_disagreement_level(Element(3), Element(3)));
}

TEST_CASE("alpha sums") {
  for (int d = 2; d <= 5; ++d) {
    const LevelSet xj = full_levels(d, {0, d - 1});
    for (int j = 0; j < d; ++j)
      CHECK(alpha_sum(generator(d, j), xj) == (j == 0 || j == d - 1));
  }
  CHECK_FALSE(alpha_sum(Element(3), full_levels(3, {0, 1, 2})));
  CHECK(alpha_sum(compose(generator(2, 1), generator(2, 0)), full_levels(2, {1})));

  // alpha over a union of full levels is a homomorphism
  for (int d = 1; d <= 3; ++d) {
    const auto all = all_elements(d);
    for (std::uint32_t mask = 1; mask < (1U << d); ++mask) {
      std::vector<int> levels;
      for (int l = 0; l < d; ++l)
        if ((mask >> l) & 1U) levels.push_back(l);
      const LevelSet xj = full_levels(d, levels);
      for (const Element& g : all)
        for (const Element& h : all)
          CHECK(alpha_sum(compose(g, h), xj) == (alpha_sum(g, xj) != alpha_sum(h, xj)));
    }
  }
}

TEST_CASE("portrait sum and support") {
  const Element a0 = generator(2, 0), a1 = generator(2, 1);
  CHECK(portrait_sum(a0, a0).is_identity());
  CHECK(portrait_sum(a0, a1).portrait() == "1|10");
  CHECK(portrait_sum(a1, a0) != compose(a1, a0));
  CHECK(Element(4).support().empty());
  CHECK(P("1|01").support() == std::vector<Word>{Word(), W("1")});
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const Element g = random_element(4, rng);
    CHECK(g.support().empty() == g.is_identity());
  }
}

TEST_CASE("level sets and the action on them") {
  const LevelSet xj = full_levels(4, {1, 3});
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 30; ++trial) CHECK(act_on_set(random_element(4, rng), xj) == xj);
  CHECK(act_on_set(generator(3, 0), LevelSet(3, {W("00"), W("01")})) ==
        LevelSet(3, {W("10"), W("11")}));
  const LevelSet s(3, {W("0"), W("11")});
  CHECK(act_on_set(Element(3), s) == s);
  CHECK(act_on_set(generator(3, 1), s).size() == s.size());
  CHECK(prefixed_levels(4, W("0"), {1, 3}).to_string() == "0,000,001,010,011");
  CHECK(shift_set(LevelSet(2, {Word(), W("1")}), W("10"), 4).to_string() == "10,101");
  CHECK(s.symmetric_difference(s).empty());
  CHECK_THROWS_AS(LevelSet(2, {W("01")}), DomainError);
}

TEST_CASE("depth cap") {
  const int old = depth_cap();
  set_depth_cap(4);
  CHECK_THROWS_AS(Element(5), ResourceCapExceeded);
  set_depth_cap(old);
  CHECK_NOTHROW(Element(5));
  CHECK_THROWS_AS(set_depth_cap(kAbsoluteMaxDepth + 1), DomainError);
}
