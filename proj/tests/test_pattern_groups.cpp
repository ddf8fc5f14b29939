#include "doctest.h"

#include <set>

#include "fcg/errors.hpp"
#include "fcg/pattern_groups.hpp"

using namespace fcg;

namespace {

Element P(const char* s) { return Element::from_portrait(s); }
Word W(const char* s) { return Word::from_string(s); }

std::vector<Element> all_of_g(int d) { return full_group(d).elements(1 << 20); }

// Membership-by-constraint over every element of G(d).
std::set<Element> brute_members(const ConstraintPatternGroup& p) {
  std::set<Element> out;
  for (const Element& g : all_of_g(p.depth()))
    if (p.satisfies(g)) out.insert(g);
  return out;
}

}  // namespace

TEST_CASE("ker alpha") {
  const auto k = ker_alpha(2, {1});
  CHECK(k.satisfies(generator(2, 0)));
  CHECK_FALSE(k.satisfies(generator(2, 1)));
  CHECK(k.group().order() == 4);
  CHECK(brute_members(k).size() == 4);
  const auto all = ker_alpha(3, {0, 1, 2});
  CHECK(all.index_log2() == 1);
  for (const Element& g : all_of_g(3)) {
    const int parity = static_cast<int>(alpha_sum(g, full_levels(3, {0, 1, 2})));
    CHECK(all.satisfies(g) == (parity == 0));
  }
  CHECK(all.certificate() == "invariant-span");
  CHECK_THROWS_AS(ker_alpha(3, {}), DomainError);
}

TEST_CASE("non-group constraints are rejected") {
  // alpha at the single word "0" is not invariant and its kernel is not closed.
  CHECK_THROWS_AS(make_constraint_group(2, {LevelSet(2, {W("0")})}), DomainError);
}

TEST_CASE("decompositions") {
  const auto d1 = build_decomposition(3, {2}, {0}, {0, 0});
  CHECK(d1.s == LevelSet(3, {W("00"), W("01")}));
  CHECK(d1.t == LevelSet(3, {W("10"), W("11")}));
  CHECK(validate_decomposition(d1).valid);

  const auto d2 = build_decomposition(2, {1}, {0}, {1});
  CHECK(d2.s == LevelSet(2, {Word(), W("0")}));
  CHECK(d2.t == LevelSet(2, {Word(), W("1")}));
  const auto d3 = build_decomposition(2, {1}, {0}, {0});
  CHECK(d3.s == LevelSet(2, {W("0")}));
  CHECK(d3.t == LevelSet(2, {W("1")}));

  SubordinateDecomposition bad{3, {2}, LevelSet(3, {W("00"), W("10")}),
                               LevelSet(3, {W("01"), W("11")})};
  const auto check = validate_decomposition(bad);
  CHECK_FALSE(check.valid);
  CHECK(check.violating_generator == 1);
  CHECK_THROWS_AS(build_decomposition(3, {}, {}, {0, 0, 0}), DomainError);
  CHECK_THROWS_AS(build_decomposition(3, {1}, {0}, {0, 0}), DomainError);
  CHECK_THROWS_AS(build_decomposition(3, {2}, {0, 1}, {0, 0}), DomainError);
  CHECK_THROWS_AS(constraint_group(bad), DomainError);
}

TEST_CASE("constraint groups at depth 2") {
  const auto g1 = constraint_group(build_decomposition(2, {1}, {0}, {0}));
  CHECK(brute_members(g1) == std::set<Element>{Element(2), generator(2, 0)});
  CHECK(g1.index_log2() == 2);
  const auto g2 = constraint_group(build_decomposition(2, {1}, {0}, {1}));
  CHECK(brute_members(g2) == std::set<Element>{Element(2), P("1|11")});
}

TEST_CASE("swapping S and T gives the same canonical form") {
  for (int d = 2; d <= 4; ++d) {
    for (const auto& eg : enumerate_nearly_maximal(d).groups) {
      const auto& dec = eg.decomposition;
      SubordinateDecomposition swapped{dec.depth, dec.levels, dec.t, dec.s};
      CHECK(validate_decomposition(swapped).valid);
      CHECK(constraint_group(swapped) == eg.group);
    }
  }
}

TEST_CASE("enumeration counts and structure") {
  const std::size_t expected[] = {0, 0, 2, 8, 32, 128};
  for (int d = 2; d <= 5; ++d) {
    const auto res = enumerate_nearly_maximal(d, 10, 2);
    CHECK(res.groups.size() == expected[d]);
    CHECK(res.only_with_root == 0);
    for (const auto& eg : res.groups) {
      const GroupSet& g = eg.group.group();
      const auto facts = nearly_maximal_facts(g);
      CHECK(facts.all());
      // inside exactly one ker alpha_J with d-1 in J, with index 2
      int containing = 0;
      for (std::uint32_t jm = 0; jm < (1U << (d - 1)); ++jm) {
        std::vector<int> levels;
        for (int l = 0; l + 1 < d; ++l)
          if ((jm >> l) & 1U) levels.push_back(l);
        levels.push_back(d - 1);
        const auto k = ker_alpha(d, levels);
        bool inside = true;
        for (const Element& e : g.pcgs()) inside = inside && k.satisfies(e);
        if (inside) {
          ++containing;
          CHECK(k.group().log2_order() == g.log2_order() + 1);
        }
      }
      CHECK(containing == 1);
    }
  }
  CHECK_THROWS_AS(enumerate_nearly_maximal(6, 5), ResourceCapExceeded);
}

TEST_CASE("constraint sets equal the generated groups exhaustively at d <= 3") {
  for (int d = 2; d <= 3; ++d)
    for (const auto& eg : enumerate_nearly_maximal(d).groups) {
      const auto members = brute_members(eg.group);
      const auto elems = eg.group.group().elements(1 << 20);
      CHECK(members == std::set<Element>(elems.begin(), elems.end()));
    }
}

TEST_CASE("exhaustive scan matches the enumeration") {
  for (int d = 2; d <= 4; ++d) {
    const auto scanned = exhaustive_scan(d);
    const auto res = enumerate_nearly_maximal(d);
    CHECK(scanned.size() == res.groups.size());
    std::set<std::vector<Element>> from_enum;
    for (const auto& eg : res.groups) from_enum.insert(eg.group.group().pcgs());
    for (const GroupSet& g : scanned) CHECK(from_enum.count(g.pcgs()) == 1);
  }
  CHECK_THROWS_AS(exhaustive_scan(5), DomainError);
}

TEST_CASE("nearly maximal facts reject other groups") {
  // Every index-4 subgroup failing the facts must not be produced.
  for (int d = 2; d <= 3; ++d) {
    const auto scanned = exhaustive_scan(d);
    std::set<std::vector<Element>> good;
    for (const GroupSet& g : scanned) good.insert(g.pcgs());
    for (const GroupSet& m : maximal_subgroups(full_group(d)))
      for (const GroupSet& q : maximal_subgroups(m)) {
        const auto facts = nearly_maximal_facts(q);
        const bool base = facts.essential && facts.projects_onto && facts.stabilizer_is_v2;
        CHECK(base == (good.count(q.pcgs()) == 1));
        // commutator criterion: index 4 and projecting onto G(d-1) with the
        // right stabilizer forces [a_1,a_{d-1}] in and [a_0,a_{d-1}] out
        if (base) CHECK(facts.all());
      }
  }
}

TEST_CASE("split extension groups") {
  const GroupSet s32 = split_extension_group(3, 2);
  CHECK(s32.order() == 32);
  CHECK(level_stabilizer(s32, 2).log2_order() == 2);
  CHECK(split_extension_group(3, 0) == full_group(3));
  CHECK(split_extension_group(2, 1).order() == 4);
  for (int d = 2; d <= 4; ++d)
    for (int i = 0; i < (1 << (d - 1)); ++i) {
      const GroupSet g = split_extension_group(d, i);
      CHECK(is_essential(g).essential);
      CHECK(project(g, d - 1).log2_order() == portrait_size(d - 1));
      CHECK(level_stabilizer(g, d - 1).log2_order() ==
            static_cast<std::size_t>((1 << (d - 1)) - i));
    }
  CHECK_THROWS_AS(split_extension_group(3, 4), DomainError);
}

TEST_CASE("window membership") {
  const GroupSet small = close({generator(2, 0)}, 2);
  CHECK(membership(small, P("1|00|0000")));
  CHECK_FALSE(membership(small, P("1|10|0000")));
  CHECK(membership(small, Element(5)));
  const auto k = ker_alpha(2, {1});
  CHECK(membership(k, generator(2, 0)));
  CHECK(membership(k, Element(4)));
  CHECK_THROWS_AS(membership(small, Element(1)), DomainError);
}

TEST_CASE("generating set normal form") {
  for (int d = 2; d <= 4; ++d)
    for (const auto& eg : enumerate_nearly_maximal(d).groups) {
      const auto nf = generating_set_normal_form(eg.group.group());
      CHECK(nf.regenerates);
      CHECK((nf.classes.at(0) == 0 || nf.classes.at(0) == 3));
    }
}

TEST_CASE("act_on_indicator extends act_on_set") {
  const Element g = P("1|01|1000");
  const LevelSet s(3, {Word(), W("0"), W("10"), W("11")});
  CHECK(act_on_indicator(g, s.indicator()) == act_on_set(g, s).indicator());
}
