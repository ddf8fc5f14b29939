#include "doctest.h"

#include <random>
#include <set>

#include "fcg/errors.hpp"
#include "fcg/group.hpp"

using namespace fcg;

namespace {

Element P(const char* s) { return Element::from_portrait(s); }

std::size_t bfs_order(const std::vector<Element>& gens, int d) {
  return bfs_close(gens, d, std::uint64_t{1} << 20).size();
}

// Subgroup by brute force over an explicit element list.
std::set<Element> explicit_set(const GroupSet& g) {
  auto e = g.elements(std::uint64_t{1} << 20);
  return {e.begin(), e.end()};
}

std::vector<Element> random_gens(int d, int count, std::mt19937_64& rng) {
  std::vector<Element> out;
  for (int i = 0; i < count; ++i) {
    BitVector b(portrait_size(d));
    for (std::size_t j = 0; j < b.size(); ++j)
      if (rng() % 3 == 0) b.set(j);
    out.push_back(Element::from_labels(d, b));
  }
  return out;
}

}  // namespace

TEST_CASE("closure orders") {
  CHECK(close({generator(2, 0), generator(2, 1)}, 2).order() == 8);
  CHECK(close(standard_generators(4), 4).order() == 32768);
  CHECK(close({Element(3)}, 3).order() == 1);
  CHECK(bfs_order({generator(2, 0), generator(2, 1)}, 2) == 8);
  CHECK(bfs_order(standard_generators(4), 4) == 32768);
  CHECK_THROWS_AS(bfs_close(standard_generators(4), 4, 1000), ResourceCapExceeded);
  CHECK_THROWS_AS(full_group(4).elements(1000), ResourceCapExceeded);
  CHECK_THROWS_AS(close({generator(2, 0), generator(3, 0)}, 2), DomainError);
}

TEST_CASE("pcgs closure agrees with breadth-first closure") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 3);
    const auto gens = random_gens(d, 1 + static_cast<int>(rng() % 3), rng);
    const GroupSet g = close(gens, d);
    const auto bfs = bfs_close(gens, d, std::uint64_t{1} << 20);
    const auto listed = g.elements(std::uint64_t{1} << 20);
    CHECK(listed == bfs);
    for (const Element& e : bfs) CHECK(g.contains(e));
    // idempotent, and the reduced pcgs is canonical
    CHECK(close(g.pcgs(), d) == g);
    CHECK(close(listed, d) == g);
  }
}

TEST_CASE("derived subgroup and Frattini") {
  const GroupSet g2 = full_group(2);
  const GroupSet dg = derived_subgroup(g2);
  CHECK(explicit_set(dg) == std::set<Element>{Element(2), P("0|11")});
  CHECK(commutator(generator(2, 0), generator(2, 1)) == P("0|11"));
  const GroupSet elem_ab = close({generator(3, 0), P("0|11|0000"), P("0|00|1111")}, 3);
  CHECK(elem_ab.order() == 8);
  CHECK(derived_subgroup(elem_ab).is_trivial());
  CHECK(frattini(g2).order() == 2);
  CHECK(frattini(elem_ab).is_trivial());
  for (int d = 1; d <= 5; ++d) CHECK(abelianization(full_group(d)).rank() == static_cast<std::size_t>(d));
}

TEST_CASE("derived and Frattini properties against brute force") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 25; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 2);
    const GroupSet g = close(random_gens(d, 2 + static_cast<int>(rng() % 2), rng), d);
    const auto elems = g.elements(1 << 20);
    std::vector<Element> comms, squares_and_comms;
    for (const Element& x : elems) {
      squares_and_comms.push_back(compose(x, x));
      for (const Element& y : elems) {
        comms.push_back(commutator(x, y));
        squares_and_comms.push_back(commutator(x, y));
      }
    }
    const GroupSet dg = derived_subgroup(g), phi = frattini(g);
    CHECK(dg == close(comms, d));
    CHECK(phi == close(squares_and_comms, d));
    CHECK(is_normal_in(dg, g));
    CHECK(is_normal_in(phi, g));
    CHECK(is_subgroup_of(dg, phi));
    // G / Phi is elementary abelian
    for (const Element& x : elems) CHECK(phi.contains(compose(x, x)));
    const AbelianizationCoords ab = abelianization(g);
    for (int k = 0; k < 20; ++k) {
      const Element& x = elems[rng() % elems.size()];
      const Element& y = elems[rng() % elems.size()];
      CHECK((ab.coords(compose(x, y)) == (ab.coords(x) ^ ab.coords(y))));
      CHECK(ab.coords(x).none() == phi.contains(x));
    }
    const auto maxes = maximal_subgroups(g);
    CHECK(maxes.size() == (std::size_t{1} << ab.rank()) - 1);
    std::set<std::vector<Element>> distinct;
    for (const GroupSet& m : maxes) {
      CHECK(m.log2_order() + 1 == g.log2_order());
      CHECK(is_subgroup_of(phi, m));
      CHECK(is_normal_in(m, g));
      distinct.insert(m.pcgs());
    }
    CHECK(distinct.size() == maxes.size());
  }
}

TEST_CASE("maximal subgroups of G(d) are the kernels of alpha_J") {
  CHECK(maximal_subgroups(full_group(2)).size() == 3);
  for (int d = 2; d <= 4; ++d) {
    const GroupSet g = full_group(d);
    const auto maxes = maximal_subgroups(g);
    CHECK(maxes.size() == (std::size_t{1} << d) - 1);
    std::set<std::uint32_t> seen;
    for (const GroupSet& m : maxes) {
      int matches = 0;
      for (std::uint32_t mask = 1; mask < (1U << d); ++mask) {
        std::vector<int> levels;
        for (int l = 0; l < d; ++l)
          if ((mask >> l) & 1U) levels.push_back(l);
        const LevelSet xj = full_levels(d, levels);
        bool kernel = true;
        for (const Element& e : m.pcgs()) kernel = kernel && !alpha_sum(e, xj);
        if (kernel) {
          ++matches;
          seen.insert(mask);
        }
      }
      CHECK(matches == 1);
    }
    CHECK(seen.size() == maxes.size());
  }
}

TEST_CASE("level stabilizers and projection") {
  CHECK(level_stabilizer(full_group(2), 1).order() == 4);
  for (int d = 2; d <= 4; ++d)
    CHECK(level_stabilizer(full_group(d), d - 1).order() == BigInt(1) << (1 << (d - 1)));
  CHECK(level_stabilizer(GroupSet(3), 2).is_trivial());
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 3;
    const GroupSet g = close(random_gens(d, 3, rng), d);
    for (int k = 1; k <= d; ++k) {
      const GroupSet st = level_stabilizer(g, k);
      std::set<Element> kernel;
      for (const Element& e : g.elements(1 << 20))
        if (project(e, k).is_identity()) kernel.insert(e);
      CHECK(explicit_set(st) == kernel);
      // |G| = |stab| * |image|
      CHECK(g.log2_order() == st.log2_order() + project(g, k).log2_order());
    }
  }
}

TEST_CASE("essentiality") {
  for (int d = 2; d <= 5; ++d) CHECK(is_essential(full_group(d)).essential);
  CHECK(is_essential(close({generator(2, 0)}, 2)).essential);
  const auto r = is_essential(close({generator(2, 1)}, 2));
  CHECK_FALSE(r.essential);
  REQUIRE(r.witness);
  CHECK(r.witness->first == generator(2, 1));
  CHECK(r.witness->second == 0);
}

TEST_CASE("essentiality by brute force and projections of essential groups") {
  // Brute force over every element, q ranging over members of P.
  auto brute = [](const GroupSet& p) {
    const int d = p.depth();
    const auto elems = p.elements(1 << 20);
    std::set<Element> proj;
    for (const Element& e : elems) proj.insert(project(e, d - 1));
    for (const Element& e : elems)
      for (int x = 0; x < 2; ++x)
        if (!proj.count(section(e, Word(1, static_cast<std::uint64_t>(x))))) return false;
    return true;
  };
  std::mt19937_64 rng(37);
  int essential_seen = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 2);
    const GroupSet p = close(random_gens(d, 1 + static_cast<int>(rng() % 3), rng), d);
    const bool e = is_essential(p).essential;
    CHECK(e == brute(p));
    if (e && d == 3) {
      ++essential_seen;
      CHECK(is_essential(project(p, d - 1)).essential);
    }
  }
  CHECK(essential_seen > 0);
}

TEST_CASE("same group") {
  const GroupSet g = full_group(3);
  CHECK(same_group(g, g));
  CHECK(same_group(close({generator(2, 0), generator(2, 1)}, 2),
                   close({generator(2, 1), compose(generator(2, 1), generator(2, 0))}, 2)));
  CHECK_FALSE(same_group(close({generator(2, 0)}, 2), close({generator(2, 1)}, 2)));
}

TEST_CASE("group from an explicit list") {
  CHECK(group_from_elements({Element(2), P("0|11")}, 2).order() == 2);
  CHECK_THROWS_AS(group_from_elements({generator(2, 0), generator(2, 1)}, 2), DomainError);
}
