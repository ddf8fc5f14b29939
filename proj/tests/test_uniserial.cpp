#include "doctest.h"

#include <random>

#include "fcg/errors.hpp"
#include "fcg/group.hpp"
#include "fcg/uniserial.hpp"

using namespace fcg;

namespace {

BitVector bits_of(std::uint64_t m, std::size_t n) {
  BitVector b(n);
  for (std::size_t i = 0; i < n; ++i)
    if ((m >> i) & 1U) b.set(i);
  return b;
}

Gf2Span span_of(const std::vector<BitVector>& vs, std::size_t n) {
  Gf2Span s(n);
  for (const auto& v : vs) s.insert(v);
  return s;
}

}  // namespace

TEST_CASE("conjugate_vector agrees with group conjugation") {
  const StabVector v = StabVector::from_string(2, "10");
  CHECK(conjugate_vector(v, Element(2)) == v);
  CHECK(conjugate_vector(v, generator(2, 0)).bits.to_string() == "01");
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 4);
    BitVector g(portrait_size(d));
    for (std::size_t i = 0; i < g.size(); ++i)
      if (rng() & 1U) g.set(i);
    const Element ge = Element::from_labels(d, g);
    const StabVector sv{d, bits_of(rng(), std::size_t{1} << (d - 1))};
    CHECK(conjugate_vector(sv, ge).to_element() == conjugate(sv.to_element(), ge));
  }
  CHECK_THROWS_AS(conjugate_vector(v, Element(3)), DomainError);
}

TEST_CASE("filtration of G(d)") {
  const Filtration f2 = filtration(standard_generators(2), 2);
  CHECK(f2.dims() == std::vector<std::size_t>{2, 1, 0});
  CHECK(f2.layers[1] == span_of({BitVector::from_string("11")}, 2));

  const Filtration f3 = filtration(standard_generators(3), 3);
  CHECK(f3.dims() == std::vector<std::size_t>{4, 3, 2, 1, 0});
  CHECK(f3.layers[2] ==
        span_of({BitVector::from_string("1100"), BitVector::from_string("0011")}, 4));

  const Filtration triv = filtration({}, 3);
  CHECK(triv.dims() == std::vector<std::size_t>{4, 0});
  CHECK_FALSE(triv.uniserial());
  for (int d = 1; d <= 6; ++d) CHECK(filtration(standard_generators(d), d).uniserial());
}

TEST_CASE("filtration step equals the commutator subgroup [P, V^(i)]") {
  // Explicit closure of commutators [p, v] for p in P, v in V^(i).
  std::mt19937_64 rng(43);
  for (int d = 2; d <= 3; ++d) {
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<Element> gens;
      for (int j = 0; j < 2; ++j) {
        BitVector b(portrait_size(d));
        for (std::size_t i = 0; i < b.size(); ++i)
          if (rng() & 1U) b.set(i);
        gens.push_back(Element::from_labels(d, b));
      }
      if (trial == 0) gens = standard_generators(d);
      const GroupSet p = close(gens, d);
      const auto pel = p.elements(1 << 20);
      const Filtration f = filtration(gens, d);
      for (std::size_t i = 0; i + 1 < f.layers.size(); ++i) {
        std::vector<Element> comms;
        const std::size_t n = std::size_t{1} << f.layers[i].rank();
        for (std::size_t m = 0; m < n; ++m) {
          BitVector v(f.layers[i].ambient_dimension());
          for (std::size_t r = 0; r < f.layers[i].rank(); ++r)
            if ((m >> r) & 1U) v ^= f.layers[i].basis()[r];
          const Element ve = StabVector{d, v}.to_element();
          for (const Element& x : pel) comms.push_back(commutator(x, ve));
        }
        Gf2Span direct(f.layers[i].ambient_dimension());
        for (const Element& e : close(comms, d).elements(1 << 20))
          direct.insert(StabVector::from_element(e).bits);
        CHECK(direct == f.layers[i + 1]);
      }
    }
  }
}

TEST_CASE("alpha_k criterion versus filtration") {
  CHECK(is_uniserial(standard_generators(5), 5).uniserial);
  const auto v = is_uniserial({generator(3, 0), generator(3, 2)}, 3);
  CHECK_FALSE(v.uniserial);
  CHECK(v.failing_level == 1);
  CHECK_FALSE(filtration({generator(3, 0), generator(3, 2)}, 3).uniserial());
  for (int d = 1; d <= 6; ++d) {
    auto gens = standard_generators(d);
    CHECK(is_uniserial(gens, d).uniserial);
    gens.pop_back();
    CHECK(is_uniserial(gens, d).uniserial);
    CHECK(filtration(gens, d).uniserial());
  }
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 4);
    std::vector<Element> gens;
    const int count = 1 + static_cast<int>(rng() % 3);
    for (int j = 0; j < count; ++j) {
      BitVector b(portrait_size(d));
      for (std::size_t i = 0; i < b.size(); ++i)
        if (rng() % 4 == 0) b.set(i);
      gens.push_back(Element::from_labels(d, b));
    }
    CHECK(is_uniserial(gens, d).uniserial == filtration(gens, d).uniserial());
  }
}

TEST_CASE("uniserial subgroups share the G(d) filtration") {
  std::mt19937_64 rng(53);
  int seen = 0;
  for (int trial = 0; trial < 200 && seen < 30; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 3);
    std::vector<Element> gens;
    for (int j = 0; j < 3; ++j) {
      BitVector b(portrait_size(d));
      for (std::size_t i = 0; i < b.size(); ++i)
        if (rng() % 3 == 0) b.set(i);
      gens.push_back(Element::from_labels(d, b));
    }
    const Filtration f = filtration(gens, d);
    if (!f.uniserial()) continue;
    ++seen;
    const Filtration full = filtration(standard_generators(d), d);
    CHECK(f.layers == full.layers);
    // normal closure of a vector of height 2^{d-1} - k spans V^(k)
    const HeightOracle oracle(d);
    for (int s = 0; s < 10; ++s) {
      const BitVector v = bits_of(rng(), std::size_t{1} << (d - 1));
      if (v.none()) continue;
      const std::size_t k = (std::size_t{1} << (d - 1)) - oracle.height(v);
      CHECK(invariant_span({v}, gens, d) == full.layers[k]);
    }
  }
  CHECK(seen >= 10);
}

TEST_CASE("explicit descriptions of V^(1) and V^(2)") {
  for (int d = 2; d <= 5; ++d) {
    const Filtration f = filtration(standard_generators(d), d);
    const std::size_t n = std::size_t{1} << (d - 1);
    // V^(1): even total parity
    Gf2Span v1(n), v2(n);
    for (std::size_t i = 1; i < n; ++i) {
      BitVector b(n);
      b.set(0);
      b.set(i);
      v1.insert(b);
      if (i != n / 2 && (i < n / 2) == (0 < n / 2)) v2.insert(b);
    }
    for (std::size_t i = n / 2 + 1; i < n; ++i) {
      BitVector b(n);
      b.set(n / 2);
      b.set(i);
      v2.insert(b);
    }
    CHECK(f.layers[1] == v1);
    CHECK(f.layers[2] == v2);
  }
}

TEST_CASE("heights") {
  CHECK(height(StabVector::zero(4), HeightMode::recursive) == 0);
  CHECK(height(StabVector::zero(4), HeightMode::oracle) == 0);
  CHECK(height(StabVector::from_string(3, "1000"), HeightMode::recursive) == 4);
  CHECK(height(StabVector::from_string(3, "1000"), HeightMode::oracle) == 4);
  for (int d = 2; d <= 6; ++d) {
    const Element top = generator(d, d - 1);
    const int w = 1 << (d - 1);
    const auto c0 = StabVector::from_element(commutator(generator(d, 0), top));
    const auto c1 = StabVector::from_element(commutator(generator(d, 1), top));
    CHECK(height(c0, HeightMode::recursive) == w - 1);
    CHECK(height(c0, HeightMode::oracle) == w - 1);
    if (d >= 3) {
      CHECK(height(c1, HeightMode::recursive) == w - 2);
      CHECK(height(c1, HeightMode::oracle) == w - 2);
    }
  }
}

TEST_CASE("recursive height equals the oracle exhaustively, d <= 4") {
  for (int d = 2; d <= 4; ++d) {
    const HeightOracle oracle(d);
    const std::size_t n = std::size_t{1} << (d - 1);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      const BitVector v = bits_of(m, n);
      const int h = height_recursive(v);
      CHECK(h == oracle.height(v));
      // conjugation invariance under the standard generators
      for (const Element& g : standard_generators(d))
        CHECK(height_recursive(conjugate_vector({d, v}, g).bits) == h);
    }
  }
}

TEST_CASE("coset classes") {
  for (int d = 2; d <= 5; ++d) {
    CHECK(coset_class(StabVector::from_element(generator(d, d - 1))) == 1);
    CHECK(coset_class(StabVector::from_element(commutator(generator(d, 0), generator(d, d - 1)))) ==
          3);
    CHECK(coset_class(StabVector::zero(d)) == 0);
    for (int c = 0; c < 4; ++c) CHECK(coset_class(coset_representative(d, c)) == c);
    const Filtration f = filtration(standard_generators(d), d);
    std::mt19937_64 rng(59 + d);
    for (int t = 0; t < 50; ++t) {
      const BitVector v = bits_of(rng(), std::size_t{1} << (d - 1));
      CHECK((coset_class({d, v}) == 0) == f.layers[2].contains(v));
    }
  }
  CHECK_THROWS_AS(coset_class(StabVector::zero(1)), DomainError);
}
