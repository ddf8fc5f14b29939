#include "fcg/uniserial.hpp"

#include <algorithm>

#include "fcg/errors.hpp"

namespace fcg {

namespace {

std::size_t width(int depth) { return std::size_t{1} << (depth - 1); }

// Conjugation permutation of X^{d-1}: perm[w] = g(w).
std::vector<std::uint32_t> level_permutation(const Element& g) {
  const int d = g.depth();
  std::vector<std::uint32_t> img{0}, next;
  for (int l = 0; l + 1 < d; ++l) {
    const std::size_t base = level_offset(l);
    next.resize(img.size() * 2);
    for (std::size_t i = 0; i < img.size(); ++i) {
      const std::uint32_t flip = g.label_at(base + i) ? 1U : 0U;
      next[2 * i] = 2 * img[i] + flip;
      next[2 * i + 1] = 2 * img[i] + (1U - flip);
    }
    img.swap(next);
  }
  return img;
}

BitVector permute(const BitVector& v, const std::vector<std::uint32_t>& perm) {
  BitVector out(v.size());
  for (std::size_t w = 0; w < v.size(); ++w)
    if (v.get(perm[w])) out.set(w);
  return out;
}

}  // namespace

StabVector StabVector::zero(int depth) {
  if (depth < 1) throw DomainError("depth must be at least 1");
  return {depth, BitVector(width(depth))};
}

StabVector StabVector::from_string(int depth, std::string_view bits) {
  if (depth < 1 || bits.size() != width(depth))
    throw DomainError("vector must have 2^(depth-1) = " + std::to_string(width(depth)) +
                      " bits");
  return {depth, BitVector::from_string(bits)};
}

StabVector StabVector::from_element(const Element& g) {
  const int d = g.depth();
  const std::size_t top = level_offset(d - 1);
  if (g.labels().slice(0, top).any())
    throw DomainError("element does not lie in the level-(d-1) stabilizer");
  return {d, g.level_labels(d - 1)};
}

Element StabVector::to_element() const { return from_level_vector(depth, bits); }

StabVector conjugate_vector(const StabVector& v, const Element& g) {
  if (g.depth() != v.depth) throw DomainError("conjugate_vector: depth mismatch");
  return {v.depth, permute(v.bits, level_permutation(g))};
}

std::vector<std::size_t> Filtration::dims() const {
  std::vector<std::size_t> out;
  for (const Gf2Span& s : layers) out.push_back(s.rank());
  return out;
}

bool Filtration::uniserial() const {
  const auto ds = dims();
  if (ds.size() != width(depth) + 1) return false;
  for (std::size_t i = 0; i < ds.size(); ++i)
    if (ds[i] != width(depth) - i) return false;
  return true;
}

std::size_t Filtration::deepest_layer(const BitVector& v) const {
  std::size_t k = 0;
  while (k + 1 < layers.size() && layers[k + 1].contains(v)) ++k;
  return k;
}

Filtration filtration(const std::vector<Element>& generators, int depth) {
  std::vector<std::vector<std::uint32_t>> perms;
  for (const Element& g : generators) {
    if (g.depth() != depth) throw DomainError("filtration: generator depth mismatch");
    perms.push_back(level_permutation(g));
  }
  Filtration f;
  f.depth = depth;
  f.layers.push_back(Gf2Span::full(width(depth)));
  while (f.layers.back().rank() > 0) {
    Gf2Span next(width(depth));
    for (const BitVector& b : f.layers.back().basis())
      for (const auto& p : perms) next.insert(b ^ permute(b, p));
    // A 2-group acting on a 2-group always shrinks it; guard anyway.
    if (next.rank() == f.layers.back().rank()) break;
    f.layers.push_back(std::move(next));
  }
  return f;
}

UniserialVerdict is_uniserial(const std::vector<Element>& generators, int depth) {
  for (int k = 0; k + 2 <= depth; ++k) {
    const LevelSet xk = full_levels(depth, {k});
    bool hit = false;
    for (const Element& g : generators) hit = hit || alpha_sum(g, xk);
    if (!hit) return {false, k};
  }
  return {true, std::nullopt};
}

Gf2Span invariant_span(const std::vector<BitVector>& seeds,
                       const std::vector<Element>& generators, int depth) {
  std::vector<std::vector<std::uint32_t>> perms;
  for (const Element& g : generators) perms.push_back(level_permutation(g));
  Gf2Span span(width(depth));
  std::vector<BitVector> todo(seeds.begin(), seeds.end());
  while (!todo.empty()) {
    BitVector v = std::move(todo.back());
    todo.pop_back();
    if (!span.insert(v)) continue;
    for (const auto& p : perms) todo.push_back(permute(v, p));
  }
  return span;
}

int height_recursive(const BitVector& v) {
  if (v.size() == 1) return v.get(0) ? 1 : 0;
  const std::size_t half = v.size() / 2;
  const int h0 = height_recursive(v.slice(0, half));
  const int h1 = height_recursive(v.slice(half, half));
  if (h0 == 0 && h1 == 0) return 0;
  if (h0 != h1) return 2 * std::max(h0, h1);
  return h0 + h1 - 1;
}

HeightOracle::HeightOracle(int depth)
    : filtration_(fcg::filtration(standard_generators(depth), depth)) {}

int HeightOracle::height(const BitVector& v) const {
  if (v.size() != width(filtration_.depth)) throw DomainError("height: vector length mismatch");
  return static_cast<int>(width(filtration_.depth) - filtration_.deepest_layer(v));
}

int height(const StabVector& v, HeightMode mode) {
  if (v.bits.size() != width(v.depth)) throw DomainError("height: vector length mismatch");
  if (mode == HeightMode::recursive) return height_recursive(v.bits);
  return HeightOracle(v.depth).height(v.bits);
}

int coset_class(const StabVector& v) {
  if (v.depth < 2) throw DomainError("coset_class needs depth at least 2");
  const std::size_t half = width(v.depth) / 2;
  const bool c0 = v.bits.slice(0, half).count() & 1U;
  const bool c1 = v.bits.slice(half, half).count() & 1U;
  return (c0 ? 1 : 0) + (c1 ? 2 : 0);
}

StabVector coset_representative(int depth, int cls) {
  if (depth < 2 || cls < 0 || cls > 3) throw DomainError("coset representative out of range");
  const Element a0 = generator(depth, 0), top = generator(depth, depth - 1);
  switch (cls) {
    case 0: return StabVector::zero(depth);
    case 1: return StabVector::from_element(top);
    case 2: return StabVector::from_element(conjugate(top, a0));
    default: return StabVector::from_element(commutator(a0, top));
  }
}

}  // namespace fcg
