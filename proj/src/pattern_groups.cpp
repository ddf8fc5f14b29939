#include "fcg/pattern_groups.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "fcg/errors.hpp"
#include "fcg/parallel.hpp"

namespace fcg {

namespace {

// a_i swaps 0^i 0 u with 0^i 1 u: on level l > i that exchanges the two
// halves of the first 2^{l-i} positions.
BitVector apply_standard_generator(int depth, int i, const BitVector& ind) {
  BitVector out = ind;
  for (int l = i + 1; l < depth; ++l) {
    const std::size_t base = level_offset(l);
    const std::size_t half = std::size_t{1} << (l - i - 1);
    out.assign_range(base, ind, base + half, half);
    out.assign_range(base + half, ind, base, half);
  }
  return out;
}

bool span_invariant_under_g(const Gf2Span& span, int depth) {
  for (const BitVector& row : span.basis())
    for (int i = 0; i < depth; ++i)
      if (!span.contains(apply_standard_generator(depth, i, row))) return false;
  return true;
}

GroupSet group_of_solutions(const Gf2Span& canonical, int depth) {
  // Reduced basis rows have distinct lowest bits, so they generate a group
  // with at least as many leads as the solution space has dimensions.
  Gf2Span solutions(portrait_size(depth));
  for (BitVector& v : canonical.nullspace()) solutions.insert(std::move(v));
  std::vector<Element> gens;
  for (const BitVector& row : solutions.basis()) gens.push_back(Element::from_labels(depth, row));
  GroupSet g = close(gens, depth);
  if (g.log2_order() != solutions.rank())
    throw DomainError("constraints do not define a group (solution space of dimension " +
                      std::to_string(solutions.rank()) + " generates a group of order 2^" +
                      std::to_string(g.log2_order()) + ")");
  return g;
}

}  // namespace

BitVector act_on_indicator(const Element& g, const BitVector& indicator) {
  const int d = g.depth();
  if (indicator.size() > portrait_size(d)) throw DomainError("indicator deeper than element");
  int levels = 0;
  while (portrait_size(levels) < indicator.size()) ++levels;
  BitVector out(indicator.size());
  std::vector<std::uint32_t> img{0}, next;
  for (int l = 0; l < levels; ++l) {
    const std::size_t base = level_offset(l);
    for (std::size_t i = 0; i < img.size(); ++i)
      if (indicator.get(base + i)) out.set(base + img[i]);
    if (l + 1 == levels) break;
    next.resize(img.size() * 2);
    for (std::size_t i = 0; i < img.size(); ++i) {
      const std::uint32_t flip = g.label_at(base + i) ? 1U : 0U;
      next[2 * i] = 2 * img[i] + flip;
      next[2 * i + 1] = 2 * img[i] + (1U - flip);
    }
    img.swap(next);
  }
  return out;
}

struct ConstraintPatternGroup::Lazy {
  std::once_flag once;
  GroupSet group;
};

bool ConstraintPatternGroup::satisfies(const Element& g) const {
  if (g.depth() != depth_) throw DomainError("membership: depth mismatch");
  for (const BitVector& row : canonical_.basis())
    if (g.labels().dot(row)) return false;
  return true;
}

const GroupSet& ConstraintPatternGroup::group() const {
  std::call_once(lazy_->once, [this] { lazy_->group = group_of_solutions(canonical_, depth_); });
  return lazy_->group;
}

ConstraintPatternGroup make_constraint_group(int depth, std::vector<LevelSet> constraints,
                                             const Caps& caps) {
  ConstraintPatternGroup p;
  p.depth_ = depth;
  p.canonical_ = Gf2Span(portrait_size(depth));
  for (LevelSet& c : constraints) {
    if (c.depth() > depth) throw DomainError("constraint reaches below the pattern depth");
    if (c.depth() < depth) c = c.at_depth(depth);
    p.canonical_.insert(c.indicator());
  }
  p.constraints_ = std::move(constraints);
  p.lazy_ = std::make_shared<ConstraintPatternGroup::Lazy>();
  if (span_invariant_under_g(p.canonical_, depth)) {
    // alpha_C(gh) = alpha_{h(C)}(g) + alpha_C(h), and h(C) stays in the span.
    p.certificate_ = "invariant-span";
  } else {
    const GroupSet& g = p.group();
    for (const Element& e : g.elements(caps.max_elements))
      if (!p.satisfies(e))
        throw DomainError("constraints do not define a group: " + e.portrait() +
                          " is generated but violates them");
    p.certificate_ = "enumerated";
  }
  if (depth <= 4) {
    // Exhaustive confirmation that the constrained set is exactly the group.
    const GroupSet& g = p.group();
    for (const Element& e : g.elements(caps.max_elements))
      if (!p.satisfies(e)) throw DomainError("constraint group failed exhaustive closure check");
  }
  return p;
}

ConstraintPatternGroup ker_alpha(int depth, const std::vector<int>& levels) {
  if (levels.empty()) throw DomainError("ker_alpha needs a nonempty level set");
  return make_constraint_group(depth, {full_levels(depth, levels)});
}

SubordinateDecomposition build_decomposition(int depth, const std::vector<int>& levels,
                                             const std::vector<int>& half_choices,
                                             const std::vector<int>& level_choices) {
  std::vector<int> j = levels;
  std::sort(j.begin(), j.end());
  j.erase(std::unique(j.begin(), j.end()), j.end());
  if (j.empty() || j.back() != depth - 1 || j.front() < 0)
    throw DomainError("J must lie in [0, d-1] and contain d-1");
  if (half_choices.size() != j.size())
    throw DomainError("need one half choice per level of J");
  if (level_choices.size() != static_cast<std::size_t>(depth) - j.size())
    throw DomainError("need one level choice per level outside J");
  auto bit = [](int b) {
    if (b != 0 && b != 1) throw DomainError("choices must be 0 or 1");
    return b;
  };
  SubordinateDecomposition dec;
  dec.depth = depth;
  dec.levels = j;
  dec.s = LevelSet(depth);
  for (std::size_t n = 0; n < j.size(); ++n) {
    const int b = bit(half_choices[n]);
    if (j[n] == 0) {
      if (b == 0) dec.s.insert(Word());
    } else {
      dec.s = dec.s.united(prefixed_levels(depth, Word(1, static_cast<std::uint64_t>(b)), {j[n]}));
    }
  }
  std::size_t n = 0;
  for (int k = 0; k < depth; ++k) {
    if (std::binary_search(j.begin(), j.end(), k)) continue;
    if (bit(level_choices[n++])) dec.s = dec.s.united(full_levels(depth, {k}));
  }
  dec.t = dec.s.symmetric_difference(full_levels(depth, j));
  return dec;
}

DecompositionCheck validate_decomposition(const SubordinateDecomposition& dec) {
  const int d = dec.depth;
  if (dec.levels.empty() || dec.levels.back() != d - 1)
    return {false, std::nullopt, "J must contain d-1"};
  if (dec.s.depth() != d || dec.t.depth() != d)
    return {false, std::nullopt, "S and T must live at the pattern depth"};
  if (dec.s.symmetric_difference(dec.t) != full_levels(d, dec.levels))
    return {false, std::nullopt, "S delta T differs from X^J"};
  for (int i = 0; i < d; ++i) {
    const BitVector img = apply_standard_generator(d, i, dec.s.indicator());
    if (img != dec.s.indicator() && img != dec.t.indicator())
      return {false, i, "a_" + std::to_string(i) + " maps S outside {S, T}"};
  }
  return {true, std::nullopt, ""};
}

ConstraintPatternGroup constraint_group(const SubordinateDecomposition& dec) {
  const DecompositionCheck check = validate_decomposition(dec);
  if (!check.valid) throw DomainError("invalid decomposition: " + check.reason);
  return make_constraint_group(dec.depth, {dec.s, dec.t});
}

NearlyMaximalFacts nearly_maximal_facts(const GroupSet& p) {
  const int d = p.depth();
  if (d < 2) throw DomainError("nearly maximal facts need depth at least 2");
  NearlyMaximalFacts f;
  f.index_four = p.log2_order() + 2 == portrait_size(d);
  f.essential = is_essential(p).essential;
  f.projects_onto = project(p, d - 1).log2_order() == portrait_size(d - 1);
  const GroupSet stab = level_stabilizer(p, d - 1);
  Gf2Span stab_span(std::size_t{1} << (d - 1));
  for (const Element& e : stab.pcgs()) stab_span.insert(StabVector::from_element(e).bits);
  const Filtration full = filtration(standard_generators(d), d);
  f.stabilizer_is_v2 = stab_span == full.layers.at(2);
  const Element a0 = generator(d, 0), a1 = generator(d, 1), top = generator(d, d - 1);
  f.contains_c1 = p.contains(commutator(a1, top));
  f.excludes_c0 = !p.contains(commutator(a0, top));
  f.excludes_a0_top = !p.contains(compose(a0, top)) && !p.contains(compose(top, a0));
  return f;
}

EnumerationResult enumerate_nearly_maximal(int depth, int max_depth, int jobs) {
  if (depth < 2) throw DomainError("enumeration needs depth at least 2");
  if (depth > max_depth)
    throw ResourceCapExceeded("enumeration depth " + std::to_string(depth) + " exceeds cap " +
                              std::to_string(max_depth));
  EnumerationResult res;
  res.depth = depth;
  const std::uint32_t j_masks = 1U << (depth - 1);  // subsets of {0..d-2}
  const std::uint32_t choices = 1U << depth;        // |J| + (d - |J|) bits

  struct Candidate {
    bool valid = false;
    std::vector<BitVector> key;
    SubordinateDecomposition dec;
  };
  std::map<std::vector<BitVector>, std::size_t> index_of;
  std::vector<std::vector<BitVector>> keys;
  std::vector<bool> without_root;

  for (std::uint32_t jm = 0; jm < j_masks; ++jm) {
    std::vector<int> levels;
    for (int l = 0; l + 1 < depth; ++l)
      if ((jm >> l) & 1U) levels.push_back(l);
    levels.push_back(depth - 1);
    const std::size_t nj = levels.size();
    std::vector<Candidate> batch(choices);
    parallel_for(choices, jobs, [&](std::size_t c) {
      std::vector<int> half(nj), lev(static_cast<std::size_t>(depth) - nj);
      for (std::size_t b = 0; b < nj; ++b) half[b] = static_cast<int>((c >> b) & 1U);
      for (std::size_t b = 0; b < lev.size(); ++b) lev[b] = static_cast<int>((c >> (nj + b)) & 1U);
      Candidate& cand = batch[c];
      cand.dec = build_decomposition(depth, levels, half, lev);
      if (!validate_decomposition(cand.dec).valid) return;
      cand.valid = true;
      Gf2Span span(portrait_size(depth));
      span.insert(cand.dec.s.indicator());
      span.insert(cand.dec.t.indicator());
      cand.key = span.basis();
    });
    for (Candidate& cand : batch) {
      ++res.candidates;
      if (!cand.valid) continue;
      ++res.valid_candidates;
      auto [it, fresh] = index_of.emplace(cand.key, res.groups.size());
      const bool root_free = levels.front() != 0;
      if (fresh) {
        res.groups.push_back(
            {make_constraint_group(depth, {cand.dec.s, cand.dec.t}), cand.dec, root_free});
      } else if (root_free) {
        res.groups[it->second].reachable_without_root = true;
      }
    }
  }
  for (const EnumeratedGroup& g : res.groups)
    if (!g.reachable_without_root) ++res.only_with_root;
  return res;
}

std::vector<GroupSet> exhaustive_scan(int depth) {
  if (depth < 2 || depth > 4) throw DomainError("exhaustive scan supports depth 2..4");
  const GroupSet g = full_group(depth);
  const Gf2Span v2 = filtration(standard_generators(depth), depth).layers.at(2);
  std::set<std::vector<Element>> seen;
  std::vector<GroupSet> out;
  for (const GroupSet& m : maximal_subgroups(g)) {
    for (const GroupSet& q : maximal_subgroups(m)) {
      if (seen.count(q.pcgs())) continue;
      seen.insert(q.pcgs());
      if (!is_essential(q).essential) continue;
      if (project(q, depth - 1).log2_order() != portrait_size(depth - 1)) continue;
      const GroupSet stab = level_stabilizer(q, depth - 1);
      Gf2Span span(std::size_t{1} << (depth - 1));
      for (const Element& e : stab.pcgs()) span.insert(StabVector::from_element(e).bits);
      if (span != v2) continue;
      out.push_back(q);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const GroupSet& a, const GroupSet& b) { return a.pcgs() < b.pcgs(); });
  return out;
}

GroupSet split_extension_group(int depth, int i) {
  const int w = 1 << (depth - 1);
  if (i < 0 || i >= w)
    throw DomainError("split extension index must lie in [0, " + std::to_string(w) + ")");
  std::vector<Element> gens;
  for (int k = 0; k + 1 < depth; ++k) gens.push_back(generator(depth, k));
  const Filtration f = filtration(standard_generators(depth), depth);
  for (const BitVector& b : f.layers.at(static_cast<std::size_t>(i)).basis())
    gens.push_back(from_level_vector(depth, b));
  return close(gens, depth);
}

namespace {

template <class Pred>
bool windows_in(const Element& g, int d, Pred&& in_p) {
  if (g.depth() < d) throw DomainError("membership: element shallower than the pattern");
  for (int len = 0; len + d <= g.depth(); ++len)
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v)
      if (!in_p(project(section(g, Word(len, v)), d))) return false;
  return true;
}

}  // namespace

bool membership(const ConstraintPatternGroup& p, const Element& g) {
  return windows_in(g, p.depth(), [&](const Element& x) { return p.satisfies(x); });
}

bool membership(const GroupSet& p, const Element& g) {
  return windows_in(g, p.depth(), [&](const Element& x) { return p.contains(x); });
}

GeneratingSetNormalForm generating_set_normal_form(const GroupSet& p) {
  const int d = p.depth();
  if (d < 2) throw DomainError("normal form needs depth at least 2");
  GeneratingSetNormalForm nf;
  for (int i = 0; i + 1 < d; ++i) {
    const Element ai = generator(d, i);
    const auto l = lift(p, project(ai, d - 1));
    if (!l) throw DomainError("group does not project onto G(d-1)");
    const int cls = coset_class(StabVector::from_element(compose(ai, *l)));
    nf.classes.push_back(cls);
    nf.generators.push_back(compose(ai, coset_representative(d, cls).to_element()));
  }
  nf.generators.push_back(commutator(generator(d, 1), generator(d, d - 1)));
  nf.regenerates = close(nf.generators, d) == p;
  return nf;
}

}  // namespace fcg
