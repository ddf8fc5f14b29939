#include "fcg/analysis.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "fcg/errors.hpp"
#include "fcg/parallel.hpp"

namespace fcg {

namespace {

std::size_t last_level_log(const GroupSet& p) {
  return level_stabilizer(p, p.depth() - 1).log2_order();
}

void require_depth_at_least(const GroupSet& p, int n) {
  if (n < p.depth()) throw DomainError("level must be at least the pattern depth");
}

std::string join_portraits(const std::vector<Element>& xs) {
  std::string out;
  for (const Element& x : xs) out += (out.empty() ? "" : ", ") + x.portrait();
  return out;
}

// Words of `s` that begin with `prefix`.
LevelSet with_prefix(const LevelSet& s, const Word& prefix) {
  LevelSet out(s.depth());
  for (const Word& w : s.words())
    if (w.length() >= prefix.length() && w.prefix(prefix.length()) == prefix) out.insert(w);
  return out;
}

}  // namespace

std::string HdimResult::reduced() const {
  std::size_t a = numerator;
  int e = exponent;
  if (a == 0) return "0";
  while (e > 0 && a % 2 == 0) {
    a /= 2;
    --e;
  }
  if (e == 0) return std::to_string(a);
  return std::to_string(a) + "/" + std::to_string(std::size_t{1} << e);
}

std::string HdimResult::explicit_form() const {
  return std::to_string(numerator) + "/2^" + std::to_string(exponent);
}

HdimResult hausdorff_dimension(const GroupSet& p) {
  if (p.depth() < 1) throw DomainError("pattern group needs depth at least 1");
  if (!is_essential(p).essential) throw DomainError("hausdorff_dimension: pattern group is not essential");
  return {last_level_log(p), p.depth() - 1};
}

HdimResult hausdorff_dimension(const ConstraintPatternGroup& p) {
  const int d = p.depth();
  if (!is_essential(p.group()).essential)
    throw DomainError("hausdorff_dimension: pattern group is not essential");
  // P_{d-1} is the set of last-level vectors killed by every constraint.
  const std::size_t width = std::size_t{1} << (d - 1);
  Gf2Span restricted(width);
  for (const BitVector& row : p.canonical().basis())
    restricted.insert(row.slice(level_offset(d - 1), width));
  return {width - restricted.rank(), d - 1};
}

std::vector<BigInt> quotient_orders(const GroupSet& p, int n_max) {
  const int d = p.depth();
  require_depth_at_least(p, n_max);
  const std::size_t a = last_level_log(p);
  std::vector<BigInt> out;
  for (int n = d; n <= n_max; ++n) {
    // 2 + 4 + ... + 2^{n-d} = 2^{n-d+1} - 2
    const BigInt exponent = (BigInt(1) << (n - d + 1)) - 2;
    out.push_back(p.order() << static_cast<std::size_t>(exponent * a));
  }
  return out;
}

std::vector<BigInt> direct_configuration_counts(const GroupSet& p, int n_max, const Caps& caps) {
  const int d = p.depth();
  require_depth_at_least(p, n_max);
  if (d < 2) throw DomainError("direct counts need pattern depth at least 2");
  struct Window {
    Element shadow, left, right;
  };
  std::vector<Window> windows;
  for (const Element& e : p.elements(caps.max_elements))
    windows.push_back({project(e, d - 1), section(e, Word(1, 0)), section(e, Word(1, 1))});

  // counts[q]: depth-m configurations with every window in P and depth-(d-1) shadow q
  std::map<Element, BigInt> counts;
  for (const Window& w : windows) counts[w.shadow] += 1;
  std::vector<BigInt> out;
  auto total = [&] {
    BigInt t = 0;
    for (const auto& kv : counts) t += kv.second;
    return t;
  };
  out.push_back(total());
  for (int m = d + 1; m <= n_max; ++m) {
    std::map<Element, BigInt> next;
    for (const Window& w : windows) {
      const auto l = counts.find(w.left);
      const auto r = counts.find(w.right);
      if (l == counts.end() || r == counts.end()) continue;
      next[w.shadow] += l->second * r->second;
    }
    counts.swap(next);
    out.push_back(total());
  }
  return out;
}

GroupSet level_quotient_group(const GroupSet& p, int n) {
  const int d = p.depth();
  if (n < 1) throw DomainError("level must be positive");
  if (n <= d) return n == d ? p : project(p, n);
  const GroupSet below = level_quotient_group(p, n - 1);
  // Everything in G_P(n) is a_0^e (g_0, g_1) with g_x in G_P(n-1).
  std::vector<Element> wgens{generator(n, 0)};
  for (const Element& g : below.pcgs())
    for (int x = 0; x < 2; ++x) wgens.push_back(embed_branch(n, Word(1, static_cast<std::uint64_t>(x)), g));
  const GroupSet w = close(wgens, n);
  const GroupSet top = project(w, d);
  std::vector<Element> tops;
  if (is_subgroup_of(p, top)) {
    tops = p.pcgs();
  } else {
    std::vector<Element> common;
    for (const Element& e : p.elements(Caps{}.max_elements))
      if (top.contains(e)) common.push_back(e);
    tops = close(common, d).pcgs();
  }
  std::vector<Element> gens = level_stabilizer(w, d).pcgs();
  for (const Element& t : tops) {
    const auto l = lift(w, t);
    if (!l) throw DomainError("level_quotient_group: lift failed");
    gens.push_back(*l);
  }
  return close(gens, n);
}

Gf2Span window_system(const ConstraintPatternGroup& p, int n) {
  const int d = p.depth();
  if (n < d) throw DomainError("level must be at least the pattern depth");
  Gf2Span rows(portrait_size(n));
  for (int len = 0; len <= n - d; ++len)
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v)
      for (const LevelSet& c : p.constraints())
        rows.insert(shift_set(c.at_depth(d), Word(len, v), n).indicator());
  return rows;
}

GroupSet level_quotient_group(const ConstraintPatternGroup& p, int n) {
  const Gf2Span rows = window_system(p, n);
  Gf2Span solutions(portrait_size(n));
  for (BitVector& v : rows.nullspace()) solutions.insert(std::move(v));
  std::vector<Element> gens;
  for (const BitVector& b : solutions.basis()) gens.push_back(Element::from_labels(n, b));
  GroupSet g = close(gens, n);
  if (g.log2_order() != solutions.rank())
    throw DomainError("window system solutions do not form a group");
  return g;
}

AdditivityVerdict additivity_check(const ConstraintPatternGroup& p, int n) {
  AdditivityVerdict v;
  v.level = n;
  v.method = "linear-system";
  const Gf2Span rows = window_system(p, n);
  const std::size_t dim = portrait_size(n) - rows.rank();
  const BigInt predicted = quotient_orders(p.group(), n).back();
  const BigInt solutions = BigInt(1) << dim;
  v.additive = predicted == solutions;
  std::ostringstream os;
  os << "rank " << rows.rank() << " on " << portrait_size(n) << " portrait bits; 2^" << dim
     << (v.additive ? " = " : " != ") << "|G_P(" << n << ")| = " << predicted;
  v.detail = os.str();
  return v;
}

AdditivityVerdict additivity_check(const GroupSet& p, int n, const Caps& caps) {
  require_depth_at_least(p, n);
  AdditivityVerdict v;
  for (int m = p.depth(); m <= n; ++m) {
    const GroupSet g = level_quotient_group(p, m);
    // The portrait set is the span L of the pcgs iff every pcgs entry maps
    // the annihilator of L into itself.
    Gf2Span span(portrait_size(m));
    for (const Element& e : g.pcgs()) span.insert(e.labels());
    const std::vector<BitVector> annihilator = span.nullspace();
    Gf2Span ann(portrait_size(m));
    for (const BitVector& c : annihilator) ann.insert(c);
    bool closed = true;
    for (const Element& e : g.pcgs()) {
      for (const BitVector& c : annihilator)
        if (!ann.contains(act_on_indicator(e, c))) {
          closed = false;
          break;
        }
      if (!closed) break;
    }
    v.level = m;
    if (closed) continue;
    v.additive = false;
    v.method = "witness-pair";
    const std::vector<Element> elems = g.elements(caps.max_elements);
    for (const Element& a : elems)
      for (const Element& b : elems)
        if (!g.contains(portrait_sum(a, b))) {
          v.witness = {a, b};
          v.detail = "g + h = " + portrait_sum(a, b).portrait() + " lies outside G_P(" +
                     std::to_string(m) + ")";
          return v;
        }
    throw DomainError("additivity: annihilator test and pair search disagree");
  }
  v.additive = true;
  v.method = "span-dimension";
  v.detail = "pcgs span is a group at every level up to " + std::to_string(n);
  return v;
}

const char* to_string(TfgKind k) {
  switch (k) {
    case TfgKind::proved_not_tfg: return "proved-not-tfg";
    case TfgKind::inconclusive: return "inconclusive";
    case TfgKind::structural_certificate: return "structural-certificate";
  }
  return "?";
}

TfgVerdict tfg_bs(const GroupSet& p, const TfgParams& params) {
  const int d = p.depth();
  std::vector<int> levels = params.levels;
  if (levels.empty()) levels = {d, d + 1};
  std::sort(levels.begin(), levels.end());
  TfgVerdict v;
  v.strategy = "bs";
  for (int n : levels) {
    require_depth_at_least(p, n);
    const GroupSet g = level_quotient_group(p, n);
    const GroupSet stab = level_stabilizer(g, n - 1);
    const GroupSet der = derived_subgroup(g);
    v.level = n;
    for (const Element& s : stab.pcgs())
      if (!der.contains(s)) {
        v.kind = TfgKind::proved_not_tfg;
        v.witness = "level " + std::to_string(n) + ": " + s.portrait() +
                    " stabilizes level " + std::to_string(n - 1) +
                    " but is not in the derived subgroup";
        return v;
      }
  }
  v.witness = "derived subgroup contains the stabilizer up to level " + std::to_string(v.level);
  return v;
}

bool functional_is_homomorphism(const ConstraintPatternGroup& p, const LevelSet& a) {
  const BitVector start = a.at_depth(p.depth()).indicator();
  // alpha_A(gh) = alpha_{h(A)}(g) + alpha_A(h): additive on P exactly when
  // every h(A) differs from A by a sum of constraint sets.
  std::set<BitVector> seen{start};
  std::vector<BitVector> queue{start};
  const std::vector<Element>& gens = p.group().generators();
  while (!queue.empty()) {
    const BitVector b = std::move(queue.back());
    queue.pop_back();
    if (!p.canonical().contains(b ^ start)) return false;
    for (const Element& g : gens) {
      BitVector img = act_on_indicator(g, b);
      if (seen.insert(img).second) queue.push_back(std::move(img));
    }
  }
  return true;
}

std::optional<Element> stabilizer_witness(const GroupSet& p, const LevelSet& a) {
  const LevelSet at = a.at_depth(p.depth());
  const GroupSet stab = level_stabilizer(p, p.depth() - 1);
  for (const Element& s : stab.pcgs())
    if (alpha_sum(s, at)) return s;
  return std::nullopt;
}

TfgVerdict tfg_hom(const GroupSet& p, const LevelSet& functional,
                   const std::optional<ConstraintPatternGroup>& linear) {
  const int d = p.depth();
  if (functional.depth() > d) throw DomainError("functional reaches below the pattern depth");
  const LevelSet a = functional.at_depth(d);
  TfgVerdict v;
  v.strategy = "hom";
  v.level = d;
  bool hom = false;
  if (linear) {
    if (!(linear->group() == p)) throw DomainError("tfg hom: constraint form describes another group");
    hom = functional_is_homomorphism(*linear, a);
  } else {
    hom = true;
    const std::vector<Element> elems = p.elements(Caps{}.max_elements);
    for (const Element& g : elems) {
      for (const Element& s : p.pcgs())
        if (alpha_sum(compose(g, s), a) != (alpha_sum(g, a) != alpha_sum(s, a))) {
          hom = false;
          break;
        }
      if (!hom) break;
    }
  }
  const std::string phi = "phi = alpha_{" + a.to_string() + "}";
  if (!hom) {
    v.witness = phi + " is not a homomorphism on P";
    return v;
  }
  const auto w = stabilizer_witness(p, a);
  if (!w) {
    v.witness = phi + " vanishes on P_" + std::to_string(d - 1);
    return v;
  }
  v.kind = TfgKind::proved_not_tfg;
  v.witness = phi + "; phi(id) = 0 and phi(" + w->portrait() + ") = 1 on P_" + std::to_string(d - 1);
  return v;
}

TfgVerdict tfg_split(const GroupSet& p, const std::optional<std::vector<Element>>& k) {
  const int d = p.depth();
  std::vector<Element> kgens;
  if (k) {
    kgens = *k;
  } else {
    for (int i = 0; i + 1 < d; ++i) kgens.push_back(generator(d, i));
  }
  const GroupSet kg = close(kgens, d);
  const GroupSet stab = level_stabilizer(p, d - 1);
  TfgVerdict v;
  v.strategy = "split";
  v.level = d;
  const std::string sizes = "|K| = 2^" + std::to_string(kg.log2_order()) + ", |P_" +
                            std::to_string(d - 1) + "| = 2^" + std::to_string(stab.log2_order()) +
                            ", |P| = 2^" + std::to_string(p.log2_order());
  if (!is_subgroup_of(kg, p)) {
    v.witness = "K is not contained in P";
    return v;
  }
  if (!level_stabilizer(kg, d - 1).is_trivial()) {
    v.witness = "K meets P_" + std::to_string(d - 1) + " nontrivially";
    return v;
  }
  if (kg.log2_order() + stab.log2_order() != p.log2_order()) {
    v.witness = "K P_" + std::to_string(d - 1) + " is proper: " + sizes;
    return v;
  }
  v.kind = TfgKind::proved_not_tfg;
  v.witness = "complement K = <" + join_portraits(kgens) + ">; " + sizes;
  return v;
}

TfgVerdict tfg_maximal_full(const GroupSet& p) {
  const int d = p.depth();
  TfgVerdict v;
  v.strategy = "maximal-full";
  v.level = d;
  const std::size_t full = portrait_size(d - 1);
  if (project(p, d - 1).log2_order() != full) {
    v.witness = "P(" + std::to_string(d - 1) + ") is a proper subgroup of G(" +
                std::to_string(d - 1) + ")";
    return v;
  }
  const AbelianizationCoords ab = abelianization(p);
  const std::uint64_t count = std::uint64_t{1} << ab.rank();
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    BitVector c(ab.rank());
    for (std::size_t i = 0; i < ab.rank(); ++i) c.set(i, (mask >> i) & 1U);
    const GroupSet q = maximal_subgroup(ab, c);
    if (project(q, d - 1).log2_order() == full) {
      v.kind = TfgKind::proved_not_tfg;
      v.witness = "maximal subgroup Q = ker(c), c = " + c.to_string() +
                  " on P/Phi(P); Q(" + std::to_string(d - 1) + ") = G(" + std::to_string(d - 1) +
                  "), Q = <" + join_portraits(q.pcgs()) + ">";
      return v;
    }
  }
  v.witness = "every maximal subgroup projects to a proper subgroup of G(" +
              std::to_string(d - 1) + ")";
  return v;
}

std::vector<NonTfgEntry> non_tfg_family(int depth, int jobs) {
  const int d = depth;
  if (d < 4) throw DomainError("non_tfg_family needs depth at least 4");
  std::vector<std::vector<int>> js;
  for (std::uint32_t mask = 0; mask < (1U << (d - 3)); ++mask) {
    std::vector<int> j;
    for (int l = 2; l < d - 1; ++l)
      if ((mask >> (l - 2)) & 1U) j.push_back(l);
    j.push_back(d - 1);
    js.push_back(std::move(j));
  }
  std::vector<std::optional<NonTfgEntry>> found(js.size());
  parallel_for(js.size(), jobs, [&](std::size_t idx) {
    const std::vector<int>& j = js[idx];
    const std::size_t hc = j.size(), lc = static_cast<std::size_t>(d) - j.size();
    std::optional<NonTfgEntry> fallback;
    for (std::uint64_t hm = 0; hm < (std::uint64_t{1} << hc); ++hm)
      for (std::uint64_t lm = 0; lm < (std::uint64_t{1} << lc); ++lm) {
        std::vector<int> half(hc), lev(lc);
        for (std::size_t i = 0; i < hc; ++i) half[i] = static_cast<int>((hm >> i) & 1U);
        for (std::size_t i = 0; i < lc; ++i) lev[i] = static_cast<int>((lm >> i) & 1U);
        SubordinateDecomposition dec = build_decomposition(d, j, half, lev);
        if (!validate_decomposition(dec).valid) continue;
        const ConstraintPatternGroup cp = constraint_group(dec);
        // phi = alpha_{S_0} + alpha_{T_0}, S_0 under 00 and T_0 under 10
        const LevelSet a = with_prefix(dec.s, Word::from_string("00"))
                               .symmetric_difference(with_prefix(dec.t, Word::from_string("10")));
        if (!a.empty() && functional_is_homomorphism(cp, a)) {
          const TfgVerdict verdict = tfg_hom(cp.group(), a, cp);
          if (verdict.kind == TfgKind::proved_not_tfg) {
            found[idx] = NonTfgEntry{j, std::move(dec), cp, a, "half-functional", verdict};
            return;
          }
        }
        if (!fallback) {
          const TfgVerdict verdict = tfg_maximal_full(cp.group());
          if (verdict.kind == TfgKind::proved_not_tfg)
            fallback = NonTfgEntry{j, dec, cp, LevelSet(d), "maximal-full", verdict};
        }
      }
    found[idx] = std::move(fallback);
  });
  std::vector<NonTfgEntry> out;
  for (auto& f : found)
    if (f) out.push_back(std::move(*f));
  return out;
}

}  // namespace fcg
