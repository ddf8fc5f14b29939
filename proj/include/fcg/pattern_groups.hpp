#pragma once

// Pattern groups cut out by linear constraints alpha_C(g) = 0, subordinate
// decompositions (S, T) of X^J, and the enumerations of the nearly maximal
// pattern groups P_{S,T}.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fcg/bitvec.hpp"
#include "fcg/group.hpp"
#include "fcg/tree.hpp"
#include "fcg/uniserial.hpp"

namespace fcg {

/// Image of a set of portrait positions (given as an indicator) under g;
/// the linear extension of act_on_set.
BitVector act_on_indicator(const Element& g, const BitVector& indicator);

class ConstraintPatternGroup {
 public:
  int depth() const noexcept { return depth_; }
  /// The constraint sets as given.
  const std::vector<LevelSet>& constraints() const noexcept { return constraints_; }
  /// Reduced span of the constraint indicators; equal spans, equal groups.
  const Gf2Span& canonical() const noexcept { return canonical_; }
  /// log2 of the index in G(depth).
  std::size_t index_log2() const noexcept { return canonical_.rank(); }
  /// "invariant-span" when the constraint span is stable under G(d), else
  /// "enumerated" (closure checked element by element).
  const std::string& certificate() const noexcept { return certificate_; }

  bool satisfies(const Element& g) const;
  /// pcgs form, generated by a reduced basis of the solution space. Built
  /// on first use.
  const GroupSet& group() const;

  friend bool operator==(const ConstraintPatternGroup& a,
                         const ConstraintPatternGroup& b) noexcept {
    return a.canonical_ == b.canonical_;
  }

 private:
  friend ConstraintPatternGroup make_constraint_group(int, std::vector<LevelSet>, const Caps&);
  int depth_ = 0;
  std::vector<LevelSet> constraints_;
  Gf2Span canonical_;
  std::string certificate_;
  struct Lazy;
  std::shared_ptr<Lazy> lazy_;
};

/// Throws DomainError when the solution set is not a group.
ConstraintPatternGroup make_constraint_group(int depth, std::vector<LevelSet> constraints,
                                             const Caps& caps = {});

/// ker alpha_J for nonempty J.
ConstraintPatternGroup ker_alpha(int depth, const std::vector<int>& levels);

struct SubordinateDecomposition {
  int depth = 0;
  std::vector<int> levels;  // J, increasing
  LevelSet s, t;
};

/// One bit per j in J (increasing): 0 puts 0X^{j-1} in S, 1 puts 1X^{j-1};
/// for j = 0 the bit says whether the root goes in S (0) or T (1). One bit
/// per k not in J (increasing): 1 adds X^k to S. T = S delta X^J.
SubordinateDecomposition build_decomposition(int depth, const std::vector<int>& levels,
                                             const std::vector<int>& half_choices,
                                             const std::vector<int>& level_choices);

struct DecompositionCheck {
  bool valid = false;
  std::optional<int> violating_generator;  // index i of a_i
  std::string reason;
};
DecompositionCheck validate_decomposition(const SubordinateDecomposition& dec);

/// P_{S,T}; throws DomainError for an invalid decomposition.
ConstraintPatternGroup constraint_group(const SubordinateDecomposition& dec);

/// The structural facts expected of a nearly maximal pattern group.
struct NearlyMaximalFacts {
  bool index_four = false;
  bool essential = false;
  bool projects_onto = false;        // P(d-1) = G(d-1)
  bool stabilizer_is_v2 = false;     // P_{d-1} = V^(2)
  bool contains_c1 = false;          // [a_1, a_{d-1}] in P
  bool excludes_c0 = false;          // [a_0, a_{d-1}] not in P
  bool excludes_a0_top = false;      // a_0 a_{d-1}, a_{d-1} a_0 not in P
  bool all() const {
    return index_four && essential && projects_onto && stabilizer_is_v2 && contains_c1 &&
           excludes_c0 && excludes_a0_top;
  }
};
NearlyMaximalFacts nearly_maximal_facts(const GroupSet& p);

struct EnumeratedGroup {
  ConstraintPatternGroup group;
  SubordinateDecomposition decomposition;  // first producing candidate
  bool reachable_without_root = false;     // also produced with 0 not in J
};

struct EnumerationResult {
  int depth = 0;
  std::size_t candidates = 0;
  std::size_t valid_candidates = 0;
  std::vector<EnumeratedGroup> groups;  // in order of first appearance
  /// Groups produced only by candidates with 0 in J.
  std::size_t only_with_root = 0;
};

/// Iterates every J containing d-1 and every choice vector; dedups by
/// canonical form. Throws ResourceCapExceeded for depth above `max_depth`.
EnumerationResult enumerate_nearly_maximal(int depth, int max_depth = 10, int jobs = 1);

/// Brute-force descent G(d) -> maximal -> maximal, filtered by the nearly
/// maximal conditions. Depth at most 4. Sorted by pcgs.
std::vector<GroupSet> exhaustive_scan(int depth);

/// <a_0, ..., a_{d-2}> V^(i).
GroupSet split_extension_group(int depth, int i);

/// For depth(g) = depth(P): plain membership. For deeper g: every depth-d
/// window section pi_d(g_w) must lie in P.
bool membership(const ConstraintPatternGroup& p, const Element& g);
bool membership(const GroupSet& p, const Element& g);

struct GeneratingSetNormalForm {
  std::vector<int> classes;          // k_i for a_i z_{k_i}, i = 0..d-2
  std::vector<Element> generators;   // a_i z_{k_i}, then [a_1, a_{d-1}]
  bool regenerates = false;          // closes back to P
};
GeneratingSetNormalForm generating_set_normal_form(const GroupSet& p);

}  // namespace fcg
