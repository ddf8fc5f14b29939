#pragma once

// Hausdorff dimension, level-quotient growth, additivity of portraits and
// the one-directional criteria for topological finite generation.

#include <optional>
#include <string>
#include <vector>

#include "fcg/group.hpp"
#include "fcg/pattern_groups.hpp"

namespace fcg {

struct HdimResult {
  std::size_t numerator = 0;  // a = log2 |P_{d-1}|
  int exponent = 0;           // d - 1

  /// Reduced fraction, e.g. "5/8", "1", "0".
  std::string reduced() const;
  /// "a/2^(d-1)" with both integers explicit.
  std::string explicit_form() const;
  friend bool operator==(const HdimResult&, const HdimResult&) = default;
};

/// Throws DomainError for a non-essential pattern group.
HdimResult hausdorff_dimension(const GroupSet& p);
/// Read off the constraints restricted to the last level.
HdimResult hausdorff_dimension(const ConstraintPatternGroup& p);

/// |G_P(n)| = |P| |P_{d-1}|^{2 + 4 + ... + 2^{n-d}} for n = d..n_max.
std::vector<BigInt> quotient_orders(const GroupSet& p, int n_max);
/// Direct count of depth-n configurations whose every window lies in P,
/// by dynamic programming over the depth-(d-1) shadow. Lists P explicitly.
std::vector<BigInt> direct_configuration_counts(const GroupSet& p, int n_max,
                                                const Caps& caps = {});

/// G_P(n) as a pcgs, built level by level: elements of <a_0, delta_0(G_P(n-1)),
/// delta_1(G_P(n-1))> whose top window lies in P.
GroupSet level_quotient_group(const GroupSet& p, int n);
/// G_P(n) for a constraint group: solutions of the window system.
GroupSet level_quotient_group(const ConstraintPatternGroup& p, int n);

/// Rows alpha_{uC} for every constraint C and every |u| <= n - d.
Gf2Span window_system(const ConstraintPatternGroup& p, int n);

struct AdditivityVerdict {
  bool additive = false;
  int level = 0;
  std::string method;  // "linear-system", "span-dimension" or "witness-pair"
  std::string detail;
  std::optional<std::pair<Element, Element>> witness;  // g, h with g + h outside
};
/// Constraint groups: the depth-n configurations are the solutions of the
/// window system; additive when the solution count matches the growth formula.
AdditivityVerdict additivity_check(const ConstraintPatternGroup& p, int n);
/// Explicit groups: additive iff the pcgs portraits span a space of dimension
/// log2 |G_P(n)|; otherwise the lexicographically least pair is reported.
AdditivityVerdict additivity_check(const GroupSet& p, int n, const Caps& caps = {});

enum class TfgKind { proved_not_tfg, inconclusive, structural_certificate };
const char* to_string(TfgKind k);

struct TfgVerdict {
  TfgKind kind = TfgKind::inconclusive;
  std::string strategy;
  int level = 0;  // level reached (inconclusive) or used (proof)
  std::string witness;
};

struct TfgParams {
  std::vector<int> levels;               // bs: defaults to d and d+1
  std::optional<LevelSet> functional;    // hom: alpha_A
  std::optional<std::vector<Element>> complement;  // split: defaults to <a_0..a_{d-2}>
  Caps caps;
};

/// bs: [G_P(n), G_P(n)] misses part of the level-(n-1) stabilizer.
TfgVerdict tfg_bs(const GroupSet& p, const TfgParams& params = {});
/// hom: alpha_A is a homomorphism on P, nonzero on P_{d-1}.
TfgVerdict tfg_hom(const GroupSet& p, const LevelSet& functional,
                   const std::optional<ConstraintPatternGroup>& linear = std::nullopt);
/// split: K meets P_{d-1} trivially and K P_{d-1} = P.
TfgVerdict tfg_split(const GroupSet& p, const std::optional<std::vector<Element>>& k = std::nullopt);
/// maximal-full: a maximal subgroup Q with Q(d-1) = G(d-1).
TfgVerdict tfg_maximal_full(const GroupSet& p);

/// Exact check that alpha_A is a homomorphism on a constraint group: the
/// whole orbit of A under P must stay within A + span(constraints).
bool functional_is_homomorphism(const ConstraintPatternGroup& p, const LevelSet& a);
/// A member of P_{d-1} on which alpha_A is nonzero, if any.
std::optional<Element> stabilizer_witness(const GroupSet& p, const LevelSet& a);

struct NonTfgEntry {
  std::vector<int> levels;  // J
  SubordinateDecomposition decomposition;
  ConstraintPatternGroup group;
  LevelSet functional;      // A with phi = alpha_A, empty when source is maximal-full
  std::string source;       // "half-functional" or "maximal-full"
  TfgVerdict verdict;
};
/// One group per J in {2..d-1} containing d-1, each with a proof of non-tfg.
std::vector<NonTfgEntry> non_tfg_family(int depth, int jobs = 1);

}  // namespace fcg
