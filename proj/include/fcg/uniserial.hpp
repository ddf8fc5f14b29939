#pragma once

// The level-(d-1) stabilizer V of G(d) as a GF(2) vector space indexed by
// X^{d-1}, and the action of subgroups on it.

#include <optional>
#include <vector>

#include "fcg/bitvec.hpp"
#include "fcg/tree.hpp"

namespace fcg {

struct StabVector {
  int depth = 0;
  BitVector bits;  // length 2^{depth-1}

  static StabVector zero(int depth);
  static StabVector from_string(int depth, std::string_view bits);
  /// Throws unless g has labels only on level depth-1.
  static StabVector from_element(const Element& g);
  Element to_element() const;

  friend bool operator==(const StabVector&, const StabVector&) = default;
};

/// v^g: bit w of the result is bit g(w) of v.
StabVector conjugate_vector(const StabVector& v, const Element& g);

struct Filtration {
  int depth = 0;
  std::vector<Gf2Span> layers;  // layers[i] = V^{(i)}, ending with the zero space

  std::vector<std::size_t> dims() const;
  /// Every step drops the dimension by exactly one.
  bool uniserial() const;
  /// Largest i with v in V^{(i)}.
  std::size_t deepest_layer(const BitVector& v) const;
};

/// V^{(0)} = V and V^{(i+1)} = span{ b + b^s : b in basis V^{(i)}, s in gens }.
Filtration filtration(const std::vector<Element>& generators, int depth);

struct UniserialVerdict {
  bool uniserial = false;
  /// Smallest k in [0, d-2] with alpha_k trivial on every generator.
  std::optional<int> failing_level;
};
/// The alpha_k criterion: alpha_k nontrivial on some generator for 0 <= k <= d-2.
UniserialVerdict is_uniserial(const std::vector<Element>& generators, int depth);

/// Smallest subspace containing `seeds` that is invariant under `generators`.
Gf2Span invariant_span(const std::vector<BitVector>& seeds,
                       const std::vector<Element>& generators, int depth);

/// Height by the recursion on the two halves (zero vector: 0).
int height_recursive(const BitVector& v);

/// Height as 2^{d-1} minus the deepest layer of the G(d) filtration.
class HeightOracle {
 public:
  explicit HeightOracle(int depth);
  int height(const BitVector& v) const;
  const Filtration& filtration() const noexcept { return filtration_; }

 private:
  Filtration filtration_;
};

enum class HeightMode { recursive, oracle };
int height(const StabVector& v, HeightMode mode);

/// Coset of V^{(2)}: 0..3 encodes (alpha_{0X^{d-2}}, alpha_{1X^{d-2}}) as
/// z0=(0,0), z1=(1,0), z2=(0,1), z3=(1,1).
int coset_class(const StabVector& v);
/// The representatives z0 = id, z1 = a_{d-1}, z2 = a_{d-1}^{a_0}, z3 = [a_0, a_{d-1}].
StabVector coset_representative(int depth, int cls);

}  // namespace fcg
