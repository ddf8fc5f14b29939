#pragma once

// Subgroups of G(d) held by an induced polycyclic generating sequence.
//
// The chain H_p = {g : labels at positions < p vanish} has H_p / H_{p+1} = C_2
// (read off bit p), so every subgroup K has a sequence of elements with
// distinct lowest set bits ("leads") and |K| = 2^(sequence length). The
// stored sequence is fully reduced: each entry is the lexicographically
// smallest element of its coset modulo the tail, which makes it unique per
// subgroup.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fcg/tree.hpp"

namespace fcg {

using BigInt = boost::multiprecision::cpp_int;

struct Caps {
  /// Largest group that may be listed element by element.
  std::uint64_t max_elements = std::uint64_t{1} << 24;
};

class GroupSet {
 public:
  GroupSet() = default;
  /// Trivial subgroup of G(depth).
  explicit GroupSet(int depth);

  int depth() const noexcept { return depth_; }
  const std::vector<Element>& generators() const noexcept { return generators_; }
  /// Reduced pcgs sorted by lead.
  const std::vector<Element>& pcgs() const noexcept { return pcgs_; }
  std::size_t log2_order() const noexcept { return pcgs_.size(); }
  BigInt order() const { return BigInt(1) << pcgs_.size(); }
  bool is_trivial() const noexcept { return pcgs_.empty(); }

  bool contains(const Element& g) const;
  /// Residue of g after dividing out pcgs entries (identity iff g is a member).
  Element sift(Element g) const;

  /// Every element, sorted. Throws ResourceCapExceeded above `cap`.
  std::vector<Element> elements(std::uint64_t cap) const;

  friend bool operator==(const GroupSet& a, const GroupSet& b) noexcept {
    return a.depth_ == b.depth_ && a.pcgs_ == b.pcgs_;
  }

 private:
  friend GroupSet make_group(int depth, std::vector<Element> generators,
                             std::vector<Element> table);

  int depth_ = 0;
  std::vector<Element> generators_;
  std::vector<Element> pcgs_;
  std::vector<Element> pcgs_inverse_;
  std::vector<std::size_t> leads_;
};

/// Subgroup generated by `generators` (all of depth `depth`).
GroupSet close(const std::vector<Element>& generators, int depth);
/// Breadth-first product closure with a deduplicating hash set; returns the
/// sorted element list. Independent of the pcgs machinery.
std::vector<Element> bfs_close(const std::vector<Element>& generators, int depth,
                               std::uint64_t cap);
/// Builds a group from an explicit list and checks that the list is closed.
GroupSet group_from_elements(const std::vector<Element>& elements, int depth);

GroupSet full_group(int depth);
/// Smallest normal subgroup of ⟨ambient⟩ containing `seeds`.
GroupSet normal_closure(const std::vector<Element>& seeds,
                        const std::vector<Element>& ambient, int depth);
bool is_normal_in(const GroupSet& n, const GroupSet& g);
bool is_subgroup_of(const GroupSet& a, const GroupSet& b);
bool same_group(const GroupSet& a, const GroupSet& b);

GroupSet derived_subgroup(const GroupSet& g);
GroupSet frattini(const GroupSet& g);

struct AbelianizationCoords {
  GroupSet group;
  GroupSet frattini;
  /// pcgs of `group` that extends the pcgs of `frattini`; the entries at
  /// `basis_index` map to a basis of group / frattini.
  std::vector<Element> table;
  std::vector<std::size_t> basis_index;

  std::size_t rank() const noexcept { return basis_index.size(); }
  /// Coordinates of g in group / frattini.
  BitVector coords(const Element& g) const;
};

AbelianizationCoords abelianization(const GroupSet& g);

/// All index-2 subgroups, ordered by the functional read as an integer
/// (bit i = value on basis element i).
std::vector<GroupSet> maximal_subgroups(const GroupSet& g);
/// Kernel of the functional `c` on group / frattini.
GroupSet maximal_subgroup(const AbelianizationCoords& ab, const BitVector& c);

/// Elements whose labels on levels 0..k-1 vanish.
GroupSet level_stabilizer(const GroupSet& g, int k);
/// Image under project(., k).
GroupSet project(const GroupSet& g, int k);
/// Some member whose projection is `image`, if any.
std::optional<Element> lift(const GroupSet& g, const Element& image);

struct EssentialityResult {
  bool essential = false;
  /// A member and a letter whose section is not represented.
  std::optional<std::pair<Element, int>> witness;
};
EssentialityResult is_essential(const GroupSet& p);

}  // namespace fcg
