#pragma once

// Finite binary-tree automorphisms stored as portraits.
//
// Bit layout (also the interchange format): level l occupies positions
// [2^l - 1, 2^{l+1} - 1); within a level a word w sits at offset equal to w read
// as a binary number, leftmost letter most significant. A subtree section is
// therefore a run of contiguous slices, one per level.
//
// Composition follows (gh)(w) = g(h(w)), so (gh)_(w) = g_(h(w)) + h_(w).

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fcg/bitvec.hpp"

namespace fcg {

/// Depth cap applied to every Element / LevelSet construction (default 12).
int depth_cap() noexcept;
void set_depth_cap(int cap);
/// Hard upper bound regardless of the configurable cap.
inline constexpr int kAbsoluteMaxDepth = 24;

class Word {
 public:
  Word() = default;
  Word(int length, std::uint64_t value);

  static Word from_string(std::string_view letters);
  /// 0^k or 1^k.
  static Word repeat(int letter, int k);

  int length() const noexcept { return length_; }
  std::uint64_t value() const noexcept { return value_; }
  bool empty() const noexcept { return length_ == 0; }

  int letter(int i) const noexcept {
    return static_cast<int>((value_ >> (length_ - 1 - i)) & 1U);
  }
  Word child(int letter) const;
  Word prefix(int k) const;
  Word suffix_from(int k) const;
  Word concat(const Word& tail) const;

  /// Index in the portrait bit layout.
  std::size_t portrait_index() const noexcept {
    return ((std::size_t{1} << length_) - 1) + value_;
  }
  static Word from_portrait_index(std::size_t index);

  /// Letters as '0'/'1'; the empty word prints as "e".
  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;
  /// Level order: shorter first, then by value. Matches portrait order.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) noexcept {
    if (auto c = a.length_ <=> b.length_; c != 0) return c;
    return a.value_ <=> b.value_;
  }

 private:
  int length_ = 0;
  std::uint64_t value_ = 0;
};

inline std::size_t level_offset(int level) { return (std::size_t{1} << level) - 1; }
inline std::size_t portrait_size(int depth) { return (std::size_t{1} << depth) - 1; }
/// Level of a portrait position.
int level_of(std::size_t portrait_index) noexcept;

/// A set of words of length < depth, stored as an indicator over portrait
/// positions.
class LevelSet {
 public:
  LevelSet() = default;
  explicit LevelSet(int depth);
  LevelSet(int depth, const std::vector<Word>& words);

  int depth() const noexcept { return depth_; }
  bool contains(const Word& w) const;
  void insert(const Word& w);
  std::size_t size() const noexcept { return indicator_.count(); }
  bool empty() const noexcept { return indicator_.none(); }
  std::vector<Word> words() const;
  const BitVector& indicator() const noexcept { return indicator_; }
  static LevelSet from_indicator(int depth, BitVector indicator);

  /// Re-reads the set at a larger depth (same words).
  LevelSet at_depth(int depth) const;

  LevelSet symmetric_difference(const LevelSet& other) const;
  LevelSet united(const LevelSet& other) const;
  LevelSet intersected(const LevelSet& other) const;

  /// "e,0,01" style listing in portrait order.
  std::string to_string() const;

  friend bool operator==(const LevelSet&, const LevelSet&) = default;

 private:
  int depth_ = 0;
  BitVector indicator_;
};

/// X^J: all words whose length lies in `levels` (each level < depth).
LevelSet full_levels(int depth, const std::vector<int>& levels);
/// prefix X^K, i.e. {prefix v : |prefix v| in `total_lengths`}.
LevelSet prefixed_levels(int depth, const Word& prefix, const std::vector<int>& total_lengths);
/// Prefixes every word of `s` with `w`; the result lives at `depth`.
LevelSet shift_set(const LevelSet& s, const Word& w, int depth);

class Element {
 public:
  Element() = default;
  /// The identity of G(depth).
  explicit Element(int depth);

  static Element identity(int depth) { return Element(depth); }
  static Element from_labels(int depth, BitVector labels);
  /// Parses "1|01" style portraits (levels separated by '|').
  static Element from_portrait(std::string_view text);

  int depth() const noexcept { return depth_; }
  const BitVector& labels() const noexcept { return labels_; }
  bool label(const Word& w) const { return labels_.get(w.portrait_index()); }
  bool label_at(std::size_t index) const noexcept { return labels_.get(index); }
  void set_label(const Word& w, bool value);
  void set_label_at(std::size_t index, bool value) { labels_.set(index, value); }

  bool is_identity() const noexcept { return labels_.none(); }
  /// Positions of nontrivial labels, in portrait order.
  std::vector<Word> support() const;
  /// Labels of a single level, indexed by word value.
  BitVector level_labels(int level) const;
  /// Lowest portrait position carrying a nontrivial label.
  std::optional<std::size_t> leading_position() const noexcept {
    return labels_.lowest_set_bit();
  }

  std::string portrait() const;

  friend bool operator==(const Element&, const Element&) = default;
  friend std::strong_ordering operator<=>(const Element& a, const Element& b) noexcept {
    if (auto c = a.depth_ <=> b.depth_; c != 0) return c;
    return a.labels_ <=> b.labels_;
  }

 private:
  int depth_ = 0;
  BitVector labels_;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept {
    return e.labels().hash() ^ static_cast<std::size_t>(e.depth());
  }
};

/// a_i: swaps 0^i 0 w with 0^i 1 w; single label at 0^i.
Element generator(int depth, int i);
/// {a_0, ..., a_{depth-1}}.
std::vector<Element> standard_generators(int depth);
/// An element of G(depth) whose only nonzero labels sit on level depth-1.
Element from_level_vector(int depth, const BitVector& bits);

Element compose(const Element& g, const Element& h);
Element inverse(const Element& g);
/// h^g = g^{-1} h g.
Element conjugate(const Element& h, const Element& g);
/// [g, h] = g^{-1} h^{-1} g h.
Element commutator(const Element& g, const Element& h);
/// Product of a list, left to right.
Element product(const std::vector<Element>& factors, int depth);

Word act(const Element& g, const Word& w);
Element section(const Element& g, const Word& w);
Element embed_branch(int depth, const Word& w, const Element& h);
Element project(const Element& g, int k);
bool alpha_sum(const Element& g, const LevelSet& s);
/// Pointwise label sum of portraits (not the group product).
Element portrait_sum(const Element& g, const Element& h);
LevelSet act_on_set(const Element& g, const LevelSet& s);

/// Smallest n with project(g, n) != project(h, n), or nullopt when g == h.
/// This is the profinite distance 1/|G(n)| recorded by n alone.
std::optional<int> first_disagreement_level(const Element& g, const Element& h);

}  // namespace fcg
