#pragma once

// Packed GF(2) vectors and row-reduced subspaces.

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fcg {

class BitVector {
 public:
  using Block = std::uint64_t;
  static constexpr std::size_t kBlockBits = 64;

  BitVector() = default;
  explicit BitVector(std::size_t size);

  /// Parses a string of '0'/'1' characters, index 0 first.
  static BitVector from_string(std::string_view bits);

  std::size_t size() const noexcept { return size_; }

  bool get(std::size_t i) const noexcept {
    return (blocks_[i / kBlockBits] >> (i % kBlockBits)) & 1U;
  }
  void set(std::size_t i, bool value = true) noexcept {
    const Block mask = Block{1} << (i % kBlockBits);
    if (value)
      blocks_[i / kBlockBits] |= mask;
    else
      blocks_[i / kBlockBits] &= ~mask;
  }
  void flip(std::size_t i) noexcept {
    blocks_[i / kBlockBits] ^= Block{1} << (i % kBlockBits);
  }

  bool any() const noexcept;
  bool none() const noexcept { return !any(); }
  std::size_t count() const noexcept;
  std::optional<std::size_t> lowest_set_bit() const noexcept;

  /// Parity of the intersection with `mask` (sizes must agree).
  bool dot(const BitVector& mask) const noexcept;

  BitVector& operator^=(const BitVector& other) noexcept;
  BitVector& operator&=(const BitVector& other) noexcept;
  BitVector& operator|=(const BitVector& other) noexcept;

  /// Copies `length` bits starting at `from` into a new vector.
  BitVector slice(std::size_t from, std::size_t length) const;
  /// Overwrites `src.size()` bits starting at `at`.
  void assign_range(std::size_t at, const BitVector& src, std::size_t src_from,
                    std::size_t length);

  std::string to_string() const;
  std::size_t hash() const noexcept;

  const Block* data() const noexcept { return blocks_.data(); }
  std::size_t block_count() const noexcept { return blocks_.size(); }

  friend bool operator==(const BitVector& a, const BitVector& b) noexcept {
    return a.size_ == b.size_ && a.blocks_ == b.blocks_;
  }
  /// Lexicographic order on the bit string (index 0 most significant).
  friend std::strong_ordering operator<=>(const BitVector& a,
                                         const BitVector& b) noexcept;

 private:
  std::size_t size_ = 0;
  boost::container::small_vector<Block, 2> blocks_;
};

inline BitVector operator^(BitVector a, const BitVector& b) {
  a ^= b;
  return a;
}

struct BitVectorHash {
  std::size_t operator()(const BitVector& v) const noexcept { return v.hash(); }
};

/// A GF(2) subspace kept in fully reduced echelon form. The pivot of a row is
/// its lowest set bit; every pivot column is zero in all other rows, so the
/// basis is canonical and two spans are equal iff their bases are equal.
class Gf2Span {
 public:
  explicit Gf2Span(std::size_t dimension = 0) : dimension_(dimension) {}

  static Gf2Span full(std::size_t dimension);

  std::size_t ambient_dimension() const noexcept { return dimension_; }
  std::size_t rank() const noexcept { return rows_.size(); }

  /// Inserts v; returns true when the rank grew.
  bool insert(BitVector v);
  bool contains(BitVector v) const;
  /// Reduces v against the basis (result has no pivot bits set).
  BitVector reduce(BitVector v) const;

  /// Rows sorted by pivot.
  const std::vector<BitVector>& basis() const noexcept { return rows_; }
  std::vector<std::size_t> pivots() const;

  /// Basis of {x : r.x = 0 for every row r}.
  std::vector<BitVector> nullspace() const;

  bool is_subspace_of(const Gf2Span& other) const;

  friend bool operator==(const Gf2Span& a, const Gf2Span& b) noexcept {
    return a.dimension_ == b.dimension_ && a.rows_ == b.rows_;
  }

 private:
  std::size_t dimension_;
  std::vector<BitVector> rows_;  // sorted by pivot, fully reduced
};

}  // namespace fcg
