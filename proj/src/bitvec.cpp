#include "fcg/bitvec.hpp"

#include <algorithm>
#include <bit>

#include "fcg/errors.hpp"

namespace fcg {

namespace {

std::size_t blocks_for(std::size_t bits) {
  return (bits + BitVector::kBlockBits - 1) / BitVector::kBlockBits;
}

}  // namespace

BitVector::BitVector(std::size_t size) : size_(size), blocks_(blocks_for(size), 0) {}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      v.set(i);
    else if (bits[i] != '0')
      throw DomainError("bit string may only contain '0' and '1'");
  }
  return v;
}

bool BitVector::any() const noexcept {
  return std::any_of(blocks_.begin(), blocks_.end(), [](Block b) { return b != 0; });
}

std::size_t BitVector::count() const noexcept {
  std::size_t n = 0;
  for (Block b : blocks_) n += static_cast<std::size_t>(std::popcount(b));
  return n;
}

std::optional<std::size_t> BitVector::lowest_set_bit() const noexcept {
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i] != 0)
      return i * kBlockBits + static_cast<std::size_t>(std::countr_zero(blocks_[i]));
  }
  return std::nullopt;
}

bool BitVector::dot(const BitVector& mask) const noexcept {
  Block acc = 0;
  const std::size_t n = std::min(blocks_.size(), mask.blocks_.size());
  for (std::size_t i = 0; i < n; ++i) acc ^= blocks_[i] & mask.blocks_[i];
  return std::popcount(acc) & 1;
}

BitVector& BitVector::operator^=(const BitVector& other) noexcept {
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] ^= other.blocks_[i];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) noexcept {
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= other.blocks_[i];
  return *this;
}

BitVector& BitVector::operator|=(const BitVector& other) noexcept {
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] |= other.blocks_[i];
  return *this;
}

BitVector BitVector::slice(std::size_t from, std::size_t length) const {
  BitVector out(length);
  out.assign_range(0, *this, from, length);
  return out;
}

void BitVector::assign_range(std::size_t at, const BitVector& src, std::size_t src_from,
                             std::size_t length) {
  // Word-at-a-time copy; both offsets may be unaligned.
  std::size_t done = 0;
  while (done < length) {
    const std::size_t s = src_from + done;
    const std::size_t d = at + done;
    const std::size_t s_off = s % kBlockBits;
    const std::size_t d_off = d % kBlockBits;
    const std::size_t chunk =
        std::min({length - done, kBlockBits - s_off, kBlockBits - d_off});
    Block bits = src.blocks_[s / kBlockBits] >> s_off;
    const Block mask = chunk == kBlockBits ? ~Block{0} : ((Block{1} << chunk) - 1);
    bits &= mask;
    Block& dst = blocks_[d / kBlockBits];
    dst = (dst & ~(mask << d_off)) | (bits << d_off);
    done += chunk;
  }
}

std::string BitVector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

std::size_t BitVector::hash() const noexcept {
  std::size_t h = size_ * 0x9e3779b97f4a7c15ULL;
  for (Block b : blocks_) {
    h ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::strong_ordering operator<=>(const BitVector& a, const BitVector& b) noexcept {
  const std::size_t n = std::min(a.size_, b.size_);
  for (std::size_t blk = 0; blk * BitVector::kBlockBits < n; ++blk) {
    const BitVector::Block x = a.blocks_[blk];
    const BitVector::Block y = b.blocks_[blk];
    if (x != y) {
      // first differing index is the lowest set bit of x^y
      const auto i = static_cast<std::size_t>(std::countr_zero(x ^ y));
      if (blk * BitVector::kBlockBits + i < n)
        return ((x >> i) & 1U) ? std::strong_ordering::greater : std::strong_ordering::less;
      break;
    }
  }
  return a.size_ <=> b.size_;
}

Gf2Span Gf2Span::full(std::size_t dimension) {
  Gf2Span s(dimension);
  s.rows_.reserve(dimension);
  for (std::size_t i = 0; i < dimension; ++i) {
    BitVector v(dimension);
    v.set(i);
    s.rows_.push_back(std::move(v));
  }
  return s;
}

BitVector Gf2Span::reduce(BitVector v) const {
  for (const BitVector& r : rows_) {
    const std::size_t p = *r.lowest_set_bit();
    if (v.get(p)) v ^= r;
  }
  return v;
}

bool Gf2Span::contains(BitVector v) const { return reduce(std::move(v)).none(); }

bool Gf2Span::insert(BitVector v) {
  if (v.size() != dimension_) throw DomainError("Gf2Span: vector length mismatch");
  v = reduce(std::move(v));
  const auto pivot = v.lowest_set_bit();
  if (!pivot) return false;
  // Clear the new pivot column from existing rows.
  for (BitVector& r : rows_)
    if (r.get(*pivot)) r ^= v;
  auto pos = std::lower_bound(rows_.begin(), rows_.end(), *pivot,
                              [](const BitVector& r, std::size_t p) {
                                return *r.lowest_set_bit() < p;
                              });
  rows_.insert(pos, std::move(v));
  return true;
}

std::vector<std::size_t> Gf2Span::pivots() const {
  std::vector<std::size_t> out;
  out.reserve(rows_.size());
  for (const BitVector& r : rows_) out.push_back(*r.lowest_set_bit());
  return out;
}

std::vector<BitVector> Gf2Span::nullspace() const {
  std::vector<bool> is_pivot(dimension_, false);
  for (std::size_t p : pivots()) is_pivot[p] = true;
  std::vector<BitVector> out;
  for (std::size_t f = 0; f < dimension_; ++f) {
    if (is_pivot[f]) continue;
    BitVector v(dimension_);
    v.set(f);
    for (const BitVector& r : rows_)
      if (r.get(f)) v.set(*r.lowest_set_bit());
    out.push_back(std::move(v));
  }
  return out;
}

bool Gf2Span::is_subspace_of(const Gf2Span& other) const {
  return std::all_of(rows_.begin(), rows_.end(),
                     [&](const BitVector& r) { return other.contains(r); });
}

}  // namespace fcg
