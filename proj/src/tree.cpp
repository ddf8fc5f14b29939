#include "fcg/tree.hpp"

#include <atomic>
#include <bit>

#include "fcg/errors.hpp"

namespace fcg {

namespace {

std::atomic<int> g_depth_cap{12};

void check_depth(int depth) {
  if (depth < 1) throw DomainError("depth must be at least 1");
  if (depth > depth_cap() || depth > kAbsoluteMaxDepth)
    throw ResourceCapExceeded("depth " + std::to_string(depth) + " exceeds depth cap " +
                              std::to_string(depth_cap()));
}

void check_same_depth(const Element& g, const Element& h, const char* op) {
  if (g.depth() != h.depth())
    throw DomainError(std::string(op) + ": depth mismatch (" + std::to_string(g.depth()) +
                      " vs " + std::to_string(h.depth()) + ")");
}

}  // namespace

int depth_cap() noexcept { return g_depth_cap.load(std::memory_order_relaxed); }

void set_depth_cap(int cap) {
  if (cap < 1 || cap > kAbsoluteMaxDepth)
    throw DomainError("depth cap must lie in [1, " + std::to_string(kAbsoluteMaxDepth) + "]");
  g_depth_cap.store(cap, std::memory_order_relaxed);
}

int level_of(std::size_t portrait_index) noexcept {
  return static_cast<int>(std::bit_width(portrait_index + 1)) - 1;
}

// ---------------------------------------------------------------- Word

Word::Word(int length, std::uint64_t value) : length_(length), value_(value) {
  if (length < 0 || length > 63) throw DomainError("word length out of range");
  if (length < 64 && (value >> length) != 0) throw DomainError("word value exceeds length");
}

Word Word::from_string(std::string_view letters) {
  if (letters == "e" || letters == "ε") return Word();
  if (letters.size() > 63) throw DomainError("word too long");
  std::uint64_t v = 0;
  for (char c : letters) {
    if (c != '0' && c != '1') throw DomainError("word letters must be 0 or 1: '" +
                                                std::string(letters) + "'");
    v = (v << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return Word(static_cast<int>(letters.size()), v);
}

Word Word::repeat(int letter, int k) {
  if (letter != 0 && letter != 1) throw DomainError("letter must be 0 or 1");
  return Word(k, letter == 0 ? 0 : ((std::uint64_t{1} << k) - 1));
}

Word Word::child(int letter) const {
  return Word(length_ + 1, (value_ << 1) | static_cast<std::uint64_t>(letter & 1));
}

Word Word::prefix(int k) const {
  if (k < 0 || k > length_) throw DomainError("prefix length out of range");
  return Word(k, value_ >> (length_ - k));
}

Word Word::suffix_from(int k) const {
  if (k < 0 || k > length_) throw DomainError("suffix start out of range");
  const int len = length_ - k;
  return Word(len, len == 0 ? 0 : (value_ & ((std::uint64_t{1} << len) - 1)));
}

Word Word::concat(const Word& tail) const {
  return Word(length_ + tail.length_, (value_ << tail.length_) | tail.value_);
}

Word Word::from_portrait_index(std::size_t index) {
  const int len = level_of(index);
  return Word(len, index - level_offset(len));
}

std::string Word::to_string() const {
  if (length_ == 0) return "e";
  std::string s(static_cast<std::size_t>(length_), '0');
  for (int i = 0; i < length_; ++i)
    if (letter(i)) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

// ---------------------------------------------------------------- LevelSet

LevelSet::LevelSet(int depth) : depth_(depth), indicator_(portrait_size(depth)) {
  check_depth(depth);
}

LevelSet::LevelSet(int depth, const std::vector<Word>& words) : LevelSet(depth) {
  for (const Word& w : words) insert(w);
}

bool LevelSet::contains(const Word& w) const {
  return w.length() < depth_ && indicator_.get(w.portrait_index());
}

void LevelSet::insert(const Word& w) {
  if (w.length() >= depth_)
    throw DomainError("word " + w.to_string() + " too long for level set of depth " +
                      std::to_string(depth_));
  indicator_.set(w.portrait_index());
}

std::vector<Word> LevelSet::words() const {
  std::vector<Word> out;
  for (std::size_t i = 0; i < indicator_.size(); ++i)
    if (indicator_.get(i)) out.push_back(Word::from_portrait_index(i));
  return out;
}

LevelSet LevelSet::from_indicator(int depth, BitVector indicator) {
  if (indicator.size() != portrait_size(depth)) throw DomainError("indicator size mismatch");
  LevelSet s(depth);
  s.indicator_ = std::move(indicator);
  return s;
}

LevelSet LevelSet::at_depth(int depth) const {
  if (depth < depth_ && indicator_.slice(portrait_size(depth), indicator_.size() -
                                                                   portrait_size(depth)).any())
    throw DomainError("level set does not fit at smaller depth");
  LevelSet s(depth);
  s.indicator_.assign_range(0, indicator_, 0, std::min(portrait_size(depth), indicator_.size()));
  return s;
}

LevelSet LevelSet::symmetric_difference(const LevelSet& other) const {
  if (depth_ != other.depth_) throw DomainError("level set depth mismatch");
  LevelSet s = *this;
  s.indicator_ ^= other.indicator_;
  return s;
}

LevelSet LevelSet::united(const LevelSet& other) const {
  if (depth_ != other.depth_) throw DomainError("level set depth mismatch");
  LevelSet s = *this;
  s.indicator_ |= other.indicator_;
  return s;
}

LevelSet LevelSet::intersected(const LevelSet& other) const {
  if (depth_ != other.depth_) throw DomainError("level set depth mismatch");
  LevelSet s = *this;
  s.indicator_ &= other.indicator_;
  return s;
}

std::string LevelSet::to_string() const {
  std::string out;
  for (const Word& w : words()) {
    if (!out.empty()) out += ',';
    out += w.to_string();
  }
  return out;
}

LevelSet full_levels(int depth, const std::vector<int>& levels) {
  return prefixed_levels(depth, Word(), levels);
}

LevelSet prefixed_levels(int depth, const Word& prefix, const std::vector<int>& total_lengths) {
  LevelSet s(depth);
  for (int len : total_lengths) {
    if (len < prefix.length()) continue;
    if (len >= depth)
      throw DomainError("level " + std::to_string(len) + " not below depth " +
                        std::to_string(depth));
    const int free = len - prefix.length();
    const std::size_t base = level_offset(len) + (prefix.value() << free);
    for (std::size_t i = 0; i < (std::size_t{1} << free); ++i) s.insert(Word::from_portrait_index(base + i));
  }
  return s;
}

LevelSet shift_set(const LevelSet& s, const Word& w, int depth) {
  LevelSet out(depth);
  for (const Word& v : s.words()) out.insert(w.concat(v));
  return out;
}

// ---------------------------------------------------------------- Element

Element::Element(int depth) : depth_(depth), labels_(portrait_size(depth)) {
  check_depth(depth);
}

Element Element::from_labels(int depth, BitVector labels) {
  Element e(depth);
  if (labels.size() != portrait_size(depth)) throw DomainError("label vector size mismatch");
  e.labels_ = std::move(labels);
  return e;
}

Element Element::from_portrait(std::string_view text) {
  std::vector<std::string_view> levels;
  std::size_t start = 0;
  while (true) {
    const std::size_t bar = text.find('|', start);
    levels.push_back(text.substr(start, bar == std::string_view::npos ? bar : bar - start));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  const int depth = static_cast<int>(levels.size());
  Element e(depth);
  for (int l = 0; l < depth; ++l) {
    const auto& lv = levels[static_cast<std::size_t>(l)];
    if (lv.size() != (std::size_t{1} << l))
      throw DomainError("portrait level " + std::to_string(l) + " must have " +
                        std::to_string(std::size_t{1} << l) + " labels: '" + std::string(text) +
                        "'");
    for (std::size_t i = 0; i < lv.size(); ++i) {
      if (lv[i] == '1')
        e.labels_.set(level_offset(l) + i);
      else if (lv[i] != '0')
        throw DomainError("portrait labels must be 0 or 1");
    }
  }
  return e;
}

void Element::set_label(const Word& w, bool value) {
  if (w.length() >= depth_) throw DomainError("word too long for element depth");
  labels_.set(w.portrait_index(), value);
}

std::vector<Word> Element::support() const {
  std::vector<Word> out;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_.get(i)) out.push_back(Word::from_portrait_index(i));
  return out;
}

BitVector Element::level_labels(int level) const {
  if (level < 0 || level >= depth_) throw DomainError("level out of range");
  return labels_.slice(level_offset(level), std::size_t{1} << level);
}

std::string Element::portrait() const {
  std::string out;
  for (int l = 0; l < depth_; ++l) {
    if (l) out += '|';
    for (std::size_t i = 0; i < (std::size_t{1} << l); ++i)
      out += labels_.get(level_offset(l) + i) ? '1' : '0';
  }
  return out;
}

// ---------------------------------------------------------------- operations

Element generator(int depth, int i) {
  if (i < 0 || i >= depth)
    throw DomainError("generator index " + std::to_string(i) + " out of range for depth " +
                      std::to_string(depth));
  Element a(depth);
  a.set_label(Word::repeat(0, i), true);
  return a;
}

std::vector<Element> standard_generators(int depth) {
  std::vector<Element> out;
  for (int i = 0; i < depth; ++i) out.push_back(generator(depth, i));
  return out;
}

Element from_level_vector(int depth, const BitVector& bits) {
  const std::size_t width = std::size_t{1} << (depth - 1);
  if (bits.size() != width) throw DomainError("level vector has wrong length");
  Element e(depth);
  BitVector labels = e.labels();
  labels.assign_range(level_offset(depth - 1), bits, 0, width);
  return Element::from_labels(depth, std::move(labels));
}

Element compose(const Element& g, const Element& h) {
  check_same_depth(g, h, "compose");
  const int d = g.depth();
  BitVector out(portrait_size(d));
  // img[i] = value of h(w) for the i-th word of the current level
  std::vector<std::uint32_t> img{0}, next;
  for (int l = 0; l < d; ++l) {
    const std::size_t base = level_offset(l);
    const std::size_t width = std::size_t{1} << l;
    const bool last = l + 1 == d;
    if (!last) next.resize(width * 2);
    for (std::size_t i = 0; i < width; ++i) {
      const bool hb = h.label_at(base + i);
      const std::uint32_t gi = img[i];
      if (g.label_at(base + gi) != hb) out.set(base + i);
      if (!last) {
        next[2 * i] = 2 * gi + (hb ? 1U : 0U);
        next[2 * i + 1] = 2 * gi + (hb ? 0U : 1U);
      }
    }
    img.swap(next);
  }
  return Element::from_labels(d, std::move(out));
}

Element inverse(const Element& g) {
  const int d = g.depth();
  BitVector out(portrait_size(d));
  std::vector<std::uint32_t> img{0}, next;
  for (int l = 0; l < d; ++l) {
    const std::size_t base = level_offset(l);
    const std::size_t width = std::size_t{1} << l;
    const bool last = l + 1 == d;
    if (!last) next.resize(width * 2);
    for (std::size_t i = 0; i < width; ++i) {
      const bool gb = g.label_at(base + i);
      // (g^{-1})_(g(w)) = g_(w)
      if (gb) out.set(base + img[i]);
      if (!last) {
        next[2 * i] = 2 * img[i] + (gb ? 1U : 0U);
        next[2 * i + 1] = 2 * img[i] + (gb ? 0U : 1U);
      }
    }
    img.swap(next);
  }
  return Element::from_labels(d, std::move(out));
}

Element conjugate(const Element& h, const Element& g) {
  return compose(inverse(g), compose(h, g));
}

Element commutator(const Element& g, const Element& h) {
  return compose(compose(inverse(g), inverse(h)), compose(g, h));
}

Element product(const std::vector<Element>& factors, int depth) {
  Element acc(depth);
  for (const Element& f : factors) acc = compose(acc, f);
  return acc;
}

Word act(const Element& g, const Word& w) {
  if (w.length() > g.depth())
    throw DomainError("act: word of length " + std::to_string(w.length()) +
                      " exceeds depth " + std::to_string(g.depth()));
  std::uint64_t out = 0;
  for (int i = 0; i < w.length(); ++i) {
    const bool flip = g.label(w.prefix(i));
    out = (out << 1) | static_cast<std::uint64_t>(w.letter(i) ^ (flip ? 1 : 0));
  }
  return Word(w.length(), out);
}

Element section(const Element& g, const Word& w) {
  if (w.length() >= g.depth())
    throw DomainError("section: |w| must be below the element depth");
  const int d = g.depth() - w.length();
  BitVector out(portrait_size(d));
  for (int l = 0; l < d; ++l) {
    const std::size_t width = std::size_t{1} << l;
    const std::size_t from = level_offset(w.length() + l) + (w.value() << l);
    out.assign_range(level_offset(l), g.labels(), from, width);
  }
  return Element::from_labels(d, std::move(out));
}

Element embed_branch(int depth, const Word& w, const Element& h) {
  if (w.length() + h.depth() > depth)
    throw DomainError("embed_branch: |w| + depth(h) exceeds target depth");
  Element e(depth);
  BitVector labels(portrait_size(depth));
  for (int l = 0; l < h.depth(); ++l) {
    const std::size_t width = std::size_t{1} << l;
    labels.assign_range(level_offset(w.length() + l) + (w.value() << l), h.labels(),
                        level_offset(l), width);
  }
  return Element::from_labels(depth, std::move(labels));
}

Element project(const Element& g, int k) {
  if (k < 1 || k > g.depth())
    throw DomainError("project: target depth " + std::to_string(k) + " out of range");
  return Element::from_labels(k, g.labels().slice(0, portrait_size(k)));
}

bool alpha_sum(const Element& g, const LevelSet& s) {
  if (s.depth() > g.depth()) {
    // Words of s must still fit inside g.
    if (s.indicator().slice(portrait_size(g.depth()),
                            s.indicator().size() - portrait_size(g.depth())).any())
      throw DomainError("alpha_sum: level set reaches below the element depth");
    return g.labels().dot(s.indicator().slice(0, portrait_size(g.depth())));
  }
  return g.labels().dot(s.indicator());
}

Element portrait_sum(const Element& g, const Element& h) {
  check_same_depth(g, h, "portrait_sum");
  return Element::from_labels(g.depth(), g.labels() ^ h.labels());
}

LevelSet act_on_set(const Element& g, const LevelSet& s) {
  if (s.depth() > g.depth()) throw DomainError("act_on_set: set deeper than element");
  LevelSet out(s.depth());
  for (const Word& w : s.words()) out.insert(act(g, w));
  return out;
}

std::optional<int> first_disagreement_level(const Element& g, const Element& h) {
  check_same_depth(g, h, "first_disagreement_level");
  BitVector diff = g.labels() ^ h.labels();
  const auto low = diff.lowest_set_bit();
  if (!low) return std::nullopt;
  // labels on levels 0..n-1 determine project(., n)
  return level_of(*low) + 1;
}

}  // namespace fcg
