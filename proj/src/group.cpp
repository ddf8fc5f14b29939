#include "fcg/group.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "fcg/errors.hpp"

namespace fcg {

namespace {

void check_depths(const std::vector<Element>& xs, int depth) {
  for (const Element& x : xs)
    if (x.depth() != depth)
      throw DomainError("generator of depth " + std::to_string(x.depth()) +
                        " in a group of depth " + std::to_string(depth));
}

// Incremental pcgs construction. Every new table entry r queues r^2 and the
// conjugates between r and the existing entries (and by `conjugators`, for
// normal closures). A condition that sifted to the identity keeps doing so
// as the table grows, so at the end the table is consistent.
class Builder {
 public:
  Builder(int depth, std::vector<Element> conjugators = {})
      : depth_(depth), conjugators_(std::move(conjugators)) {}

  void add(const Element& x) {
    queue_.push_back(x);
    run();
  }

  Element sift(Element g, std::vector<std::size_t>* used = nullptr) const {
    while (auto p = g.leading_position()) {
      auto it = lead_to_entry_.find(*p);
      if (it == lead_to_entry_.end()) break;
      if (used) used->push_back(it->second);
      g = compose(inverses_[it->second], g);
    }
    return g;
  }

  const std::vector<Element>& entries() const { return entries_; }

 private:
  void run() {
    while (!queue_.empty()) {
      Element r = sift(std::move(queue_.front()));
      queue_.pop_front();
      if (r.is_identity()) continue;
      const std::size_t idx = entries_.size();
      lead_to_entry_.emplace(*r.leading_position(), idx);
      entries_.push_back(r);
      inverses_.push_back(inverse(r));
      queue_.push_back(compose(r, r));
      for (std::size_t i = 0; i < idx; ++i) {
        queue_.push_back(conjugate(entries_[i], r));
        queue_.push_back(conjugate(r, entries_[i]));
      }
      for (const Element& s : conjugators_) queue_.push_back(conjugate(r, s));
    }
  }

  int depth_;
  std::vector<Element> conjugators_;
  std::vector<Element> entries_;
  std::vector<Element> inverses_;
  std::unordered_map<std::size_t, std::size_t> lead_to_entry_;
  std::deque<Element> queue_;
};

std::vector<Element> reduce_table(std::vector<Element> table) {
  std::sort(table.begin(), table.end(), [](const Element& a, const Element& b) {
    return *a.leading_position() < *b.leading_position();
  });
  std::vector<std::size_t> leads;
  for (const Element& e : table) leads.push_back(*e.leading_position());
  // Right multiplication by e_j clears bit p_j without touching lower bits,
  // giving the lexicographically least coset representative.
  for (std::size_t i = table.size(); i-- > 0;) {
    for (std::size_t j = i + 1; j < table.size(); ++j)
      if (table[i].label_at(leads[j])) table[i] = compose(table[i], table[j]);
  }
  return table;
}

}  // namespace

GroupSet make_group(int depth, std::vector<Element> generators, std::vector<Element> table) {
  GroupSet g(depth);
  g.generators_ = std::move(generators);
  g.pcgs_ = reduce_table(std::move(table));
  for (const Element& e : g.pcgs_) {
    g.pcgs_inverse_.push_back(inverse(e));
    g.leads_.push_back(*e.leading_position());
  }
  return g;
}

GroupSet::GroupSet(int depth) : depth_(depth) {
  if (depth < 1) throw DomainError("group depth must be at least 1");
}

Element GroupSet::sift(Element g) const {
  if (g.depth() != depth_) throw DomainError("sift: depth mismatch");
  std::size_t i = 0;
  while (auto p = g.leading_position()) {
    while (i < leads_.size() && leads_[i] < *p) ++i;
    if (i == leads_.size() || leads_[i] != *p) break;
    g = compose(pcgs_inverse_[i], g);
  }
  return g;
}

bool GroupSet::contains(const Element& g) const {
  if (g.depth() != depth_) return false;
  return sift(g).is_identity();
}

std::vector<Element> GroupSet::elements(std::uint64_t cap) const {
  if (pcgs_.size() >= 63 || (std::uint64_t{1} << pcgs_.size()) > cap)
    throw ResourceCapExceeded("group of order 2^" + std::to_string(pcgs_.size()) +
                              " exceeds the element cap " + std::to_string(cap));
  std::vector<Element> out{Element(depth_)};
  out.reserve(std::size_t{1} << pcgs_.size());
  for (std::size_t i = pcgs_.size(); i-- > 0;) {
    const std::size_t n = out.size();
    for (std::size_t j = 0; j < n; ++j) out.push_back(compose(pcgs_[i], out[j]));
  }
  std::sort(out.begin(), out.end());
  return out;
}

GroupSet close(const std::vector<Element>& generators, int depth) {
  check_depths(generators, depth);
  Builder b(depth);
  for (const Element& g : generators) b.add(g);
  return make_group(depth, generators, b.entries());
}

std::vector<Element> bfs_close(const std::vector<Element>& generators, int depth,
                               std::uint64_t cap) {
  check_depths(generators, depth);
  std::unordered_set<Element, ElementHash> seen;
  std::deque<Element> frontier;
  Element id(depth);
  seen.insert(id);
  frontier.push_back(id);
  while (!frontier.empty()) {
    Element x = std::move(frontier.front());
    frontier.pop_front();
    for (const Element& s : generators) {
      Element y = compose(x, s);
      if (seen.insert(y).second) {
        if (seen.size() > cap)
          throw ResourceCapExceeded("closure exceeds the element cap " + std::to_string(cap));
        frontier.push_back(std::move(y));
      }
    }
  }
  std::vector<Element> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

GroupSet group_from_elements(const std::vector<Element>& elements, int depth) {
  GroupSet g = close(elements, depth);
  std::unordered_set<Element, ElementHash> distinct(elements.begin(), elements.end());
  distinct.insert(Element(depth));
  if (BigInt(distinct.size()) != g.order())
    throw DomainError("element list of size " + std::to_string(distinct.size()) +
                      " is not closed (generated group has order 2^" +
                      std::to_string(g.log2_order()) + ")");
  return g;
}

GroupSet full_group(int depth) { return close(standard_generators(depth), depth); }

GroupSet normal_closure(const std::vector<Element>& seeds, const std::vector<Element>& ambient,
                        int depth) {
  check_depths(seeds, depth);
  check_depths(ambient, depth);
  Builder b(depth, ambient);
  for (const Element& s : seeds) b.add(s);
  return make_group(depth, seeds, b.entries());
}

bool is_subgroup_of(const GroupSet& a, const GroupSet& b) {
  if (a.depth() != b.depth()) return false;
  return std::all_of(a.pcgs().begin(), a.pcgs().end(),
                     [&](const Element& e) { return b.contains(e); });
}

bool is_normal_in(const GroupSet& n, const GroupSet& g) {
  if (!is_subgroup_of(n, g)) return false;
  for (const Element& e : n.pcgs())
    for (const Element& s : g.pcgs())
      if (!n.contains(conjugate(e, s))) return false;
  return true;
}

bool same_group(const GroupSet& a, const GroupSet& b) { return a == b; }

GroupSet derived_subgroup(const GroupSet& g) {
  const auto& gens = g.pcgs();
  std::vector<Element> seeds;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) seeds.push_back(commutator(gens[i], gens[j]));
  return normal_closure(seeds, gens, g.depth());
}

GroupSet frattini(const GroupSet& g) {
  const auto& gens = g.pcgs();
  std::vector<Element> seeds;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    seeds.push_back(compose(gens[i], gens[i]));
    for (std::size_t j = i + 1; j < gens.size(); ++j) seeds.push_back(commutator(gens[i], gens[j]));
  }
  return normal_closure(seeds, gens, g.depth());
}

BitVector AbelianizationCoords::coords(const Element& g) const {
  // Sift through `table` in lead order, recording basis entries used.
  BitVector c(rank());
  Element x = g;
  std::unordered_map<std::size_t, std::size_t> by_lead;
  for (std::size_t i = 0; i < table.size(); ++i) by_lead.emplace(*table[i].leading_position(), i);
  std::vector<std::size_t> basis_pos(table.size(), rank());
  for (std::size_t k = 0; k < rank(); ++k) basis_pos[basis_index[k]] = k;
  while (auto p = x.leading_position()) {
    auto it = by_lead.find(*p);
    if (it == by_lead.end()) throw DomainError("element is not in the group");
    if (basis_pos[it->second] < rank()) c.flip(basis_pos[it->second]);
    x = compose(inverse(table[it->second]), x);
  }
  return c;
}

AbelianizationCoords abelianization(const GroupSet& g) {
  AbelianizationCoords ab;
  ab.group = g;
  ab.frattini = frattini(g);
  Builder b(g.depth());
  for (const Element& e : ab.frattini.pcgs()) b.add(e);
  const std::size_t phi_size = b.entries().size();
  for (const Element& e : g.pcgs()) b.add(e);
  ab.table = b.entries();
  for (std::size_t i = phi_size; i < ab.table.size(); ++i) ab.basis_index.push_back(i);
  return ab;
}

GroupSet maximal_subgroup(const AbelianizationCoords& ab, const BitVector& c) {
  if (c.size() != ab.rank() || c.none()) throw DomainError("functional must be nonzero of rank length");
  const std::size_t t = *c.lowest_set_bit();
  std::vector<Element> gens = ab.frattini.pcgs();
  for (std::size_t i = 0; i < ab.rank(); ++i) {
    const Element& f = ab.table[ab.basis_index[i]];
    if (!c.get(i))
      gens.push_back(f);
    else if (i != t)
      gens.push_back(compose(f, ab.table[ab.basis_index[t]]));
  }
  return close(gens, ab.group.depth());
}

std::vector<GroupSet> maximal_subgroups(const GroupSet& g) {
  const AbelianizationCoords ab = abelianization(g);
  if (ab.rank() >= 24) throw ResourceCapExceeded("too many maximal subgroups");
  std::vector<GroupSet> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << ab.rank()); ++mask) {
    BitVector c(ab.rank());
    for (std::size_t i = 0; i < ab.rank(); ++i)
      if ((mask >> i) & 1U) c.set(i);
    out.push_back(maximal_subgroup(ab, c));
  }
  return out;
}

GroupSet level_stabilizer(const GroupSet& g, int k) {
  if (k < 1 || k > g.depth()) throw DomainError("stabilizer level out of range");
  std::vector<Element> tail;
  for (const Element& e : g.pcgs())
    if (level_of(*e.leading_position()) >= k) tail.push_back(e);
  return close(tail, g.depth());
}

GroupSet project(const GroupSet& g, int k) {
  std::vector<Element> gens;
  for (const Element& e : g.pcgs()) gens.push_back(project(e, k));
  return close(gens, k);
}

std::optional<Element> lift(const GroupSet& g, const Element& image) {
  const int k = image.depth();
  if (k > g.depth()) throw DomainError("lift: image deeper than the group");
  // pcgs entries with lead above level k project to a pcgs of the image.
  std::unordered_map<std::size_t, std::size_t> by_lead;
  for (std::size_t i = 0; i < g.pcgs().size(); ++i) {
    const std::size_t p = *g.pcgs()[i].leading_position();
    if (level_of(p) < k) by_lead.emplace(p, i);
  }
  Element x = image;
  Element acc(g.depth());
  while (auto p = x.leading_position()) {
    auto it = by_lead.find(*p);
    if (it == by_lead.end()) return std::nullopt;
    const Element& e = g.pcgs()[it->second];
    x = compose(inverse(project(e, k)), x);
    acc = compose(acc, e);
  }
  return acc;
}

EssentialityResult is_essential(const GroupSet& p) {
  if (p.depth() < 2) throw DomainError("essentiality needs depth at least 2");
  // {g : g_0, g_1 in Q} is a subgroup, so generators suffice.
  const GroupSet q = project(p, p.depth() - 1);
  for (const Element& g : p.pcgs())
    for (int x = 0; x < 2; ++x)
      if (!q.contains(section(g, Word(1, static_cast<std::uint64_t>(x)))))
        return {false, std::make_pair(g, x)};
  return {true, std::nullopt};
}

}  // namespace fcg
