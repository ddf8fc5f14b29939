#include "fcg/automata.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "fcg/analysis.hpp"
#include "fcg/errors.hpp"
#include "fcg/group.hpp"

namespace fcg {

struct Automaton::Memo {
  std::mutex mutex;
  std::map<std::pair<std::size_t, int>, Element> cache;
};

Automaton::Automaton(std::vector<AutomatonState> states, std::string trivial)
    : states_(std::move(states)), trivial_(std::move(trivial)), memo_(std::make_shared<Memo>()) {
  for (std::size_t i = 0; i < states_.size(); ++i)
    for (std::size_t j = i + 1; j < states_.size(); ++j)
      if (states_[i].name == states_[j].name)
        throw DomainError("duplicate state name '" + states_[i].name + "'");
  for (const AutomatonState& s : states_) {
    if (s.name.empty()) throw DomainError("empty state name");
    succ0_.push_back(index_of(s.succ0));
    succ1_.push_back(index_of(s.succ1));
  }
  const AutomatonState& t = states_[index_of(trivial_)];
  if (t.active || t.succ0 != t.name || t.succ1 != t.name)
    throw DomainError("trivial state must be inactive with self-loops");
}

std::size_t Automaton::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < states_.size(); ++i)
    if (states_[i].name == name) return i;
  throw DomainError("unknown state '" + std::string(name) + "'");
}

bool Automaton::has_state(std::string_view name) const {
  return std::any_of(states_.begin(), states_.end(),
                     [&](const AutomatonState& s) { return s.name == name; });
}

Element Automaton::state_element(std::size_t state, int depth) const {
  {
    std::lock_guard<std::mutex> lock(memo_->mutex);
    auto it = memo_->cache.find({state, depth});
    if (it != memo_->cache.end()) return it->second;
  }
  Element e(depth);
  if (depth > 1) {
    BitVector labels(portrait_size(depth));
    const Element s0 = state_element(succ0_[state], depth - 1);
    const Element s1 = state_element(succ1_[state], depth - 1);
    for (int l = 0; l + 1 < depth; ++l) {
      const std::size_t w = std::size_t{1} << l;
      labels.assign_range(level_offset(l + 1), s0.labels(), level_offset(l), w);
      labels.assign_range(level_offset(l + 1) + w, s1.labels(), level_offset(l), w);
    }
    e = Element::from_labels(depth, std::move(labels));
  }
  e.set_label_at(0, states_[state].active);
  std::lock_guard<std::mutex> lock(memo_->mutex);
  memo_->cache.emplace(std::make_pair(state, depth), e);
  return e;
}

Automaton builtin_automaton(std::string_view name, int k) {
  if (name == "grigorchuk") {
    return Automaton({{"a", true, "e", "e"},
                      {"b", false, "a", "c"},
                      {"c", false, "a", "d"},
                      {"d", false, "e", "b"},
                      {"e", false, "e", "e"}},
                     "e");
  }
  if (name == "family") {
    if (k < 1) throw DomainError("family parameter k must be at least 1");
    std::vector<AutomatonState> st;
    st.push_back({"r0", true, "e", "e"});
    for (int i = 1; i <= k; ++i)
      st.push_back({"r" + std::to_string(i), false, "r" + std::to_string(i - 1), "e"});
    const std::string rk = "r" + std::to_string(k);
    st.push_back({"b0", false, rk, "b1"});
    st.push_back({"b1", false, rk, "b2"});
    st.push_back({"b2", false, "e", "b0"});
    st.push_back({"e", false, "e", "e"});
    return Automaton(std::move(st), "e");
  }
  throw DomainError("unknown automaton '" + std::string(name) + "'");
}

GroupWord parse_group_word(const Automaton& a, std::string_view text) {
  GroupWord out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(cur);
    cur.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',')
      flush();
    else
      cur += c;
  }
  flush();
  if (out.size() == 1 && !a.has_state(out[0])) {
    GroupWord letters;
    for (char c : out[0]) letters.emplace_back(1, c);
    out = letters;
  }
  for (const std::string& s : out) a.index_of(s);
  return out;
}

std::string format_group_word(const GroupWord& w) {
  std::string out;
  for (const std::string& s : w) {
    if (!out.empty()) out += ' ';
    out += s;
  }
  return out;
}

Element word_to_element(const Automaton& a, const GroupWord& word, int depth) {
  Element acc(depth);
  for (const std::string& s : word) acc = compose(acc, a.state_element(s, depth));
  return acc;
}

GroupWord word_section(const Automaton& a, const GroupWord& word, const Word& w) {
  GroupWord cur = word;
  for (int n = 0; n < w.length(); ++n) {
    // (s_1 ... s_m)_x = (s_1)_{x_1} ... (s_m)_{x_m}, x_m = x, x_i = s_{i+1}...s_m(x)
    int x = w.letter(n);
    GroupWord next(cur.size());
    for (std::size_t i = cur.size(); i-- > 0;) {
      const AutomatonState& s = a.states()[a.index_of(cur[i])];
      next[i] = x == 0 ? s.succ0 : s.succ1;
      if (s.active) x ^= 1;
    }
    cur.clear();
    for (std::string& s : next)
      if (s != a.trivial()) cur.push_back(std::move(s));
  }
  return cur;
}

GroupSet quotient_group(const Automaton& a, int depth) {
  std::vector<Element> gens;
  for (std::size_t i = 0; i < a.states().size(); ++i) gens.push_back(a.state_element(i, depth));
  return close(gens, depth);
}

LevelSet support_to_depth(const Automaton& a, std::string_view state, int depth) {
  const Element e = a.state_element(state, depth);
  return LevelSet(depth, e.support());
}

namespace {

GroupWord words(std::initializer_list<std::string> xs) { return GroupWord(xs); }

GroupWord cat(std::initializer_list<GroupWord> parts) {
  GroupWord out;
  for (const GroupWord& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// All states are involutions, so g^h = h g h and [g, h] = g h g h.
GroupWord conj(const GroupWord& g, const GroupWord& h) { return cat({h, g, h}); }
GroupWord comm(const GroupWord& g, const GroupWord& h) { return cat({g, h, g, h}); }

std::string r(int i) { return "r" + std::to_string(i); }
std::string b(int t) { return "b" + std::to_string(((t % 3) + 3) % 3); }

}  // namespace

VerificationReport family_report(int k, int check_depth) {
  if (k < 1) throw DomainError("family parameter k must be at least 1");
  const int d = k + 4;
  if (check_depth < d) throw DomainError("check depth must be at least the pattern depth");
  const Automaton aut = builtin_automaton("family", k);
  std::vector<std::string> gens;
  for (int i = 0; i <= k; ++i) gens.push_back(r(i));
  for (int t = 0; t < 3; ++t) gens.push_back(b(t));

  VerificationReport rep;
  rep.title = "family(k=" + std::to_string(k) + "), pattern depth " + std::to_string(d);
  auto el = [&](const GroupWord& w, int n) { return word_to_element(aut, w, n); };
  auto gen_elements = [&](int n) {
    std::vector<Element> out;
    for (const std::string& g : gens) out.push_back(aut.state_element(g, n));
    return out;
  };

  // (a) H(d-1) = G(d-1) and the generator images
  {
    const GroupSet h = close(gen_elements(d - 1), d - 1);
    const bool full = h.log2_order() == portrait_size(d - 1);
    rep.set("H(d-1).order", h.order().str());
    std::vector<std::pair<GroupWord, int>> images;
    for (int i = 0; i <= k; ++i) images.push_back({words({r(i)}), i});
    images.push_back({words({"b1"}), d - 3});
    images.push_back({conj(words({"b2"}), words({"r0"})), d - 2});
    std::string bad;
    for (const auto& [w, i] : images)
      if (el(w, d - 1) != generator(d - 1, i))
        bad += format_group_word(w) + " -> " + el(w, d - 1).portrait() + "; ";
    rep.check("family.a", full && bad.empty(),
              "H(" + std::to_string(d - 1) + ") = G(" + std::to_string(d - 1) + ") of order " +
                  h.order().str() + ", images of r_i, b1, b2^r0 are standard generators",
              bad);
  }
  // (b) alpha over X^{d-3} u X^{d-2} u X^{d-1} vanishes on generators
  {
    const LevelSet xj = full_levels(d, {d - 3, d - 2, d - 1});
    std::string bad;
    for (const std::string& g : gens)
      if (alpha_sum(aut.state_element(g, d), xj)) bad += g + " ";
    rep.check("family.b", bad.empty(), "alpha_{d-3,d-2,d-1} trivial on every generator", bad);
  }
  // (c) pi_d([r1^r0, b1]) = [a_1, a_{d-1}]
  {
    const Element lhs = el(comm(conj(words({"r1"}), words({"r0"})), words({"b1"})), d);
    const Element rhs = commutator(generator(d, 1), generator(d, d - 1));
    rep.check("family.c", lhs == rhs, "pi_d([r1^r0, b1]) = [a_1, a_{d-1}]",
              lhs == rhs ? "" : lhs.portrait());
    // The computed value is the a_0-conjugate; conjugating back by r0 still
    // puts [a_1, a_{d-1}] in H(d).
    const Element back = conjugate(lhs, generator(d, 0));
    rep.check("family.c.conjugate", back == rhs, "pi_d([r1^r0, b1]^r0) = [a_1, a_{d-1}]",
              back == rhs ? "" : back.portrait());
  }
  // (d) beta = alpha_{0X^{d-4}} + alpha_{0X^{d-3}} + alpha_{1X^{d-2}} vanishes
  {
    const LevelSet beta = prefixed_levels(d, Word(1, 0), {d - 3})
                              .symmetric_difference(prefixed_levels(d, Word(1, 0), {d - 2}))
                              .symmetric_difference(prefixed_levels(d, Word(1, 1), {d - 1}));
    std::string bad;
    for (const std::string& g : gens)
      if (alpha_sum(aut.state_element(g, d), beta)) bad += g + " ";
    rep.check("family.d", bad.empty(), "beta trivial on every generator", bad);
    // Same shape with the middle term under 1: vanishes on the generators and
    // is a homomorphism on P_J, so it bounds H(d) inside an index-2 subgroup.
    const LevelSet beta1 = prefixed_levels(d, Word(1, 0), {d - 3})
                               .symmetric_difference(prefixed_levels(d, Word(1, 1), {d - 2}))
                               .symmetric_difference(prefixed_levels(d, Word(1, 1), {d - 1}));
    std::string bad1;
    for (const std::string& g : gens)
      if (alpha_sum(aut.state_element(g, d), beta1)) bad1 += g + " ";
    const ConstraintPatternGroup pj = ker_alpha(d, {d - 3, d - 2, d - 1});
    const bool hom = functional_is_homomorphism(pj, beta1);
    rep.check("family.d.corrected", bad1.empty() && hom,
              "alpha_{0X^{d-4}} + alpha_{1X^{d-3}} + alpha_{1X^{d-2}} is a homomorphism on P_J "
              "trivial on every generator",
              bad1 + (hom ? "" : "not a homomorphism on P_J"));
  }
  // (e) [G(d) : H(d)] = 4, H(d) essential, Hdim = 1 - 2/2^{d-1}
  {
    const GroupSet h = close(gen_elements(d), d);
    const bool index4 = h.log2_order() + 2 == portrait_size(d);
    const bool essential = is_essential(h).essential;
    const std::size_t a = level_stabilizer(h, d - 1).log2_order();
    const std::size_t expected = (std::size_t{1} << (d - 1)) - 2;
    const std::string hdim = std::to_string(a) + "/2^" + std::to_string(d - 1);
    rep.set("H(d).order", h.order().str());
    rep.set("hdim", HdimResult{a, d - 1}.reduced());
    rep.check("family.e", index4 && essential && a == expected,
              "index 4, essential, Hdim = " + hdim);
  }
  // (f) the b_j generate an elementary abelian group (checked to depth N)
  {
    std::string bad;
    for (int i = 0; i < 3; ++i) {
      if (!el(words({b(i), b(i)}), check_depth).is_identity()) bad += b(i) + "^2 ";
      for (int j = i + 1; j < 3; ++j)
        if (!el(comm(words({b(i)}), words({b(j)})), check_depth).is_identity())
          bad += "[" + b(i) + "," + b(j) + "] ";
    }
    rep.check("family.f", bad.empty(),
              "b_j^2 and [b_i, b_j] trivial to depth " + std::to_string(check_depth), bad);
  }
  // (g) branch identities, delta_x(h) truncated to depth N
  {
    const int n = check_depth;
    auto delta = [&](int x, const GroupWord& w) {
      return embed_branch(n, Word(1, static_cast<std::uint64_t>(x)), el(w, n - 1));
    };
    std::string bad;
    int checked = 0;
    auto expect = [&](const GroupWord& lhs, const Element& rhs) {
      ++checked;
      if (el(lhs, n) != rhs) bad += format_group_word(lhs) + "; ";
    };
    const GroupWord r0 = words({"r0"});
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j)
        expect(comm(words({r(i + 1)}), words({r(j + 1)})),
               delta(0, comm(words({r(i)}), words({r(j)}))));
      expect(comm(words({r(i + 1)}), words({"b0"})), delta(0, comm(words({r(i)}), words({r(k)}))));
      for (int t = 0; t < 3; ++t)
        expect(comm(conj(words({r(i + 1)}), r0), words({b(t)})),
               delta(1, comm(words({r(i)}), words({b(t + 1)}))));
    }
    const Element rk_top = delta(0, comm(words({r(k - 1)}), words({r(k)})));
    expect(comm(words({r(k)}), words({"b0"})), rk_top);
    expect(comm(words({r(k)}), words({"b1"})), rk_top);
    expect(comm(words({r(k)}), words({"b2"})), Element(n));
    expect(comm(words({"b1"}), conj(words({"b0"}), r0)),
           delta(0, comm(words({r(k)}), words({"b1"}))));
    rep.check("family.g", bad.empty(),
              std::to_string(checked) + " branch identities hold to depth " + std::to_string(n),
              bad);
  }
  // (h) self-replication: a level-1 stabilizing word with section g at 0 (and
  // its r0-conjugate with section g at 1) for every generator g
  {
    const int n = check_depth;
    std::vector<std::pair<std::string, GroupWord>> wit;
    for (int i = 0; i < k; ++i) wit.push_back({r(i), words({r(i + 1)})});
    wit.push_back({r(k), words({"b0"})});
    for (int t = 0; t < 3; ++t) wit.push_back({b(t), conj(words({b(t - 1)}), words({"r0"}))});
    std::string bad;
    for (const auto& [g, w] : wit) {
      const Element target = aut.state_element(g, n - 1);
      for (int x = 0; x < 2; ++x) {
        const Element e = el(x == 0 ? w : conj(w, words({"r0"})), n);
        const bool ok = !e.label_at(0) && section(e, Word(1, static_cast<std::uint64_t>(x))) == target;
        if (!ok) bad += g + "@" + std::to_string(x) + " ";
      }
    }
    rep.check("family.h", bad.empty(),
              "every generator is a section of a level-1 stabilizer element, both letters", bad);
  }
  return rep;
}

}  // namespace fcg
