#pragma once

// Finite automata given by wreath recursions s = sigma^e (s_0, s_1), their
// depth-n quotients, and the checks run on the built-in family.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "fcg/group.hpp"
#include "fcg/report.hpp"
#include "fcg/tree.hpp"

namespace fcg {

struct AutomatonState {
  std::string name;
  bool active = false;
  std::string succ0, succ1;
};

class Automaton {
 public:
  /// Validates successor closure and the trivial state (inactive self-loop).
  Automaton(std::vector<AutomatonState> states, std::string trivial);

  const std::vector<AutomatonState>& states() const noexcept { return states_; }
  const std::string& trivial() const noexcept { return trivial_; }
  std::size_t index_of(std::string_view name) const;
  bool has_state(std::string_view name) const;

  /// Depth-n quotient of a state; memoized on (state, depth).
  Element state_element(std::size_t state, int depth) const;
  Element state_element(std::string_view name, int depth) const {
    return state_element(index_of(name), depth);
  }

 private:
  std::vector<AutomatonState> states_;
  std::string trivial_;
  std::vector<std::size_t> succ0_, succ1_;
  struct Memo;
  std::shared_ptr<Memo> memo_;
};

/// "grigorchuk" (states a, b, c, d, trivial e) or "family" with parameter k
/// (states r0..rk, b0, b1, b2, trivial e).
Automaton builtin_automaton(std::string_view name, int k = 1);

/// A product of states, leftmost factor applied last.
using GroupWord = std::vector<std::string>;

/// Splits on whitespace or commas; a single token made only of one-letter
/// state names is read letter by letter ("abac").
GroupWord parse_group_word(const Automaton& a, std::string_view text);
std::string format_group_word(const GroupWord& w);

Element word_to_element(const Automaton& a, const GroupWord& word, int depth);
/// Section of the word's element at w, as a word (trivial letters dropped).
GroupWord word_section(const Automaton& a, const GroupWord& word, const Word& w);
/// Subgroup of G(depth) generated by the quotients of all states.
GroupSet quotient_group(const Automaton& a, int depth);
/// Words of length < depth where the state has nonzero activity.
LevelSet support_to_depth(const Automaton& a, std::string_view state, int depth);

/// Checks (a)-(h) on family(k) with pattern depth d = k + 4; identities
/// that hold in the infinite group are checked up to depth `check_depth`.
VerificationReport family_report(int k, int check_depth = 8);

}  // namespace fcg
