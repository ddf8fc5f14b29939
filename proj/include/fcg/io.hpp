#pragma once

// Text formats. All of them are line based, '#' starts a comment, and a
// leading "depth=<d>" header fixes the depth.
//
//   group file      generators: / elements: sections of portraits ("0|10|0000");
//                   portraits before any marker count as generators
//   pattern file    "constraint=w,w,..." lines (the empty word is "e"), or
//                   portraits as in a group file
//   automaton file  "state <name> <activity 0|1> <succ0> <succ1>" lines and an
//                   optional "trivial <name>"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fcg/automata.hpp"
#include "fcg/group.hpp"
#include "fcg/pattern_groups.hpp"

namespace fcg {

/// Whole file, or standard input for "-". Throws DomainError when unreadable.
std::string read_text(const std::string& path);

struct GroupFile {
  int depth = 0;
  std::vector<Element> generators;
  std::optional<std::vector<Element>> elements;
};
GroupFile parse_group_file(std::string_view text);
/// The group of a parsed file; an elements section must be closed and, when
/// generators are also given, generate the same group.
GroupSet to_group(const GroupFile& f);
std::string format_group_file(const GroupSet& g, bool with_elements = false,
                              std::uint64_t cap = std::uint64_t{1} << 16);

struct PatternInput {
  int depth = 0;
  std::optional<ConstraintPatternGroup> constraints;  // set for constraint files
  GroupSet group;
};
PatternInput parse_pattern_file(std::string_view text, const Caps& caps = {});
std::string format_pattern_file(const ConstraintPatternGroup& p);

/// Comma separated words, "e" for the empty word.
LevelSet parse_word_list(int depth, std::string_view text);

Automaton parse_automaton_file(std::string_view text);
std::string format_automaton_file(const Automaton& a);

}  // namespace fcg
