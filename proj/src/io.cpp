#include "fcg/io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <boost/algorithm/string.hpp>

#include "fcg/errors.hpp"

namespace fcg {

namespace {

struct Line {
  int number;
  std::string text;
};

// Non-empty lines with comments and surrounding blanks removed.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    boost::algorithm::trim(raw);
    if (!raw.empty()) out.push_back({n, raw});
  }
  return out;
}

[[noreturn]] void fail(const Line& l, const std::string& what) {
  throw DomainError("line " + std::to_string(l.number) + ": " + what);
}

// "depth=<d>" must open the file.
int read_depth(const std::vector<Line>& lines) {
  if (lines.empty()) throw DomainError("empty input: expected depth=<d>");
  const Line& l = lines.front();
  if (!boost::algorithm::starts_with(l.text, "depth=")) fail(l, "expected depth=<d>");
  try {
    std::size_t used = 0;
    const std::string v = l.text.substr(6);
    const int d = std::stoi(v, &used);
    if (used != v.size() || d < 1) fail(l, "bad depth '" + v + "'");
    return d;
  } catch (const std::logic_error&) {
    fail(l, "bad depth '" + l.text.substr(6) + "'");
  }
}

Element read_portrait(const Line& l, int depth) {
  Element e;
  try {
    e = Element::from_portrait(l.text);
  } catch (const DomainError& ex) {
    fail(l, ex.what());
  }
  if (e.depth() != depth)
    fail(l, "portrait has depth " + std::to_string(e.depth()) + ", header says " +
                std::to_string(depth));
  return e;
}

}  // namespace

std::string read_text(const std::string& path) {
  if (path == "-")
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

GroupFile parse_group_file(std::string_view text) {
  const std::vector<Line> lines = content_lines(text);
  GroupFile f;
  f.depth = read_depth(lines);
  bool in_elements = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.text == "generators:") {
      in_elements = false;
    } else if (l.text == "elements:") {
      in_elements = true;
      if (!f.elements) f.elements.emplace();
    } else if (in_elements) {
      f.elements->push_back(read_portrait(l, f.depth));
    } else {
      f.generators.push_back(read_portrait(l, f.depth));
    }
  }
  return f;
}

GroupSet to_group(const GroupFile& f) {
  if (!f.elements) return close(f.generators, f.depth);
  GroupSet g = group_from_elements(*f.elements, f.depth);
  if (!f.generators.empty() && !(close(f.generators, f.depth) == g))
    throw DomainError("generators and elements describe different groups");
  return g;
}

std::string format_group_file(const GroupSet& g, bool with_elements, std::uint64_t cap) {
  std::ostringstream out;
  out << "depth=" << g.depth() << "\ngenerators:\n";
  for (const Element& e : g.pcgs()) out << e.portrait() << '\n';
  if (with_elements) {
    out << "elements:\n";
    for (const Element& e : g.elements(cap)) out << e.portrait() << '\n';
  }
  return out.str();
}

LevelSet parse_word_list(int depth, std::string_view text) {
  std::vector<std::string> parts;
  boost::algorithm::split(parts, text, boost::algorithm::is_any_of(","));
  LevelSet s(depth);
  for (std::string& p : parts) {
    boost::algorithm::trim(p);
    if (p.empty()) continue;
    const Word w = Word::from_string(p);
    if (w.length() >= depth)
      throw DomainError("word '" + p + "' is too long for depth " + std::to_string(depth));
    s.insert(w);
  }
  return s;
}

PatternInput parse_pattern_file(std::string_view text, const Caps& caps) {
  const std::vector<Line> lines = content_lines(text);
  PatternInput in;
  in.depth = read_depth(lines);
  std::vector<LevelSet> constraints;
  std::string portraits = "depth=" + std::to_string(in.depth) + "\n";
  bool has_portraits = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (boost::algorithm::starts_with(l.text, "constraint=")) {
      try {
        constraints.push_back(parse_word_list(in.depth, l.text.substr(11)));
      } catch (const DomainError& ex) {
        fail(l, ex.what());
      }
      if (constraints.back().empty()) fail(l, "empty constraint");
    } else {
      portraits += l.text + '\n';
      has_portraits = true;
    }
  }
  if (!constraints.empty() && has_portraits)
    throw DomainError("pattern file mixes constraints and portraits");
  if (!constraints.empty()) {
    in.constraints = make_constraint_group(in.depth, std::move(constraints), caps);
    in.group = in.constraints->group();
  } else {
    if (!has_portraits) throw DomainError("pattern file lists neither constraints nor portraits");
    in.group = to_group(parse_group_file(portraits));
  }
  return in;
}

std::string format_pattern_file(const ConstraintPatternGroup& p) {
  std::ostringstream out;
  out << "depth=" << p.depth() << '\n';
  for (const LevelSet& c : p.constraints()) out << "constraint=" << c.to_string() << '\n';
  return out.str();
}

Automaton parse_automaton_file(std::string_view text) {
  std::vector<AutomatonState> states;
  std::optional<std::string> trivial;
  for (const Line& l : content_lines(text)) {
    std::vector<std::string> tok;
    boost::algorithm::split(tok, l.text, boost::algorithm::is_space(),
                            boost::algorithm::token_compress_on);
    if (tok[0] == "trivial" && tok.size() == 2) {
      trivial = tok[1];
    } else if (tok[0] == "state" && tok.size() == 5 && (tok[2] == "0" || tok[2] == "1")) {
      states.push_back({tok[1], tok[2] == "1", tok[3], tok[4]});
    } else {
      fail(l, "expected 'state <name> <0|1> <succ0> <succ1>' or 'trivial <name>'");
    }
  }
  if (!trivial) {
    // the first inactive state looping to itself on both letters
    for (const AutomatonState& s : states)
      if (!s.active && s.succ0 == s.name && s.succ1 == s.name) {
        trivial = s.name;
        break;
      }
    if (!trivial) throw DomainError("automaton has no trivial state");
  }
  return Automaton(std::move(states), *trivial);
}

std::string format_automaton_file(const Automaton& a) {
  std::ostringstream out;
  for (const AutomatonState& s : a.states())
    out << "state " << s.name << ' ' << (s.active ? 1 : 0) << ' ' << s.succ0 << ' ' << s.succ1
        << '\n';
  out << "trivial " << a.trivial() << '\n';
  return out.str();
}

}  // namespace fcg
