#include "doctest.h"

#include "fcg/automata.hpp"
#include "fcg/errors.hpp"
#include "fcg/group.hpp"

using namespace fcg;

namespace {

// Wreath recursion read back from the quotient: root label and both sections.
void check_recursion(const Automaton& a, int depth) {
  for (const AutomatonState& s : a.states()) {
    const Element e = a.state_element(s.name, depth);
    CHECK(e.label_at(0) == s.active);
    CHECK(section(e, Word(1, 0)) == a.state_element(s.succ0, depth - 1));
    CHECK(section(e, Word(1, 1)) == a.state_element(s.succ1, depth - 1));
  }
}

}  // namespace

TEST_CASE("builtin automata have the expected states") {
  const Automaton g = builtin_automaton("grigorchuk");
  CHECK(g.states().size() == 5);
  CHECK(g.trivial() == "e");
  for (int k = 1; k <= 3; ++k) CHECK(builtin_automaton("family", k).states().size() == k + 5);
  CHECK_THROWS_AS(builtin_automaton("nope"), DomainError);
  CHECK_THROWS_AS(builtin_automaton("family", 0), DomainError);
}

TEST_CASE("state quotients follow the wreath recursion") {
  for (int n = 2; n <= 8; ++n) {
    check_recursion(builtin_automaton("grigorchuk"), n);
    check_recursion(builtin_automaton("family", 1), n);
    check_recursion(builtin_automaton("family", 2), n);
  }
}

TEST_CASE("malformed automata are rejected") {
  CHECK_THROWS_AS(Automaton({{"e", false, "e", "e"}, {"a", true, "e", "x"}}, "e"), DomainError);
  CHECK_THROWS_AS(Automaton({{"e", true, "e", "e"}}, "e"), DomainError);
  CHECK_THROWS_AS(Automaton({{"e", false, "e", "e"}}, "z"), DomainError);
}

TEST_CASE("grigorchuk relations hold in every quotient up to depth 8") {
  const Automaton g = builtin_automaton("grigorchuk");
  for (int n = 1; n <= 8; ++n) {
    for (const char* w : {"aa", "bb", "cc", "dd", "bcd"}) {
      INFO(w << " at depth " << n);
      CHECK(word_to_element(g, parse_group_word(g, w), n).is_identity());
    }
    // (ad)^4 = 1
    CHECK(word_to_element(g, parse_group_word(g, "adadadad"), n).is_identity());
  }
}

TEST_CASE("family images at depth d-1") {
  const Automaton f = builtin_automaton("family", 1);
  // d = 5: b1 -> a_2 and b2^r0 -> a_3 on four levels
  CHECK(f.state_element("b1", 4) == generator(4, 2));
  CHECK(word_to_element(f, {"r0", "b2", "r0"}, 4) == generator(4, 3));
  CHECK(f.state_element("r0", 4) == generator(4, 0));
  CHECK(f.state_element("r1", 4) == generator(4, 1));
}

TEST_CASE("support of b0") {
  const Automaton f = builtin_automaton("family", 1);
  const LevelSet s = support_to_depth(f, "b0", 9);
  CHECK(s.to_string() == "00,100,11100,111100,11111100");
}

TEST_CASE("word parsing") {
  const Automaton g = builtin_automaton("grigorchuk");
  CHECK(parse_group_word(g, "abac") == GroupWord{"a", "b", "a", "c"});
  CHECK(parse_group_word(g, "a, b d") == GroupWord{"a", "b", "d"});
  CHECK(parse_group_word(g, "").empty());
  const Automaton f = builtin_automaton("family", 2);
  CHECK(parse_group_word(f, "r0 b1 r2") == GroupWord{"r0", "b1", "r2"});
  CHECK_THROWS_AS(parse_group_word(f, "r0 q"), DomainError);
  CHECK(format_group_word({"r0", "b1"}) == "r0 b1");
}

TEST_CASE("word sections agree with element sections") {
  for (const char* name : {"grigorchuk", "family"}) {
    const Automaton a = builtin_automaton(name, 1);
    std::vector<std::string> names;
    for (const auto& s : a.states()) names.push_back(s.name);
    // every word of length 3 over the states
    for (std::size_t x = 0; x < names.size(); ++x)
      for (std::size_t y = 0; y < names.size(); ++y)
        for (std::size_t z = 0; z < names.size(); ++z) {
          const GroupWord w{names[x], names[y], names[z]};
          const Element e = word_to_element(a, w, 7);
          for (const char* u : {"0", "1", "01", "110"}) {
            const Word wu = Word::from_string(u);
            CHECK(word_to_element(a, word_section(a, w, wu), 7 - wu.length()) == section(e, wu));
          }
        }
  }
}

TEST_CASE("grigorchuk level quotients") {
  const Automaton g = builtin_automaton("grigorchuk");
  std::vector<Element> gens;
  for (const char* s : {"a", "b", "c", "d"}) gens.push_back(g.state_element(s, 4));
  const GroupSet q = close(gens, 4);
  CHECK(q.log2_order() == 12);
  CHECK(level_stabilizer(q, 3).log2_order() == 5);
  CHECK(is_essential(q).essential);
  // |G/St(n)| = 2^{5 * 2^{n-3} + 2}
  for (int n = 3; n <= 7; ++n) {
    std::vector<Element> gn;
    for (const char* s : {"a", "b", "c", "d"}) gn.push_back(g.state_element(s, n));
    CHECK(close(gn, n).log2_order() == 5u * (1u << (n - 3)) + 2);
  }
}

TEST_CASE("family report") {
  // (c) and (d) are checked exactly as stated and do not hold; their
  // corrected forms do.
  for (int k = 1; k <= 2; ++k) {
    const VerificationReport rep = family_report(k, k == 1 ? 9 : 8);
    INFO(render(rep, OutputFormat::text));
    CHECK(rep.claims.size() == 10);
    for (const char* id : {"family.a", "family.b", "family.c.conjugate", "family.d.corrected",
                           "family.e", "family.f", "family.g", "family.h"}) {
      REQUIRE(rep.claim(id));
      CHECK(rep.claim(id)->status == ClaimStatus::pass);
    }
    CHECK(rep.claim("family.c")->status == ClaimStatus::fail);
    CHECK(rep.claim("family.d")->status == ClaimStatus::fail);
  }
  const VerificationReport rep = family_report(1);
  CHECK(rep.value("hdim") == "7/8");
  CHECK(rep.value("H(d-1).order") == "32768");
  CHECK(rep.value("H(d).order") == "536870912");  // 2^29
  CHECK(rep.claim("family.d")->witness == "b0 b2 ");
  CHECK_THROWS_AS(family_report(1, 4), DomainError);
  CHECK_THROWS_AS(family_report(0), DomainError);
}

TEST_CASE("report rendering") {
  VerificationReport rep;
  rep.title = "t";
  rep.set("x", "1");
  rep.check("ok", true, "fine");
  rep.check("bad", false, "broken", "w");
  rep.skip("later", "not run");
  CHECK_FALSE(rep.passed());
  const std::string kv = render(rep, OutputFormat::kv);
  CHECK(kv.find("claim.bad.status=fail\n") != std::string::npos);
  CHECK(kv.find("claim.bad.witness=w\n") != std::string::npos);
  CHECK(kv.find("timing") == std::string::npos);
  CHECK(kv.find("result=fail\n") != std::string::npos);
  const std::string js = render(rep, OutputFormat::json);
  CHECK(js.find("\"result\": \"fail\"") != std::string::npos);
  rep.claims[0].seconds = 0.5;
  CHECK(render(rep, OutputFormat::kv).find("claim.ok.timing=0.500") != std::string::npos);
}
