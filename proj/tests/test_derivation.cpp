#include <doctest.h>

#include "formal/derivation.hpp"
#include "formal/string_system.hpp"
#include "generators.hpp"

using namespace formal;

namespace {

const char* const kThreePlusOne =
    "kind: word\n"
    "init: 11↑=11↑\n"
    "step: one-up @ 5+2\n"
    "to: 11↑=1↑0\n"
    "step: one-up @ 4+2\n"
    "to: 11↑=↑00\n"
    "step: eq-up @ 3+2\n"
    "to: 11↑=100\n";

WordDerivation three_plus_one() {
  WordDerivation d(Word(U"11↑=11↑"));
  d.push({"one-up", Span{5, 2}, {}}, Word(U"11↑=1↑0"));
  d.push({"one-up", Span{4, 2}, {}}, Word(U"11↑=↑00"));
  d.push({"eq-up", Span{3, 2}, {}}, Word(U"11↑=100"));
  return d;
}

std::vector<std::string> arrangement_lines(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    std::string line = text.substr(start, nl - start);
    if (line.rfind("init: ", 0) == 0) out.push_back(line.substr(6));
    if (line.rfind("to: ", 0) == 0) out.push_back(line.substr(4));
    start = nl == std::string::npos ? text.size() : nl + 1;
  }
  return out;
}

}  // namespace

TEST_CASE("symbols and alphabets") {
  CHECK_THROWS_AS(Symbol(U' '), std::invalid_argument);
  CHECK_THROWS_AS(Symbol(U'\n'), std::invalid_argument);
  CHECK(Symbol(kUpArrow).str() == "↑");
  CHECK(parse_symbol("^") == Symbol(kUpArrow));
  CHECK_THROWS_AS(Alphabet(std::vector<Symbol>{}), std::invalid_argument);
  CHECK_THROWS_AS((Alphabet{U'0', U'0'}), std::invalid_argument);
  Alphabet a{U'0', U'1'};
  CHECK(Word(U"0110").over(a));
  CHECK_FALSE(Word(U"012").over(a));
}

TEST_CASE("words accept the ASCII arrow") {
  CHECK(Word::from_text("11^=11^") == Word(U"11↑=11↑"));
  CHECK(Word::from_text("  100 ") == Word(U"100"));
  CHECK_THROWS_AS(Word::from_text("1 0"), SyntaxError);
  CHECK(Word(U"11↑").str() == "11↑");
}

TEST_CASE("positions") {
  CHECK(Span::parse("5+2") == Span{5, 2});
  CHECK(Span{3, 2}.str() == "3+2");
  CHECK_THROWS_AS(Span::parse("5-2"), SyntaxError);
  CHECK_THROWS_AS(Span::parse("5+0"), SyntaxError);
  CHECK_THROWS_AS(Span::parse("x+1"), SyntaxError);
  CHECK(Path::parse("ε").empty());
  CHECK(Path::parse("LLR").str() == "LLR");
  CHECK(Path{}.str() == "ε");
  CHECK_THROWS_AS(Path::parse("LXR"), SyntaxError);
}

TEST_CASE("serialize the 3 + 1 transcript") {
  const auto text = serialize_derivation(three_plus_one());
  CHECK(text == kThreePlusOne);
  const auto lines = arrangement_lines(text);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "11↑=11↑");
  CHECK(lines[1] == "11↑=1↑0");
  CHECK(lines[2] == "11↑=↑00");
  CHECK(lines[3] == "11↑=100");
}

TEST_CASE("zero-step derivation") {
  WordDerivation d(Word(U"0"));
  const auto text = serialize_derivation(d);
  CHECK(text == "kind: word\ninit: 0\n");
  CHECK(arrangement_lines(text).size() == 1);
  CHECK(std::get<WordDerivation>(parse_derivation(text, Kind::word)) == d);
}

TEST_CASE("parse the 3 + 1 transcript") {
  auto any = parse_derivation(kThreePlusOne, Kind::word);
  REQUIRE(std::holds_alternative<WordDerivation>(any));
  const auto& d = std::get<WordDerivation>(any);
  CHECK(d.size() == 3);
  CHECK(d == three_plus_one());
  CHECK(d.steps()[0].justification.position == Span{5, 2});
}

TEST_CASE("parse errors name the line") {
  const std::string bad =
      "kind: word\n"
      "init: 11↑=11↑\n"
      "step: one-up @ 5x2\n"
      "to: 11↑=1↑0\n";
  try {
    parse_derivation(bad, Kind::word);
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_derivation(kThreePlusOne, Kind::term), SyntaxError);
  CHECK_THROWS_AS(parse_derivation("kind: word\ninit: 0\nstep: r @ 0+1\n", Kind::word), SyntaxError);
  CHECK_THROWS_AS(parse_derivation("kind: tree\ninit: 0\n"), SyntaxError);
  CHECK_THROWS_AS(parse_derivation("init: 0\n"), SyntaxError);
  CHECK_THROWS_AS(parse_derivation("kind: term\ninit: S (K\n"), SyntaxError);
}

TEST_CASE("term transcript with substitutions") {
  TermDerivation d(parse_term("S K K a"));
  d.push({"rule2", Path{}, {{"x", Term::K()}, {"y", Term::K()}, {"z", Term::var("a")}}},
         parse_term("K a (K a)"));
  d.push({"rule1", Path{}, {{"x", Term::var("a")}, {"y", parse_term("K a")}}}, parse_term("a"));
  const auto text = serialize_derivation(d);
  CHECK(text ==
        "kind: term\n"
        "init: S K K a\n"
        "step: rule2 @ ε [x=K, y=K, z=a]\n"
        "to: K a (K a)\n"
        "step: rule1 @ ε [x=a, y=K a]\n"
        "to: a\n");
  CHECK(std::get<TermDerivation>(parse_derivation(text)) == d);
}

TEST_CASE("round trip: random word derivations") {
  testing::Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto d = testing::random_word_derivation(rng);
    const auto text = serialize_derivation(d);
    const auto back = parse_derivation(text, Kind::word);
    REQUIRE(std::get<WordDerivation>(back) == d);
    REQUIRE(serialize_derivation(back) == text);
    REQUIRE(std::get<WordDerivation>(derivation_from_json(derivation_to_json(d))) == d);
  }
}

TEST_CASE("round trip: random SK derivations") {
  testing::Rng rng(12);
  for (int i = 0; i < 300; ++i) {
    const auto d = testing::random_term_derivation(rng, 14, 10, {"a", "b", "xy"});
    const auto text = serialize_derivation(d);
    const auto back = parse_derivation(text, Kind::term);
    REQUIRE(std::get<TermDerivation>(back) == d);
    REQUIRE(serialize_derivation(back) == text);
    REQUIRE(std::get<TermDerivation>(derivation_from_json(derivation_to_json(d))) == d);
  }
}

TEST_CASE("JSON mirror field names") {
  const auto j = derivation_to_json(three_plus_one());
  CHECK(j["kind"] == "word");
  CHECK(j["init"] == "11↑=11↑");
  REQUIRE(j["steps"].size() == 3);
  CHECK(j["steps"][0]["rule"] == "one-up");
  CHECK(j["steps"][0]["pos"] == "5+2");
  CHECK(j["steps"][0]["subst"].is_object());
  CHECK(j["steps"][2]["to"] == "11↑=100");
}

TEST_CASE("verdict text") {
  CHECK(Verdict::reject(2, RejectReason::result_mismatch).str() == "step 2: result mismatch");
  CHECK(Verdict::accept().str() == "accept");
  CHECK(Verdict::reject(0, RejectReason::axiom_violation).to_json()["reason"] == "axiom-violation");
}
