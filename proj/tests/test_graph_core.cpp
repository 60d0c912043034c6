#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ttrose/edge_path.hpp"
#include "ttrose/error.hpp"

using namespace ttrose;

namespace {
EdgePath P(const char* s, int r = 3) { return EdgePath::parse(r, s); }
}  // namespace

TEST_SUITE("graph-core") {
  TEST_CASE("letters and codes") {
    CHECK(letter_from_char('a', 3) == OrientedEdge{1, false});
    CHECK(letter_from_char('C', 3) == OrientedEdge{3, true});
    CHECK_THROWS_AS(letter_from_char('d', 3), ParseError);
    for (int c = 0; c < 10; ++c) CHECK(OrientedEdge::from_code(c).code() == c);
    CHECK(to_char(OrientedEdge{2, true}) == 'B');
  }

  TEST_CASE("reverse") {
    CHECK(reverse(P("")).empty());
    CHECK(reverse(P("ac")) == P("CA"));
    CHECK(reverse(P("aBa")) == P("AbA"));
    CHECK(reverse(reverse(P("abCCbA"))) == P("abCCbA"));
  }

  TEST_CASE("tighten") {
    CHECK(tighten(P("aA")).empty());
    CHECK(tighten(P("abBAc")) == P("c"));
    CHECK(tighten(P("ac")) == P("ac"));
    CHECK(P("abBA").is_tight() == false);
  }

  TEST_CASE("tighten matches any-order deletion") {
    std::mt19937_64 rng(11);
    const std::string alphabet = "aAbBcC";
    for (int trial = 0; trial < 300; ++trial) {
      std::string w;
      const int n = static_cast<int>(rng() % 24);
      for (int i = 0; i < n; ++i) w += alphabet[rng() % alphabet.size()];
      const auto t = tighten(P(w.c_str()));
      CHECK(t.str() == oracle::tighten_any_order(w, rng()));
      CHECK(t.is_tight());
      CHECK(tighten(t) == t);
      CHECK((w.size() - t.size()) % 2 == 0);
    }
  }

  TEST_CASE("turns_of") {
    const Direction a{1, false}, A{1, true}, b{2, false}, B{2, true}, c{3, false}, C{3, true};
    CHECK(turns_of(P("ab")) == TurnSet{Turn(A, b)});
    CHECK(turns_of(P("abcc")) == TurnSet{Turn(A, b), Turn(B, c), Turn(C, c)});
    CHECK(turns_of(P("a")).empty());
    CHECK(turns_of(reverse(P("abCbb"))) == turns_of(P("abCbb")));
    CHECK(Turn(b, a) == Turn(a, b));
    CHECK(Turn(a, a).degenerate());
  }
}
