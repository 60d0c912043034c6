#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "support.hpp"
#include "ttrose/error.hpp"
#include "ttrose/family.hpp"
#include "ttrose/rose_map.hpp"
#include "ttrose/spectral.hpp"
#include "ttrose/turns.hpp"

using namespace ttrose;

namespace {
Direction Xb(int i) { return {i, true}; }
}  // namespace

TEST_SUITE("family") {
  TEST_CASE("elementary generators") {
    CHECK(gen_elementary(3, 1) == RoseMap::parse("rank:3\na -> ac\nb -> b\nc -> c"));
    for (int r = 3; r <= 5; ++r) {
      for (int k = 1; k <= 12; ++k) {
        CHECK(norm(gen_elementary(r, k)) == r + 1);
        if (k > 6) CHECK(gen_elementary(r, k) == gen_elementary(r, k - 6));
      }
      CHECK(prenull_turns(gen_elementary(r, 7)) == TurnSet{Turn(Xb(1), Xb(r))});
      CHECK(prenull_turns(gen_elementary(r, 2)) == TurnSet{Turn(Xb(1), Xb(r))});
      CHECK(prenull_turns(gen_elementary(r, 4)) == TurnSet{Turn(Xb(r - 1), Xb(r))});
      CHECK(prenull_turns(gen_elementary(r, 5)) == TurnSet{Turn(Xb(1), Xb(r - 1))});
      CHECK_NOTHROW(family_self_check(r));
    }
    CHECK_THROWS_AS(gen_elementary(2, 1), PreconditionError);
    CHECK_THROWS_AS(gen_elementary(3, 13), PreconditionError);
  }

  TEST_CASE("g_{12,1}") {
    for (int r = 3; r <= 5; ++r) {
      const auto g = gen_g12_1(r);
      const auto dg = direction_map(g);
      for (int c = 0; c < 2 * r; ++c) {
        const auto d = Direction::from_code(c);
        CHECK(dg(d) == (d == Xb(1) ? Xb(r) : d));
      }
      // Every image of x1, x_{r-1}, x_r crosses all three; x2..x_{r-2} are fixed.
      const auto m = transition_matrix(g);
      for (const int i : {1, r - 1, r})
        for (const int j : {1, r - 1, r}) CHECK(m(i - 1, j - 1) > 0);
      for (int i = 2; i <= r - 2; ++i) CHECK(g.image(i) == EdgePath(r, {OrientedEdge{i, false}}));
      if (r == 3) CHECK((m.array() > 0).all());
    }
  }

  TEST_CASE("g_w") {
    const auto w = wrap_word(3, parse_word("23322"));
    CHECK(word_string(w) == "2233222");
    CHECK(gen_gw(3, w) == RoseMap::parse("rank:3\na -> b\nb -> c\nc -> abbccbbb"));
    CHECK(norm(gen_gw(3, w)) == 3 + 7);
    CHECK_THROWS_WITH_AS(gen_gw(3, parse_word("2222")), doctest::Contains("full"), PreconditionError);
    CHECK_THROWS_WITH_AS(gen_gw(3, parse_word("22333")), doctest::Contains("end"), PreconditionError);
    CHECK_THROWS_WITH_AS(gen_gw(4, parse_word("2233442")), doctest::Contains("start"), PreconditionError);
  }

  TEST_CASE("full words") {
    CHECK(enumerate_full_words(3, 4).empty());
    std::vector<std::string> five;
    for (const auto& w : enumerate_full_words(3, 5)) five.push_back(word_string(w));
    CHECK(std::set<std::string>(five.begin(), five.end()) ==
          std::set<std::string>{"22332", "23322", "33223", "32233"});
    for (int r = 3; r <= 4; ++r)
      for (int n = 1; n <= (r == 3 ? 11 : 10); ++n) {
        std::vector<std::string> expected;
        for (const auto& w : oracle::all_words(r, n))
          if (oracle::is_full(r, w)) expected.push_back(w);
        std::vector<std::string> got;
        for (const auto& w : enumerate_full_words(r, n)) got.push_back(word_string(w));
        CHECK(got == expected);
      }
    CHECK(enumerate_full_words(4, 9).empty());
    CHECK_FALSE(enumerate_full_words(4, 10).empty());
  }

  TEST_CASE("sampling") {
    const auto a = sample_full_words(3, 9, 50, 42);
    const auto b = sample_full_words(3, 9, 50, 42);
    CHECK(a == b);
    CHECK(a.size() == 50);
    for (const auto& w : a) CHECK(oracle::is_full(3, word_string(w)));
    CHECK(sample_full_words(3, 9, 50, 43) != a);
    CHECK(sample_full_words(3, 4, 5, 1, 1000).empty());
  }

  TEST_CASE("full fraction grows with length") {
    double prev = 0;
    for (int n = 5; n <= 12; ++n) {
      const double frac = static_cast<double>(enumerate_full_words(3, n).size()) / static_cast<double>(1L << n);
      CHECK(frac > prev);
      prev = frac;
    }
  }

  TEST_CASE("family maps") {
    const auto k = norm(gen_g12_1(3));
    for (const auto& z : enumerate_full_words(3, 7)) {
      const auto w = wrap_word(3, z);
      const auto f = build_family_map(3, w);
      CHECK(f.is_positive());
      CHECK(is_train_track(f));
      CHECK(is_primitive(transition_matrix(f)));
      CHECK(norm(f) <= k * static_cast<long>(w.size() + 3));
      CHECK(family_factors(3, w).size() == 13);
      CHECK(compose_all(family_factors(3, w)) == f);
    }
  }

  TEST_CASE("outer classes") {
    std::vector<Word> ws;
    for (const auto& z : enumerate_full_words(3, 5)) ws.push_back(wrap_word(3, z));
    CHECK_FALSE(distinct_outer_classes(ws[0], ws[0]));
    for (std::size_t i = 0; i < ws.size(); ++i)
      for (std::size_t j = i + 1; j < ws.size(); ++j) CHECK(distinct_outer_classes(ws[i], ws[j]));
    // x1 occurs once in x1 w, so only equal words are cyclically equal.
    CHECK(distinct_outer_classes(parse_word("2332"), parse_word("3322")));
  }

  TEST_CASE("certification") {
    for (int r = 3; r <= 5; ++r) {
      const auto z = some_full_word(r);
      const auto c = certify(r, wrap_word(r, z));
      CHECK(c.train_track);
      CHECK(c.expanding);
      CHECK(c.irreducible);
      CHECK(c.primitive);
      CHECK(c.lw_connected);
      CHECK(c.pnp_free);
      CHECK(c.cut_vertex_free);
      CHECK(c.ageometric_fully_irreducible);
      CHECK(c.lone_axis);
      REQUIRE(c.index);
      CHECK(*c.index == boost::rational<long>(3 - 2 * r, 2));
      REQUIRE(c.ideal);
      CHECK(c.ideal->vertices.size() == static_cast<std::size_t>(2 * r - 1));
      CHECK(c.lambda <= static_cast<double>(norm(c.map)));
    }
    const auto golden = certify_map(RoseMap::parse("rank:2\na -> b\nb -> ba"));
    CHECK(golden.fic_hypotheses);
    CHECK_FALSE(golden.pnp_free);
    CHECK(golden.inp);
    CHECK_FALSE(golden.ageometric_fully_irreducible);
    CHECK_FALSE(golden.lone_axis);
    const auto id = certify_map(RoseMap::identity(3));
    CHECK_FALSE(id.expanding);
    CHECK_FALSE(id.ageometric_fully_irreducible);
  }
}
