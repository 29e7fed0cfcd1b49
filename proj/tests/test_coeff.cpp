#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"

using namespace picturecalc;

TEST_CASE("group laws by hand", "[coeff]") {
  auto F = GroupSpec::free_rank(2);
  auto g = F.generator(0);
  CHECK(coeff_multiply(g, coeff_invert(g)).is_identity());

  auto C2  = GroupSpec::cyclic(2);
  auto one = C2.residue(1);
  CHECK(coeff_multiply(one, one) == C2.residue(0));

  CHECK(coeff_invert(F.identity()).is_identity());
  auto g1g2 = F.parse("R1.R2");
  CHECK(F.format(coeff_invert(g1g2)) == "R2^-1.R1^-1");
  auto C5 = GroupSpec::cyclic(5);
  CHECK(coeff_invert(C5.residue(2)) == C5.residue(3));
}

TEST_CASE("mixing groups is an error", "[coeff]") {
  auto a = GroupSpec::cyclic(2).residue(1);
  auto b = GroupSpec::cyclic(3).residue(1);
  CHECK_THROWS_AS(coeff_multiply(a, b), MismatchError);
  CHECK_THROWS_AS(GroupSpec::cyclic(2).format(b), MismatchError);
}

TEST_CASE("element parsing", "[coeff]") {
  auto F = GroupSpec::free_rank(2);
  CHECK(F.parse("1").is_identity());
  CHECK(F.parse("R1.R1^-1").is_identity());
  auto w = F.parse("R2.R2.R1^-1");
  CHECK(w.word() == oracle::free_reduce({2, 2, -1}));
  CHECK(w.word().size() == 3);
  CHECK_THROWS_AS(F.parse("R3"), ParseError);
  CHECK_THROWS_AS(F.parse("R1^-2"), ParseError);
  CHECK_THROWS_AS(F.parse("R1..R2"), ParseError);
  CHECK(GroupSpec::cyclic(4).parse("3") == GroupSpec::cyclic(4).residue(3));
}

TEST_CASE("group specs round-trip through text", "[coeff]") {
  for (auto text : {"trivial", "cyclic:2", "cyclic:7", "free:R1,R2,R3"}) {
    CHECK(GroupSpec::from_string(text).to_string() == text);
  }
  CHECK(GroupSpec::from_string("free:2") == GroupSpec::free_rank(2));
  CHECK_THROWS_AS(GroupSpec::from_string("cyclic:1"), Error);
  CHECK_THROWS_AS(GroupSpec::from_string("dihedral:3"), ParseError);
}

TEST_CASE("free group products agree with stack reduction", "[coeff]") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> letter(-3, 3), len(0, 8);
  auto random_word = [&] {
    std::vector<std::int32_t> w;
    for (int i = len(rng); i > 0; --i) {
      int s = 0;
      while (s == 0) {
        s = letter(rng);
      }
      w.push_back(s);
    }
    return w;
  };
  for (int trial = 0; trial < 500; ++trial) {
    auto wa = random_word(), wb = random_word(), wc = random_word();
    auto a  = GroupElement::free(3, wa);
    auto b  = GroupElement::free(3, wb);
    auto c  = GroupElement::free(3, wc);
    auto ab = wa;
    ab.insert(ab.end(), wb.begin(), wb.end());
    CHECK((a * b).word() == oracle::free_reduce(ab));
    CHECK((a * b) * c == a * (b * c));
    CHECK((a * a.inverse()).is_identity());
  }
}

TEST_CASE("cyclic and trivial group axioms", "[coeff]") {
  for (std::int64_t k : {2, 3, 5, 6}) {
    auto G   = GroupSpec::cyclic(k);
    auto els = G.elements();
    REQUIRE(els.size() == static_cast<std::size_t>(k));
    for (auto const& a : els) {
      CHECK(a * G.identity() == a);
      CHECK((a * a.inverse()).is_identity());
      for (auto const& b : els) {
        CHECK(a * b == b * a);
        for (auto const& c : els) {
          CHECK((a * b) * c == a * (b * c));
        }
      }
    }
  }
  auto T = GroupSpec::trivial();
  CHECK(T.elements().size() == 1);
  CHECK(T.identity() * T.identity() == T.identity());
}

namespace {
  using oracle::RawWord;

  struct GpFixture {
    std::shared_ptr<ProductGraph const> graph;
    std::vector<std::pair<std::size_t, GroupElement>> letters;

    GpFixture() {
      // a path 0-1-2-3 plus the chord 0-2; two groups of order two, two free
      std::vector<GroupSpec> groups{GroupSpec::cyclic(2), GroupSpec::free_rank(1),
                                    GroupSpec::cyclic(2), GroupSpec::free_rank(1)};
      graph = std::make_shared<ProductGraph const>(
          groups, std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}, {2, 3}, {0, 2}});
      for (std::size_t v = 0; v < 4; ++v) {
        if (groups[v].is_finite()) {
          letters.emplace_back(v, groups[v].residue(1));
        } else {
          letters.emplace_back(v, groups[v].generator(0));
          letters.emplace_back(v, groups[v].generator(0, true));
        }
      }
    }

    GraphProductWord word(RawWord const& w) const {
      std::vector<Syllable> s;
      for (auto const& [v, g] : w) {
        s.push_back({v, g});
      }
      return GraphProductWord(graph, s);
    }
  };

  RawWord raw(GraphProductWord const& w) {
    RawWord out;
    for (auto const& s : w.syllables()) {
      out.emplace_back(s.vertex, s.element);
    }
    return out;
  }
}  // namespace

TEST_CASE("graph product moves by hand", "[coeff][graph_product]") {
  GpFixture f;
  auto      g  = GroupSpec::free_rank(1).generator(0);
  auto      gi = g.inverse();
  auto      c  = GroupSpec::cyclic(2).residue(1);
  CHECK(gp_reduce(f.word({{1, g}, {1, gi}})).size() == 0);
  // 1 and 2 commute: (1,g)(2,c)(1,g^-1) -> (2,c)
  auto r = gp_reduce(f.word({{1, g}, {2, c}, {1, gi}}));
  REQUIRE(r.size() == 1);
  CHECK(r.syllables()[0].vertex == 2);
  // 1 and 3 do not commute
  CHECK(gp_reduce(f.word({{1, g}, {3, g}, {1, gi}})).size() == 3);
  CHECK(gp_equal(f.word({{0, c}, {1, g}}), f.word({{1, g}, {0, c}})));
  CHECK_FALSE(gp_equal(f.word({{1, g}}), f.word({{3, g}})));
  CHECK_THROWS_AS(f.word({{7, g}}), Error);
}

TEST_CASE("head and support", "[coeff][graph_product]") {
  GpFixture f;
  auto      g = GroupSpec::free_rank(1).generator(0);
  auto      c = GroupSpec::cyclic(2).residue(1);
  // 1 and 3 are not adjacent
  auto hs = gp_head_support(f.word({{1, g}, {3, g}}));
  REQUIRE(hs.head.size() == 1);
  CHECK(hs.head[0].vertex == 1);
  CHECK(hs.support == std::vector<std::size_t>{1, 3});
  // 1 and 2 are adjacent
  auto ht = gp_head_support(f.word({{1, g}, {2, c}}));
  CHECK(ht.head.size() == 2);
}

TEST_CASE("head agrees with all shuffle-equivalent orderings", "[coeff][graph_product]") {
  GpFixture       f;
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, f.letters.size() - 1), len(1, 6);
  for (int trial = 0; trial < 300; ++trial) {
    RawWord w;
    for (auto n = len(rng); n > 0; --n) {
      w.push_back(f.letters[pick(rng)]);
    }
    auto reduced = raw(gp_reduce(f.word(w)));
    auto forms   = oracle::shortest_forms(*f.graph, reduced);
    std::set<std::pair<std::size_t, std::string>> heads;
    for (auto const& x : forms) {
      if (!x.empty()) {
        heads.emplace(x.front().first, f.graph->group(x.front().first).format(x.front().second));
      }
    }
    std::set<std::pair<std::size_t, std::string>> got;
    for (auto const& s : gp_head_support(f.word(w)).head) {
      got.emplace(s.vertex, f.graph->group(s.vertex).format(s.element));
    }
    CHECK(got == heads);
  }
}

TEST_CASE("gp_reduce is idempotent and matches brute force on edgeless and complete graphs",
          "[coeff][graph_product]") {
  std::vector<GroupSpec> groups{GroupSpec::cyclic(2), GroupSpec::free_rank(1), GroupSpec::cyclic(3)};
  auto edgeless = std::make_shared<ProductGraph const>(groups, std::vector<std::pair<std::size_t, std::size_t>>{});
  auto complete = std::make_shared<ProductGraph const>(
      groups, std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {0, 2}, {1, 2}});
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> vertex(0, 2), len(0, 6);
  for (auto const& graph : {edgeless, complete}) {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<Syllable> s;
      for (auto n = len(rng); n > 0; --n) {
        auto v = vertex(rng);
        auto g = groups[v].is_finite() ? groups[v].residue(1 + static_cast<std::int64_t>(rng() % 2) % (v == 0 ? 1 : 2))
                                       : groups[v].generator(0, rng() % 2 == 0);
        s.push_back({v, g});
      }
      GraphProductWord w(graph, s);
      auto             r  = gp_reduce(w);
      auto             rr = gp_reduce(r);
      CHECK(rr.syllables() == r.syllables());
      oracle::RawWord ws;
      for (auto const& x : s) {
        ws.emplace_back(x.vertex, x.element);
      }
      auto forms = oracle::shortest_forms(*graph, ws);
      CHECK(forms.begin()->size() == r.size());
      CHECK(forms.count(raw(r)) == 1);
      if (graph == complete) {
        // direct sum: at most one syllable per vertex
        std::set<std::size_t> vs;
        for (auto const& x : r.syllables()) {
          CHECK(vs.insert(x.vertex).second);
        }
      }
    }
  }
}

TEST_CASE("cyclic elements print as residues", "[coeff]") {
  auto C = GroupSpec::cyclic(3);
  CHECK(C.format(C.identity()) == "0");
  CHECK(C.format(C.residue(1)) == "1");
  CHECK(C.parse("1") == C.residue(1));
  CHECK(C.parse("0").is_identity());
  CHECK(C.parse("-1") == C.residue(2));
  for (auto const& g : C.elements()) {
    CHECK(C.parse(C.format(g)) == g);
  }
  CHECK(GroupSpec::trivial().format(GroupSpec::trivial().identity()) == "1");
}
