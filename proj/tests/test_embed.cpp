#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"

using namespace picturecalc;

namespace {
  std::string key(Diagram const& d) {
    return canonical_key(d);
  }

  SignaturePtr source(std::string const& builtin) {
    return make_signature(parse_builtin(builtin).presentation);
  }

  char const* const builtins[] = {"thompson", "higman:3,1", "quasi_auto:2,1,1", "houghton:2,0", "commuting_abc"};
}  // namespace

TEST_CASE("ladders", "[embed]") {
  auto sig = embedding_signature(1);
  CHECK(key(gamma(sig, 0)) == key(eps(sig, Word{0})));
  auto g3 = gamma(sig, 3);
  CHECK(g3.number_of_transistors() == 3);
  CHECK(g3.top_word() == Word{0});
  CHECK(g3.bottom_word() == Word(4, 0));
  CHECK(is_planar(g3));
  CHECK(factorize(g3).factors.size() == 3);
  for (std::size_t n = 0; n <= 10; ++n) {
    CHECK(length(gamma(sig, n)) == n);
  }
}

TEST_CASE("blocks", "[embed]") {
  auto sig = embedding_signature(2);
  auto R   = sig->coefficients[0].generator(0);

  auto b = make_block(sig, 0, 1, 0, true, 2, 0);
  CHECK(key(b) == key(concat(eps(sig, LabelledWord{{0, R}}), gamma(sig, 1))));
  CHECK(b.top_word() == Word{0});
  CHECK(b.bottom_word() == Word{0, 0});
  CHECK(length(b) == 2);
  CHECK(b.number_of_nontrivial_wires() == 1);

  for (std::size_t t = 1; t <= 4; ++t) {
    for (std::size_t m = 1; m <= 4; ++m) {
      for (bool positive : {true, false}) {
        auto blk = make_block(sig, 1, t, 1, positive, m, 2);
        CHECK(blk.top_word() == Word(1 + t + 2, 0));
        CHECK(blk.bottom_word() == Word(1 + m + 2, 0));
        CHECK(length(blk) == (t - 1) + (m - 1) + 1);
        CHECK(blk.number_of_nontrivial_wires() == 1);
        CHECK(key(multiply(blk, invert(blk))) == key(eps(sig, Word(1 + t + 2, 0))));
        auto inverse = make_block(sig, 1, m, 1, !positive, t, 2);
        CHECK(key(reduce(concat(blk, inverse))) == key(eps(sig, Word(1 + t + 2, 0))));
      }
    }
  }
  CHECK_THROWS_AS(make_block(sig, 0, 0, 0, true, 1, 0), Error);
  CHECK_THROWS_AS(make_block(sig, 0, 1, 5, true, 1, 0), Error);
}

TEST_CASE("the embedding on atoms", "[embed]") {
  auto sig = source("thompson");
  auto tgt = embedding_signature(1);
  auto t   = atom_transistor(sig, {}, 0, true, {});
  auto img = psi(t, tgt);
  CHECK(key(img) == key(make_block(tgt, 0, 1, 0, true, 2, 0)));
  CHECK(length(img) == 2);
  CHECK(key(psi(eps(sig, Word{0, 0, 0}), tgt)) == key(eps(tgt, Word{0, 0, 0})));

  auto abc = source("commuting_abc");
  auto p   = atom_permutation(abc, Word{0, 1, 2}, std::vector<std::size_t>{2, 0, 1});
  CHECK(key(psi(p)) == key(atom_permutation(embedding_signature(3), Word{0, 0, 0}, std::vector<std::size_t>{2, 0, 1})));

  auto cyc = make_signature(parse_presentation("<x | x=x.x>"),
                            CoefficientSystem::trivial(1).set(0, GroupSpec::cyclic(2)));
  CHECK_THROWS_AS(psi(atom_linear(cyc, Word{0}, 0, GroupSpec::cyclic(2).residue(1))), MismatchError);
}

TEST_CASE("the embedding is a homomorphism that respects geometry", "[embed]") {
  for (auto name : builtins) {
    auto fixture = parse_builtin(name);
    auto sig     = make_signature(fixture.presentation);
    auto tgt     = embedding_signature(fixture.presentation.number_of_relations());
    for (auto g : {Geometry::braided, Geometry::annular, Geometry::planar}) {
      DiagramSampler s(sig, fixture.baseword, g, 314);
      for (int trial = 0; trial < 25; ++trial) {
        auto a = s.element(3), b = s.element(3);
        CHECK(key(psi(multiply(a, b), tgt)) == key(multiply(psi(a, tgt), psi(b, tgt))));
        CHECK(key(psi(invert(a), tgt)) == key(invert(psi(a, tgt))));
        CHECK(has_geometry(psi(a, tgt), g));
      }
    }
  }
}

TEST_CASE("direct substitution is reduced over the Thompson presentation", "[embed]") {
  auto sig = source("thompson");
  auto tgt = embedding_signature(1);
  for (auto const& d : enumerate_reduced(sig, Word{0}, 4, Geometry::braided)) {
    auto raw = psi_unreduced(d, tgt);
    CHECK(is_reduced(raw));
    CHECK(key(raw) == key(psi(d, tgt)));
  }
  DiagramSampler s(sig, Word{0}, Geometry::braided, 8);
  for (int trial = 0; trial < 50; ++trial) {
    CHECK(is_reduced(psi_unreduced(s.product(2, 4), tgt)));
  }
}

TEST_CASE("adjacent ladders can cancel under direct substitution", "[embed]") {
  // a -> b.b -> b.a: the second block's top ladder undoes the first block's
  // bottom ladder although the source diagram is reduced
  auto sig = make_signature(parse_presentation("<a,b | a=b.b, b.b=b.a>"));
  auto d   = multiply(atom_transistor(sig, {}, 0, true, {}), atom_transistor(sig, {}, 1, true, {}));
  REQUIRE(is_reduced(d));
  REQUIRE(length(d) == 2);
  auto raw = psi_unreduced(d, embedding_signature(2));
  CHECK(raw.number_of_transistors() == 3);
  CHECK(find_dipoles(raw).size() == 1);
  CHECK_FALSE(is_reduced(raw));
  // one ladder caret survives next to the merged wire R1.R2
  auto image = psi(d, embedding_signature(2));
  CHECK(is_reduced(image));
  CHECK(image.number_of_transistors() == 1);
  CHECK(image.number_of_nontrivial_wires() == 1);
  CHECK(length(image) == 2);
}

TEST_CASE("the embedding is injective on small enumerations", "[embed]") {
  for (auto name : builtins) {
    auto fixture = parse_builtin(name);
    auto sig     = make_signature(fixture.presentation);
    auto all     = enumerate_reduced(sig, fixture.baseword, 3, Geometry::braided);
    std::set<std::string> images;
    for (auto const& d : all) {
      images.insert(key(psi(d)));
    }
    CHECK(images.size() == all.size());
  }
}

TEST_CASE("projection to Thompson's group", "[embed]") {
  auto fixture = parse_builtin("higman:3,1");
  auto sig     = make_signature(fixture.presentation);
  CHECK(project(eps(sig, Word{0})) == tp_identity(2));

  auto all = enumerate_reduced(sig, Word{0}, 3, Geometry::braided);
  std::set<std::string> seen;
  for (auto const& d : all) {
    auto tp = project(d);
    CHECK(tp_is_reduced(tp));
    CHECK(seen.insert(format_tree_pair(tp)).second);
    if (length(d) > 0) {
      CHECK_FALSE(tp == tp_identity(2));
    }
  }

  for (auto g : {Geometry::braided, Geometry::annular, Geometry::planar}) {
    DiagramSampler s(sig, Word{0}, g, 55);
    for (int trial = 0; trial < 40; ++trial) {
      auto a = s.element(3), b = s.element(3);
      CHECK(project(multiply(a, b)) == tp_multiply(project(a), project(b)));
      auto cls = membership(project(a));
      if (g == Geometry::planar) {
        CHECK(cls == ThompsonClass::F);
      } else if (g == Geometry::annular) {
        CHECK(cls != ThompsonClass::V_not_T);
      }
    }
  }
  CHECK_THROWS_AS(project_to_thompson(eps(sig, Word{0})), Error);
}

TEST_CASE("length bounds", "[embed]") {
  auto sig = source("thompson");
  auto e   = check_length_bounds(eps(sig, Word{0}));
  CHECK(e.length == 0);
  CHECK(e.length_psi == 0);
  CHECK(e.lower_ok);
  CHECK(e.constant == 2);
  CHECK(e.upper_ok);

  auto t = check_length_bounds(atom_transistor(sig, {}, 0, true, {}));
  CHECK(t.length == 1);
  CHECK(t.length_psi == 2);
  CHECK(t.lower_ok);
  CHECK(t.constant == 2);
  CHECK(t.upper_ok);
  CHECK(t.short_constant_ok);

  // a relation with sides of length three: blocks of length five beat K + 1
  auto p3 = make_signature(parse_presentation("<a,b | a.a.a=b.b.b>"));
  auto b3 = check_length_bounds(atom_transistor(p3, {}, 0, true, {}));
  CHECK(b3.length_psi == 5);
  CHECK(b3.constant == 5);
  CHECK(b3.upper_ok);
  CHECK(b3.short_constant == 4);
  CHECK_FALSE(b3.short_constant_ok);

  for (auto name : {"thompson", "higman:3,1", "quasi_auto:2,1,1", "houghton:2,0"}) {
    auto           fixture = parse_builtin(name);
    DiagramSampler s(make_signature(fixture.presentation), fixture.baseword, Geometry::braided, 21);
    for (int trial = 0; trial < 50; ++trial) {
      auto b = check_length_bounds(s.element(4));
      CHECK(b.lower_ok);
      CHECK(b.upper_ok);
    }
  }
}
