#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"

using namespace picturecalc;

namespace {
  SignaturePtr thompson_sig(std::string const& coeff) {
    return make_signature(parse_builtin("thompson").presentation,
                          CoefficientSystem::trivial(1).set(0, GroupSpec::from_string(coeff)));
  }

  std::string field_of(std::string const& text) {
    try {
      (void) diagram_from_text(text);
    } catch (FormatError const& e) {
      return e.field();
    }
    return "";
  }
}  // namespace

TEST_CASE("diagram documents round-trip", "[io]") {
  std::mt19937_64 rng(12);
  for (auto coeff : {"trivial", "cyclic:3", "free:2"}) {
    auto sig = thompson_sig(coeff);
    for (int trial = 0; trial < 60; ++trial) {
      auto d    = oracle::random_unreduced(sig, Word{0}, 5, rng);
      auto text = to_json_text(d);
      auto back = diagram_from_text(text);
      CHECK(canonical_key(back) == canonical_key(d));
      CHECK(to_json_text(back) == text);
    }
  }
  auto abc = parse_builtin("commuting_abc");
  auto sig = make_signature(abc.presentation);
  auto p   = atom_permutation(sig, abc.baseword, std::vector<std::size_t>{2, 0, 1});
  CHECK(canonical_key(diagram_from_text(to_json_text(p))) == canonical_key(p));
}

TEST_CASE("equivalent diagrams export to identical bytes", "[io]") {
  auto sig = thompson_sig("trivial");
  auto a   = concat(atom_transistor(sig, {}, 0, true, {}), atom_transistor(sig, {0}, 0, true, {}));
  auto b   = renumber_canonically(a);
  CHECK(to_json_text(a) == to_json_text(b));
}

TEST_CASE("the document layout", "[io]") {
  auto sig = thompson_sig("cyclic:2");
  auto d   = atom_linear(sig, Word{0, 0}, 1, sig->coefficients[0].residue(1));
  auto j   = diagram_to_json(concat(atom_transistor(sig, {}, 0, true, {}), d));
  CHECK(j["presentation"] == "<x | x=x.x>");
  CHECK(j["coeffs"]["x"] == "cyclic:2");
  CHECK(j["transistors"].size() == 1);
  CHECK(j["transistors"][0]["dir"] == "+");
  CHECK(j["wires"].size() == 3);
  CHECK(j["wires"][0]["top"]["site"] == "frame_top");
  CHECK(j["annular"] == false);
  std::size_t labelled = 0;
  for (auto const& w : j["wires"]) {
    labelled += w["coeff"] == "1";
    CHECK((w["coeff"] == "0" || w["coeff"] == "1"));
  }
  CHECK(labelled == 1);
}

TEST_CASE("malformed documents name the field", "[io]") {
  CHECK_THROWS_AS(diagram_from_text("{not json"), ParseError);
  CHECK(field_of("[]") == "diagram");
  CHECK(field_of(R"({"presentation": "<x | x=x.x>"})") == "diagram.wires");
  CHECK(field_of(R"({"presentation": "<x | x=x.x>", "coeffs": {"y": "trivial"}, "wires": []})")
        == "diagram.coeffs.y");
  CHECK(field_of(R"({"presentation": "<x | x=x.x>", "wires": [], "transistors": [{"rel": 4, "dir": "+"}]})")
        == "diagram.transistors[0].rel");
  CHECK(field_of(R"({"presentation": "<x | x=x.x>", "wires": [], "transistors": [{"rel": 0, "dir": "*"}]})")
        == "diagram.transistors[0].dir");
  auto sig  = thompson_sig("trivial");
  auto json = diagram_to_json(eps(sig, Word{0, 0}));
  json["wires"][1]["top"]["index"] = 0;
  CHECK(field_of(json.dump()).rfind("diagram.wires[1]", 0) == 0);
  json = diagram_to_json(eps(sig, Word{0}));
  json["wires"][0]["label"] = "q";
  CHECK(field_of(json.dump()) == "diagram.wires[0].label");
  CHECK_THROWS_AS(diagram_from_text(R"({"presentation": "<x | x=x.x", "wires": []})"), ParseError);
}

TEST_CASE("a document that breaks diagram invariants is refused", "[io]") {
  auto sig  = thompson_sig("trivial");
  auto json = diagram_to_json(atom_transistor(sig, {}, 0, true, {}));
  // send the transistor's top wire back up from its bottom: a cycle
  for (auto& w : json["wires"]) {
    if (w["top"]["site"] == "frame_top") {
      w["top"] = {{"site", {{"transistor", 0}, {"side", "bottom"}}}, {"index", 0}};
    }
  }
  CHECK_THROWS_AS(diagram_from_text(json.dump()), Error);
}

TEST_CASE("ball exports", "[io]") {
  auto g = ball(thompson_sig("cyclic:2"), Word{0}, 2);
  auto j = ball_to_json(g);
  CHECK(j["vertices"].size() == 9);
  CHECK(j["edges"].size() == 8);
  CHECK(j["geometry"] == "braided");
  CHECK(j["vertices"][0]["distance"] == 0);
  CHECK(j["vertices"][0]["length"] == 0);
  for (auto const& v : j["vertices"]) {
    auto rep = diagram_from_json(v["rep"]);
    CHECK(key_hex(canonical_key(rep, KeyMode::klass)) == v["key"]);
  }
  std::size_t linear = 0;
  for (auto const& e : j["edges"]) {
    auto from = g.rep(e["from"].get<std::size_t>()).number_of_transistors();
    auto to   = g.rep(e["to"].get<std::size_t>()).number_of_transistors();
    bool lin  = e["move"]["kind"] == "linear";
    linear += lin;
    CHECK(lin == (from == to));
  }
  CHECK(linear >= 1);

  auto dot = ball_to_dot(g);
  CHECK(dot.rfind("graph ball {", 0) == 0);
  std::size_t dashed = 0;
  for (auto at = dot.find("dashed"); at != std::string::npos; at = dot.find("dashed", at + 1)) {
    ++dashed;
  }
  CHECK(dashed == linear);
  CHECK(dot.find("label=\"(x, 1)\"") != std::string::npos);
}
