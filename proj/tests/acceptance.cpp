// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "oracles.hpp"

using namespace picturecalc;

namespace {

  struct Verdict {
    bool        pass = true;
    std::string detail;
  };

  //! Collects failures and a summary line for one criterion.
  class Tally {
   public:
    void expect(bool ok, std::string const& what) {
      if (!ok) {
        ++_failures;
        if (_first.empty()) {
          _first = what;
        }
      }
      ++_checks;
    }
    void note(std::string const& s) {
      _notes += (_notes.empty() ? "" : "; ") + s;
    }
    [[nodiscard]] Verdict verdict() const {
      std::ostringstream os;
      os << _checks << " checks";
      if (_failures > 0) {
        os << ", " << _failures << " failed, first: " << _first;
      }
      if (!_notes.empty()) {
        os << "; " << _notes;
      }
      return {_failures == 0, os.str()};
    }

   private:
    std::size_t        _checks   = 0;
    std::size_t        _failures = 0;
    std::string        _first;
    std::string        _notes;
  };

  SignaturePtr thompson_sig(std::string const& coeff = "trivial") {
    return make_signature(parse_builtin("thompson").presentation,
                          CoefficientSystem::trivial(1).set(0, GroupSpec::from_string(coeff)));
  }

  std::string key(Diagram const& d) {
    return canonical_key(d);
  }

  constexpr Geometry geometries[] = {Geometry::braided, Geometry::annular, Geometry::planar};

  char const* geometry_name(Geometry g) {
    return g == Geometry::braided ? "braided" : g == Geometry::annular ? "annular" : "planar";
  }

  struct Config {
    std::string  name;
    SignaturePtr sig;
    Word         base;
    bool         trivial;
  };

  //! The five ball configurations of the geometric checks.
  std::vector<Config> configurations() {
    auto abc = parse_builtin("commuting_abc");
    auto ap  = make_signature(parse_presentation("<a,p | a=a.p>"),
                              CoefficientSystem::trivial(2).set(0, GroupSpec::cyclic(2)));
    return {{"Q trivial", thompson_sig(), {0}, true},
            {"Q cyclic:2", thompson_sig("cyclic:2"), {0}, false},
            {"Q cyclic:3", thompson_sig("cyclic:3"), {0}, false},
            {"abc trivial", make_signature(abc.presentation), abc.baseword, true},
            {"a,p cyclic:2", ap, {1, 0}, false}};
  }

  ////////////////////////////////////////////////////////////////////////

  Verdict confluence() {
    Tally           t;
    std::mt19937_64 rng(101);
    auto            sig = thompson_sig("cyclic:2");
    auto            abc = parse_builtin("commuting_abc");
    auto            sig_abc = make_signature(abc.presentation);
    std::size_t     exhaustive = 0;
    for (int trial = 0; trial < 200; ++trial) {
      auto d = trial % 2 == 0 ? oracle::random_unreduced(sig, Word{0}, 6, rng)
                              : oracle::random_unreduced(sig_abc, abc.baseword, 6, rng);
      if (oracle::all_dipoles(d.parts()).size() > 3) {
        continue;
      }
      ++exhaustive;
      auto results = oracle::all_reduction_results(d);
      t.expect(results.size() == 1, "instance " + std::to_string(trial) + " has several normal forms");
      t.expect(results.count(key(reduce(d))) == 1, "library normal form differs");
    }
    t.note(std::to_string(exhaustive) + " instances exhausted");
    for (int trial = 0; trial < 500; ++trial) {
      auto d = oracle::random_unreduced(sig, Word{0}, 6, rng);
      auto a = oracle::random_order_reduce(d, rng);
      auto b = oracle::random_order_reduce(d, rng);
      t.expect(key(a) == key(b) && key(a) == key(reduce(d)), "random orders disagree");
    }
    return t.verdict();
  }

  Verdict group_axioms() {
    Tally t;
    std::vector<std::pair<std::string, std::string>> fixtures{
        {"thompson", "cyclic:2"}, {"higman:3,1", "trivial"}, {"quasi_auto:2,1,1", "trivial"}, {"houghton:2,0", "trivial"}};
    for (auto const& [name, coeff] : fixtures) {
      auto fixture = parse_builtin(name);
      auto cs      = CoefficientSystem::trivial(fixture.presentation.number_of_letters());
      cs.set(0, GroupSpec::from_string(coeff));
      auto sig = make_signature(fixture.presentation, cs);
      auto e   = eps(sig, fixture.baseword);
      for (auto g : geometries) {
        DiagramSampler s(sig, fixture.baseword, g, 2024);
        for (int trial = 0; trial < 200; ++trial) {
          auto a = s.element(3), b = s.element(3), c = s.element(3);
          auto where = name + " " + geometry_name(g);
          t.expect(key(multiply(multiply(a, b), c)) == key(multiply(a, multiply(b, c))), "associativity, " + where);
          t.expect(key(multiply(e, a)) == key(a) && key(multiply(a, e)) == key(a), "identity, " + where);
          t.expect(key(multiply(a, invert(a))) == key(e) && key(multiply(invert(a), a)) == key(e),
                   "inverse, " + where);
          t.expect(has_geometry(multiply(a, b), g), "closure, " + where);
        }
      }
    }
    return t.verdict();
  }

  Verdict distance_formula() {
    Tally t;
    for (auto coeff : {"trivial", "cyclic:2"}) {
      auto g = ball(thompson_sig(coeff), Word{0}, 4);
      for (std::size_t u = 0; u < g.size(); ++u) {
        auto dist = oracle::bfs(g.adj, u);
        for (std::size_t v = u; v < g.size(); ++v) {
          t.expect(pair_distance(g.rep(u), g.rep(v)) == dist[v], std::string(coeff) + " pair");
        }
      }
      t.note(std::string(coeff) + " ball of " + std::to_string(g.size()));
    }
    return t.verdict();
  }

  Verdict quasi_median() {
    Tally t;
    for (auto const& c : configurations()) {
      auto rep  = verify_qm_axioms(ball(c.sig, c.base, 3));
      bool tree = rep.edges + 1 == rep.vertices;
      t.expect(rep.pass(), c.name + ": " + (rep.violations.empty() ? "" : rep.violations.front().kind));
      // a tree has no premises, otherwise some must have been examined
      t.expect(tree || rep.triangle_checked + rep.quadrangle_checked > 0, c.name + " checked nothing");
      t.note(c.name + (tree ? " tree" : " " + std::to_string(rep.triangle_checked + rep.quadrangle_checked)
                                             + " premises"));
      if (c.trivial) {
        t.expect(rep.triangle_free(), c.name + " has triangles");
      }
    }
    return t.verdict();
  }

  Verdict medians() {
    Tally t;
    for (auto const& c : configurations()) {
      if (!c.trivial) {
        continue;
      }
      auto rep = verify_medians(ball(c.sig, c.base, 3));
      t.expect(rep.triangle_free, c.name + " has triangles");
      t.expect(rep.pass(), c.name + " median violation");
      t.expect(rep.triples_checked > 0, c.name + " checked nothing");
      t.note(c.name + " " + std::to_string(rep.triples_checked) + " triples");
    }
    return t.verdict();
  }

  Verdict pins() {
    Tally t;
    for (auto coeff : {"cyclic:2", "cyclic:3"}) {
      auto rep = pins_report(ball(thompson_sig(coeff), Word{0}, 3));
      t.expect(rep.pass(), std::string(coeff) + " pin violation");
      t.expect(!rep.pins.empty(), std::string(coeff) + " has no pins");
      t.note(std::string(coeff) + " " + std::to_string(rep.pins.size()) + " pins");
    }
    return t.verdict();
  }

  Verdict hyperplanes() {
    Tally t;
    for (auto const& c : configurations()) {
      auto rep = hyperplanes_report(ball(c.sig, c.base, 3));
      t.expect(rep.pass(), c.name + ": " + (rep.violations.empty() ? "" : rep.violations.front().kind));
      t.expect(rep.interior > 0, c.name + " has no interior hyperplane");
      t.note(c.name + " " + std::to_string(rep.interior) + " interior");
    }
    return t.verdict();
  }

  Verdict embedding_bounds() {
    Tally t;
    for (auto name : {"thompson", "higman:3,1", "quasi_auto:2,1,1", "houghton:2,0", "commuting_abc"}) {
      auto           fixture = parse_builtin(name);
      auto           sig     = make_signature(fixture.presentation);
      auto           tgt     = embedding_signature(fixture.presentation.number_of_relations());
      DiagramSampler s(sig, fixture.baseword, Geometry::braided, 4242);
      bool           short_ok = true;
      std::size_t    constant = 0;
      for (int trial = 0; trial < 200; ++trial) {
        auto a = s.element(4), b = s.element(4);
        t.expect(key(psi(multiply(a, b), tgt)) == key(multiply(psi(a, tgt), psi(b, tgt))),
                 std::string(name) + " homomorphism");
        for (auto const& d : {a, b, multiply(a, b)}) {
          auto r = check_length_bounds(d);
          t.expect(r.lower_ok && r.upper_ok, std::string(name) + " length bound");
          short_ok = short_ok && r.short_constant_ok;
          constant = r.constant;
        }
      }
      t.note(std::string(name) + " c=" + std::to_string(constant) + " K+1 " + (short_ok ? "holds" : "fails"));
    }
    return t.verdict();
  }

  Verdict injectivity() {
    Tally t;
    for (auto name : {"thompson", "higman:3,1", "quasi_auto:2,1,1", "houghton:2,0", "commuting_abc"}) {
      auto fixture = parse_builtin(name);
      auto all     = enumerate_reduced(make_signature(fixture.presentation), fixture.baseword, 3, Geometry::braided);
      std::set<std::string> images;
      for (auto const& d : all) {
        images.insert(key(psi(d)));
      }
      t.expect(images.size() == all.size(), std::string(name) + " images collide");
    }
    auto fixture = parse_builtin("higman:3,1");
    auto all     = enumerate_reduced(make_signature(fixture.presentation), Word{0}, 3, Geometry::braided);
    std::set<std::string> pairs;
    for (auto const& d : all) {
      pairs.insert(format_tree_pair(project(d)));
    }
    t.expect(pairs.size() == all.size(), "projection collides");
    t.note(std::to_string(all.size()) + " diagrams over <x | x=x.x.x>");
    return t.verdict();
  }

  Verdict thompson_bridge() {
    Tally              t;
    std::mt19937_64    rng(303);
    std::vector<NAdic> points;
    for (std::uint64_t k = 0; k < 256; ++k) {
      points.emplace_back(k, 8);
    }
    for (int trial = 0; trial < 300; ++trial) {
      auto kind = static_cast<ThompsonClass>(trial % 3);
      auto a    = random_tree_pair(2, 1, 1 + trial % 6, kind, rng);
      t.expect(diagram_to_tree_pair(tree_pair_to_diagram(a)) == a, "round trip");
      auto b  = random_tree_pair(2, 1, 1 + (trial / 3) % 6, kind, rng);
      auto ab = tp_multiply(a, b);
      t.expect(key(tree_pair_to_diagram(ab)) == key(multiply(tree_pair_to_diagram(a), tree_pair_to_diagram(b))),
               "diagram product");
      for (auto const& q : points) {
        t.expect(evaluate_map(ab, q) == evaluate_map(a, evaluate_map(b, q)), "map composition");
      }
    }
    return t.verdict();
  }

  Verdict condition_plus() {
    Tally t;
    auto  plus = condition_plus_check(thompson_sig("cyclic:2"), Word{0}, 4, 2);
    t.expect(!plus.entries.empty(), "no permutations found");
    for (auto const& e : plus.entries) {
      t.expect(e.witnessed, "unwitnessed permutation");
      t.expect(e.m.size() <= 4, "word too long");
    }
    auto ap  = make_signature(parse_presentation("<a,p | a=a.p>"),
                              CoefficientSystem::trivial(2).set(0, GroupSpec::cyclic(2)));
    auto bad = condition_plus_check(ap, Word{1, 1, 0}, 4, 3);
    t.expect(bad.inconclusive() > 0, "<a,p | a=a.p> reported excluded");
    t.note("Q " + std::to_string(plus.excluded()) + "/" + std::to_string(plus.entries.size()) + " excluded");
    t.note("<a,p | a=a.p> " + std::to_string(bad.inconclusive()) + "/" + std::to_string(bad.entries.size())
           + " inconclusive");
    return t.verdict();
  }

  Verdict graph_products() {
    Tally                  t;
    std::vector<GroupSpec> groups{GroupSpec::cyclic(2), GroupSpec::free_rank(1), GroupSpec::cyclic(2),
                                  GroupSpec::free_rank(1)};
    auto graph = std::make_shared<ProductGraph const>(
        groups, std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}, {2, 3}, {0, 2}});
    std::vector<Syllable> letters;
    for (std::size_t v = 0; v < groups.size(); ++v) {
      if (groups[v].is_finite()) {
        letters.push_back({v, groups[v].residue(1)});
      } else {
        letters.push_back({v, groups[v].generator(0)});
        letters.push_back({v, groups[v].generator(0, true)});
      }
    }
    auto raw = [](std::vector<Syllable> const& s) {
      oracle::RawWord out;
      for (auto const& x : s) {
        out.emplace_back(x.vertex, x.element);
      }
      return out;
    };
    // every word of at most six syllables, grouped by the oracle's normal form
    std::map<oracle::RawWord, std::vector<std::size_t>> classes;
    std::vector<GraphProductWord>                       words;
    std::vector<std::size_t>                            digits;
    for (std::size_t n = 0; n <= 6; ++n) {
      digits.assign(n, 0);
      for (;;) {
        std::vector<Syllable> s;
        for (auto d : digits) {
          s.push_back(letters[d]);
        }
        auto forms   = oracle::shortest_forms(*graph, raw(s));
        auto reduced = gp_reduce(GraphProductWord(graph, s));
        t.expect(forms.count(raw(reduced.syllables())) == 1, "reduced form is not a shortest form");
        classes[*forms.begin()].push_back(words.size());
        words.emplace_back(graph, s);
        std::size_t i = 0;
        while (i < n && ++digits[i] == letters.size()) {
          digits[i++] = 0;
        }
        if (i == n) {
          break;
        }
      }
    }
    std::vector<std::size_t> reps;
    for (auto const& [form, members] : classes) {
      reps.push_back(members.front());
      for (auto m : members) {
        t.expect(gp_equal(words[m], words[members.front()]), "equal words compare unequal");
      }
    }
    // distinct classes compare unequal; neighbours in the sorted order are the
    // hardest cases since they share the longest prefixes
    for (std::size_t i = 0; i + 1 < reps.size(); ++i) {
      t.expect(!gp_equal(words[reps[i]], words[reps[i + 1]]), "distinct words compare equal");
    }
    std::mt19937_64                            rng(12);
    std::uniform_int_distribution<std::size_t> pick(0, reps.size() - 1);
    for (int trial = 0; trial < 20000; ++trial) {
      auto i = pick(rng), j = pick(rng);
      t.expect(gp_equal(words[reps[i]], words[reps[j]]) == (i == j), "random class pair");
    }
    t.note(std::to_string(words.size()) + " words, " + std::to_string(classes.size()) + " elements");
    return t.verdict();
  }

}  // namespace

int main() {
  std::vector<std::pair<char const*, std::function<Verdict()>>> criteria{
      {"confluence of dipole reduction", confluence},
      {"group axioms in every geometry", group_axioms},
      {"distance formula against BFS", distance_formula},
      {"quasi-median axioms on five balls", quasi_median},
      {"medians on trivial-coefficient balls", medians},
      {"pins are cliques meeting in at most a vertex", pins},
      {"hyperplanes, sectors and gates", hyperplanes},
      {"embedding homomorphism and length bounds", embedding_bounds},
      {"injectivity of the embedding and projection", injectivity},
      {"tree pair bridge and map composition", thompson_bridge},
      {"condition (+)", condition_plus},
      {"graph product word calculus", graph_products}};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto    start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (std::exception const& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all         = all && v.pass;
    std::printf("%s %2zu %s [%.1f s] %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, secs,
                v.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
