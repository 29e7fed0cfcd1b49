// Builds two elements of Thompson's group F as tree pairs, multiplies them
// both as tree pairs and as diagrams, and evaluates the product.

#include <iostream>

#include "picturecalc.hpp"

int main() {
  using namespace picturecalc;
  auto a = parse_tree_pair("((..).)|(.(..))");
  auto b = parse_tree_pair("(.(..))|((..).)");
  auto c = tp_multiply(a, b);
  std::cout << "a       = " << format_tree_pair(a) << " (" << to_string(membership(a)) << ")\n";
  std::cout << "b       = " << format_tree_pair(b) << "\n";
  std::cout << "a * b   = " << format_tree_pair(c) << "\n";

  auto da = tree_pair_to_diagram(a);
  auto db = tree_pair_to_diagram(b);
  auto dc = multiply(da, db);
  std::cout << "as diagrams: length " << length(da) << " * " << length(db) << " -> "
            << length(dc) << ", back to " << format_tree_pair(diagram_to_tree_pair(dc)) << "\n";

  for (auto text : {"1/4", "1/2", "3/4"}) {
    auto q = parse_nadic(text);
    std::cout << "a(" << text << ") = " << format_nadic(evaluate_map(a, q)) << "\n";
  }

  // the universal embedding of an element of a higher-arity diagram group
  auto b3  = builtin_presentation("higman", std::vector<int>{3, 1});
  auto sig = make_signature(b3.presentation);
  auto t   = atom_transistor(sig, {}, 0, true, {});
  auto g   = multiply(t, invert(atom_transistor(sig, {}, 0, true, {})));
  std::cout << "psi of a length-" << length(t) << " element has length " << length(psi(t))
            << "; its projection is " << format_tree_pair(project(t)) << "\n";
  std::cout << "t * t^-1 reduces to length " << length(g) << "\n";
  return 0;
}
