// Explores a small ball of the class graph for <x | x=x.x> with cyclic
// coefficients of order 2 and prints the verifier's verdicts.

#include <iostream>

#include "picturecalc.hpp"

int main(int argc, char** argv) {
  using namespace picturecalc;
  std::size_t const radius = argc > 1 ? std::stoul(argv[1]) : 3;
  auto sig = make_signature(parse_presentation("<x | x=x.x>"),
                            CoefficientSystem({GroupSpec::cyclic(2)}));
  auto g   = ball(sig, Word{0}, radius);
  std::cout << "radius " << radius << ": " << g.size() << " vertices, " << g.ball.edges.size()
            << " edges\n";

  auto ax    = verify_qm_axioms(g);
  auto pins  = pins_report(g);
  auto hyper = hyperplanes_report(g);
  std::cout << "quasi-median axioms: " << (ax.pass() ? "pass" : "FAIL") << " ("
            << ax.quadrangle_checked << " quadrangle premises checked)\n";
  std::cout << "pins: " << pins.pins.size() << ", " << (pins.pass() ? "pass" : "FAIL") << "\n";
  std::cout << "hyperplanes: " << hyper.hyperplanes.size() << " (" << hyper.interior
            << " interior), " << (hyper.pass() ? "pass" : "FAIL") << "\n";

  auto far = multiply(gamma(sig, 3), invert(gamma(sig, 3)));
  std::cout << "distance from eps(x) to gamma(3): "
            << pair_distance(eps(sig, Word{0}), gamma(sig, 3)) << "\n";
  std::cout << "gamma(3) * gamma(3)^-1 has length " << length(far) << "\n";
  return 0;
}
