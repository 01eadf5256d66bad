// Lifts the walk 30 -> 68 -> 26 of G(5) and prints the monomials it visits.

#include <array>
#include <iostream>

#include "dsg/dsg.hpp"

int main() {
  const auto g = dsg::build_quotient_graph(5);
  const std::array<int, 3> vertices{30, 68, 26};
  const auto walk = dsg::walk_from_vertices(g, vertices);

  dsg::Monomial m = dsg::identity_monomial(g.shape(vertices.front()));
  std::cout << vertices.front() << "  " << dsg::to_string(m) << '\n';
  for (const auto& e : walk) {
    m = dsg::apply_redex(m, g.redex(e));
    std::cout << e.dst << "  " << dsg::to_string(m) << "    label " << g.label(e).cycles() << '\n';
  }
  const auto lift = dsg::lift_path(g, walk, dsg::identity_monomial(g.shape(vertices.front())));
  std::cout << "total " << lift.total.cycles() << '\n';
}
