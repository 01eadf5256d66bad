// Finds the components of G(9) with nontrivial monodromy and prints one
// commutativity identity for each.

#include <iostream>

#include "dsg/dsg.hpp"

int main(int argc, char** argv) {
  const unsigned workers = argc > 1 ? static_cast<unsigned>(std::stoul(argv[1])) : 1;
  const auto g = dsg::build_quotient_graph(9, workers);
  const auto components = dsg::connected_components(g);
  const auto reports = dsg::analyze_components(g, components, workers);

  for (std::size_t i = 0; i < components.size(); ++i) {
    if (!reports[i].nontrivial) continue;
    const auto& c = components[i];
    const auto x = dsg::extract_identity(g, c, c.min_vertex());
    std::cout << c.id << "  " << dsg::to_string(x.identity.left) << "  ≡  " << dsg::to_string(x.identity.right)
              << "  " << x.identity.pi().cycles() << "  (" << x.proof.steps.size() << " steps)\n";
  }
}
