// Checks Theorem 1 for the nilpotent formation on a few named groups and
// prints the three statements per group.
//
//   efg_sample_theorem1 [name ...]
#include <iostream>
#include <string>
#include <vector>

#include "efg/efg.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> names(argv + 1, argv + argc);
  if (names.empty()) {
    names = {"symmetric:3", "alternating:4", "symmetric:4", "dihedral:5",
             "semidirect(cyclic:7,cyclic:3,power:2)", "cyclic:6"};
  }
  const efg::Formation N = efg::formations::nilpotent();
  int rc = 0;
  for (const auto& name : names) {
    try {
      const efg::FiniteGroup g = efg::build_named(name);
      const auto v = efg::check_theorem1(g, N);
      std::cout << name << " (order " << g.order() << "): S1=" << v.statement("S1") << " S2=" << v.statement("S2")
                << " S3=" << v.statement("S3") << (v.holds() ? "  equivalent" : "  NOT equivalent") << "\n";
      if (!v.holds()) rc = 1;
    } catch (const efg::HypothesisViolation& e) {
      std::cout << name << ": outside the hypotheses (" << e.what() << ")\n";
    } catch (const efg::Error& e) {
      std::cerr << name << ": " << e.what() << "\n";
      rc = 2;
    }
  }
  return rc;
}
