#ifndef EFG_TESTS_SUPPORT_HPP_
#define EFG_TESTS_SUPPORT_HPP_

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "efg/efg.hpp"

namespace efg::testing {

inline Permutation P(std::size_t degree, const std::string& cycles) { return Permutation::parse(cycles, degree); }

inline FiniteGroup gen(std::size_t degree, const std::vector<std::string>& cycles) {
  std::vector<Permutation> gens;
  for (const auto& c : cycles) gens.push_back(P(degree, c));
  return FiniteGroup::generate(gens, degree);
}

inline Element el(const FiniteGroup& g, const std::string& cycles) {
  auto i = g.index_of(P(g.degree(), cycles));
  if (!i) throw InvalidArgument("element " + cycles + " not in group");
  return *i;
}

inline SubgroupRef sub(const FiniteGroup& g, const std::vector<std::string>& cycles) {
  std::vector<Element> seed;
  for (const auto& c : cycles) seed.push_back(el(g, c));
  return subgroup_generated(g, seed);
}

inline std::filesystem::path data_dir() { return EFG_TEST_DATA_DIR; }

/// One row of the GAP-exported manifest of invariants.
struct ManifestRow {
  std::string file;
  std::map<std::string, long> value;
};

inline std::vector<ManifestRow> manifest(std::size_t max_order = 1000000) {
  std::ifstream in(data_dir() / "smallgroups" / "manifest.tsv");
  std::string line;
  std::getline(in, line);
  std::vector<std::string> cols;
  {
    std::istringstream hs(line);
    std::string c;
    while (std::getline(hs, c, '\t')) cols.push_back(c);
  }
  std::vector<ManifestRow> rows;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string c;
    ManifestRow row;
    for (std::size_t i = 0; std::getline(ls, c, '\t'); ++i) {
      if (i == 0) {
        row.file = c;
      } else {
        row.value[cols[i]] = std::stol(c);
      }
    }
    if (static_cast<std::size_t>(row.value["order"]) <= max_order) rows.push_back(std::move(row));
  }
  return rows;
}

inline FiniteGroup load(const ManifestRow& row) {
  return read_group_file(data_dir() / "smallgroups" / row.file).group;
}

}  // namespace efg::testing

#endif  // EFG_TESTS_SUPPORT_HPP_
