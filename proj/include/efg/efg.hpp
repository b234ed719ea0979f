#ifndef EFG_EFG_HPP_
#define EFG_EFG_HPP_

#include "efg/error.hpp"
#include "efg/permutation.hpp"
#include "efg/group.hpp"
#include "efg/subgroup.hpp"
#include "efg/quotient.hpp"
#include "efg/series.hpp"
#include "efg/products.hpp"
#include "efg/lattice.hpp"
#include "efg/report.hpp"
#include "efg/formation.hpp"
#include "efg/subnormality.hpp"
#include "efg/structure.hpp"
#include "efg/lemmas.hpp"
#include "efg/catalog.hpp"
#include "efg/parallel.hpp"
#include "efg/runner.hpp"

#endif  // EFG_EFG_HPP_
