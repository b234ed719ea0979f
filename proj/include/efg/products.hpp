#ifndef EFG_PRODUCTS_HPP_
#define EFG_PRODUCTS_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "efg/error.hpp"
#include "efg/group.hpp"

namespace efg {

/// An automorphism of a group, as the image of every element.
using ElementMap = std::vector<Element>;

inline bool is_automorphism(const FiniteGroup& a, const ElementMap& f) {
  const std::size_t n = a.order();
  if (f.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (Element y : f) {
    if (y >= n || hit[y]) return false;
    hit[y] = true;
  }
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (f[a.mul(x, y)] != a.mul(f[x], f[y])) return false;
    }
  }
  return true;
}

/// Extends an assignment on A's generators to an element map by following
/// words in the generators. Throws if the result is not an automorphism.
inline ElementMap extend_to_automorphism(const FiniteGroup& a, const std::vector<Element>& generator_images) {
  const auto gens = a.generators();
  if (generator_images.size() != gens.size()) {
    throw InvalidArgument("need one image per generator of A");
  }
  ElementMap f(a.order(), 0);
  std::vector<bool> done(a.order(), false);
  std::vector<Element> queue{FiniteGroup::identity()};
  done[0] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      Element y = a.mul(queue[i], gens[s]);
      Element fy = a.mul(f[queue[i]], generator_images[s]);
      if (!done[y]) {
        done[y] = true;
        f[y] = fy;
        queue.push_back(y);
      } else if (f[y] != fy) {
        throw InvalidArgument("generator images do not define a homomorphism");
      }
    }
  }
  if (!is_automorphism(a, f)) throw InvalidArgument("generator images do not define an automorphism");
  return f;
}

/// A x B acting on the disjoint union of the two point sets.
inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b, const Limits& limits = {}) {
  const std::size_t da = a.degree(), db = b.degree(), d = da + db;
  std::vector<Permutation> gens;
  for (Element x : a.generators()) {
    std::vector<Point> im(d);
    for (std::size_t i = 0; i < d; ++i) im[i] = static_cast<Point>(i < da ? a.element(x)[i] : i);
    gens.emplace_back(std::move(im));
  }
  for (Element y : b.generators()) {
    std::vector<Point> im(d);
    for (std::size_t i = 0; i < d; ++i) {
      im[i] = static_cast<Point>(i < da ? i : da + b.element(y)[i - da]);
    }
    gens.emplace_back(std::move(im));
  }
  return FiniteGroup::generate(gens, d, limits);
}

/// A x| B where B acts on A through `action`: one automorphism of A per
/// generator of B, with b a b^-1 = action(b)(a). The assignment must extend
/// to a homomorphism B -> Aut(A). Realized as the right regular representation
/// on pairs (a, b) with (a1, b1)(a2, b2) = (a1 * action(b1)(a2), b1 * b2).
inline FiniteGroup semidirect_product(const FiniteGroup& a, const FiniteGroup& b,
                                      const std::vector<ElementMap>& action,
                                      const Limits& limits = {}) {
  const auto bgens = b.generators();
  if (action.size() != bgens.size()) {
    throw InvalidArgument("need one automorphism per generator of B");
  }
  for (const auto& f : action) {
    if (!is_automorphism(a, f)) throw InvalidArgument("action image is not an automorphism of A");
  }
  const std::size_t na = a.order(), nb = b.order();
  if (na * nb > limits.max_order) {
    throw BudgetExceeded("semidirect product order exceeds the configured maximum");
  }

  // phi(b * s) = phi(b) o phi(s)
  std::vector<ElementMap> phi(nb);
  std::vector<bool> done(nb, false);
  phi[0].resize(na);
  for (Element x = 0; x < na; ++x) phi[0][x] = x;
  done[0] = true;
  std::vector<Element> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Element cur = queue[i];
    for (std::size_t s = 0; s < bgens.size(); ++s) {
      const Element next = b.mul(cur, bgens[s]);
      ElementMap composed(na);
      for (Element x = 0; x < na; ++x) composed[x] = phi[cur][action[s][x]];
      if (!done[next]) {
        done[next] = true;
        phi[next] = std::move(composed);
        queue.push_back(next);
      } else if (phi[next] != composed) {
        throw InvalidArgument("action is not a homomorphism into Aut(A)");
      }
    }
  }

  const std::size_t degree = na * nb;
  auto point = [nb](Element x, Element y) { return static_cast<Point>(x * nb + y); };
  auto right_mult = [&](Element a2, Element b2) {
    std::vector<Point> im(degree);
    for (Element a1 = 0; a1 < na; ++a1) {
      for (Element b1 = 0; b1 < nb; ++b1) {
        im[point(a1, b1)] = point(a.mul(a1, phi[b1][a2]), b.mul(b1, b2));
      }
    }
    return Permutation(std::move(im));
  };
  std::vector<Permutation> gens;
  for (Element x : a.generators()) gens.push_back(right_mult(x, 0));
  for (Element y : bgens) gens.push_back(right_mult(0, y));
  return FiniteGroup::generate(gens, degree, limits);
}

// ---------------------------------------------------------------------------
// Standard families

inline FiniteGroup cyclic_group(std::size_t m) {
  if (m == 0) throw InvalidArgument("cyclic group order must be positive");
  if (m == 1) return FiniteGroup::generate({}, 1);
  std::vector<std::size_t> cycle(m);
  for (std::size_t i = 0; i < m; ++i) cycle[i] = i;
  std::vector<Permutation> gens{Permutation::from_cycles(m, {cycle})};
  return FiniteGroup::generate(gens, m);
}

/// Dihedral group of order 2n.
inline FiniteGroup dihedral_group(std::size_t n) {
  if (n == 0) throw InvalidArgument("dihedral parameter must be positive");
  if (n == 1) return cyclic_group(2);
  if (n == 2) {
    std::vector<Permutation> gens{Permutation::from_cycles(4, {{0, 1}, {2, 3}}),
                                  Permutation::from_cycles(4, {{0, 2}, {1, 3}})};
    return FiniteGroup::generate(gens, 4);
  }
  std::vector<Point> rot(n), refl(n);
  for (std::size_t i = 0; i < n; ++i) {
    rot[i] = static_cast<Point>((i + 1) % n);
    refl[i] = static_cast<Point>((n - i) % n);
  }
  std::vector<Permutation> gens{Permutation(rot), Permutation(refl)};
  return FiniteGroup::generate(gens, n);
}

inline FiniteGroup symmetric_group(std::size_t n, const Limits& limits = {}) {
  if (n == 0) throw InvalidArgument("symmetric group degree must be positive");
  if (n == 1) return FiniteGroup::generate({}, 1);
  std::vector<std::size_t> cycle(n);
  for (std::size_t i = 0; i < n; ++i) cycle[i] = i;
  std::vector<Permutation> gens{Permutation::from_cycles(n, {{0, 1}})};
  if (n > 2) gens.push_back(Permutation::from_cycles(n, {cycle}));
  return FiniteGroup::generate(gens, n, limits);
}

inline FiniteGroup alternating_group(std::size_t n, const Limits& limits = {}) {
  if (n == 0) throw InvalidArgument("alternating group degree must be positive");
  std::vector<Permutation> gens;
  for (std::size_t k = 2; k < n; ++k) gens.push_back(Permutation::from_cycles(n, {{0, 1, k}}));
  return FiniteGroup::generate(gens, n, limits);
}

/// E_{p^k}: direct product of k copies of C_p.
inline FiniteGroup elementary_abelian_group(std::size_t p, std::size_t k, const Limits& limits = {}) {
  if (p < 2) throw InvalidArgument("elementary abelian group needs a prime");
  for (std::size_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) throw InvalidArgument(std::to_string(p) + " is not a prime");
  }
  if (k == 0) return FiniteGroup::generate({}, 1);
  const std::size_t degree = p * k;
  std::vector<Permutation> gens;
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<std::size_t> cycle(p);
    for (std::size_t i = 0; i < p; ++i) cycle[i] = c * p + i;
    gens.push_back(Permutation::from_cycles(degree, {cycle}));
  }
  return FiniteGroup::generate(gens, degree, limits);
}

}  // namespace efg

#endif  // EFG_PRODUCTS_HPP_
