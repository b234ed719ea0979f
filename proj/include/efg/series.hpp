#ifndef EFG_SERIES_HPP_
#define EFG_SERIES_HPP_

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "efg/error.hpp"
#include "efg/group.hpp"
#include "efg/quotient.hpp"
#include "efg/subgroup.hpp"

namespace efg {

// ---------------------------------------------------------------------------
// Arithmetic

/// Prime factorization as (prime, exponent) pairs in increasing prime order.
inline std::vector<std::pair<std::size_t, std::size_t>> factorize(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    std::size_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline bool is_prime(std::size_t n) {
  auto f = factorize(n);
  return f.size() == 1 && f[0].second == 1;
}

/// True for p^k with k >= 1.
inline bool is_prime_power(std::size_t n) { return factorize(n).size() == 1; }

/// The largest power of p dividing n.
inline std::size_t p_part(std::size_t n, std::size_t p) {
  std::size_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

inline std::vector<std::size_t> prime_divisors(std::size_t n) {
  std::vector<std::size_t> out;
  for (auto [p, e] : factorize(n)) out.push_back(p);
  return out;
}

/// pi(G)
inline std::vector<std::size_t> prime_divisors(const FiniteGroup& g) { return prime_divisors(g.order()); }
inline std::vector<std::size_t> prime_divisors(const SubgroupRef& h) { return prime_divisors(h.order()); }

// ---------------------------------------------------------------------------
// Series

inline SubgroupRef derived_subgroup(const SubgroupRef& h) { return commutator_with(h, h); }

inline SubgroupRef derived_subgroup(const FiniteGroup& g) {
  ElementSet s = g.cached(CacheSlot::derived,
                          [&] { return derived_subgroup(SubgroupRef::whole(g)).members(); });
  return subgroup_from_members(g, s);
}

/// H = D0 > D1 > ... until the series stabilizes (the last term is repeated once
/// only if it is the stable term, i.e. the list ends at the first repeat).
inline std::vector<SubgroupRef> derived_series(const SubgroupRef& h) {
  std::vector<SubgroupRef> out{h};
  for (;;) {
    SubgroupRef next = derived_subgroup(out.back());
    if (next.order() == out.back().order()) break;
    out.push_back(std::move(next));
  }
  return out;
}

/// H = g1 > g2 = [g1, H] > ... until stable.
inline std::vector<SubgroupRef> lower_central_series(const SubgroupRef& h) {
  std::vector<SubgroupRef> out{h};
  for (;;) {
    SubgroupRef next = commutator_with(h, out.back());
    if (next.order() == out.back().order()) break;
    out.push_back(std::move(next));
  }
  return out;
}

inline std::vector<SubgroupRef> derived_series(const FiniteGroup& g) {
  return derived_series(SubgroupRef::whole(g));
}
inline std::vector<SubgroupRef> lower_central_series(const FiniteGroup& g) {
  return lower_central_series(SubgroupRef::whole(g));
}

// ---------------------------------------------------------------------------
// Class tests

inline bool is_abelian(const SubgroupRef& h) {
  const FiniteGroup& g = h.group();
  for (Element a : h.generators()) {
    for (Element b : h.generators()) {
      if (g.mul(a, b) != g.mul(b, a)) return false;
    }
  }
  return true;
}

/// Number of elements of H whose order is a power of p (including the identity).
inline std::size_t count_p_elements(const SubgroupRef& h, std::size_t p) {
  const FiniteGroup& g = h.group();
  std::size_t count = 0;
  for (auto i = h.members().find_first(); i != ElementSet::npos; i = h.members().find_next(i)) {
    std::size_t o = g.element_order(static_cast<Element>(i));
    if (p_part(o, p) == o) ++count;
  }
  return count;
}

/// Nilpotent iff every Sylow subgroup is normal, i.e. for each p the p-elements
/// number exactly |H|_p (they then all lie in the unique Sylow p-subgroup).
inline bool is_nilpotent(const SubgroupRef& h) {
  for (auto [p, e] : factorize(h.order())) {
    if (count_p_elements(h, p) != p_part(h.order(), p)) return false;
  }
  return true;
}

inline bool is_soluble(const SubgroupRef& h) { return derived_series(h).back().is_trivial(); }

inline bool is_p_group(const SubgroupRef& h) { return h.order() == 1 || is_prime_power(h.order()); }

/// Supersoluble iff trivial, or some normal subgroup N of prime order has a
/// supersoluble quotient. (In a supersoluble group every minimal normal
/// subgroup has prime order and quotients stay supersoluble, so any such N works.)
inline bool is_supersoluble(const SubgroupRef& h) {
  if (h.is_trivial() || is_nilpotent(h)) return true;
  const FiniteGroup& g = h.group();
  for (auto i = h.members().find_first(); i != ElementSet::npos; i = h.members().find_next(i)) {
    const Element x = static_cast<Element>(i);
    if (!is_prime(g.element_order(x))) continue;
    SubgroupRef c = cyclic_subgroup(g, x);
    if (!is_normal(h, c)) continue;
    FiniteGroup q = coset_action_image(h, c);
    return is_supersoluble(SubgroupRef::whole(q));
  }
  return false;
}

inline bool is_abelian(const FiniteGroup& g) { return g.is_abelian(); }
inline bool is_nilpotent(const FiniteGroup& g) { return is_nilpotent(SubgroupRef::whole(g)); }
inline bool is_soluble(const FiniteGroup& g) { return is_soluble(SubgroupRef::whole(g)); }
inline bool is_supersoluble(const FiniteGroup& g) { return is_supersoluble(SubgroupRef::whole(g)); }

// ---------------------------------------------------------------------------
// Sylow, Hall, Fitting

/// A Sylow p-subgroup of H, grown greedily from the trivial subgroup by
/// p-elements that normalize the current p-subgroup.
inline SubgroupRef sylow_subgroup(const SubgroupRef& h, std::size_t p) {
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not a prime");
  if (h.order() % p != 0) {
    throw InvalidArgument(std::to_string(p) + " does not divide the group order");
  }
  const FiniteGroup& g = h.group();
  const std::size_t target = p_part(h.order(), p);
  SubgroupRef sylow = SubgroupRef::trivial(g);
  while (sylow.order() < target) {
    bool grown = false;
    for (auto i = h.members().find_first(); i != ElementSet::npos; i = h.members().find_next(i)) {
      const Element x = static_cast<Element>(i);
      const std::size_t o = g.element_order(x);
      if (o == 1 || p_part(o, p) != o || sylow.contains(x) || !normalizes(sylow, x)) continue;
      sylow = join(sylow, std::span<const Element>(&x, 1));
      grown = true;
      break;
    }
    if (!grown) throw Error("Sylow construction stalled");
  }
  return sylow;
}

inline SubgroupRef sylow_subgroup(const FiniteGroup& g, std::size_t p) {
  return sylow_subgroup(SubgroupRef::whole(g), p);
}

/// Largest normal p-subgroup: the core of a Sylow p-subgroup.
inline SubgroupRef p_core(const SubgroupRef& h, std::size_t p) {
  if (h.order() % p != 0) return SubgroupRef::trivial(h.group());
  return core(h, sylow_subgroup(h, p));
}

/// Fitting subgroup: product of the p-cores.
inline SubgroupRef fitting(const SubgroupRef& h) {
  SubgroupRef f = SubgroupRef::trivial(h.group());
  for (std::size_t p : prime_divisors(h.order())) f = join(f, p_core(h, p));
  return f;
}

inline SubgroupRef fitting(const FiniteGroup& g) {
  ElementSet s = g.cached(CacheSlot::fitting, [&] { return fitting(SubgroupRef::whole(g)).members(); });
  return subgroup_from_members(g, s);
}

/// Hall pi-subgroup of a soluble group. Built prime by prime: given a Hall
/// subgroup K for the primes so far, some Sylow q-subgroup Q has |<K,Q>| = |K||Q|.
inline SubgroupRef hall_subgroup_soluble(const SubgroupRef& h, const std::vector<std::size_t>& pi) {
  if (!is_soluble(h)) throw InvalidArgument("Hall subgroup requested for an insoluble group");
  const FiniteGroup& g = h.group();
  SubgroupRef hall = SubgroupRef::trivial(g);
  for (std::size_t q : prime_divisors(h.order())) {
    if (std::find(pi.begin(), pi.end(), q) == pi.end()) continue;
    SubgroupRef base = sylow_subgroup(h, q);
    bool found = false;
    for (Element x : right_transversal(h, normalizer(h, base))) {
      SubgroupRef candidate = join(hall, conjugate(base, x));
      if (candidate.order() == hall.order() * base.order()) {
        hall = std::move(candidate);
        found = true;
        break;
      }
    }
    if (!found) throw Error("no permutable Sylow subgroup found for the Hall subgroup");
  }
  return hall;
}

inline SubgroupRef hall_subgroup_soluble(const FiniteGroup& g, const std::vector<std::size_t>& pi) {
  return hall_subgroup_soluble(SubgroupRef::whole(g), pi);
}

}  // namespace efg

#endif  // EFG_SERIES_HPP_
