#ifndef EFG_SUBGROUP_HPP_
#define EFG_SUBGROUP_HPP_

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "efg/error.hpp"
#include "efg/group.hpp"

namespace efg {

/// A subgroup of a FiniteGroup, stored as a member bitset over the parent's
/// elements together with a small generating set.
class SubgroupRef {
 public:
  /// `members` must already be closed; `generators` must generate it.
  SubgroupRef(FiniteGroup parent, ElementSet members, std::vector<Element> generators)
      : parent_(std::move(parent)),
        members_(std::move(members)),
        generators_(std::move(generators)),
        order_(members_.count()) {}

  static SubgroupRef whole(const FiniteGroup& g) {
    return SubgroupRef(g, g.full_set(), {g.generators().begin(), g.generators().end()});
  }

  static SubgroupRef trivial(const FiniteGroup& g) {
    ElementSet s = g.empty_set();
    s.set(FiniteGroup::identity());
    return SubgroupRef(g, std::move(s), {});
  }

  const FiniteGroup& group() const { return parent_; }
  const ElementSet& members() const { return members_; }
  std::size_t order() const { return order_; }
  std::span<const Element> generators() const { return generators_; }
  std::vector<Element> elements() const { return members_of(members_); }

  bool contains(Element e) const { return members_.test(e); }
  /// other <= this
  bool contains(const SubgroupRef& other) const { return other.members_.is_subset_of(members_); }
  bool is_trivial() const { return order_ == 1; }
  bool is_whole() const { return order_ == parent_.order(); }

  /// This subgroup as a standalone group (same degree, own table).
  FiniteGroup as_group() const { return FiniteGroup::induced(parent_, members_, generators_); }

  friend bool operator==(const SubgroupRef& a, const SubgroupRef& b) {
    return a.parent_.same_as(b.parent_) && a.members_ == b.members_;
  }

  /// Canonical order: by subgroup order, then lexicographically by sorted member list.
  friend bool canonical_less(const SubgroupRef& a, const SubgroupRef& b) {
    if (a.order_ != b.order_) return a.order_ < b.order_;
    auto i = a.members_.find_first(), j = b.members_.find_first();
    while (i != ElementSet::npos && j != ElementSet::npos) {
      if (i != j) return i < j;
      i = a.members_.find_next(i);
      j = b.members_.find_next(j);
    }
    return false;
  }

 private:
  FiniteGroup parent_;
  ElementSet members_;
  std::vector<Element> generators_;
  std::size_t order_;
};

struct SubgroupHash {
  std::size_t operator()(const SubgroupRef& h) const noexcept {
    return std::hash<ElementSet>{}(h.members());
  }
};

inline void require_same_parent(const SubgroupRef& a, const SubgroupRef& b) {
  if (!a.group().same_as(b.group())) {
    throw InvalidArgument("subgroups belong to different groups");
  }
}

inline void require_contains(const SubgroupRef& outer, const SubgroupRef& inner,
                             const char* what = "subgroup is not contained in its ambient group") {
  require_same_parent(outer, inner);
  if (!outer.contains(inner)) throw InvalidArgument(what);
}

namespace detail {

/// Smallest subgroup containing the subgroup `base` (closed, generated by
/// `base_gens`) and the elements `extra`. Adds whole right cosets of `base` at a time.
inline ElementSet close(const FiniteGroup& g, const ElementSet& base,
                        std::span<const Element> base_gens, std::span<const Element> extra) {
  ElementSet result = base;
  const auto base_list = members_of(base);
  std::vector<Element> gens(base_gens.begin(), base_gens.end());
  gens.insert(gens.end(), extra.begin(), extra.end());
  std::vector<Element> reps{FiniteGroup::identity()};
  auto add_coset = [&](Element y) {
    for (Element h : base_list) result.set(g.mul(h, y));
    reps.push_back(y);
  };
  for (Element x : extra) {
    if (!result.test(x)) add_coset(x);
  }
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (Element s : gens) {
      Element y = g.mul(reps[i], s);
      if (!result.test(y)) add_coset(y);
    }
  }
  return result;
}

inline ElementSet identity_set(const FiniteGroup& g) {
  ElementSet s = g.empty_set();
  s.set(FiniteGroup::identity());
  return s;
}

}  // namespace detail

/// Subgroup generated by `seed` inside the group.
inline SubgroupRef subgroup_generated(const FiniteGroup& g, std::span<const Element> seed) {
  std::vector<Element> gens;
  for (Element e : seed) {
    if (e >= g.order()) throw InvalidArgument("seed element is not in the group");
    if (e != FiniteGroup::identity() && std::find(gens.begin(), gens.end(), e) == gens.end()) {
      gens.push_back(e);
    }
  }
  ElementSet members = detail::close(g, detail::identity_set(g), {}, gens);
  return SubgroupRef(g, std::move(members), std::move(gens));
}

inline SubgroupRef subgroup_generated(const FiniteGroup& g, std::span<const Permutation> seed) {
  std::vector<Element> idx;
  for (const auto& p : seed) {
    auto e = g.index_of(p);
    if (!e) throw InvalidArgument("seed permutation " + p.to_string() + " is not in the group");
    idx.push_back(*e);
  }
  return subgroup_generated(g, idx);
}

inline SubgroupRef cyclic_subgroup(const FiniteGroup& g, Element x) {
  return subgroup_generated(g, std::span<const Element>(&x, 1));
}

/// <h, extra>
inline SubgroupRef join(const SubgroupRef& h, std::span<const Element> extra) {
  std::vector<Element> gens(h.generators().begin(), h.generators().end());
  std::vector<Element> added;
  for (Element e : extra) {
    if (!h.contains(e) && std::find(added.begin(), added.end(), e) == added.end()) {
      added.push_back(e);
    }
  }
  if (added.empty()) return h;
  ElementSet members = detail::close(h.group(), h.members(), h.generators(), added);
  gens.insert(gens.end(), added.begin(), added.end());
  return SubgroupRef(h.group(), std::move(members), std::move(gens));
}

inline SubgroupRef join(const SubgroupRef& a, const SubgroupRef& b) {
  require_same_parent(a, b);
  if (a.contains(b)) return a;
  if (b.contains(a)) return b;
  return join(a, b.generators());
}

/// Subgroup from a closed member set; a generating set is chosen greedily in
/// ascending element order.
inline SubgroupRef subgroup_from_members(const FiniteGroup& g, const ElementSet& members) {
  ElementSet current = detail::identity_set(g);
  std::vector<Element> gens;
  for (auto i = members.find_first(); i != ElementSet::npos; i = members.find_next(i)) {
    if (current.test(i)) continue;
    Element x = static_cast<Element>(i);
    current = detail::close(g, current, gens, std::span<const Element>(&x, 1));
    gens.push_back(x);
  }
  if (current != members) throw InvalidArgument("member set is not a subgroup");
  return SubgroupRef(g, members, std::move(gens));
}

inline SubgroupRef intersection(const SubgroupRef& a, const SubgroupRef& b) {
  require_same_parent(a, b);
  if (a.contains(b)) return b;
  if (b.contains(a)) return a;
  return subgroup_from_members(a.group(), a.members() & b.members());
}

/// H^x = x^-1 H x
inline SubgroupRef conjugate(const SubgroupRef& h, Element x) {
  const FiniteGroup& g = h.group();
  ElementSet members = g.empty_set();
  for (auto i = h.members().find_first(); i != ElementSet::npos; i = h.members().find_next(i)) {
    members.set(g.conj(static_cast<Element>(i), x));
  }
  std::vector<Element> gens;
  for (Element e : h.generators()) gens.push_back(g.conj(e, x));
  return SubgroupRef(g, std::move(members), std::move(gens));
}

inline bool normalizes(const SubgroupRef& h, Element x) {
  const FiniteGroup& g = h.group();
  for (Element e : h.generators()) {
    if (!h.contains(g.conj(e, x))) return false;
  }
  return true;
}

/// H normal in `ambient` (H <= ambient required).
inline bool is_normal(const SubgroupRef& ambient, const SubgroupRef& h) {
  require_contains(ambient, h);
  for (Element a : ambient.generators()) {
    if (!normalizes(h, a)) return false;
  }
  return true;
}

/// N_ambient(H) = { g in ambient : H^g = H }.
inline SubgroupRef normalizer(const SubgroupRef& ambient, const SubgroupRef& h) {
  require_contains(ambient, h, "H is not a subgroup of G");
  const FiniteGroup& g = ambient.group();
  ElementSet members = g.empty_set();
  for (auto i = ambient.members().find_first(); i != ElementSet::npos;
       i = ambient.members().find_next(i)) {
    if (normalizes(h, static_cast<Element>(i))) members.set(i);
  }
  return subgroup_from_members(g, members);
}

inline SubgroupRef normalizer(const FiniteGroup& g, const SubgroupRef& h) {
  return normalizer(SubgroupRef::whole(g), h);
}

/// Representatives of the right cosets H x of H in `ambient`, starting with the identity.
inline std::vector<Element> right_transversal(const SubgroupRef& ambient, const SubgroupRef& h) {
  require_contains(ambient, h);
  const FiniteGroup& g = ambient.group();
  const auto hlist = h.elements();
  ElementSet covered = g.empty_set();
  std::vector<Element> reps;
  for (auto i = ambient.members().find_first(); i != ElementSet::npos;
       i = ambient.members().find_next(i)) {
    if (covered.test(i)) continue;
    Element x = static_cast<Element>(i);
    reps.push_back(x);
    for (Element y : hlist) covered.set(g.mul(y, x));
  }
  return reps;
}

/// Core of A in B: the intersection of all B-conjugates of A.
inline SubgroupRef core(const SubgroupRef& b, const SubgroupRef& a) {
  require_contains(b, a, "core requires A <= B");
  ElementSet members = a.members();
  for (Element x : right_transversal(b, a)) {
    if (x == FiniteGroup::identity()) continue;
    members &= conjugate(a, x).members();
    if (members.count() == 1) break;
  }
  return subgroup_from_members(a.group(), members);
}

inline SubgroupRef core(const FiniteGroup& g, const SubgroupRef& a) {
  return core(SubgroupRef::whole(g), a);
}

/// Smallest normal subgroup of `ambient` containing `seed`.
inline SubgroupRef normal_closure(const SubgroupRef& ambient, std::span<const Element> seed) {
  const FiniteGroup& g = ambient.group();
  for (Element e : seed) {
    if (!ambient.contains(e)) throw InvalidArgument("seed element outside ambient group");
  }
  SubgroupRef n = subgroup_generated(g, seed);
  bool grown = true;
  while (grown) {
    grown = false;
    std::vector<Element> gens(n.generators().begin(), n.generators().end());
    for (Element a : ambient.generators()) {
      for (Element x : gens) {
        Element y = g.conj(x, a);
        if (!n.contains(y)) {
          n = join(n, std::span<const Element>(&y, 1));
          grown = true;
        }
      }
    }
  }
  return n;
}

/// [A, B] for subgroups A, B of `ambient` where A is normal in ambient and B
/// generates the ambient group (the case used for series), computed as the normal
/// closure of commutators of generators.
inline SubgroupRef commutator_with(const SubgroupRef& ambient, const SubgroupRef& a) {
  const FiniteGroup& g = ambient.group();
  std::vector<Element> comms;
  for (Element x : a.generators()) {
    for (Element y : ambient.generators()) {
      Element c = g.commutator(x, y);
      if (c != FiniteGroup::identity()) comms.push_back(c);
    }
  }
  return normal_closure(ambient, comms);
}

inline SubgroupRef centralizer(const SubgroupRef& ambient, const SubgroupRef& h) {
  require_contains(ambient, h);
  const FiniteGroup& g = ambient.group();
  ElementSet members = g.empty_set();
  for (auto i = ambient.members().find_first(); i != ElementSet::npos;
       i = ambient.members().find_next(i)) {
    const Element x = static_cast<Element>(i);
    bool ok = true;
    for (Element e : h.generators()) {
      if (g.mul(x, e) != g.mul(e, x)) { ok = false; break; }
    }
    if (ok) members.set(i);
  }
  return subgroup_from_members(g, members);
}

inline SubgroupRef center(const SubgroupRef& h) { return centralizer(h, h); }

inline SubgroupRef center(const FiniteGroup& g) {
  ElementSet s = g.cached(CacheSlot::center, [&] { return center(SubgroupRef::whole(g)).members(); });
  return subgroup_from_members(g, s);
}

/// Conjugacy classes of the ambient group's elements, each sorted; classes
/// ordered by least element.
inline std::vector<std::vector<Element>> conjugacy_classes(const SubgroupRef& ambient) {
  const FiniteGroup& g = ambient.group();
  ElementSet seen = g.empty_set();
  std::vector<std::vector<Element>> classes;
  for (auto i = ambient.members().find_first(); i != ElementSet::npos;
       i = ambient.members().find_next(i)) {
    if (seen.test(i)) continue;
    std::vector<Element> cls{static_cast<Element>(i)};
    seen.set(i);
    for (std::size_t k = 0; k < cls.size(); ++k) {
      for (Element a : ambient.generators()) {
        Element y = g.conj(cls[k], a);
        if (!seen.test(y)) {
          seen.set(y);
          cls.push_back(y);
        }
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

}  // namespace efg

#endif  // EFG_SUBGROUP_HPP_
