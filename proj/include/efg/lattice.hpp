#ifndef EFG_LATTICE_HPP_
#define EFG_LATTICE_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "efg/error.hpp"
#include "efg/group.hpp"
#include "efg/series.hpp"
#include "efg/subgroup.hpp"

namespace efg {

inline void sort_canonical(std::vector<SubgroupRef>& v) {
  std::sort(v.begin(), v.end(), [](const SubgroupRef& a, const SubgroupRef& b) {
    return canonical_less(a, b);
  });
}

/// All non-trivial cyclic subgroups of prime-power order, in canonical order.
inline std::vector<SubgroupRef> prime_power_cyclic_subgroups(const SubgroupRef& ambient) {
  const FiniteGroup& g = ambient.group();
  std::vector<SubgroupRef> out;
  std::unordered_set<ElementSet> seen;
  for (auto i = ambient.members().find_first(); i != ElementSet::npos;
       i = ambient.members().find_next(i)) {
    const Element x = static_cast<Element>(i);
    if (x == FiniteGroup::identity() || !is_prime_power(g.element_order(x))) continue;
    SubgroupRef c = cyclic_subgroup(g, x);
    if (seen.insert(c.members()).second) out.push_back(std::move(c));
  }
  sort_canonical(out);
  return out;
}

/// Minimal elements (under inclusion) of a list of subgroups, canonical order.
inline std::vector<SubgroupRef> minimal_elements(std::vector<SubgroupRef> v) {
  sort_canonical(v);
  std::vector<SubgroupRef> out;
  for (const auto& j : v) {
    bool minimal = true;
    for (const auto& k : out) {
      if (k.order() < j.order() && j.contains(k)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(j);
  }
  return out;
}

/// Subgroups of a group with their covering relation. A lattice may be
/// partial (an interval, or whatever a search explored): `expanded[i]` says
/// whether all covers of node i are present.
class SubgroupLattice {
 public:
  SubgroupLattice(SubgroupRef ambient, std::vector<SubgroupRef> nodes,
                  std::vector<std::pair<std::size_t, std::size_t>> edges, std::vector<bool> expanded)
      : ambient_(std::move(ambient)),
        nodes_(std::move(nodes)),
        edges_(std::move(edges)),
        expanded_(std::move(expanded)) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) index_.emplace(nodes_[i].members(), i);
    std::sort(edges_.begin(), edges_.end());
    up_.resize(nodes_.size());
    down_.resize(nodes_.size());
    for (auto [lo, hi] : edges_) {
      up_[lo].push_back(hi);
      down_[hi].push_back(lo);
    }
    compute_classes();
  }

  const SubgroupRef& ambient() const { return ambient_; }
  const std::vector<SubgroupRef>& nodes() const { return nodes_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  const std::vector<bool>& expanded() const { return expanded_; }
  const std::vector<std::vector<std::size_t>>& classes() const { return classes_; }
  std::size_t size() const { return nodes_.size(); }
  bool complete() const {
    return std::all_of(expanded_.begin(), expanded_.end(), [](bool b) { return b; });
  }

  std::optional<std::size_t> find(const ElementSet& members) const {
    auto it = index_.find(members);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Indices of the subgroups covering node i.
  const std::vector<std::size_t>& covers(std::size_t i) const { return up_[i]; }
  /// Indices of the maximal subgroups of node i present in the lattice.
  const std::vector<std::size_t>& maximal_in(std::size_t i) const { return down_[i]; }

  friend bool operator==(const SubgroupLattice& a, const SubgroupLattice& b) {
    return a.ambient_ == b.ambient_ && a.nodes_ == b.nodes_ && a.edges_ == b.edges_ &&
           a.expanded_ == b.expanded_;
  }

 private:
  void compute_classes() {
    std::vector<bool> done(nodes_.size(), false);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (done[i]) continue;
      std::vector<std::size_t> cls{i};
      done[i] = true;
      for (std::size_t k = 0; k < cls.size(); ++k) {
        for (Element a : ambient_.generators()) {
          auto j = find(conjugate(nodes_[cls[k]], a).members());
          if (j && !done[*j]) {
            done[*j] = true;
            cls.push_back(*j);
          }
        }
      }
      std::sort(cls.begin(), cls.end());
      classes_.push_back(std::move(cls));
    }
  }

  SubgroupRef ambient_;
  std::vector<SubgroupRef> nodes_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<bool> expanded_;
  std::vector<std::vector<std::size_t>> classes_;
  std::unordered_map<ElementSet, std::size_t> index_;
  std::vector<std::vector<std::size_t>> up_, down_;
};

/// Memoized upward search inside a fixed ambient group. The covers of H are
/// the minimal subgroups among <H, c> for prime-power cyclic c not in H; every
/// cover arises this way because a group is generated by its prime-power elements.
class OvergroupExplorer {
 public:
  explicit OvergroupExplorer(SubgroupRef ambient, const Deadline* deadline = nullptr)
      : ambient_(std::move(ambient)),
        cyclic_(prime_power_cyclic_subgroups(ambient_)),
        deadline_(deadline) {}

  const SubgroupRef& ambient() const { return ambient_; }
  const std::vector<SubgroupRef>& cyclic() const { return cyclic_; }

  const std::vector<SubgroupRef>& minimal_overgroups(const SubgroupRef& h) {
    auto it = covers_.find(h.members());
    if (it != covers_.end()) return it->second;
    require_contains(ambient_, h, "H is not a subgroup of the ambient group");
    check_deadline(deadline_);
    std::vector<SubgroupRef> joins;
    std::unordered_set<ElementSet> seen;
    for (const auto& c : cyclic_) {
      if (h.contains(c)) continue;
      SubgroupRef j = join(h, c.generators());
      if (seen.insert(j.members()).second) joins.push_back(std::move(j));
    }
    return covers_.emplace(h.members(), minimal_elements(std::move(joins))).first->second;
  }

  /// All L with H <= L <= ambient, canonical order.
  std::vector<SubgroupRef> interval(const SubgroupRef& h) {
    require_contains(ambient_, h, "H is not a subgroup of the ambient group");
    std::vector<SubgroupRef> out{h};
    std::unordered_set<ElementSet> seen{h.members()};
    for (std::size_t i = 0; i < out.size(); ++i) {
      const SubgroupRef cur = out[i];
      for (const auto& l : minimal_overgroups(cur)) {
        if (seen.insert(l.members()).second) out.push_back(l);
      }
    }
    sort_canonical(out);
    return out;
  }

  /// Reuses covers from a saved lattice of the same ambient group.
  void seed(const SubgroupLattice& lattice) {
    if (!(lattice.ambient() == ambient_)) throw InvalidArgument("lattice belongs to another group");
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      if (!lattice.expanded()[i]) continue;
      std::vector<SubgroupRef> up;
      for (std::size_t j : lattice.covers(i)) up.push_back(lattice.nodes()[j]);
      sort_canonical(up);
      covers_.insert_or_assign(lattice.nodes()[i].members(), std::move(up));
    }
  }

  /// Everything explored so far as a (partial) lattice.
  SubgroupLattice explored() const {
    std::vector<SubgroupRef> nodes;
    std::unordered_map<ElementSet, std::size_t> index;
    auto add = [&](const SubgroupRef& s) {
      if (index.emplace(s.members(), 0).second) nodes.push_back(s);
    };
    for (const auto& [key, ups] : covers_) {
      add(subgroup_from_members(ambient_.group(), key));
      for (const auto& u : ups) add(u);
    }
    sort_canonical(nodes);
    for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i].members()] = i;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<bool> expanded(nodes.size(), false);
    for (const auto& [key, ups] : covers_) {
      const std::size_t lo = index.at(key);
      expanded[lo] = true;
      for (const auto& u : ups) edges.emplace_back(lo, index.at(u.members()));
    }
    return SubgroupLattice(ambient_, std::move(nodes), std::move(edges), std::move(expanded));
  }

 private:
  SubgroupRef ambient_;
  std::vector<SubgroupRef> cyclic_;
  const Deadline* deadline_;
  std::unordered_map<ElementSet, std::vector<SubgroupRef>> covers_;
};

/// Every subgroup of `ambient`, by cyclic extension from the trivial subgroup.
inline SubgroupLattice all_subgroups(const SubgroupRef& ambient, const Limits& limits = {},
                                     const Deadline* deadline = nullptr) {
  if (ambient.order() > limits.lattice_budget) {
    throw BudgetExceeded("group order " + std::to_string(ambient.order()) +
                         " exceeds the lattice budget of " + std::to_string(limits.lattice_budget));
  }
  const auto cyclic = prime_power_cyclic_subgroups(ambient);
  std::vector<SubgroupRef> nodes{SubgroupRef::trivial(ambient.group())};
  std::unordered_map<ElementSet, std::size_t> index{{nodes[0].members(), 0}};
  std::vector<std::vector<std::size_t>> joins(1);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    check_deadline(deadline);
    const SubgroupRef h = nodes[i];
    std::vector<std::size_t> found;
    for (const auto& c : cyclic) {
      if (h.contains(c)) continue;
      SubgroupRef j = join(h, c.generators());
      auto [it, inserted] = index.try_emplace(j.members(), nodes.size());
      if (inserted) {
        nodes.push_back(std::move(j));
        joins.emplace_back();
      }
      if (std::find(found.begin(), found.end(), it->second) == found.end()) {
        found.push_back(it->second);
      }
    }
    joins[i] = std::move(found);
  }

  std::vector<std::size_t> order(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return canonical_less(nodes[a], nodes[b]); });
  std::vector<std::size_t> rank(nodes.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j : joins[i]) {
      bool minimal = true;
      for (std::size_t k : joins[i]) {
        if (k != j && nodes[k].order() < nodes[j].order() && nodes[j].contains(nodes[k])) {
          minimal = false;
          break;
        }
      }
      if (minimal) edges.emplace_back(rank[i], rank[j]);
    }
  }
  std::vector<SubgroupRef> sorted;
  sorted.reserve(nodes.size());
  for (std::size_t i : order) sorted.push_back(std::move(nodes[i]));
  std::vector<bool> expanded(sorted.size(), true);
  return SubgroupLattice(ambient, std::move(sorted), std::move(edges), std::move(expanded));
}

inline SubgroupLattice all_subgroups(const FiniteGroup& g, const Limits& limits = {},
                                     const Deadline* deadline = nullptr) {
  return all_subgroups(SubgroupRef::whole(g), limits, deadline);
}

/// Normal subgroups of `ambient`: joins of normal closures of conjugacy classes.
inline std::vector<SubgroupRef> normal_subgroups(const SubgroupRef& ambient) {
  std::vector<SubgroupRef> atoms;
  std::unordered_set<ElementSet> seen_atoms;
  for (const auto& cls : conjugacy_classes(ambient)) {
    if (cls.front() == FiniteGroup::identity()) continue;
    SubgroupRef n = normal_closure(ambient, std::span<const Element>(cls.data(), 1));
    if (seen_atoms.insert(n.members()).second) atoms.push_back(std::move(n));
  }
  std::vector<SubgroupRef> out{SubgroupRef::trivial(ambient.group())};
  std::unordered_set<ElementSet> seen{out[0].members()};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& a : atoms) {
      if (out[i].contains(a)) continue;
      SubgroupRef j = join(out[i], a);
      if (seen.insert(j.members()).second) out.push_back(std::move(j));
    }
  }
  sort_canonical(out);
  return out;
}

inline std::vector<SubgroupRef> normal_subgroups(const FiniteGroup& g) {
  return normal_subgroups(SubgroupRef::whole(g));
}

/// Maximal subgroups of `ambient` (empty for the trivial group).
inline std::vector<SubgroupRef> maximal_subgroups(const SubgroupRef& ambient, const Limits& limits = {},
                                                  const Deadline* deadline = nullptr) {
  SubgroupLattice lattice = all_subgroups(ambient, limits, deadline);
  std::vector<SubgroupRef> out;
  const std::size_t top = lattice.size() - 1;
  for (std::size_t i : lattice.maximal_in(top)) out.push_back(lattice.nodes()[i]);
  sort_canonical(out);
  return out;
}

inline std::vector<SubgroupRef> maximal_subgroups(const FiniteGroup& g, const Limits& limits = {}) {
  return maximal_subgroups(SubgroupRef::whole(g), limits);
}

inline std::vector<SubgroupRef> minimal_overgroups(const SubgroupRef& ambient, const SubgroupRef& h) {
  OvergroupExplorer explorer(ambient);
  return explorer.minimal_overgroups(h);
}

inline std::vector<SubgroupRef> interval(const SubgroupRef& ambient, const SubgroupRef& h) {
  OvergroupExplorer explorer(ambient);
  return explorer.interval(h);
}

/// Frattini subgroup: intersection of the maximal subgroups.
inline SubgroupRef frattini(const SubgroupRef& ambient, const Limits& limits = {}) {
  ElementSet members = ambient.members();
  for (const auto& m : maximal_subgroups(ambient, limits)) members &= m.members();
  return subgroup_from_members(ambient.group(), members);
}

inline SubgroupRef frattini(const FiniteGroup& g, const Limits& limits = {}) {
  ElementSet s = g.cached(CacheSlot::frattini,
                          [&] { return frattini(SubgroupRef::whole(g), limits).members(); });
  return subgroup_from_members(g, s);
}

/// Huppert's criterion: every maximal subgroup has prime index. Needs the full
/// lattice; the library's default supersolubility test goes through chief factors.
inline bool is_supersoluble_by_maximal_index(const SubgroupRef& ambient, const Limits& limits = {}) {
  for (const auto& m : maximal_subgroups(ambient, limits)) {
    if (!is_prime(ambient.order() / m.order())) return false;
  }
  return true;
}

}  // namespace efg

#endif  // EFG_LATTICE_HPP_
