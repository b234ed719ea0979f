#ifndef EFG_SUBNORMALITY_HPP_
#define EFG_SUBNORMALITY_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/functional/hash.hpp>

#include "efg/error.hpp"
#include "efg/formation.hpp"
#include "efg/lattice.hpp"
#include "efg/quotient.hpp"
#include "efg/subgroup.hpp"

namespace efg {

/// How a maximal step K < L is judged: by membership of L / core_L(K), or by
/// the residual L^F lying inside K. The two are equivalent for formations.
enum class EdgeRoute { quotient, residual };

struct ChainStep {
  SubgroupRef lower;
  SubgroupRef upper;
  std::size_t quotient_order;  // |L / core_L(K)|
  bool in_formation;
};

/// H = H_0 < H_1 < ... < H_n = G with every step maximal and certified.
struct ChainWitness {
  std::vector<SubgroupRef> subgroups;
  std::vector<ChainStep> steps;
};

/// Memoized F-subnormality questions inside one ambient group for one
/// formation. Engines for different formations may share an explorer.
class SubnormalityEngine {
 public:
  SubnormalityEngine(SubgroupRef ambient, Formation formation,
                     EdgeRoute route = EdgeRoute::quotient, const Deadline* deadline = nullptr)
      : SubnormalityEngine(std::make_shared<OvergroupExplorer>(std::move(ambient), deadline),
                           std::move(formation), route, deadline) {}

  SubnormalityEngine(std::shared_ptr<OvergroupExplorer> explorer, Formation formation,
                     EdgeRoute route = EdgeRoute::quotient, const Deadline* deadline = nullptr)
      : explorer_(std::move(explorer)),
        formation_(std::move(formation)),
        route_(route),
        deadline_(deadline) {}

  const SubgroupRef& ambient() const { return explorer_->ambient(); }
  const Formation& formation() const { return formation_; }
  EdgeRoute route() const { return route_; }
  OvergroupExplorer& explorer() { return *explorer_; }

  /// Edge condition for a maximal step k < l.
  bool step_ok(const SubgroupRef& k, const SubgroupRef& l) {
    PairKey key{k.members(), l.members()};
    auto it = steps_.find(key);
    if (it != steps_.end()) return it->second;
    bool ok = false;
    if (route_ == EdgeRoute::quotient) {
      ok = formation_.contains(coset_action_image(l, k));
    } else {
      ok = k.contains(residual_of(l));
    }
    steps_.emplace(std::move(key), ok);
    return ok;
  }

  const SubgroupRef& residual_of(const SubgroupRef& l) {
    auto it = residuals_.find(l.members());
    if (it != residuals_.end()) return it->second;
    check_deadline(deadline_);
    return residuals_.emplace(l.members(), residual(formation_, l)).first->second;
  }

  /// Depth-first search for a certified chain from h up to the ambient group.
  bool is_subnormal(const SubgroupRef& h) {
    if (h == ambient()) return true;
    auto it = reach_.find(h.members());
    if (it != reach_.end()) return it->second;
    check_deadline(deadline_);
    const auto& covers = explorer_->minimal_overgroups(h);
    bool found = false;
    // Larger covers first: they tend to reach the top in fewer steps.
    for (auto c = covers.rbegin(); c != covers.rend(); ++c) {
      if (step_ok(h, *c) && is_subnormal(*c)) {
        next_.insert_or_assign(h.members(), *c);
        found = true;
        break;
      }
    }
    reach_.emplace(h.members(), found);
    return found;
  }

  std::optional<ChainWitness> witness(const SubgroupRef& h) {
    if (!is_subnormal(h)) return std::nullopt;
    ChainWitness w{{h}, {}};
    while (!(w.subgroups.back() == ambient())) {
      const SubgroupRef& lo = w.subgroups.back();
      SubgroupRef hi = next_.at(lo.members());
      const std::size_t q = coset_action_image(hi, lo).order();
      w.steps.push_back(ChainStep{lo, hi, q, step_ok(lo, hi)});
      w.subgroups.push_back(std::move(hi));
    }
    return w;
  }

  /// Every maximal step K < L with h <= K fails the edge condition.
  bool is_abnormal(const SubgroupRef& h) {
    if (h == ambient()) return true;
    std::vector<SubgroupRef> queue{h};
    std::unordered_set<ElementSet> seen{h.members()};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const SubgroupRef k = queue[i];
      for (const auto& l : explorer_->minimal_overgroups(k)) {
        if (step_ok(k, l)) return false;
        if (seen.insert(l.members()).second) queue.push_back(l);
      }
    }
    return true;
  }

  /// Every subgroup containing h is F-subnormal.
  bool is_absolutely_subnormal(const SubgroupRef& h) {
    for (const auto& l : explorer_->interval(h)) {
      if (!is_subnormal(l)) return false;
    }
    return true;
  }

 private:
  struct PairKey {
    ElementSet k, l;
    friend bool operator==(const PairKey&, const PairKey&) = default;
  };
  struct PairHash {
    std::size_t operator()(const PairKey& p) const noexcept {
      std::size_t h = std::hash<ElementSet>{}(p.k);
      boost::hash_combine(h, std::hash<ElementSet>{}(p.l));
      return h;
    }
  };

  std::shared_ptr<OvergroupExplorer> explorer_;
  Formation formation_;
  EdgeRoute route_;
  const Deadline* deadline_;
  std::unordered_map<PairKey, bool, PairHash> steps_;
  std::unordered_map<ElementSet, bool> reach_;
  std::unordered_map<ElementSet, SubgroupRef> next_;
  std::unordered_map<ElementSet, SubgroupRef> residuals_;
};

inline bool is_F_subnormal(const SubgroupRef& g, const SubgroupRef& h, const Formation& f) {
  SubnormalityEngine engine(g, f);
  return engine.is_subnormal(h);
}

inline bool is_F_subnormal_via_residual(const SubgroupRef& g, const SubgroupRef& h, const Formation& f) {
  SubnormalityEngine engine(g, f, EdgeRoute::residual);
  return engine.is_subnormal(h);
}

inline bool is_F_abnormal(const SubgroupRef& g, const SubgroupRef& h, const Formation& f) {
  SubnormalityEngine engine(g, f);
  return engine.is_abnormal(h);
}

inline bool is_absolutely_F_subnormal(const SubgroupRef& g, const SubgroupRef& h, const Formation& f) {
  SubnormalityEngine engine(g, f);
  return engine.is_absolutely_subnormal(h);
}

/// x in <H, H^x> for every x in G. Only one x per right coset Hx is needed
/// since H^{hx} = H^x.
inline bool is_abnormal(const SubgroupRef& g, const SubgroupRef& h) {
  require_contains(g, h, "H is not a subgroup of G");
  for (Element x : right_transversal(g, h)) {
    if (x == FiniteGroup::identity()) continue;
    if (normalizes(h, x)) return false;  // <H, H^x> = H does not contain x
    SubgroupRef j = join(h, conjugate(h, x));
    if (!j.contains(x)) return false;
  }
  return true;
}

inline bool is_self_normalizing(const SubgroupRef& g, const SubgroupRef& h) {
  require_contains(g, h, "H is not a subgroup of G");
  for (Element x : right_transversal(g, h)) {
    if (x != FiniteGroup::identity() && normalizes(h, x)) return false;
  }
  return true;
}

/// Classical subnormality, via the descending normal closures of H.
inline bool is_subnormal(const SubgroupRef& g, const SubgroupRef& h) {
  require_contains(g, h, "H is not a subgroup of G");
  SubgroupRef cur = g;
  for (;;) {
    SubgroupRef next = normal_closure(cur, h.generators());
    if (next.order() == h.order()) return true;
    if (next.order() == cur.order()) return false;
    cur = std::move(next);
  }
}

}  // namespace efg

#endif  // EFG_SUBNORMALITY_HPP_
