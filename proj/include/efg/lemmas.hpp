#ifndef EFG_LEMMAS_HPP_
#define EFG_LEMMAS_HPP_

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "efg/error.hpp"
#include "efg/formation.hpp"
#include "efg/lattice.hpp"
#include "efg/parallel.hpp"
#include "efg/quotient.hpp"
#include "efg/report.hpp"
#include "efg/series.hpp"
#include "efg/structure.hpp"
#include "efg/subnormality.hpp"

namespace efg {

/// Names of the property checks run by check_lemmas, in report order.
inline const std::vector<std::string>& lemma_checks() {
  static const std::vector<std::string> names = {
      "lemma1.1", "lemma1.2", "lemma1.3", "lemma1.4", "lemma1.5", "lemma1.6",
      "lemma2.1", "lemma2.2", "lemma3.1", "lemma3.2", "lemma3.3", "lemma4",
      "lemma5",   "lemma6",   "alternativity", "abnormal-self-normalizing"};
  return names;
}

namespace detail {

/// Lazily computed per-node verdicts for one group and one formation.
class LemmaState {
 public:
  LemmaState(GroupContext& ctx, const Formation& f) : ctx_(ctx), f_(f) {}

  const std::vector<SubgroupRef>& nodes() { return ctx_.lattice().nodes(); }

  bool sn(std::size_t i) { return get(sn_, i, [&](const SubgroupRef& h) { return ctx_.engine(f_).is_subnormal(h); }); }
  bool fabn(std::size_t i) { return get(fabn_, i, [&](const SubgroupRef& h) { return ctx_.engine(f_).is_abnormal(h); }); }
  bool abn(std::size_t i) { return ctx_.abnormal(nodes()[i]); }
  bool selfnorm(std::size_t i) { return ctx_.self_normalizing(nodes()[i]); }

  std::size_t index(const SubgroupRef& h) { return *ctx_.lattice().find(h.members()); }

  /// Subnormality engine with ambient node i, shared between checks.
  SubnormalityEngine& engine_in(std::size_t i) {
    if (inner_.empty()) inner_.resize(nodes().size());
    if (!inner_[i]) inner_[i] = std::make_unique<SubnormalityEngine>(nodes()[i], f_, EdgeRoute::quotient, ctx_.deadline());
    return *inner_[i];
  }

  /// (hom, engine on the image) for every non-trivial proper normal subgroup.
  struct QuotientCase {
    SubgroupRef kernel;
    GroupHom hom;
    std::unique_ptr<SubnormalityEngine> engine;
  };

  std::vector<QuotientCase>& quotients() {
    if (!quotients_) {
      quotients_.emplace();
      for (const auto& n : normal_subgroups(ctx_.whole())) {
        if (n.is_trivial() || n.is_whole()) continue;
        GroupHom hom = quotient(ctx_.whole(), n, ctx_.limits());
        auto engine = std::make_unique<SubnormalityEngine>(SubgroupRef::whole(hom.image()), f_, EdgeRoute::quotient,
                                                           ctx_.deadline());
        quotients_->push_back(QuotientCase{n, std::move(hom), std::move(engine)});
      }
    }
    return *quotients_;
  }

 private:
  template <class Fn>
  bool get(std::vector<signed char>& memo, std::size_t i, Fn&& fn) {
    if (memo.empty()) memo.assign(nodes().size(), -1);
    if (memo[i] < 0) memo[i] = fn(nodes()[i]) ? 1 : 0;
    return memo[i] == 1;
  }

  GroupContext& ctx_;
  const Formation& f_;
  std::vector<signed char> sn_, fabn_;
  std::vector<std::unique_ptr<SubnormalityEngine>> inner_;
  std::optional<std::vector<QuotientCase>> quotients_;
};

/// Counts instances and keeps the first counterexample.
struct Tally {
  std::size_t instances = 0;
  Json counterexample = nullptr;

  void require(bool ok, const std::function<Json()>& describe) {
    ++instances;
    if (!ok && counterexample.is_null()) counterexample = describe();
  }
  bool ok() const { return counterexample.is_null(); }
};

}  // namespace detail

/// Runs the named property checks on one group. Statements whose hypotheses
/// need a flag the formation lacks are still evaluated but marked empirical;
/// statements about soluble groups are not applicable to insoluble ones.
inline std::vector<CheckOutcome> check_lemmas(GroupContext& ctx, const Formation& f,
                                              const std::vector<std::string>& which = lemma_checks()) {
  detail::LemmaState st(ctx, f);
  const auto& fl = f.flags();
  const SubgroupRef& G = ctx.whole();
  std::vector<CheckOutcome> out;

  for (const auto& name : which) {
    CheckOutcome oc{name, Status::pass, true, "formation", Json::object()};
    auto need = [&](bool flag, const char* text) {
      if (!flag) {
        oc.in_hypothesis = false;
        oc.hypothesis = std::string("formation ") + f.name() + " not flagged " + text + ": empirical only";
      } else {
        oc.hypothesis = text;
      }
    };
    detail::Tally t;
    bool applicable = true;
    try {
      if (name == "lemma1.1") {
        // K F-sn in H and H F-sn in G imply K F-sn in G.
        for (std::size_t h = 0; h < st.nodes().size(); ++h) {
          if (st.nodes()[h].is_whole() || !st.sn(h)) continue;
          auto& inner = st.engine_in(h);
          for (std::size_t k = 0; k < st.nodes().size(); ++k) {
            if (!st.nodes()[h].contains(st.nodes()[k]) || !inner.is_subnormal(st.nodes()[k])) continue;
            t.require(st.sn(k), [&] { return Json{{"H", witness(st.nodes()[h])}, {"K", witness(st.nodes()[k])}}; });
          }
        }
      } else if (name == "lemma1.2") {
        // K/N F-sn in G/N implies K F-sn in G.
        for (auto& q : st.quotients()) {
          for (std::size_t k = 0; k < st.nodes().size(); ++k) {
            if (!st.nodes()[k].contains(q.kernel)) continue;
            if (!q.engine->is_subnormal(q.hom.image_of(st.nodes()[k]))) continue;
            t.require(st.sn(k), [&] { return Json{{"N", witness(q.kernel)}, {"K", witness(st.nodes()[k])}}; });
          }
        }
      } else if (name == "lemma1.3") {
        // H F-sn in G implies HN/N F-sn in G/N.
        for (auto& q : st.quotients()) {
          for (std::size_t h = 0; h < st.nodes().size(); ++h) {
            if (!st.sn(h)) continue;
            t.require(q.engine->is_subnormal(q.hom.image_of(st.nodes()[h])),
                      [&] { return Json{{"N", witness(q.kernel)}, {"H", witness(st.nodes()[h])}}; });
          }
        }
      } else if (name == "lemma1.4") {
        need(fl.subgroup_closed, "subgroup-closed");
        // G^F <= H implies H F-sn in G.
        const SubgroupRef& r = ctx.residual_of(f);
        for (std::size_t h = 0; h < st.nodes().size(); ++h) {
          if (!st.nodes()[h].contains(r)) continue;
          t.require(st.sn(h), [&] { return Json{{"H", witness(st.nodes()[h])}}; });
        }
      } else if (name == "lemma1.5") {
        need(fl.subgroup_closed, "subgroup-closed");
        // H F-sn in G implies H meet K F-sn in K.
        for (std::size_t h = 0; h < st.nodes().size(); ++h) {
          if (!st.sn(h)) continue;
          for (std::size_t k = 0; k < st.nodes().size(); ++k) {
            const SubgroupRef meet = intersection(st.nodes()[h], st.nodes()[k]);
            t.require(st.engine_in(k).is_subnormal(meet),
                      [&] { return Json{{"H", witness(st.nodes()[h])}, {"K", witness(st.nodes()[k])}}; });
          }
        }
      } else if (name == "lemma1.6") {
        need(fl.subgroup_closed, "subgroup-closed");
        // K <= H, H F-sn in G and H in F imply K F-sn in G.
        for (std::size_t h = 0; h < st.nodes().size(); ++h) {
          if (!st.sn(h) || !f.contains(st.nodes()[h])) continue;
          for (std::size_t k = 0; k < st.nodes().size(); ++k) {
            if (!st.nodes()[h].contains(st.nodes()[k])) continue;
            t.require(st.sn(k), [&] { return Json{{"H", witness(st.nodes()[h])}, {"K", witness(st.nodes()[k])}}; });
          }
        }
      } else if (name == "lemma2.1") {
        need(fl.subgroup_closed && fl.contains_prime_order, "subgroup-closed, contains groups of prime order");
        // A F-abnormal and A <= B imply B F-abnormal and self-normalizing.
        for (std::size_t a = 0; a < st.nodes().size(); ++a) {
          if (!st.fabn(a)) continue;
          for (std::size_t b = 0; b < st.nodes().size(); ++b) {
            if (!st.nodes()[b].contains(st.nodes()[a])) continue;
            t.require(st.fabn(b) && st.selfnorm(b),
                      [&] { return Json{{"A", witness(st.nodes()[a])}, {"B", witness(st.nodes()[b])}}; });
          }
        }
      } else if (name == "lemma2.2") {
        need(fl.subgroup_closed && fl.contains_prime_order, "subgroup-closed, contains groups of prime order");
        // In soluble G, F-abnormal implies abnormal.
        if (!ctx.soluble()) {
          applicable = false;
        } else {
          for (std::size_t a = 0; a < st.nodes().size(); ++a) {
            if (!st.fabn(a)) continue;
            t.require(st.abn(a), [&] { return Json{{"A", witness(st.nodes()[a])}}; });
          }
        }
      } else if (name == "lemma3.1") {
        oc.hypothesis = "none";
        // Normalizers of Sylow subgroups are abnormal.
        for (std::size_t p : prime_divisors(G)) {
          const std::size_t pp = p_part(G.order(), p);
          for (std::size_t i = 0; i < st.nodes().size(); ++i) {
            if (st.nodes()[i].order() != pp) continue;
            const SubgroupRef n = normalizer(G, st.nodes()[i]);
            t.require(ctx.abnormal(n), [&] { return Json{{"P", witness(st.nodes()[i])}}; });
          }
        }
      } else if (name == "lemma3.2") {
        oc.hypothesis = "none";
        // A abnormal and A <= B imply B abnormal and self-normalizing.
        for (std::size_t a = 0; a < st.nodes().size(); ++a) {
          if (!st.abn(a)) continue;
          for (std::size_t b = 0; b < st.nodes().size(); ++b) {
            if (!st.nodes()[b].contains(st.nodes()[a])) continue;
            t.require(st.abn(b) && st.selfnorm(b),
                      [&] { return Json{{"A", witness(st.nodes()[a])}, {"B", witness(st.nodes()[b])}}; });
          }
        }
      } else if (name == "lemma3.3") {
        oc.hypothesis = "none";
        // A abnormal implies AN/N abnormal in G/N.
        for (auto& q : st.quotients()) {
          const SubgroupRef top = SubgroupRef::whole(q.hom.image());
          for (std::size_t a = 0; a < st.nodes().size(); ++a) {
            if (!st.abn(a)) continue;
            t.require(is_abnormal(top, q.hom.image_of(st.nodes()[a])),
                      [&] { return Json{{"N", witness(q.kernel)}, {"A", witness(st.nodes()[a])}}; });
          }
        }
      } else if (name == "lemma4") {
        need(fl.subgroup_closed && fl.saturated, "subgroup-closed, saturated");
        // All maximal subgroups F-sn implies G in F.
        const std::size_t top = st.index(G);
        bool all = true;
        for (std::size_t m : ctx.lattice().maximal_in(top)) all = all && st.sn(m);
        t.require(!all || f.contains(G), [&] { return Json{{"all_maximal_F_subnormal", all}, {"in_F", false}}; });
      } else if (name == "lemma5") {
        need(fl.subgroup_closed && fl.saturated && fl.superradical && fl.contains_nilpotents,
             "subgroup-closed, saturated, superradical, contains all nilpotent groups");
        // Soluble G: G in F iff every primary cyclic subgroup is F-sn.
        if (!ctx.soluble()) {
          applicable = false;
        } else {
          auto& engine = ctx.engine(f);
          Json first = nullptr;
          bool all = true;
          for (const auto& c : ctx.primary_cyclic()) {
            if (!engine.is_subnormal(c)) {
              all = false;
              first = witness(c);
              break;
            }
          }
          const bool in = f.contains(G);
          t.require(in == all, [&] { return Json{{"in_F", in}, {"primary_F_subnormal", all}, {"witness", first}}; });
        }
      } else if (name == "lemma6") {
        need(fl.subgroup_closed && fl.saturated && fl.contains_nilpotents,
             "subgroup-closed, saturated, contains all nilpotent groups");
        // G in F iff every primary cyclic subgroup is absolutely F-sn.
        auto& engine = ctx.engine(f);
        Json first = nullptr;
        bool all = true;
        for (const auto& c : ctx.primary_cyclic()) {
          if (!engine.is_absolutely_subnormal(c)) {
            all = false;
            first = witness(c);
            break;
          }
        }
        const bool in = f.contains(G);
        t.require(in == all, [&] { return Json{{"in_F", in}, {"primary_absolutely_F_subnormal", all}, {"witness", first}}; });
      } else if (name == "alternativity") {
        // No proper subgroup is both F-sn and F-abnormal.
        for (std::size_t h = 0; h < st.nodes().size(); ++h) {
          if (st.nodes()[h].is_whole()) continue;
          t.require(!(st.sn(h) && st.fabn(h)), [&] { return Json{{"H", witness(st.nodes()[h])}}; });
        }
      } else if (name == "abnormal-self-normalizing") {
        oc.hypothesis = "none";
        for (std::size_t h = 0; h < st.nodes().size(); ++h) {
          if (!st.abn(h)) continue;
          t.require(st.selfnorm(h), [&] { return Json{{"H", witness(st.nodes()[h])}}; });
        }
      } else {
        throw InvalidArgument("unknown lemma check '" + name + "'");
      }
      if (!applicable) {
        oc.status = Status::not_applicable;
        oc.details["reason"] = "G is not soluble";
      } else {
        oc.status = t.ok() ? Status::pass : Status::fail;
        oc.details["instances"] = t.instances;
        if (!t.ok()) oc.details["counterexample"] = t.counterexample;
      }
    } catch (const BudgetExceeded& e) {
      oc.status = Status::budget_exceeded;
      oc.details["reason"] = e.what();
    }
    out.push_back(std::move(oc));
  }
  return out;
}

/// The lemma battery over a catalog, one thread per group up to `jobs`.
inline VerdictReport check_lemma_suite(const std::vector<NamedGroup>& catalog, const Formation& f,
                                       const std::vector<std::string>& which = lemma_checks(),
                                       const Limits& limits = {}, unsigned jobs = 1) {
  VerdictReport report;
  report.formation = f.name();
  report.selected_checks = which;
  report.groups.resize(catalog.size());
  parallel_for(catalog.size(), jobs, [&](std::size_t i) {
    GroupContext ctx(catalog[i].group, limits);
    report.groups[i] = GroupVerdict{catalog[i].name, catalog[i].group.order(), check_lemmas(ctx, f, which)};
  });
  return report;
}

}  // namespace efg

#endif  // EFG_LEMMAS_HPP_
