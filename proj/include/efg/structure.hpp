#ifndef EFG_STRUCTURE_HPP_
#define EFG_STRUCTURE_HPP_

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "efg/error.hpp"
#include "efg/formation.hpp"
#include "efg/lattice.hpp"
#include "efg/report.hpp"
#include "efg/series.hpp"
#include "efg/subgroup.hpp"
#include "efg/subnormality.hpp"

namespace efg {

/// Per-group memo shared by the checkers: the lattice (built on first use),
/// one overgroup explorer, one subnormality engine per formation and the
/// abnormality verdicts computed so far.
class GroupContext {
 public:
  explicit GroupContext(FiniteGroup g, Limits limits = {}, const Deadline* deadline = nullptr)
      : group_(std::move(g)),
        whole_(SubgroupRef::whole(group_)),
        limits_(limits),
        deadline_(deadline),
        explorer_(std::make_shared<OvergroupExplorer>(whole_, deadline)) {}

  GroupContext(const GroupContext&) = delete;
  GroupContext& operator=(const GroupContext&) = delete;

  const FiniteGroup& group() const { return group_; }
  const SubgroupRef& whole() const { return whole_; }
  const Limits& limits() const { return limits_; }
  const Deadline* deadline() const { return deadline_; }

  /// Throws BudgetExceeded above the lattice budget.
  const SubgroupLattice& lattice() {
    if (!lattice_) {
      lattice_ = all_subgroups(whole_, limits_, deadline_);
      explorer_->seed(*lattice_);
    }
    return *lattice_;
  }

  const std::vector<SubgroupRef>& primary_cyclic() { return explorer_->cyclic(); }
  OvergroupExplorer& explorer() { return *explorer_; }

  SubnormalityEngine& engine(const Formation& f) {
    auto it = engines_.find(f.name());
    if (it == engines_.end()) {
      it = engines_.emplace(f.name(), std::make_unique<SubnormalityEngine>(explorer_, f, EdgeRoute::quotient,
                                                                           deadline_))
               .first;
    }
    return *it->second;
  }

  bool abnormal(const SubgroupRef& h) {
    auto it = abnormal_.find(h.members());
    if (it != abnormal_.end()) return it->second;
    check_deadline(deadline_);
    return abnormal_.emplace(h.members(), is_abnormal(whole_, h)).first->second;
  }

  bool self_normalizing(const SubgroupRef& h) {
    auto it = self_normalizing_.find(h.members());
    if (it != self_normalizing_.end()) return it->second;
    return self_normalizing_.emplace(h.members(), is_self_normalizing(whole_, h)).first->second;
  }

  const SubgroupRef& residual_of(const Formation& f) {
    auto it = residuals_.find(f.name());
    if (it == residuals_.end()) it = residuals_.emplace(f.name(), residual(f, whole_)).first;
    return it->second;
  }

  bool soluble() {
    if (!soluble_) soluble_ = is_soluble(whole_);
    return *soluble_;
  }

  bool nilpotent() {
    if (!nilpotent_) nilpotent_ = is_nilpotent(whole_);
    return *nilpotent_;
  }

 private:
  FiniteGroup group_;
  SubgroupRef whole_;
  Limits limits_;
  const Deadline* deadline_;
  std::shared_ptr<OvergroupExplorer> explorer_;
  std::optional<SubgroupLattice> lattice_;
  std::map<std::string, std::unique_ptr<SubnormalityEngine>> engines_;
  std::map<std::string, SubgroupRef> residuals_;
  std::unordered_map<ElementSet, bool> abnormal_;
  std::unordered_map<ElementSet, bool> self_normalizing_;
  std::optional<bool> soluble_, nilpotent_;
};

// ---------------------------------------------------------------------------
// Finders and recognizers

/// Non-trivial cyclic subgroups of prime-power order.
inline std::vector<SubgroupRef> primary_cyclic_subgroups(const SubgroupRef& g) {
  return prime_power_cyclic_subgroups(g);
}

inline std::vector<SubgroupRef> primary_cyclic_subgroups(const FiniteGroup& g) {
  return primary_cyclic_subgroups(SubgroupRef::whole(g));
}

/// Nilpotent self-normalizing subgroups, canonical order.
inline std::vector<SubgroupRef> carter_subgroups(GroupContext& ctx) {
  std::vector<SubgroupRef> out;
  for (const auto& h : ctx.lattice().nodes()) {
    if (is_nilpotent(h) && ctx.self_normalizing(h)) out.push_back(h);
  }
  return out;
}

inline std::vector<SubgroupRef> carter_subgroups(const FiniteGroup& g, const Limits& limits = {}) {
  GroupContext ctx(g, limits);
  return carter_subgroups(ctx);
}

/// G is not in F but every proper subgroup is.
inline bool is_minimal_non_F(GroupContext& ctx, const Formation& f) {
  if (f.contains(ctx.whole())) return false;
  for (const auto& h : ctx.lattice().nodes()) {
    if (!(h == ctx.whole()) && !f.contains(h)) return false;
  }
  return true;
}

inline bool is_minimal_non_F(const FiniteGroup& g, const Formation& f, const Limits& limits = {}) {
  GroupContext ctx(g, limits);
  return is_minimal_non_F(ctx, f);
}

/// Schmidt group: non-nilpotent with every maximal subgroup nilpotent. Since
/// nilpotency passes to subgroups, this is the minimal non-nilpotent condition.
inline bool is_schmidt(const FiniteGroup& g, const Limits& limits = {}) {
  if (is_nilpotent(g)) return false;
  for (const auto& m : maximal_subgroups(g, limits)) {
    if (!is_nilpotent(m)) return false;
  }
  return true;
}

/// G is not in F and every non-trivial subgroup is F-subnormal or F-abnormal.
inline bool is_EF_group(GroupContext& ctx, const Formation& f) {
  if (f.contains(ctx.whole())) return false;
  auto& engine = ctx.engine(f);
  for (const auto& h : ctx.lattice().nodes()) {
    if (h.is_trivial()) continue;
    if (!engine.is_subnormal(h) && !engine.is_abnormal(h)) return false;
  }
  return true;
}

inline bool is_EF_group(const FiniteGroup& g, const Formation& f, const Limits& limits = {}) {
  GroupContext ctx(g, limits);
  return is_EF_group(ctx, f);
}

// ---------------------------------------------------------------------------
// Theorem checkers

/// Outcome of one statement check on one group. In equivalence mode the
/// verdict is that all statements agree; in conjunction mode that all hold.
struct TheoremVerdict {
  enum class Mode { equivalence, conjunction };

  std::string check;
  std::string group;
  std::string formation;
  bool in_hypothesis = true;
  std::string hypothesis_status;
  Mode mode = Mode::equivalence;
  std::vector<std::pair<std::string, bool>> statements;
  Json witnesses = Json::object();

  bool statement(std::string_view name) const {
    for (const auto& [n, v] : statements) {
      if (n == name) return v;
    }
    throw InvalidArgument("no statement named '" + std::string(name) + "'");
  }

  bool holds() const {
    if (statements.empty()) return true;
    if (mode == Mode::conjunction) {
      for (const auto& s : statements) {
        if (!s.second) return false;
      }
      return true;
    }
    for (const auto& s : statements) {
      if (s.second != statements.front().second) return false;
    }
    return true;
  }

  CheckOutcome to_outcome() const {
    CheckOutcome out{check, holds() ? Status::pass : Status::fail, in_hypothesis, hypothesis_status,
                     Json::object()};
    Json st = Json::object();
    for (const auto& [n, v] : statements) st[n] = v;
    out.details["statements"] = std::move(st);
    out.details["holds"] = holds();
    out.details["witnesses"] = witnesses;
    return out;
  }
};

namespace detail {

inline std::string flag_status(const Formation& f, bool need_superradical) {
  const auto& fl = f.flags();
  std::vector<std::string> missing;
  if (!fl.subgroup_closed) missing.emplace_back("subgroup-closed");
  if (!fl.saturated) missing.emplace_back("saturated");
  if (need_superradical && !fl.superradical) missing.emplace_back("superradical");
  if (!fl.contains_nilpotents) missing.emplace_back("contains all nilpotent groups");
  if (missing.empty()) return "";
  std::string s = "formation " + f.name() + " not flagged";
  for (std::size_t i = 0; i < missing.size(); ++i) s += (i ? ", " : " ") + missing[i];
  return s + ": empirical only";
}

inline TheoremVerdict start_verdict(const char* check, const Formation& f, bool need_superradical) {
  TheoremVerdict v;
  v.check = check;
  v.formation = f.name();
  v.hypothesis_status = flag_status(f, need_superradical);
  v.in_hypothesis = v.hypothesis_status.empty();
  if (v.in_hypothesis) v.hypothesis_status = "within hypotheses";
  return v;
}

inline void require_soluble_outside(GroupContext& ctx, const Formation& f) {
  if (!ctx.soluble()) throw HypothesisViolation("G is not soluble");
  if (f.contains(ctx.whole())) throw HypothesisViolation("G belongs to " + f.name());
}

/// Every primary cyclic subgroup is F-subnormal or self-normalizing. Records
/// the first failing subgroup.
inline bool primary_sn_or_self_normalizing(GroupContext& ctx, const Formation& f, Json& witnesses,
                                           const char* key) {
  auto& engine = ctx.engine(f);
  for (const auto& c : ctx.primary_cyclic()) {
    if (!engine.is_subnormal(c) && !ctx.self_normalizing(c)) {
      witnesses[key] = witness(c);
      return false;
    }
  }
  return true;
}

/// Looks for x with G = G' x| <x>, <x> a Sylow p-subgroup and a Carter
/// subgroup, G' = `target` and G'<x^p> in F. Elements are scanned in
/// canonical order, so the first hit is the lexicographically least witness.
inline bool find_split_witness(GroupContext& ctx, const Formation& f, const SubgroupRef& target,
                               Json& witnesses, const char* key) {
  const FiniteGroup& g = ctx.group();
  const SubgroupRef& d = derived_subgroup(g);
  Json why = Json::array();
  if (!(d == target)) {
    witnesses[key] = Json{{"reason", "derived subgroup differs from the required residual"},
                          {"derived_order", d.order()},
                          {"residual_order", target.order()}};
    return false;
  }
  const std::size_t n = g.order();
  for (Element x = 1; x < n; ++x) {
    const std::size_t o = g.element_order(x);
    const auto fac = factorize(o);
    if (fac.size() != 1) continue;
    const std::size_t p = fac.front().first;
    if (p_part(n, p) != o) continue;  // not a Sylow generator
    if (d.order() * o != n || d.contains(g.pow(x, o / p))) continue;  // not a complement
    const SubgroupRef cx = cyclic_subgroup(g, x);
    if (!ctx.self_normalizing(cx)) continue;
    const Element xp = g.pow(x, p);
    const SubgroupRef top = join(d, std::span<const Element>(&xp, 1));
    if (!f.contains(top)) {
      why.push_back(Json{{"x", g.element(x).to_string()}, {"failed", "G'<x^p> not in " + f.name()}});
      continue;
    }
    witnesses[key] = Json{{"x", g.element(x).to_string()}, {"p", p}, {"sylow_order", o}};
    return true;
  }
  witnesses[key] = Json{{"reason", "no self-normalizing cyclic Sylow complement to G' qualifies"},
                        {"rejected", std::move(why)}};
  return false;
}

}  // namespace detail

/// Statements S1, S2, S3 evaluated independently for soluble G outside F.
/// Throws HypothesisViolation if G is insoluble or already in F.
inline TheoremVerdict check_theorem1(GroupContext& ctx, const Formation& f) {
  TheoremVerdict v = detail::start_verdict("theorem1", f, true);
  detail::require_soluble_outside(ctx, f);

  const bool s1 = detail::primary_sn_or_self_normalizing(ctx, f, v.witnesses, "S1");

  bool s2 = true;
  auto& engine = ctx.engine(f);
  for (const auto& h : ctx.lattice().nodes()) {
    if (ctx.abnormal(h)) continue;
    const bool sn = engine.is_subnormal(h);
    const bool in = f.contains(h);
    if (!sn || !in) {
      v.witnesses["S2"] = Json{{"subgroup", witness(h)}, {"F_subnormal", sn}, {"in_F", in}};
      s2 = false;
      break;
    }
  }

  const SubgroupRef& gn = ctx.residual_of(formations::nilpotent());
  const bool s3 = detail::find_split_witness(ctx, f, gn, v.witnesses, "S3");

  v.statements = {{"S1", s1}, {"S2", s2}, {"S3", s3}};
  return v;
}

/// Left: every primary cyclic subgroup is absolutely F-subnormal or
/// self-normalizing. Right: G is non-nilpotent, every proper subgroup is
/// primary, and G = G' x| <x> with G' elementary abelian p, |x| = q prime,
/// q != p, <x> maximal and Carter. Throws HypothesisViolation if G is in F.
inline TheoremVerdict check_theorem2(GroupContext& ctx, const Formation& f) {
  TheoremVerdict v = detail::start_verdict("theorem2", f, false);
  if (f.contains(ctx.whole())) throw HypothesisViolation("G belongs to " + f.name());

  bool left = true;
  auto& engine = ctx.engine(f);
  for (const auto& c : ctx.primary_cyclic()) {
    if (!ctx.self_normalizing(c) && !engine.is_absolutely_subnormal(c)) {
      v.witnesses["left"] = witness(c);
      left = false;
      break;
    }
  }

  const FiniteGroup& g = ctx.group();
  bool right = !ctx.nilpotent();
  if (!right) v.witnesses["right"] = "G is nilpotent";
  if (right) {
    for (const auto& h : ctx.lattice().nodes()) {
      if (!(h == ctx.whole()) && !is_p_group(h)) {
        v.witnesses["right"] = Json{{"non_primary_subgroup", witness(h)}};
        right = false;
        break;
      }
    }
  }
  if (right) {
    const SubgroupRef& d = derived_subgroup(g);
    bool elementary = !d.is_trivial() && is_p_group(d) && is_abelian(d);
    std::size_t p = elementary ? factorize(d.order()).front().first : 0;
    if (elementary) {
      for (Element e : d.elements()) elementary = elementary && (g.pow(e, p) == FiniteGroup::identity());
    }
    std::optional<Element> found;
    if (elementary) {
      const auto& lat = ctx.lattice();
      const std::size_t top = *lat.find(ctx.whole().members());
      for (Element x = 1; x < g.order() && !found; ++x) {
        const std::size_t q = g.element_order(x);
        if (!is_prime(q) || q == p || d.order() * q != g.order()) continue;
        const SubgroupRef cx = cyclic_subgroup(g, x);
        const std::size_t idx = *lat.find(cx.members());
        bool maximal = false;
        for (std::size_t up : lat.covers(idx)) maximal = maximal || up == top;
        if (maximal && ctx.self_normalizing(cx)) found = x;
      }
    }
    if (!found) {
      v.witnesses["right"] = elementary ? Json("no maximal Carter complement of prime order")
                                        : Json("derived subgroup is not an elementary abelian p-group");
      right = false;
    } else {
      v.witnesses["right"] = Json{{"x", g.element(*found).to_string()}, {"p", p},
                                  {"q", g.element_order(*found)}};
    }
  }
  v.statements = {{"left", left}, {"right", right}};
  v.witnesses["soluble"] = ctx.soluble();
  return v;
}

/// For soluble G outside F whose primary cyclic subgroups are F-subnormal or
/// self-normalizing, with K a Carter subgroup: every proper A is abnormal
/// when |K| divides |A|, and otherwise F-subnormal and in F.
inline TheoremVerdict check_corollary1(GroupContext& ctx, const Formation& f) {
  TheoremVerdict v = detail::start_verdict("corollary1", f, true);
  v.mode = TheoremVerdict::Mode::conjunction;
  detail::require_soluble_outside(ctx, f);
  Json scratch = Json::object();
  if (!detail::primary_sn_or_self_normalizing(ctx, f, scratch, "S1")) {
    throw HypothesisViolation("some primary cyclic subgroup is neither " + f.name() +
                              "-subnormal nor self-normalizing");
  }
  const auto carters = carter_subgroups(ctx);
  if (carters.empty()) throw HypothesisViolation("no Carter subgroup");
  const std::size_t k = carters.front().order();
  v.witnesses["carter"] = witness(carters.front());

  bool c1 = true, c2 = true;
  auto& engine = ctx.engine(f);
  for (const auto& a : ctx.lattice().nodes()) {
    if (a == ctx.whole()) continue;
    if (a.order() % k == 0) {
      if (c1 && !ctx.abnormal(a)) {
        v.witnesses["C1"] = witness(a);
        c1 = false;
      }
    } else if (c2 && (!engine.is_subnormal(a) || !f.contains(a))) {
      v.witnesses["C2"] = witness(a);
      c2 = false;
    }
  }
  v.statements = {{"C1", c1}, {"C2", c2}};
  return v;
}

/// Three-way equivalence: primary cyclic subgroups F-subnormal or
/// F-abnormal; G is an E_F-group; the split shape with G' = G^F.
inline TheoremVerdict check_corollary2(GroupContext& ctx, const Formation& f) {
  TheoremVerdict v = detail::start_verdict("corollary2", f, true);
  detail::require_soluble_outside(ctx, f);

  bool c1 = true;
  auto& engine = ctx.engine(f);
  for (const auto& c : ctx.primary_cyclic()) {
    if (!engine.is_subnormal(c) && !engine.is_abnormal(c)) {
      v.witnesses["C1"] = witness(c);
      c1 = false;
      break;
    }
  }
  const bool c2 = is_EF_group(ctx, f);
  const bool c3 = detail::find_split_witness(ctx, f, ctx.residual_of(f), v.witnesses, "C3");
  v.statements = {{"C1", c1}, {"C2", c2}, {"C3", c3}};
  return v;
}

inline TheoremVerdict check_theorem1(const FiniteGroup& g, const Formation& f, const Limits& limits = {}) {
  GroupContext ctx(g, limits);
  return check_theorem1(ctx, f);
}

inline TheoremVerdict check_theorem2(const FiniteGroup& g, const Formation& f, const Limits& limits = {}) {
  GroupContext ctx(g, limits);
  return check_theorem2(ctx, f);
}

inline TheoremVerdict check_corollary1(const FiniteGroup& g, const Formation& f, const Limits& limits = {}) {
  GroupContext ctx(g, limits);
  return check_corollary1(ctx, f);
}

inline TheoremVerdict check_corollary2(const FiniteGroup& g, const Formation& f, const Limits& limits = {}) {
  GroupContext ctx(g, limits);
  return check_corollary2(ctx, f);
}

// ---------------------------------------------------------------------------
// The order-864 example

namespace detail {

inline CheckOutcome expect(const char* name, bool ok, Json details = Json::object()) {
  return CheckOutcome{name, ok ? Status::pass : Status::fail, true, "order-864 example, formation NA",
                      std::move(details)};
}

inline bool has_exponent(const SubgroupRef& h, std::size_t e) {
  const FiniteGroup& g = h.group();
  for (Element x : h.elements()) {
    if (g.pow(x, e) != FiniteGroup::identity()) return false;
  }
  return true;
}

}  // namespace detail

/// Checks the stated properties of (S3 x S3 x A4) x| C2 for the formation of
/// groups with nilpotent derived subgroup. Throws InvalidArgument unless
/// |G| = 864; the group itself comes from a file.
inline VerdictReport verify_paper_example(GroupContext& ctx, const std::string& name = "SmallGroup(864,4670)") {
  const FiniteGroup& g = ctx.group();
  if (g.order() != 864) {
    throw InvalidArgument("expected a group of order 864, got " + std::to_string(g.order()));
  }
  const Formation f = formations::nilpotent_by_abelian();
  auto& engine = ctx.engine(f);
  GroupVerdict verdict{name, g.order(), {}};
  auto& out = verdict.checks;

  const SubgroupRef p3 = sylow_subgroup(g, 3);
  const bool p3_elem = p3.order() == 27 && is_abelian(p3) && detail::has_exponent(p3, 3);
  out.push_back(detail::expect("sylow3-elementary-abelian-27", p3_elem, {{"sylow3", witness(p3)}}));
  out.push_back(detail::expect("sylow3-F-subnormal", engine.is_subnormal(p3)));

  const SubgroupRef p2 = sylow_subgroup(g, 2);
  out.push_back(detail::expect("sylow2-order-32", p2.order() == 32, {{"sylow2", witness(p2)}}));
  out.push_back(detail::expect("sylow2-self-normalizing", ctx.self_normalizing(p2)));
  out.push_back(detail::expect("sylow2-not-F-subnormal", !engine.is_subnormal(p2)));
  out.push_back(detail::expect("sylow2-not-F-abnormal", !engine.is_abnormal(p2)));

  const SubgroupLattice p2_lattice = all_subgroups(p2);
  std::size_t proper = 0;
  Json bad = Json::array();
  for (const auto& h : p2_lattice.nodes()) {
    if (h == p2) continue;
    ++proper;
    if (!engine.is_subnormal(h)) bad.push_back(witness(h));
  }
  out.push_back(detail::expect("sylow2-proper-subgroups-F-subnormal", bad.empty(),
                               {{"proper_subgroups", proper}, {"failures", bad}}));

  const SubgroupRef& gf = ctx.residual_of(f);
  const SubgroupRef& fit = fitting(g);
  const SubgroupRef& gn = ctx.residual_of(formations::nilpotent());
  const SubgroupRef& d = derived_subgroup(g);
  out.push_back(detail::expect("residual-F-order-36", gf.order() == 36, {{"order", gf.order()}}));
  out.push_back(detail::expect("residual-F-equals-fitting", gf == fit, {{"fitting_order", fit.order()}}));
  out.push_back(detail::expect("residual-F-abelian-exponent-6", is_abelian(gf) && detail::has_exponent(gf, 6)));
  out.push_back(detail::expect("residual-N-order-108", gn.order() == 108, {{"order", gn.order()}}));
  out.push_back(detail::expect("derived-order-216", d.order() == 216, {{"order", d.order()}}));
  const bool chain = gn.contains(gf) && d.contains(gn) && gf.order() < gn.order() && gn.order() < d.order();
  out.push_back(detail::expect("strict-chain", chain));

  Json scratch = Json::object();
  const bool s1 = detail::primary_sn_or_self_normalizing(ctx, f, scratch, "S1");
  out.push_back(detail::expect("primary-cyclic-F-subnormal-or-self-normalizing", s1, scratch));
  // G is outside E_F as soon as one non-trivial subgroup is neither F-subnormal
  // nor F-abnormal; the Sylow 2-subgroup is such a subgroup.
  const bool not_ef = !f.contains(g) && !engine.is_subnormal(p2) && !engine.is_abnormal(p2);
  out.push_back(detail::expect("not-EF-group", not_ef, {{"witness", witness(p2)}}));

  VerdictReport report;
  report.formation = f.name();
  report.selected_checks = {"example864"};
  report.groups.push_back(std::move(verdict));
  return report;
}

inline VerdictReport verify_paper_example(const FiniteGroup& g, const Deadline* deadline = nullptr,
                                          const std::string& name = "SmallGroup(864,4670)") {
  GroupContext ctx(g, Limits{}, deadline);
  return verify_paper_example(ctx, name);
}

}  // namespace efg

#endif  // EFG_STRUCTURE_HPP_
