#ifndef EFG_FORMATION_HPP_
#define EFG_FORMATION_HPP_

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "efg/error.hpp"
#include "efg/group.hpp"
#include "efg/lattice.hpp"
#include "efg/quotient.hpp"
#include "efg/report.hpp"
#include "efg/series.hpp"
#include "efg/subgroup.hpp"

namespace efg {

/// Declared closure properties. These are metadata, never computed; checkers
/// use them to decide whether a statement is within its hypotheses.
struct FormationFlags {
  bool subgroup_closed = false;
  bool saturated = false;
  bool superradical = false;
  bool contains_nilpotents = false;
  bool contains_prime_order = true;
};

/// A class of groups given by an isomorphism-invariant membership test. The
/// predicate receives a subgroup and answers for it as an abstract group.
class Formation {
 public:
  using Predicate = std::function<bool(const SubgroupRef&)>;

  Formation(std::string name, Predicate membership, FormationFlags flags)
      : name_(std::move(name)), membership_(std::move(membership)), flags_(flags) {}

  const std::string& name() const { return name_; }
  const FormationFlags& flags() const { return flags_; }

  bool contains(const SubgroupRef& h) const { return membership_(h); }
  bool contains(const FiniteGroup& g) const { return membership_(SubgroupRef::whole(g)); }

 private:
  std::string name_;
  Predicate membership_;
  FormationFlags flags_;
};

inline bool contains(const Formation& f, const FiniteGroup& g) { return f.contains(g); }
inline bool contains(const Formation& f, const SubgroupRef& h) { return f.contains(h); }

namespace formations {

inline Formation abelian() {
  return Formation("A", [](const SubgroupRef& h) { return is_abelian(h); },
                   {.subgroup_closed = true, .saturated = false, .superradical = false,
                    .contains_nilpotents = false});
}

inline Formation nilpotent() {
  return Formation("N", [](const SubgroupRef& h) { return is_nilpotent(h); },
                   {.subgroup_closed = true, .saturated = true, .superradical = true,
                    .contains_nilpotents = true});
}

inline Formation supersoluble() {
  return Formation("U", [](const SubgroupRef& h) { return is_supersoluble(h); },
                   {.subgroup_closed = true, .saturated = true, .superradical = false,
                    .contains_nilpotents = true});
}

/// Groups with nilpotent derived subgroup.
inline Formation nilpotent_by_abelian() {
  return Formation("NA", [](const SubgroupRef& h) { return is_nilpotent(derived_subgroup(h)); },
                   {.subgroup_closed = true, .saturated = true, .superradical = false,
                    .contains_nilpotents = true});
}

inline Formation soluble() {
  return Formation("Sol", [](const SubgroupRef& h) { return is_soluble(h); },
                   {.subgroup_closed = true, .saturated = true, .superradical = true,
                    .contains_nilpotents = true});
}

inline std::vector<Formation> builtins() {
  return {abelian(), nilpotent(), supersoluble(), nilpotent_by_abelian(), soluble()};
}

inline Formation by_name(std::string_view name) {
  for (auto& f : builtins()) {
    if (f.name() == name) return f;
  }
  throw InvalidArgument("unknown formation '" + std::string(name) + "' (expected A, N, U, NA or Sol)");
}

}  // namespace formations

/// True when ambient / n belongs to the formation.
inline bool quotient_in(const Formation& f, const SubgroupRef& ambient, const SubgroupRef& n) {
  if (n == ambient) return true;
  if (n.is_trivial()) return f.contains(ambient);
  return f.contains(coset_action_image(ambient, n));
}

/// The F-residual: intersection of all normal subgroups N of H with H/N in F.
/// Throws FormationViolation if that intersection does not itself have its
/// quotient in F, i.e. the predicate is not closed like a formation.
inline SubgroupRef residual(const Formation& f, const SubgroupRef& h) {
  if (f.contains(h)) return SubgroupRef::trivial(h.group());
  ElementSet members = h.members();
  std::vector<SubgroupRef> qualifying;
  for (const auto& n : normal_subgroups(h)) {
    if (quotient_in(f, h, n)) {
      members &= n.members();
      qualifying.push_back(n);
    }
  }
  for (const auto& n : qualifying) {
    if (n.members() == members) return n;
  }
  throw FormationViolation("residual of '" + f.name() +
                           "' is not attained: the intersection of normal subgroups with "
                           "quotient in the class has a quotient outside it");
}

inline SubgroupRef residual(const Formation& f, const FiniteGroup& g) {
  return residual(f, SubgroupRef::whole(g));
}

struct NamedGroup {
  std::string name;
  FiniteGroup group;
};

/// Empirical guard for declared metadata: quotient closure, closure of the
/// qualifying normal subgroups under intersection, and subgroup closure when
/// that flag is set. Violations are reported, not thrown.
inline VerdictReport verify_formation_closure(const Formation& f, const std::vector<NamedGroup>& catalog,
                                              const Limits& limits = {}) {
  VerdictReport report;
  report.formation = f.name();
  report.selected_checks = {"formation-closure"};
  for (const auto& [name, g] : catalog) {
    GroupVerdict verdict{name, g.order(), {}};
    CheckOutcome out{"formation-closure", Status::pass, true, "declared formation", Json::object()};
    Json violations = Json::array();
    const SubgroupRef whole = SubgroupRef::whole(g);

    if (!f.contains(FiniteGroup())) violations.push_back("trivial group is not a member");

    const auto normals = normal_subgroups(whole);
    std::vector<bool> in(normals.size());
    for (std::size_t i = 0; i < normals.size(); ++i) in[i] = quotient_in(f, whole, normals[i]);
    const bool member = in.front();  // normals[0] is the trivial subgroup
    for (std::size_t i = 0; i < normals.size(); ++i) {
      if (member && !in[i]) {
        violations.push_back(Json{{"kind", "quotient-closure"}, {"kernel", witness(normals[i])}});
      }
      for (std::size_t k = i + 1; k < normals.size(); ++k) {
        if (!in[i] || !in[k]) continue;
        const ElementSet meet = normals[i].members() & normals[k].members();
        for (std::size_t m = 0; m < normals.size(); ++m) {
          if (normals[m].members() == meet && !in[m]) {
            violations.push_back(Json{{"kind", "intersection-closure"},
                                      {"kernels", Json::array({witness(normals[i]), witness(normals[k])})}});
          }
        }
      }
    }
    if (f.flags().subgroup_closed && member) {
      try {
        const auto lattice = all_subgroups(whole, limits);
        for (const auto& h : lattice.nodes()) {
          if (!f.contains(h)) violations.push_back(Json{{"kind", "subgroup-closure"}, {"subgroup", witness(h)}});
        }
        out.details["subgroups_checked"] = lattice.size();
      } catch (const BudgetExceeded&) {
        out.details["subgroups_checked"] = "skipped: lattice budget";
      }
    }
    out.details["normal_subgroups"] = normals.size();
    out.details["violations"] = violations;
    if (!violations.empty()) out.status = Status::fail;
    verdict.checks.push_back(std::move(out));
    report.groups.push_back(std::move(verdict));
  }
  return report;
}

}  // namespace efg

#endif  // EFG_FORMATION_HPP_
