#ifndef EFG_RUNNER_HPP_
#define EFG_RUNNER_HPP_

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "efg/catalog.hpp"
#include "efg/error.hpp"
#include "efg/formation.hpp"
#include "efg/lemmas.hpp"
#include "efg/parallel.hpp"
#include "efg/report.hpp"
#include "efg/structure.hpp"

namespace efg {

inline const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = {"theorem1", "theorem2", "corollary1", "corollary2",
                                                 "lemmas",   "example864", "all"};
  return names;
}

/// Formation, checks and budgets for one analyze or batch invocation.
struct CatalogRun {
  std::string formation = "N";
  std::vector<std::string> checks = {"all"};
  Limits limits;
  double time_budget = 10.0;           // seconds per group
  double example_time_budget = 600.0;  // seconds for the order-864 example
  unsigned jobs = 1;
  std::size_t max_order = 0;  // 0: no bound
  std::filesystem::path cache;  // analyze only: lattice cache to reuse and refresh

  void validate() const {
    if (checks.empty()) throw InvalidArgument("no checks selected");
    if (limits.max_order == 0 || limits.lattice_budget == 0 || time_budget <= 0 || example_time_budget <= 0) {
      throw InvalidArgument("budgets must be positive");
    }
    for (const auto& c : checks) {
      const auto& lc = lemma_checks();
      if (std::find(known_checks().begin(), known_checks().end(), c) == known_checks().end() &&
          std::find(lc.begin(), lc.end(), c) == lc.end()) {
        throw InvalidArgument("unknown check '" + c + "'");
      }
    }
    (void)formations::by_name(formation);
  }

  Json budgets_json() const {
    return Json{{"max_order", limits.max_order},
                {"lattice_budget", limits.lattice_budget},
                {"time_budget_seconds", time_budget},
                {"example_time_budget_seconds", example_time_budget}};
  }
};

namespace detail {

inline CheckOutcome outcome_from_error(const std::string& check, Status status, const std::string& message) {
  CheckOutcome oc{check, status, true, "", Json::object()};
  oc.details["reason"] = message;
  return oc;
}

/// Expands "all" and "lemmas" into concrete check names for a group.
inline std::vector<std::string> expand_checks(const std::vector<std::string>& checks, std::size_t order) {
  std::vector<std::string> out;
  auto add = [&](const std::string& c) {
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  };
  for (const auto& c : checks) {
    if (c == "all") {
      for (const char* n : {"theorem1", "theorem2", "corollary1", "corollary2"}) add(n);
      for (const auto& n : lemma_checks()) add(n);
      if (order == 864) add("example864");
    } else if (c == "lemmas") {
      for (const auto& n : lemma_checks()) add(n);
    } else {
      add(c);
    }
  }
  return out;
}

}  // namespace detail

/// Runs every selected check on one group. Exceptions become statuses:
/// hypothesis violations, budget trips and errors are reported per check.
/// With `cache` set, covers saved by an earlier run seed the search and the
/// explored part of the lattice is written back afterwards; a cache for another
/// group or format version is ignored with a note on `notes`.
inline GroupVerdict run_checks(const NamedGroup& g, const CatalogRun& run,
                               const std::filesystem::path& cache = {}, std::ostream* notes = nullptr) {
  const Formation f = formations::by_name(run.formation);
  const bool example = g.group.order() == 864;
  const Deadline deadline(std::chrono::duration<double>(example ? run.example_time_budget : run.time_budget));
  GroupContext ctx(g.group, run.limits, &deadline);
  GroupVerdict verdict{g.name, g.group.order(), {}};
  if (!cache.empty() && std::filesystem::exists(cache)) {
    try {
      ctx.explorer().seed(cache_load(cache, g.group));
    } catch (const CacheError& e) {
      if (notes) *notes << "ignoring lattice cache " << cache.string() << ": " << e.what() << "\n";
    }
  }

  const auto checks = detail::expand_checks(run.checks, g.group.order());
  std::vector<std::string> lemma_batch;
  auto flush_lemmas = [&] {
    if (lemma_batch.empty()) return;
    for (auto& oc : check_lemmas(ctx, f, lemma_batch)) verdict.checks.push_back(std::move(oc));
    lemma_batch.clear();
  };
  for (const auto& c : checks) {
    const auto& lc = lemma_checks();
    if (std::find(lc.begin(), lc.end(), c) != lc.end()) {
      lemma_batch.push_back(c);
      continue;
    }
    flush_lemmas();
    try {
      if (c == "theorem1") {
        verdict.checks.push_back(check_theorem1(ctx, f).to_outcome());
      } else if (c == "theorem2") {
        verdict.checks.push_back(check_theorem2(ctx, f).to_outcome());
      } else if (c == "corollary1") {
        verdict.checks.push_back(check_corollary1(ctx, f).to_outcome());
      } else if (c == "corollary2") {
        verdict.checks.push_back(check_corollary2(ctx, f).to_outcome());
      } else if (c == "example864") {
        auto r = verify_paper_example(ctx, g.name);
        for (auto& oc : r.groups.front().checks) {
          oc.check = "example864/" + oc.check;
          verdict.checks.push_back(std::move(oc));
        }
      } else {
        throw InvalidArgument("unknown check '" + c + "'");
      }
    } catch (const HypothesisViolation& e) {
      verdict.checks.push_back(detail::outcome_from_error(c, Status::hypothesis_violation, e.what()));
    } catch (const BudgetExceeded& e) {
      verdict.checks.push_back(detail::outcome_from_error(c, Status::budget_exceeded, e.what()));
    } catch (const Error& e) {
      verdict.checks.push_back(detail::outcome_from_error(c, Status::error, e.what()));
    }
  }
  flush_lemmas();
  if (!cache.empty()) cache_save(ctx.explorer().explored(), cache);
  return verdict;
}

inline VerdictReport analyze(const NamedGroup& g, const CatalogRun& run, std::ostream* notes = nullptr) {
  run.validate();
  VerdictReport report;
  report.formation = run.formation;
  report.selected_checks = run.checks;
  report.budgets = run.budgets_json();
  report.groups.push_back(run_checks(g, run, run.cache, notes));
  return report;
}

/// Every group file in `dir`, in (order, name) order. Files that fail to load
/// are listed under errors; the remaining groups are still verified.
inline VerdictReport batch_verify(const CatalogRun& run, const std::filesystem::path& dir) {
  run.validate();
  VerdictReport report;
  report.formation = run.formation;
  report.selected_checks = run.checks;
  report.budgets = run.budgets_json();
  report.budgets["max_group_order"] = run.max_order;

  std::vector<NamedGroup> groups;
  for (auto& e : load_directory(dir, run.limits, run.max_order)) {
    if (e.group) {
      groups.push_back(NamedGroup{e.name, std::move(*e.group)});
    } else {
      report.errors.push_back(ReportError{e.path.filename().string(), e.error});
    }
  }
  report.groups.resize(groups.size());
  parallel_for(groups.size(), run.jobs, [&](std::size_t i) { report.groups[i] = run_checks(groups[i], run); });
  return report;
}

/// Process exit code for a report.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitBudget = 2,
  kExitHypothesis = 3,
  kExitError = 4,
};

inline int exit_code(const VerdictReport& r) {
  if (!r.errors.empty() || r.count(Status::error) > 0) return kExitError;
  if (r.count(Status::fail) > 0) return kExitCheckFailed;
  if (!r.complete()) return kExitBudget;
  if (r.count(Status::hypothesis_violation) > 0) return kExitHypothesis;
  return kExitOk;
}

}  // namespace efg

#endif  // EFG_RUNNER_HPP_
