#ifndef EFG_REPORT_HPP_
#define EFG_REPORT_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "efg/group.hpp"
#include "efg/subgroup.hpp"

namespace efg {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "efg";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "efg-report/1";

enum class Status { pass, fail, not_applicable, hypothesis_violation, budget_exceeded, error };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::not_applicable: return "not-applicable";
    case Status::hypothesis_violation: return "hypothesis-violation";
    case Status::budget_exceeded: return "budget-exceeded";
    case Status::error: return "error";
  }
  return "error";
}

/// Generators of a subgroup in cycle notation, plus its order.
inline Json witness(const SubgroupRef& h) {
  Json gens = Json::array();
  for (Element e : h.generators()) gens.push_back(h.group().element(e).to_string());
  return Json{{"order", h.order()}, {"generators", std::move(gens)}};
}

/// Outcome of one check on one group. `in_hypothesis` is false when the
/// formation lacks a flag the statement needs; such results are empirical and
/// a failure there is not a counterexample.
struct CheckOutcome {
  std::string check;
  Status status = Status::pass;
  bool in_hypothesis = true;
  std::string hypothesis;
  Json details = Json::object();

  bool is_violation() const { return status == Status::fail && in_hypothesis; }

  Json to_json() const {
    Json j;
    j["check"] = check;
    j["status"] = to_string(status);
    j["in_hypothesis"] = in_hypothesis;
    j["hypothesis"] = hypothesis;
    j["details"] = details;
    return j;
  }
};

struct GroupVerdict {
  std::string group;
  std::size_t order = 0;
  std::vector<CheckOutcome> checks;

  Json to_json() const {
    Json arr = Json::array();
    for (const auto& c : checks) arr.push_back(c.to_json());
    return Json{{"group", group}, {"order", order}, {"checks", std::move(arr)}};
  }
};

struct ReportError {
  std::string source;
  std::string message;
};

struct VerdictReport {
  std::string formation;
  std::vector<std::string> selected_checks;
  std::vector<GroupVerdict> groups;
  std::vector<ReportError> errors;
  Json budgets = Json::object();

  std::size_t count(Status s) const {
    std::size_t n = 0;
    for (const auto& g : groups) {
      for (const auto& c : g.checks) n += c.status == s ? 1 : 0;
    }
    return n;
  }

  std::size_t violations() const {
    std::size_t n = 0;
    for (const auto& g : groups) {
      for (const auto& c : g.checks) n += c.is_violation() ? 1 : 0;
    }
    return n;
  }

  bool complete() const { return count(Status::budget_exceeded) == 0; }

  /// No in-hypothesis failure, no budget trip, no error.
  bool consistent() const {
    return violations() == 0 && complete() && errors.empty() && count(Status::error) == 0;
  }

  Json to_json() const {
    Json j;
    j["schema"] = kReportSchema;
    j["tool"] = Json{{"name", kToolName}, {"version", kToolVersion}};
    j["budgets"] = budgets;
    j["formation"] = formation;
    j["checks"] = selected_checks;
    Json arr = Json::array();
    for (const auto& g : groups) arr.push_back(g.to_json());
    j["groups"] = std::move(arr);
    Json errs = Json::array();
    for (const auto& e : errors) errs.push_back(Json{{"source", e.source}, {"message", e.message}});
    j["errors"] = std::move(errs);
    std::size_t total = 0;
    for (const auto& g : groups) total += g.checks.size();
    j["summary"] = Json{{"groups", groups.size()},
                        {"checks", total},
                        {"passed", count(Status::pass)},
                        {"failed", count(Status::fail)},
                        {"violations", violations()},
                        {"not_applicable", count(Status::not_applicable)},
                        {"hypothesis_violations", count(Status::hypothesis_violation)},
                        {"budget_exceeded", count(Status::budget_exceeded)},
                        {"errors", errors.size() + count(Status::error)}};
    j["complete"] = complete();
    return j;
  }

  std::string serialize() const { return to_json().dump(2) + "\n"; }
};

}  // namespace efg

#endif  // EFG_REPORT_HPP_
