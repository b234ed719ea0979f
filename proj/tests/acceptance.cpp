// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only if all pass.
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "support.hpp"

using namespace efg;
using namespace efg::testing;
namespace fs = std::filesystem;

namespace {

struct Result {
  bool ok = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    if (!ok) note << "; ";
    ok = false;
    note << what;
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;  // 0: no runtime bound
  std::function<void(Result&)> body;
};

oracle::PermSet perms(const SubgroupRef& h) {
  oracle::PermSet out;
  for (Element e : h.elements()) out.insert(h.group().element(e));
  return out;
}

bool soluble(const ManifestRow& row) { return row.value.at("soluble") == 1; }
bool nilpotent(const ManifestRow& row) { return row.value.at("nilpotent") == 1; }

std::vector<Formation> four() {
  return {formations::abelian(), formations::nilpotent(), formations::supersoluble(),
          formations::nilpotent_by_abelian()};
}

std::vector<NamedGroup> catalog(std::size_t max_order, bool soluble_only = false) {
  std::vector<NamedGroup> out;
  for (const auto& row : manifest(max_order)) {
    if (!soluble_only || soluble(row)) out.push_back({row.file, load(row)});
  }
  return out;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(EFG_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

void paper_example(Result& r) {
  const auto file = read_group_file(data_dir() / "example" / "sg_0864_4670.pgrp");
  r.require(file.group.order() == 864, "order " + std::to_string(file.group.order()));
  const auto report = verify_paper_example(file.group);
  std::size_t passed = 0;
  for (const auto& c : report.groups.front().checks) {
    if (c.status == Status::pass) {
      ++passed;
    } else {
      std::string why = c.details.dump();
      if (c.details.contains("failures")) {
        why = std::to_string(c.details["failures"].size()) + " of " + c.details["proper_subgroups"].dump() +
              " subgroups are counterexamples, first " + c.details["failures"][0].dump();
      }
      r.require(false, c.check + " " + to_string(c.status) + ": " + why);
    }
  }
  if (r.ok) r.note << passed << " example checks";
}

void theorem1(Result& r) {
  const auto N = formations::nilpotent();
  std::size_t n = 0;
  for (const auto& row : manifest(120)) {
    if (!soluble(row) || nilpotent(row)) continue;
    const auto v = check_theorem1(load(row), N);
    r.require(v.in_hypothesis && v.holds(), row.file + " " + v.to_outcome().details.dump());
    ++n;
  }
  r.note << (r.ok ? "" : "; ") << n << " soluble non-nilpotent groups";
}

void theorem2(Result& r) {
  const auto N = formations::nilpotent();
  std::size_t n = 0, left = 0;
  for (const auto& row : manifest(100)) {
    if (nilpotent(row)) continue;
    const auto v = check_theorem2(load(row), N);
    r.require(v.holds(), row.file + " biconditional fails");
    if (v.statement("left")) {
      ++left;
      r.require(v.witnesses["soluble"].get<bool>() && soluble(row), row.file + " left side true but insoluble");
    }
    ++n;
  }
  r.note << (r.ok ? "" : "; ") << n << " non-nilpotent groups, " << left << " with the left side true";
}

void lemma_suite(Result& r) {
  std::vector<std::string> core;
  for (const auto& c : lemma_checks()) {
    if (c.rfind("lemma1", 0) == 0 || c.rfind("lemma2", 0) == 0 || c.rfind("lemma3", 0) == 0 || c == "lemma4") {
      core.push_back(c);
    }
  }
  const auto small = catalog(60);
  std::size_t outcomes = 0;
  for (const auto& f : four()) {
    const auto rep = check_lemma_suite(small, f, core);
    r.require(rep.violations() == 0, f.name() + ": " + std::to_string(rep.violations()) + " lemma 1-4 violations");
    r.require(rep.complete() && rep.count(Status::error) == 0, f.name() + ": incomplete lemma run");
    outcomes += rep.count(Status::pass) + rep.count(Status::fail) + rep.count(Status::not_applicable);
  }
  // Lemmas 5 and 6 must hold exactly, in or out of the stated hypotheses.
  const auto soluble100 = catalog(100, true);
  const auto l5 = check_lemma_suite(soluble100, formations::nilpotent(), {"lemma5"});
  r.require(l5.count(Status::fail) == 0 && l5.complete(), "lemma5 (N): " + std::to_string(l5.count(Status::fail)) + " failures");
  const auto all100 = catalog(100);
  for (const auto& f : {formations::nilpotent(), formations::supersoluble()}) {
    const auto l6 = check_lemma_suite(all100, f, {"lemma6"});
    r.require(l6.count(Status::fail) == 0 && l6.complete(),
              "lemma6 (" + f.name() + "): " + std::to_string(l6.count(Status::fail)) + " failures");
  }
  r.note << (r.ok ? "" : "; ") << outcomes << " lemma 1-4 outcomes, " << soluble100.size() << "+" << all100.size()
         << " groups for lemmas 5 and 6";
}

void oracles(Result& r) {
  const auto rows = manifest();
  for (const auto& row : rows) {
    const FiniteGroup g = load(row);
    const auto whole = perms(SubgroupRef::whole(g));
    r.require(perms(residual(formations::abelian(), g)) == oracle::commutator_subgroup(whole, whole, g.degree()),
              row.file + " abelian residual");
    r.require(perms(residual(formations::nilpotent(), g)) == oracle::lower_central_stable_term(whole, g.degree()),
              row.file + " nilpotent residual");
  }
  std::size_t pairs = 0;
  for (const auto& row : manifest(48)) {
    const FiniteGroup g = load(row);
    const auto lat = all_subgroups(g);
    for (const auto& f : four()) {
      SubnormalityEngine q(SubgroupRef::whole(g), f, EdgeRoute::quotient);
      SubnormalityEngine res(SubgroupRef::whole(g), f, EdgeRoute::residual);
      for (const auto& h : lat.nodes()) {
        r.require(q.is_subnormal(h) == res.is_subnormal(h), row.file + " routes disagree for " + f.name());
        ++pairs;
      }
    }
  }
  r.note << (r.ok ? "" : "; ") << rows.size() << " residual groups, " << pairs << " (H, G, F) triples";
}

void structure(Result& r) {
  std::size_t carter = 0, schmidt = 0;
  for (const auto& row : manifest(100)) {
    const FiniteGroup g = load(row);
    if (soluble(row)) {
      const auto ks = carter_subgroups(g);
      r.require(!ks.empty(), row.file + " has no Carter subgroup");
      if (!ks.empty()) {
        std::set<oracle::PermSet> cls;
        const auto k0 = perms(ks.front());
        for (const auto& x : perms(SubgroupRef::whole(g))) {
          oracle::PermSet c;
          for (const auto& y : k0) c.insert(x.inverse() * y * x);
          cls.insert(std::move(c));
        }
        bool same = cls.size() == ks.size();
        for (const auto& k : ks) same = same && cls.count(perms(k)) > 0;
        r.require(same, row.file + " Carter subgroups are not one conjugacy class");
        r.require(static_cast<long>(ks.front().order()) == row.value.at("carter"), row.file + " Carter order");
      }
      ++carter;
    }
    // Minimal non-nilpotent straight from the definition.
    const auto lat = all_subgroups(g);
    bool brute = !oracle::is_nilpotent(perms(lat.nodes().back()), g.degree());
    for (std::size_t i = 0; brute && i + 1 < lat.size(); ++i) {
      brute = oracle::is_nilpotent(perms(lat.nodes()[i]), g.degree());
    }
    r.require(is_schmidt(g) == brute, row.file + " Schmidt recognizer disagrees");
    schmidt += brute ? 1 : 0;
  }
  const auto N = formations::nilpotent();
  r.require(is_EF_group(symmetric_group(3), N), "S3 not in E_N");
  r.require(is_EF_group(alternating_group(4), N), "A4 not in E_N");
  r.require(!is_EF_group(symmetric_group(4), N), "S4 in E_N");
  r.note << (r.ok ? "" : "; ") << carter << " soluble groups, " << schmidt << " Schmidt groups";
}

void determinism(Result& r) {
  const fs::path dir = fs::temp_directory_path() / ("efg-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir / "groups");
  for (const auto& row : manifest(32)) {
    fs::copy_file(data_dir() / "smallgroups" / row.file, dir / "groups" / row.file);
  }

  CatalogRun run;
  run.checks = {"all"};
  const std::string first = batch_verify(run, dir / "groups").serialize();
  r.require(batch_verify(run, dir / "groups").serialize() == first, "repeated batch reports differ");
  run.jobs = 4;
  r.require(batch_verify(run, dir / "groups").serialize() == first, "parallel batch report differs");
  run.formation = "NA";
  run.jobs = 1;
  const std::string na = batch_verify(run, dir / "groups").serialize();
  run.jobs = 3;
  r.require(batch_verify(run, dir / "groups").serialize() == na, "parallel NA batch report differs");

  std::size_t files = 0, lattices = 0;
  for (const auto& row : manifest()) {
    const std::string text = read_text(data_dir() / "smallgroups" / row.file);
    const auto parsed = parse_group_text(text);
    r.require(emit_group_file(parsed) == text, row.file + " does not round-trip");
    ++files;
    if (parsed.group.order() > 48) continue;
    const auto lat = all_subgroups(parsed.group);
    cache_save(lat, dir / "cache.json");
    r.require(cache_load(dir / "cache.json", parsed.group) == lat, row.file + " cache round trip");
    ++lattices;
  }
  const auto report = Json::parse(first);
  r.require(Json::parse(report.dump()) == report && report["schema"] == kReportSchema, "report JSON round trip");

  r.require(run_cli("batch --dir " + (dir / "groups").string() + " --check lemmas --jobs 4 --report " +
                    (dir / "a.json").string()) == kExitOk,
            "CLI batch exit code");
  r.require(run_cli("batch --dir " + (dir / "groups").string() + " --check lemmas --jobs 1 --report " +
                    (dir / "b.json").string()) == kExitOk,
            "CLI batch exit code");
  r.require(fs::exists(dir / "a.json") && read_text(dir / "a.json") == read_text(dir / "b.json"),
            "CLI reports differ between --jobs 4 and --jobs 1");
  r.require(run_cli("analyze --group symmetric:3 --check theorem1") == kExitOk, "CLI analyze S3 exit code");
  r.require(run_cli("analyze --group alternating:4 --check theorem2") == kExitOk, "CLI analyze A4 exit code");
  r.require(run_cli("analyze --group cyclic:6 --check theorem1") == kExitHypothesis, "CLI analyze C6 exit code");
  fs::remove_all(dir);
  r.note << (r.ok ? "" : "; ") << files << " files round-tripped, " << lattices << " lattice caches";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "order-864 example regression", 600, paper_example},
      {2, "Theorem 1 over soluble non-nilpotent groups of order <= 120", 300, theorem1},
      {3, "Theorem 2 over non-nilpotent groups of order <= 100", 300, theorem2},
      {4, "lemma suite", 0, lemma_suite},
      {5, "residual oracles and F-subnormality route agreement", 0, oracles},
      {6, "Carter, Schmidt and E_N structure oracles", 0, structure},
      {7, "determinism, round trips and CLI", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Result r;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(r);
    } catch (const std::exception& e) {
      r.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_seconds > 0) {
      r.require(secs <= c.limit_seconds, "runtime over " + std::to_string(static_cast<int>(c.limit_seconds)) + " s");
    }
    failed += r.ok ? 0 : 1;
    std::printf("%s criterion %d: %s (%.1f s) %s\n", r.ok ? "PASS" : "FAIL", c.id, c.title.c_str(), secs,
                r.note.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
