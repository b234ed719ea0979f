// efg: analyze, batch and lattice commands over permutation groups.
#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "efg/efg.hpp"

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string group;
  std::string dir;
  std::string report;
  std::string cache;
  efg::CatalogRun run;
};

void add_budgets(CLI::App* cmd, Options& o) {
  cmd->add_option("--budget-max-order", o.run.limits.max_order, "largest group order accepted")
      ->capture_default_str();
  cmd->add_option("--budget-lattice", o.run.limits.lattice_budget, "largest order for full lattice enumeration")
      ->capture_default_str();
  cmd->add_option("--budget-time", o.run.time_budget, "seconds per group")->capture_default_str();
  cmd->add_option("--budget-example-time", o.run.example_time_budget, "seconds for the order-864 example")
      ->capture_default_str();
}

void add_checks(CLI::App* cmd, Options& o) {
  cmd->add_option("--formation", o.run.formation, "A, N, U, NA or Sol")
      ->capture_default_str()
      ->check(CLI::IsMember({"A", "N", "U", "NA", "Sol"}));
  cmd->add_option("--check", o.run.checks,
                  "theorem1, theorem2, corollary1, corollary2, lemmas, a single lemma, example864 or all; "
                  "repeatable")
      ->capture_default_str();
  cmd->add_option("--report", o.report, "also write the JSON report to this file");
}

/// A path names a group file; anything else goes to the named constructors.
efg::NamedGroup resolve_group(const std::string& arg, const efg::Limits& limits) {
  if (fs::exists(arg)) {
    auto f = efg::read_group_file(arg, limits);
    const std::string name = f.name ? *f.name : fs::path(arg).stem().string();
    return efg::NamedGroup{name, std::move(f.group)};
  }
  return efg::NamedGroup{arg, efg::build_named(arg, limits)};
}

int emit(const efg::VerdictReport& report, const std::string& path) {
  const std::string text = report.serialize();
  std::cout << text;
  if (!path.empty()) efg::write_text(path, text);
  return efg::exit_code(report);
}

int cmd_analyze(const Options& o) {
  efg::CatalogRun run = o.run;
  run.cache = o.cache;
  return emit(efg::analyze(resolve_group(o.group, run.limits), run, &std::cerr), o.report);
}

int cmd_batch(const Options& o) { return emit(efg::batch_verify(o.run, o.dir), o.report); }

int cmd_lattice(const Options& o) {
  const auto g = resolve_group(o.group, o.run.limits);
  const auto lattice = efg::all_subgroups(g.group, o.run.limits);
  efg::cache_save(lattice, o.cache);
  efg::Json summary{{"group", g.name},
                    {"order", g.group.order()},
                    {"subgroups", lattice.size()},
                    {"classes", lattice.classes().size()},
                    {"covers", lattice.edges().size()},
                    {"cache", o.cache}};
  std::cout << summary.dump(2) << "\n";
  return efg::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Formation-theoretic subnormality checks on finite permutation groups"};
  app.set_version_flag("--version", efg::kToolVersion);
  app.require_subcommand(1);
  Options o;

  auto* analyze = app.add_subcommand("analyze", "run checks on one group");
  analyze->add_option("--group", o.group, "group file, or a name such as cyclic:6 or direct(symmetric:3,cyclic:2)")
      ->required();
  add_checks(analyze, o);
  add_budgets(analyze, o);
  analyze->add_option("--cache", o.cache, "lattice cache to reuse and refresh");

  auto* batch = app.add_subcommand("batch", "run checks on every group file in a directory");
  batch->add_option("--dir", o.dir, "directory of .pgrp files")->required()->check(CLI::ExistingDirectory);
  batch->add_option("--max-order", o.run.max_order, "skip groups above this order (0: no bound)");
  batch->add_option("--jobs", o.run.jobs, "worker threads (0: one per core)")->capture_default_str();
  add_checks(batch, o);
  add_budgets(batch, o);

  auto* lattice = app.add_subcommand("lattice", "enumerate the subgroup lattice and write it to a cache file");
  lattice->add_option("--group", o.group, "group file or name")->required();
  lattice->add_option("--cache", o.cache, "output cache file")->required();
  lattice->add_option("--budget-max-order", o.run.limits.max_order, "largest group order accepted")
      ->capture_default_str();
  lattice->add_option("--budget-lattice", o.run.limits.lattice_budget, "largest order for lattice enumeration")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? efg::kExitOk : efg::kExitError;
  }

  try {
    if (*analyze) return cmd_analyze(o);
    if (*batch) return cmd_batch(o);
    return cmd_lattice(o);
  } catch (const efg::BudgetExceeded& e) {
    std::cerr << "efg: budget exceeded: " << e.what() << "\n";
    return efg::kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "efg: error: " << e.what() << "\n";
    return efg::kExitError;
  }
}
