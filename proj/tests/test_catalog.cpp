#include <gtest/gtest.h>

#include <unistd.h>

#include <sstream>

#include "support.hpp"

using namespace efg;
using namespace efg::testing;
namespace fs = std::filesystem;

namespace {

const char* kS3 = "pgrp v1\ndegree 3\n(1 2 3)\n(1 2)\n";

// Fresh scratch directory, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("efg-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

void copy_catalog(const fs::path& to, std::size_t max_order) {
  for (const auto& row : manifest(max_order)) {
    fs::copy_file(data_dir() / "smallgroups" / row.file, to / row.file);
  }
}

ParseError parse_error(const std::string& text) {
  try {
    parse_group_text(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return ParseError("none", 0, 0);
}

CatalogRun run_of(std::vector<std::string> checks, const std::string& formation = "N") {
  CatalogRun run;
  run.formation = formation;
  run.checks = std::move(checks);
  return run;
}

}  // namespace

TEST(GroupFile, ParsesExample) {
  const auto f = parse_group_text(kS3);
  EXPECT_EQ(f.degree, 3u);
  EXPECT_EQ(f.group.order(), 6u);
  EXPECT_EQ(f.generators.size(), 2u);
  EXPECT_FALSE(f.expected_order);
  EXPECT_FALSE(f.name);
}

TEST(GroupFile, HeaderFieldsAndComments) {
  const auto f = parse_group_text(
      "# leading comment\n"
      "pgrp v1\n"
      "degree 4   # points 1..4\n"
      "order 12\n"
      "name A4\n"
      "\n"
      "  (1 2 3)\n"
      "(1 2)(3 4)  # double transposition\r\n");
  EXPECT_EQ(f.group.order(), 12u);
  ASSERT_TRUE(f.expected_order);
  EXPECT_EQ(*f.expected_order, 12u);
  EXPECT_EQ(*f.name, "A4");
}

TEST(GroupFile, EmptyGeneratorListIsTrivial) {
  const auto f = parse_group_text("pgrp v1\ndegree 5\n");
  EXPECT_EQ(f.group.order(), 1u);
  EXPECT_TRUE(f.generators.empty());
}

TEST(GroupFile, OrderMismatchIsRejected) {
  EXPECT_THROW(parse_group_text("pgrp v1\ndegree 4\norder 24\n(1 2 3)\n(1 2)(3 4)\n"), InvalidArgument);
  try {
    parse_group_text("pgrp v1\ndegree 4\norder 24\n(1 2 3)\n(1 2)(3 4)\n");
  } catch (const ParseError&) {
    FAIL() << "an order mismatch is not a syntax error";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("order mismatch"), std::string::npos);
  }
}

TEST(GroupFile, SyntaxErrorsCarryLineAndColumn) {
  auto e = parse_error("pgrp v2\ndegree 3\n");
  EXPECT_EQ(e.line(), 1u);
  e = parse_error("PGRP v1\n");
  EXPECT_EQ(e.line(), 1u);
  EXPECT_EQ(e.column(), 1u);
  e = parse_error("pgrp v1\n(1 2)\n");
  EXPECT_EQ(e.line(), 2u);
  e = parse_error("pgrp v1\ndegree x\n");
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 8u);
  e = parse_error("pgrp v1\ndegree 3\n(1 2)\n  (1 4)\n");
  EXPECT_EQ(e.line(), 4u);
  EXPECT_GE(e.column(), 3u);
  e = parse_error("pgrp v1\ndegree 3\n(1 2)\n1 2\n");
  EXPECT_EQ(e.line(), 4u);
  EXPECT_EQ(e.column(), 1u);
  e = parse_error("pgrp v1\ndegree 3\n(1 1)\n");
  EXPECT_EQ(e.line(), 3u);
  e = parse_error("");
  EXPECT_EQ(e.line(), 1u);
  EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos);
}

TEST(GroupFile, BudgetIsEnforced) {
  EXPECT_THROW(parse_group_text("pgrp v1\ndegree 7\n(1 2 3 4 5 6 7)\n(1 2)\n"), BudgetExceeded);
}

TEST(GroupFile, FileErrorsNameThePath) {
  TempDir dir;
  write_text(dir.path() / "bad.pgrp", "pgrp v1\ndegree 3\n(1 9)\n");
  try {
    read_group_file(dir.path() / "bad.pgrp");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.pgrp"), std::string::npos);
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(read_group_file(dir.path() / "missing.pgrp"), InvalidArgument);
}

TEST(GroupFile, EmitIsCanonical) {
  const std::string messy = "pgrp v1\ndegree 3\nname S3\norder 6\n(2 3 1)   # rotation\n(2 1)\n";
  const std::string canonical = "pgrp v1\ndegree 3\norder 6\nname S3\n(1 2 3)\n(1 2)\n";
  EXPECT_EQ(emit_group_file(parse_group_text(messy)), canonical);
  EXPECT_EQ(emit_group_file(parse_group_text(canonical)), canonical);
}

TEST(GroupFile, CatalogFilesRoundTrip) {
  for (const auto& row : manifest(120)) {
    const std::string text = read_text(data_dir() / "smallgroups" / row.file);
    const auto f = parse_group_text(text);
    EXPECT_EQ(emit_group_file(f), text) << row.file;
    const auto again = parse_group_text(emit_group_file(f.group, *f.name));
    EXPECT_EQ(again.group.order(), f.group.order()) << row.file;
  }
}

TEST(GroupFile, ExampleFileLoads) {
  const auto f = read_group_file(data_dir() / "example" / "sg_0864_4670.pgrp");
  EXPECT_EQ(f.group.order(), 864u);
  EXPECT_EQ(f.degree, 10u);
}

TEST(BuildNamed, Examples) {
  const FiniteGroup c6 = build_named("cyclic:6");
  EXPECT_EQ(c6.order(), 6u);
  EXPECT_TRUE(c6.is_abelian());
  const FiniteGroup e9 = build_named("elem_abelian:3:2");
  EXPECT_EQ(e9.order(), 9u);
  for (Element x = 1; x < e9.order(); ++x) EXPECT_EQ(e9.element_order(x), 3u);
  const FiniteGroup s3 = build_named("semidirect(cyclic:3, cyclic:2, inversion)");
  EXPECT_EQ(s3.order(), 6u);
  EXPECT_FALSE(s3.is_abelian());
  EXPECT_FALSE(is_nilpotent(s3));
  EXPECT_EQ(build_named("dihedral:4").order(), 8u);
  EXPECT_EQ(build_named("symmetric:4").order(), 24u);
  EXPECT_EQ(build_named("alternating:5").order(), 60u);
  EXPECT_EQ(build_named("direct(symmetric:3,cyclic:2)").order(), 12u);
  EXPECT_TRUE(build_named("semidirect(cyclic:7,cyclic:3,power:2)").order() == 21u);
  // C2 swapping the two generators of V4: the dihedral group of order 8.
  const FiniteGroup d8 = build_named("semidirect(elem_abelian:2:2,cyclic:2,cycle)");
  EXPECT_EQ(d8.order(), 8u);
  EXPECT_EQ(derived_subgroup(d8).order(), 2u);
}

TEST(BuildNamed, Errors) {
  EXPECT_THROW(build_named("quaternion:8"), ParseError);
  EXPECT_THROW(build_named("cyclic"), ParseError);
  EXPECT_THROW(build_named("cyclic:0"), InvalidArgument);
  EXPECT_THROW(build_named("elem_abelian:4:2"), InvalidArgument);
  EXPECT_THROW(build_named("direct(cyclic:2"), ParseError);
  EXPECT_THROW(build_named("semidirect(cyclic:3,cyclic:2,twist)"), ParseError);
  EXPECT_THROW(build_named("semidirect(cyclic:7,cyclic:3,power:3)"), InvalidArgument);
  EXPECT_THROW(build_named("cyclic:6 extra"), ParseError);
  EXPECT_THROW(build_named("symmetric:8"), BudgetExceeded);
}

TEST(LoadDirectory, SortsAndIsolatesErrors) {
  TempDir dir;
  copy_catalog(dir.path(), 8);
  write_text(dir.path() / "zz_broken.pgrp", "pgrp v1\ndegree 3\n(1 2\n");
  write_text(dir.path() / "notes.txt", "ignored");
  const auto entries = load_directory(dir.path());
  ASSERT_EQ(entries.size(), manifest(8).size() + 1);
  EXPECT_FALSE(entries.front().group);
  EXPECT_NE(entries.front().error.find("line 3"), std::string::npos);
  for (std::size_t i = 2; i < entries.size(); ++i) {
    EXPECT_LE(entries[i - 1].group->order(), entries[i].group->order());
  }
  EXPECT_EQ(load_directory(dir.path(), {}, 4).size(), manifest(4).size() + 1);
  EXPECT_THROW(load_directory(dir.path() / "nope"), InvalidArgument);
}

TEST(LatticeCache, RoundTrip) {
  TempDir dir;
  for (const FiniteGroup& g : {build_named("symmetric:3"), build_named("symmetric:4"), build_named("dihedral:6")}) {
    const auto lat = all_subgroups(g);
    cache_save(lat, dir.path() / "lat.json");
    const auto back = cache_load(dir.path() / "lat.json", g);
    EXPECT_EQ(back, lat);
    EXPECT_EQ(back.edges(), lat.edges());
    EXPECT_EQ(back.classes(), lat.classes());
  }
}

TEST(LatticeCache, PartialLatticeRoundTrip) {
  const FiniteGroup g = build_named("symmetric:4");
  OvergroupExplorer ex(SubgroupRef::whole(g));
  (void)ex.minimal_overgroups(SubgroupRef::trivial(g));
  const auto part = ex.explored();
  EXPECT_FALSE(part.complete());
  EXPECT_EQ(lattice_from_json(lattice_to_json(part), g), part);
}

TEST(LatticeCache, RejectsForeignAndStaleFiles) {
  TempDir dir;
  const fs::path path = dir.path() / "s3.json";
  cache_save(all_subgroups(build_named("symmetric:3")), path);
  try {
    cache_load(path, build_named("cyclic:6"));
    FAIL();
  } catch (const CacheError& e) {
    EXPECT_EQ(e.kind(), CacheError::Kind::checksum);
  }
  // Same order, same degree, different group.
  try {
    cache_load(path, build_named("semidirect(cyclic:3,cyclic:2,trivial)"));
    FAIL();
  } catch (const CacheError& e) {
    EXPECT_EQ(e.kind(), CacheError::Kind::checksum);
  }
  Json j = Json::parse(read_text(path));
  j["version"] = 99;
  write_text(path, j.dump());
  try {
    cache_load(path, build_named("symmetric:3"));
    FAIL();
  } catch (const CacheError& e) {
    EXPECT_EQ(e.kind(), CacheError::Kind::version);
  }
  write_text(path, "{not json");
  EXPECT_THROW(cache_load(path, build_named("symmetric:3")), CacheError);
}

TEST(Analyze, ExitCodes) {
  const NamedGroup s3{"S3", build_named("symmetric:3")};
  const NamedGroup a4{"A4", build_named("alternating:4")};
  const NamedGroup c6{"C6", build_named("cyclic:6")};
  auto r = analyze(s3, run_of({"theorem1"}));
  EXPECT_EQ(exit_code(r), kExitOk);
  EXPECT_TRUE(r.groups[0].checks[0].details["holds"].get<bool>());
  EXPECT_EQ(exit_code(analyze(a4, run_of({"theorem2"}))), kExitOk);
  r = analyze(c6, run_of({"theorem1"}));
  EXPECT_EQ(r.groups[0].checks[0].status, Status::hypothesis_violation);
  EXPECT_EQ(exit_code(r), kExitHypothesis);

  CatalogRun tight = run_of({"theorem1"});
  tight.limits.lattice_budget = 10;
  r = analyze(NamedGroup{"S4", build_named("symmetric:4")}, tight);
  EXPECT_EQ(r.groups[0].checks[0].status, Status::budget_exceeded);
  EXPECT_FALSE(r.complete());
  EXPECT_EQ(exit_code(r), kExitBudget);
  EXPECT_FALSE(r.to_json()["complete"].get<bool>());

  CatalogRun rushed = run_of({"all"});
  rushed.time_budget = 1e-9;
  r = analyze(NamedGroup{"S4", build_named("symmetric:4")}, rushed);
  EXPECT_GT(r.count(Status::budget_exceeded), 0u);
  EXPECT_EQ(exit_code(r), kExitBudget);

  // Q8 with the abelian formation: Lemma 4 fails outside its hypotheses.
  r = analyze(NamedGroup{"Q8", read_group_file(data_dir() / "smallgroups" / "sg_0008_0004.pgrp").group}, run_of({"lemma4"}, "A"));
  EXPECT_EQ(r.violations(), 0u);
  EXPECT_EQ(exit_code(r), kExitCheckFailed);
}

TEST(Analyze, ValidatesRun) {
  const NamedGroup s3{"S3", build_named("symmetric:3")};
  EXPECT_THROW(analyze(s3, run_of({})), InvalidArgument);
  EXPECT_THROW(analyze(s3, run_of({"theorem9"})), InvalidArgument);
  EXPECT_THROW(analyze(s3, run_of({"all"}, "Q")), InvalidArgument);
  CatalogRun bad = run_of({"all"});
  bad.time_budget = 0;
  EXPECT_THROW(analyze(s3, bad), InvalidArgument);
}

TEST(Analyze, ExpandsAll) {
  const auto r = analyze(NamedGroup{"S3", build_named("symmetric:3")}, run_of({"all"}));
  EXPECT_EQ(r.groups[0].checks.size(), 4 + lemma_checks().size());
  EXPECT_EQ(r.groups[0].checks[0].check, "theorem1");
  EXPECT_EQ(exit_code(r), kExitOk);
}

TEST(Analyze, CacheIsReusedAndRefreshed) {
  TempDir dir;
  CatalogRun run = run_of({"all"});
  run.cache = dir.path() / "s4.json";
  const NamedGroup s4{"S4", build_named("symmetric:4")};
  const auto first = analyze(s4, run).serialize();
  ASSERT_TRUE(fs::exists(run.cache));
  EXPECT_EQ(cache_load(run.cache, s4.group), all_subgroups(s4.group));
  const auto second = analyze(s4, run).serialize();
  EXPECT_EQ(first, second);
  std::ostringstream notes;
  const auto other = analyze(NamedGroup{"S3", build_named("symmetric:3")}, run, &notes);
  EXPECT_NE(notes.str().find("different group"), std::string::npos);
  EXPECT_EQ(exit_code(other), kExitOk);
}

TEST(Report, SchemaShape) {
  const auto j = analyze(NamedGroup{"S3", build_named("symmetric:3")}, run_of({"theorem1"})).to_json();
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"schema", "tool", "budgets", "formation", "checks", "groups", "errors",
                                            "summary", "complete"}));
  EXPECT_EQ(j["schema"], kReportSchema);
  EXPECT_EQ(j["tool"]["version"], kToolVersion);
  EXPECT_EQ(j["budgets"]["lattice_budget"], 400);
  const auto& check = j["groups"][0]["checks"][0];
  EXPECT_EQ(check["status"], "pass");
  EXPECT_TRUE(check["details"]["witnesses"]["S3"].contains("x"));
  EXPECT_EQ(Json::parse(j.dump()), j);
}

TEST(Batch, EmptyDirectory) {
  TempDir dir;
  const auto r = batch_verify(run_of({"all"}), dir.path());
  EXPECT_TRUE(r.groups.empty());
  EXPECT_EQ(exit_code(r), kExitOk);
}

TEST(Batch, Lemma4UpTo24AndMalformedFile) {
  TempDir dir;
  copy_catalog(dir.path(), 24);
  write_text(dir.path() / "broken.pgrp", "pgrp v1\ndegree 2\norder 3\n(1 2)\n");
  const auto r = batch_verify(run_of({"lemma4"}), dir.path());
  EXPECT_EQ(r.groups.size(), manifest(24).size());
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].source, "broken.pgrp");
  EXPECT_EQ(r.count(Status::fail), 0u);
  EXPECT_EQ(exit_code(r), kExitError);
  for (std::size_t i = 1; i < r.groups.size(); ++i) {
    EXPECT_TRUE(r.groups[i - 1].order < r.groups[i].order ||
                (r.groups[i - 1].order == r.groups[i].order && r.groups[i - 1].group < r.groups[i].group));
  }
}

TEST(Batch, ReportsAreByteIdenticalAcrossRunsAndJobs) {
  TempDir dir;
  copy_catalog(dir.path(), 32);
  CatalogRun run = run_of({"all"});
  run.jobs = 1;
  const std::string serial = batch_verify(run, dir.path()).serialize();
  EXPECT_EQ(batch_verify(run, dir.path()).serialize(), serial);
  run.jobs = 4;
  EXPECT_EQ(batch_verify(run, dir.path()).serialize(), serial);
  run.max_order = 16;
  const auto small = batch_verify(run, dir.path());
  EXPECT_EQ(small.groups.size(), manifest(16).size());
}
