#include <gtest/gtest.h>

#include "oracle.hpp"
#include "support.hpp"

using namespace efg;
using namespace efg::testing;

namespace {

FiniteGroup S3() { return gen(3, {"(1 2 3)", "(1 2)"}); }
FiniteGroup A4() { return gen(4, {"(1 2 3)", "(1 2)(3 4)"}); }
FiniteGroup catalog_group(const std::string& file) {
  return read_group_file(data_dir() / "smallgroups" / file).group;
}

oracle::PermSet perms(const SubgroupRef& h) {
  oracle::PermSet out;
  for (Element e : h.elements()) out.insert(h.group().element(e));
  return out;
}

oracle::PermSet conjugate_set(const oracle::PermSet& h, const Permutation& x) {
  oracle::PermSet out;
  for (const auto& y : h) out.insert(x.inverse() * y * x);
  return out;
}

// Minimal non-nilpotent from the definition: every proper subgroup, not just
// the maximal ones, tested by lower central series on explicit sets.
bool brute_schmidt(const FiniteGroup& g) {
  const std::size_t d = g.degree();
  const auto lat = all_subgroups(g);
  if (oracle::is_nilpotent(perms(lat.nodes().back()), d)) return false;
  for (std::size_t i = 0; i + 1 < lat.size(); ++i) {
    if (!oracle::is_nilpotent(perms(lat.nodes()[i]), d)) return false;
  }
  return true;
}

bool is_prime_power_order(std::size_t n) { return n == 1 || factorize(n).size() == 1; }

// Right side of Theorem 2 on explicit sets.
bool brute_theorem2_right(const FiniteGroup& g) {
  const std::size_t d = g.degree();
  const auto lat = all_subgroups(g);
  const auto whole = perms(lat.nodes().back());
  if (oracle::is_nilpotent(whole, d)) return false;
  for (std::size_t i = 0; i + 1 < lat.size(); ++i) {
    if (!is_prime_power_order(lat.nodes()[i].order())) return false;
  }
  const auto dset = oracle::commutator_subgroup(whole, whole, d);
  if (dset.size() == 1 || !is_prime_power_order(dset.size())) return false;
  const std::size_t p = factorize(dset.size()).front().first;
  for (const auto& a : dset) {
    if (oracle::element_order(a) > p) return false;
    for (const auto& b : dset) {
      if (!(a * b == b * a)) return false;
    }
  }
  for (const auto& x : whole) {
    const std::size_t q = oracle::element_order(x);
    if (!is_prime(q) || q == p || dset.size() * q != whole.size()) continue;
    const auto cx = oracle::closure({x}, d);
    bool maximal = true;
    for (const auto& h : lat.nodes()) {
      const auto hs = perms(h);
      if (hs.size() > cx.size() && hs.size() < whole.size() &&
          std::includes(hs.begin(), hs.end(), cx.begin(), cx.end())) {
        maximal = false;
      }
    }
    if (maximal && oracle::is_self_normalizing(cx, whole)) return true;
  }
  return false;
}

}  // namespace

TEST(PrimaryCyclic, Examples) {
  EXPECT_EQ(primary_cyclic_subgroups(S3()).size(), 4u);
  EXPECT_EQ(primary_cyclic_subgroups(cyclic_group(6)).size(), 2u);
  EXPECT_TRUE(primary_cyclic_subgroups(FiniteGroup()).empty());
  for (const auto& c : primary_cyclic_subgroups(symmetric_group(4))) {
    EXPECT_EQ(c.generators().size(), 1u);
    EXPECT_TRUE(is_prime_power_order(c.order()));
  }
}

TEST(Carter, Examples) {
  const auto s3 = carter_subgroups(S3());
  ASSERT_EQ(s3.size(), 3u);
  for (const auto& k : s3) EXPECT_EQ(k.order(), 2u);
  const auto a4 = carter_subgroups(A4());
  ASSERT_EQ(a4.size(), 4u);
  for (const auto& k : a4) EXPECT_EQ(k.order(), 3u);
  ASSERT_EQ(carter_subgroups(cyclic_group(6)).size(), 1u);
  EXPECT_TRUE(carter_subgroups(cyclic_group(6)).front().is_whole());
}

TEST(Carter, ExistAndFormOneConjugacyClassUpTo100) {
  for (const auto& row : manifest(100)) {
    if (row.value.at("soluble") != 1) continue;
    const FiniteGroup g = load(row);
    const auto ks = carter_subgroups(g);
    ASSERT_FALSE(ks.empty()) << row.file;
    EXPECT_EQ(ks.front().order(), static_cast<std::size_t>(row.value.at("carter"))) << row.file;
    const auto whole = perms(SubgroupRef::whole(g));
    const auto k0 = perms(ks.front());
    std::set<oracle::PermSet> conjugates;
    for (const auto& x : whole) conjugates.insert(conjugate_set(k0, x));
    EXPECT_EQ(conjugates.size(), ks.size()) << row.file;
    for (const auto& k : ks) EXPECT_TRUE(conjugates.count(perms(k))) << row.file;
  }
}

TEST(Schmidt, Examples) {
  EXPECT_TRUE(is_schmidt(S3()));
  EXPECT_TRUE(is_schmidt(A4()));
  EXPECT_FALSE(is_schmidt(symmetric_group(4)));
  EXPECT_FALSE(is_schmidt(cyclic_group(6)));
  EXPECT_TRUE(is_minimal_non_F(S3(), formations::nilpotent()));
  EXPECT_TRUE(is_minimal_non_F(A4(), formations::supersoluble()));
}

TEST(Schmidt, MatchesMinimalNonNilpotentUpTo100) {
  std::size_t found = 0;
  for (const auto& row : manifest(100)) {
    const FiniteGroup g = load(row);
    const bool s = is_schmidt(g);
    ASSERT_EQ(s, brute_schmidt(g)) << row.file;
    ASSERT_EQ(s, is_minimal_non_F(g, formations::nilpotent())) << row.file;
    if (!s) continue;
    ++found;
    const auto primes = prime_divisors(g);
    EXPECT_EQ(primes.size(), 2u) << row.file;
    bool normal_sylow = false;
    for (std::size_t p : primes) normal_sylow = normal_sylow || is_normal(SubgroupRef::whole(g), sylow_subgroup(g, p));
    EXPECT_TRUE(normal_sylow) << row.file;
  }
  EXPECT_GT(found, 10u);
}

TEST(EFGroup, Examples) {
  const auto N = formations::nilpotent();
  EXPECT_TRUE(is_EF_group(S3(), N));
  EXPECT_TRUE(is_EF_group(A4(), N));
  EXPECT_FALSE(is_EF_group(symmetric_group(4), N));
  EXPECT_FALSE(is_EF_group(cyclic_group(6), N));
}

TEST(Theorem1, Examples) {
  for (const FiniteGroup& g : {S3(), A4()}) {
    const auto v = check_theorem1(g, formations::nilpotent());
    EXPECT_TRUE(v.in_hypothesis);
    EXPECT_TRUE(v.statement("S1"));
    EXPECT_TRUE(v.statement("S2"));
    EXPECT_TRUE(v.statement("S3"));
    EXPECT_TRUE(v.holds());
    EXPECT_EQ(v.to_outcome().status, Status::pass);
  }
  const auto s4 = check_theorem1(symmetric_group(4), formations::nilpotent());
  EXPECT_FALSE(s4.statement("S1"));
  EXPECT_FALSE(s4.statement("S2"));
  EXPECT_FALSE(s4.statement("S3"));
  EXPECT_TRUE(s4.holds());
}

TEST(Theorem1, HypothesisViolations) {
  EXPECT_THROW(check_theorem1(cyclic_group(6), formations::nilpotent()), HypothesisViolation);
  EXPECT_THROW(check_theorem1(alternating_group(5), formations::nilpotent()), HypothesisViolation);
  const auto u = check_theorem1(A4(), formations::supersoluble());
  EXPECT_FALSE(u.in_hypothesis);
  EXPECT_NE(u.hypothesis_status.find("empirical"), std::string::npos);
  EXPECT_FALSE(u.to_outcome().is_violation());
}

TEST(Theorem1, HoldsOnCatalogUpTo60) {
  for (const auto& row : manifest(60)) {
    if (row.value.at("soluble") != 1 || row.value.at("nilpotent") == 1) continue;
    const auto v = check_theorem1(load(row), formations::nilpotent());
    EXPECT_TRUE(v.holds()) << row.file << " " << v.to_outcome().to_json().dump();
  }
}

TEST(Theorem2, Examples) {
  for (const FiniteGroup& g : {S3(), A4()}) {
    const auto v = check_theorem2(g, formations::nilpotent());
    EXPECT_TRUE(v.statement("left"));
    EXPECT_TRUE(v.statement("right"));
    EXPECT_TRUE(v.holds());
  }
  const FiniteGroup sl23 = catalog_group("sg_0024_0003.pgrp");
  const auto v = check_theorem2(sl23, formations::nilpotent());
  EXPECT_FALSE(v.statement("left"));
  EXPECT_FALSE(v.statement("right"));
  EXPECT_FALSE(brute_theorem2_right(sl23));
  EXPECT_TRUE(v.holds());
  EXPECT_THROW(check_theorem2(cyclic_group(4), formations::nilpotent()), HypothesisViolation);
}

TEST(Theorem2, RightSideMatchesBruteForceUpTo60) {
  std::size_t right = 0;
  for (const auto& row : manifest(60)) {
    if (row.value.at("nilpotent") == 1) continue;
    const FiniteGroup g = load(row);
    const auto v = check_theorem2(g, formations::nilpotent());
    const bool expected = brute_theorem2_right(g);
    ASSERT_EQ(v.statement("right"), expected) << row.file;
    EXPECT_TRUE(v.holds()) << row.file;
    if (v.statement("left")) {
      EXPECT_TRUE(v.witnesses["soluble"].get<bool>()) << row.file;
    }
    right += expected ? 1 : 0;
  }
  EXPECT_GT(right, 5u);
}

TEST(Corollary1, Examples) {
  for (const FiniteGroup& g : {S3(), A4()}) {
    const auto v = check_corollary1(g, formations::nilpotent());
    EXPECT_TRUE(v.statement("C1"));
    EXPECT_TRUE(v.statement("C2"));
    EXPECT_TRUE(v.holds());
  }
  EXPECT_THROW(check_corollary1(cyclic_group(6), formations::nilpotent()), HypothesisViolation);
  // S4: statement 1 of Theorem 1 fails, so the corollary does not apply.
  EXPECT_THROW(check_corollary1(symmetric_group(4), formations::nilpotent()), HypothesisViolation);
}

TEST(Corollary2, ThreeWayEquivalenceUpTo60) {
  for (const auto& row : manifest(60)) {
    if (row.value.at("soluble") != 1 || row.value.at("nilpotent") == 1) continue;
    const FiniteGroup g = load(row);
    const auto v = check_corollary2(g, formations::nilpotent());
    EXPECT_TRUE(v.holds()) << row.file << " " << v.to_outcome().to_json().dump();
    EXPECT_EQ(v.statement("C2"), is_EF_group(g, formations::nilpotent())) << row.file;
  }
  const auto s3 = check_corollary2(S3(), formations::nilpotent());
  EXPECT_TRUE(s3.statement("C1") && s3.statement("C2") && s3.statement("C3"));
}

TEST(GroupContext, SharesWorkAcrossChecks) {
  GroupContext ctx(symmetric_group(4));
  EXPECT_EQ(ctx.lattice().size(), 30u);
  EXPECT_EQ(&ctx.engine(formations::nilpotent()), &ctx.engine(formations::nilpotent()));
  EXPECT_EQ(ctx.residual_of(formations::nilpotent()).order(), 12u);
  EXPECT_TRUE(ctx.soluble());
  EXPECT_FALSE(ctx.nilpotent());
  EXPECT_EQ(ctx.primary_cyclic().size(), primary_cyclic_subgroups(symmetric_group(4)).size());
}

TEST(Example864, RejectsWrongOrder) {
  EXPECT_THROW(verify_paper_example(symmetric_group(4)), InvalidArgument);
}
