#include <gtest/gtest.h>

#include "fitdef/families.hpp"
#include "fitdef/radicals.hpp"

using namespace fitdef;

TEST(Fitting, Examples) {
  const auto s3 = families::symmetric(3);
  const auto f3 = fitting(s3);
  EXPECT_EQ(f3.subgroup.order(), 3u);
  EXPECT_EQ(f3.invariant, 1u);

  const auto s4 = families::symmetric(4);
  const auto f4 = fitting(s4);
  EXPECT_EQ(f4.subgroup.order(), 4u);
  EXPECT_TRUE(is_abelian(f4.subgroup));

  EXPECT_TRUE(fitting(families::alternating(5)).subgroup.is_trivial());
  EXPECT_EQ(fitting(families::alternating(5)).invariant, 0u);

  for (const char* spec : {"quaternion8", "dihedral:8", "cyclic:12", "product(quaternion8,cyclic:3)"}) {
    const auto g = families::family(spec);
    EXPECT_TRUE(fitting(g).subgroup.is_whole()) << spec;
  }
}

TEST(Fitting, WitnessClassesBoundedByClassOfF) {
  // In Q8 every normal closure <g>^G is abelian, yet F = Q8 has class 2.
  const auto q = families::quaternion8();
  const auto f = fitting(q);
  EXPECT_EQ(f.invariant, 2u);
  EXPECT_EQ(f.max_witness(), 1u);
  for (Element x = 0; x < q.order(); ++x) EXPECT_EQ(f.witness_classes[x], 1u - (x == q.identity()));
}

TEST(Radical, Examples) {
  EXPECT_TRUE(soluble_radical(families::symmetric(3)).subgroup.is_whole());
  EXPECT_TRUE(soluble_radical(families::alternating(5)).subgroup.is_trivial());
  const auto r4 = soluble_radical(families::symmetric(4));
  EXPECT_TRUE(r4.subgroup.is_whole());
  EXPECT_EQ(r4.invariant, 3u);
  const auto r5 = soluble_radical(families::symmetric(5));
  EXPECT_TRUE(r5.subgroup.is_trivial());
  const auto z2a5 = families::family("product(cyclic:2,alternating:5)");
  EXPECT_EQ(soluble_radical(z2a5).subgroup.order(), 2u);
}

TEST(Oracle, AgreesWithElementwise) {
  for (const char* spec : {"cyclic:1", "cyclic:8", "klein4", "dihedral:3", "dihedral:4", "dihedral:6", "quaternion8",
                           "symmetric:3", "symmetric:4", "alternating:4", "alternating:5",
                           "product(quaternion8,cyclic:3)"}) {
    const auto g = families::family(spec);
    EXPECT_EQ(oracle_fitting(g), fitting(g).subgroup) << spec;
    EXPECT_EQ(oracle_radical(g), soluble_radical(g).subgroup) << spec;
  }
  const auto s3 = families::symmetric(3);
  EXPECT_EQ(oracle_fitting(s3).order(), 3u);
  EXPECT_EQ(normal_subgroups(s3).size(), 3u);
  EXPECT_TRUE(oracle_fitting(families::family("product(quaternion8,cyclic:3)")).is_whole());
}

TEST(Oracle, BudgetExceeded) {
  EXPECT_THROW(oracle_fitting(families::symmetric(4), 4), BudgetError);
  try {
    normal_subgroups(families::symmetric(4), 4);
  } catch (const BudgetError& e) {
    EXPECT_NE(std::string(e.what()).find("oracle infeasible"), std::string::npos);
  }
}

TEST(BoundProfile, S4IsAlwaysOne) {
  const auto s4 = families::symmetric(4);
  const auto prof = bound_profile(s4, fitting(s4).subgroup, 6);
  EXPECT_EQ(prof.d_of_m, (std::vector<std::size_t>{1, 1, 1, 1, 1, 1}));
  EXPECT_FALSE(prof.any_sampled());
}

TEST(BoundProfile, Quaternion) {
  const auto q = families::quaternion8();
  const auto prof = bound_profile(q, whole_group(q), 4);
  EXPECT_EQ(prof.d_of_m, (std::vector<std::size_t>{1, 2, 2, 2}));
  EXPECT_EQ(prof.witnesses[1].size(), 2u);
}

TEST(BoundProfile, TrivialFitting) {
  const auto a5 = families::alternating(5);
  const auto prof = bound_profile(a5, fitting(a5).subgroup, 3);
  EXPECT_EQ(prof.d_of_m, (std::vector<std::size_t>{0, 0, 0}));
}

TEST(BoundProfile, SamplingIsFlaggedAndSeeded) {
  const auto d8 = families::dihedral(8);
  const auto whole = whole_group(d8);
  const auto a = bound_profile(d8, whole, 3, 7, 100, 50);
  const auto b = bound_profile(d8, whole, 3, 7, 100, 50);
  EXPECT_EQ(a.sampled, (std::vector<bool>{false, true, true}));
  EXPECT_EQ(a.d_of_m, b.d_of_m);
  EXPECT_EQ(a.witnesses, b.witnesses);
  for (std::size_t i = 1; i < a.d_of_m.size(); ++i) EXPECT_GE(a.d_of_m[i], a.d_of_m[i - 1]);
}

TEST(Engel, Classification) {
  EXPECT_EQ(engel_classify(families::cyclic(7), 5), 1u);
  EXPECT_EQ(engel_classify(families::quaternion8(), 5), 2u);
  EXPECT_EQ(engel_classify(families::dihedral(8), 5), 3u);
  EXPECT_FALSE(engel_classify(families::symmetric(3), 5));
  EXPECT_TRUE(is_engel(families::quaternion8(), 2));
  EXPECT_FALSE(is_engel(families::dihedral(8), 2));
}

TEST(Radicals, CorpusInvariants) {
  for (const char* spec : {"cyclic:9", "dihedral:5", "dihedral:8", "quaternion8", "symmetric:4", "symmetric:5",
                           "alternating:4", "alternating:5", "product(cyclic:2,alternating:5)"}) {
    const auto g = families::family(spec);
    const auto f = fitting(g);
    const auto r = soluble_radical(g);
    EXPECT_TRUE(f.subgroup.is_subset_of(r.subgroup)) << spec;
    EXPECT_TRUE(is_normal(g, f.subgroup) && is_normal(g, r.subgroup)) << spec;
    EXPECT_EQ(nilpotency_class(g, f.subgroup), f.invariant) << spec;
    EXPECT_EQ(derived_length(g, r.subgroup), r.invariant) << spec;
    if (engel_classify(g, 5)) EXPECT_TRUE(f.subgroup.is_whole()) << spec;
  }
}
