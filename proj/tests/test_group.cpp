#include <gtest/gtest.h>

#include <array>
#include <sstream>
#include <vector>

#include "fitdef/families.hpp"
#include "fitdef/group.hpp"
#include "fitdef/group_io.hpp"

using namespace fitdef;

namespace {

using Perm = std::array<std::uint32_t, 3>;

// Left-to-right composition on image arrays, independent of the group code.
Perm compose(const Perm& a, const Perm& b) { return {b[a[0]], b[a[1]], b[a[2]]}; }

struct S3Fixture : ::testing::Test {
  FiniteGroup g = from_permutations(PermutationSpec{3, {{1, 0, 2}, {1, 2, 0}}});
  std::vector<Perm> perms;

  void SetUp() override {
    std::vector<Perm> all{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
    perms.resize(g.order());
    // Recover each element's image array from its cycle-notation label.
    for (Element x = 0; x < g.order(); ++x)
      for (const auto& p : all)
        if (cycle_notation(p) == g.label(x)) perms[x] = p;
  }

  Element find(const Perm& p) const {
    for (Element x = 0; x < g.order(); ++x)
      if (perms[x] == p) return x;
    ADD_FAILURE() << "permutation not in group";
    return 0;
  }
};

}  // namespace

TEST_F(S3Fixture, TableMatchesPermutationComposition) {
  ASSERT_EQ(g.order(), 6u);
  for (Element a = 0; a < 6; ++a)
    for (Element b = 0; b < 6; ++b) EXPECT_EQ(perms[g.mul(a, b)], compose(perms[a], perms[b]));
}

TEST_F(S3Fixture, ConjugateOfTranspositionHasOrderTwo) {
  const auto t = find({1, 0, 2});
  const auto r = find({1, 2, 0});
  const auto c = g.conjugate(t, r);
  EXPECT_EQ(g.element_order(c), 2u);
  const Perm rinv{2, 0, 1};
  EXPECT_EQ(perms[c], compose(compose(rinv, perms[t]), perms[r]));
}

TEST_F(S3Fixture, ClosuresAndClasses) {
  const auto t = find({1, 0, 2});
  const auto r = find({1, 2, 0});
  EXPECT_EQ(closure(g, {r}).order(), 3u);
  EXPECT_TRUE(closure(g, {t, r}).is_whole());
  EXPECT_TRUE(normal_closure(g, {t}).is_whole());
  EXPECT_EQ(conjugacy_class(g, t).size(), 3u);
  EXPECT_EQ(centralizer(g, r).order(), 3u);
  EXPECT_FALSE(is_normal(g, closure(g, {t})));
  EXPECT_TRUE(is_normal(g, whole_group(g)));
}

TEST(Group, CyclicArithmetic) {
  const auto z4 = families::cyclic(4);
  EXPECT_EQ(z4.mul(1, 3), 0u);
  for (Element x = 0; x < 4; ++x) EXPECT_EQ(z4.mul(z4.identity(), x), x);
}

TEST(Group, TrivialIdentities) {
  for (const auto& g : {families::cyclic(6), families::quaternion8(), families::symmetric(4)}) {
    for (Element x = 0; x < g.order(); ++x) {
      EXPECT_EQ(g.commutator(x, x), g.identity());
      EXPECT_EQ(g.conjugate(x, g.identity()), x);
    }
    EXPECT_TRUE(closure(g, std::span<const Element>{}).is_trivial());
    EXPECT_TRUE(normal_closure(g, {g.identity()}).is_trivial());
    EXPECT_EQ(conjugacy_class(g, g.identity()).size(), 1u);
    EXPECT_TRUE(centralizer(g, g.identity()).is_whole());
  }
  const auto z6 = families::cyclic(6);
  for (Element a = 0; a < 6; ++a)
    for (Element b = 0; b < 6; ++b) {
      EXPECT_EQ(z6.commutator(a, b), z6.identity());
      EXPECT_EQ(z6.conjugate(a, b), a);
    }
  EXPECT_EQ(normal_closure(z6, {2}), closure(z6, {2}));
  EXPECT_TRUE(centralizer(z6, 1).is_whole());
}

TEST(Group, QuaternionCommutatorAndCenter) {
  const auto q = families::quaternion8();
  auto idx = [&](const std::string& l) {
    for (Element x = 0; x < q.order(); ++x)
      if (q.label(x) == l) return x;
    throw std::runtime_error("no label " + l);
  };
  EXPECT_EQ(q.commutator(idx("i"), idx("j")), idx("-1"));
  const auto z = center(q);
  EXPECT_EQ(z.order(), 2u);
  EXPECT_TRUE(z.contains(idx("-1")));
  EXPECT_TRUE(is_abelian(z));
  EXPECT_FALSE(q.is_abelian());
}

TEST(Group, DirectProducts) {
  const auto v4 = direct_product(families::cyclic(2), families::cyclic(2));
  EXPECT_EQ(v4.order(), 4u);
  for (Element x = 0; x < 4; ++x) EXPECT_EQ(v4.mul(x, x), v4.identity());
  const auto z6 = direct_product(families::cyclic(2), families::cyclic(3));
  bool has_order_six = false;
  for (Element x = 0; x < 6; ++x) has_order_six |= z6.element_order(x) == 6;
  EXPECT_TRUE(has_order_six);
  EXPECT_EQ(families::family("product(quaternion8,cyclic:3)").order(), 24u);
}

TEST(Group, Families) {
  EXPECT_EQ(families::family("cyclic:1").order(), 1u);
  EXPECT_EQ(families::family("symmetric:4").order(), 24u);
  EXPECT_EQ(families::family("alternating:5").order(), 60u);
  EXPECT_EQ(families::family("dihedral:5").order(), 10u);
  EXPECT_EQ(families::family("klein4").order(), 4u);
  EXPECT_THROW(families::family("sporadic:1"), Error);
  EXPECT_THROW(families::family("cyclic:"), Error);
  EXPECT_THROW(families::family("symmetric:8"), GroupError);  // 40320 > 5040
  EXPECT_EQ(families::product_factors("product(quaternion8, alternating:5)"),
            (std::vector<std::string>{"quaternion8", "alternating:5"}));
  EXPECT_TRUE(families::product_factors("cyclic:4").empty());
}

TEST(Group, PermutationEdgeCases) {
  const auto trivial = from_permutations(PermutationSpec{1, {}});
  EXPECT_EQ(trivial.order(), 1u);
  EXPECT_THROW(from_permutations(PermutationSpec{3, {{0, 0, 1}}}), GroupError);
  EXPECT_THROW(from_permutations(PermutationSpec{3, {{0, 1}}}), GroupError);
}

TEST(Group, CayleyTableRoundTrip) {
  const auto s4 = from_permutations(PermutationSpec{4, {{1, 0, 2, 3}, {1, 2, 3, 0}}});
  std::stringstream buf;
  write_cayley_table(buf, s4);
  const auto back = read_cayley_table(buf);
  ASSERT_EQ(back.order(), s4.order());
  EXPECT_TRUE(std::equal(s4.table().begin(), s4.table().end(), back.table().begin()));
}

TEST(Group, CyclicTableHasOneGenerator) {
  std::stringstream in("4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n");
  const auto z4 = read_cayley_table(in);
  int order_four = 0;
  for (Element x = 0; x < 4; ++x) order_four += z4.element_order(x) == 4;
  EXPECT_EQ(order_four, 2);  // 1 and 3
}

TEST(GroupIo, RejectsMalformedTables) {
  const std::vector<std::string> bad{
      "",
      "2\n0 1\n",
      "2\n0 1\n1 0\nextra\n",
      "2\n0 1\n1 0 0\n",
      "2\n0 1\n1 1\n",
      "2\n1 0\n0 1\n",  // identity not at index 0
      "3\n0 1 2\n1 2 0\n2 0 x\n",
      "5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n",  // Latin square, not associative
  };
  for (const auto& text : bad) {
    std::stringstream in(text);
    EXPECT_THROW(read_cayley_table(in), Error) << text;
  }
}

TEST(GroupIo, RejectsMalformedPermutations) {
  for (const std::string text : {"3\n0 1\n", "3\n0 1 2 junk\n", "x\n", "3\n0 1 2\n\n1 0 2\n"}) {
    std::stringstream in(text);
    EXPECT_THROW(from_permutations(read_permutation_spec(in)), Error) << text;
  }
}

TEST(GroupIo, SampleFiles) {
  const std::string dir = FITDEF_SAMPLE_DATA;
  EXPECT_EQ(load_group_file(dir + "/q8.tbl").order(), 8u);
  EXPECT_EQ(load_group_file(dir + "/s3.perm").order(), 6u);
  EXPECT_EQ(load_group_file(dir + "/a5.perm").order(), 60u);
  EXPECT_THROW(load_group_file(dir + "/loop5_broken.tbl"), GroupError);
  EXPECT_THROW(load_group_file(dir + "/missing.tbl"), Error);
}

TEST(Group, AssociativityIsSampledAboveThreshold) {
  // A5 x Z5 has order 300, above the exhaustive limit; construction still succeeds.
  EXPECT_EQ(families::family("product(alternating:5,cyclic:5)").order(), 300u);
}
