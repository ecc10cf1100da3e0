#include <gtest/gtest.h>

#include <random>

#include "fitdef/families.hpp"
#include "fitdef/radicals.hpp"
#include "fitdef/series.hpp"
#include "fitdef/word.hpp"

using namespace fitdef;

namespace {

Element by_label(const FiniteGroup& g, const std::string& l) {
  for (Element x = 0; x < g.order(); ++x)
    if (g.label(x) == l) return x;
  throw std::runtime_error("no element labelled " + l);
}

std::vector<FiniteGroup> small_groups() {
  std::vector<FiniteGroup> out;
  for (const char* s : {"cyclic:1", "cyclic:6", "klein4", "dihedral:4", "dihedral:6", "quaternion8", "symmetric:3",
                        "symmetric:4", "alternating:4", "product(quaternion8,cyclic:3)"})
    out.push_back(families::family(s));
  return out;
}

}  // namespace

TEST(Words, RenderedShapes) {
  EXPECT_EQ(build_u(1).render(), "[x1, x2]");
  EXPECT_EQ(build_u(1).arity(), 2u);
  EXPECT_EQ(build_u(3).render(), "[[[x1, x2], x3], x4]");
  EXPECT_EQ(build_v(2).render(), "[[x1, x2], [x3, x4]]");
  EXPECT_EQ(build_v(3).arity(), 8u);
  EXPECT_EQ(build_engel(2).render(), "[[x1, x2], x2]");
  EXPECT_TRUE(build_u(4).is_linear());
  EXPECT_FALSE(build_engel(2).is_linear());
  EXPECT_THROW(build_u(0), Error);
  EXPECT_THROW(build_v(0), Error);
}

TEST(Words, Evaluation) {
  const auto q = families::quaternion8();
  EXPECT_EQ(eval_word(q, build_u(2), {by_label(q, "i"), by_label(q, "j"), by_label(q, "k")}), q.identity());
  EXPECT_EQ(eval_word(q, build_u(1), {by_label(q, "i"), by_label(q, "j")}), by_label(q, "-1"));
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::vector<Element> ones(n + 1, q.identity());
    EXPECT_EQ(eval_word(q, build_u(n), ones), q.identity());
  }
  const auto z5 = families::cyclic(5);
  for (Element a = 0; a < 5; ++a)
    for (Element b = 0; b < 5; ++b) EXPECT_EQ(eval_word(z5, build_u(1), {a, b}), z5.identity());
  for (Element x = 0; x < 8; ++x)
    for (Element y = 0; y < 8; ++y) EXPECT_EQ(eval_word(q, build_engel(2), {x, y}), q.identity());
  EXPECT_THROW(eval_word(q, build_u(1), {0}), Error);
  EXPECT_THROW(eval_word(q, build_u(1), {0, 99}), Error);
}

TEST(Words, ImageMatchesBruteForce) {
  const auto s4 = families::symmetric(4);
  const std::vector<Element> d1{1, 2, 3, 7}, d2{0, 5, 9}, d3{4, 11, 13, 21};
  const std::vector<std::vector<Element>> domains{d1, d2, d3};
  std::set<Element> brute;
  for (auto a : d1)
    for (auto b : d2)
      for (auto c : d3) brute.insert(eval_word(s4, build_u(2), {a, b, c}));
  const auto img = word_image(s4, build_u(2), domains);
  EXPECT_EQ(std::set<Element>(img.begin(), img.end()), brute);
}

TEST(CommutatorIdentities, ExhaustiveOnSmallGroups) {
  for (const auto& g : small_groups())
    for (Element x = 0; x < g.order(); ++x)
      for (Element y = 0; y < g.order(); ++y)
        for (Element z = 0; z < g.order(); ++z) ASSERT_FALSE(failing_commutator_identity(g, x, y, z));
}

TEST(CommutatorSubgroup, Examples) {
  const auto s3 = families::symmetric(3);
  const auto whole = whole_group(s3);
  const auto d = commutator_subgroup(s3, whole, whole);
  EXPECT_EQ(d.order(), 3u);
  EXPECT_EQ(d, commutator_subgroup_all_pairs(s3, whole, whole));

  const auto q = families::quaternion8();
  const auto qd = commutator_subgroup(q, whole_group(q), whole_group(q));
  EXPECT_EQ(qd, closure(q, {by_label(q, "-1")}));

  const auto z = center(q);
  EXPECT_TRUE(commutator_subgroup(q, z, whole_group(q)).is_trivial());

  const auto t = closure(s3, {by_label(s3, "(0 1)")});
  EXPECT_THROW(commutator_subgroup(s3, t, whole), PreconditionError);
}

TEST(CommutatorSubgroup, XGeneratorsMatchAllPairs) {
  for (const auto& g : small_groups()) {
    const auto normals = normal_subgroups(g);
    for (const auto& h : normals)
      for (const auto& k : normals)
        ASSERT_EQ(commutator_subgroup(g, h, k), commutator_subgroup_all_pairs(g, h, k));
  }
}

TEST(Series, LowerCentral) {
  const auto q = families::quaternion8();
  const auto lc = lower_central_series(q, whole_group(q));
  ASSERT_EQ(lc.terms.size(), 3u);
  EXPECT_EQ(lc.terms[1].order(), 2u);
  EXPECT_TRUE(lc.terms[2].is_trivial());
  EXPECT_EQ(lc.class_or_length, 2u);
  EXPECT_TRUE(lc.paths_agree);

  const auto s3 = families::symmetric(3);
  const auto ls = lower_central_series(s3, whole_group(s3));
  EXPECT_TRUE(ls.stabilized);
  EXPECT_FALSE(ls.class_or_length);
  EXPECT_EQ(ls.terms.back().order(), 3u);
  EXPECT_EQ(ls.terms[ls.terms.size() - 2], ls.terms.back());

  const auto z6 = families::cyclic(6);
  EXPECT_EQ(nilpotency_class(z6, whole_group(z6)), 1u);
  EXPECT_EQ(nilpotency_class(z6, trivial_subgroup(z6)), 0u);
}

TEST(Series, Derived) {
  const auto s4 = families::symmetric(4);
  const auto ds = derived_series(s4, whole_group(s4));
  ASSERT_EQ(ds.terms.size(), 4u);
  EXPECT_EQ(ds.terms[1].order(), 12u);
  EXPECT_EQ(ds.terms[2].order(), 4u);
  EXPECT_TRUE(ds.terms[3].is_trivial());
  EXPECT_EQ(ds.class_or_length, 3u);
  EXPECT_TRUE(ds.paths_agree);

  const auto v4 = ds.terms[2];
  EXPECT_EQ(nilpotency_class(s4, v4), 1u);
  EXPECT_EQ(derived_length(s4, v4), 1u);
  EXPECT_FALSE(nilpotency_class(families::symmetric(3), whole_group(families::symmetric(3))));

  const auto a5 = families::alternating(5);
  const auto da = derived_series(a5, whole_group(a5));
  EXPECT_TRUE(da.stabilized);
  EXPECT_TRUE(da.terms.back().is_whole());
  EXPECT_FALSE(derived_length(a5, whole_group(a5)));
}

TEST(Series, WordPathsAgreeOnEveryNormalClosure) {
  auto groups = small_groups();
  groups.push_back(families::alternating(5));
  groups.push_back(families::symmetric(5));
  for (const auto& g : groups)
    for (const auto& cls : g.classes()) {
      const auto n = normal_closure(g, {cls.front()});
      EXPECT_TRUE(lower_central_series(g, n).paths_agree);
      EXPECT_TRUE(derived_series(g, n).paths_agree);
    }
}

TEST(Series, RejectsNonNormal) {
  const auto s3 = families::symmetric(3);
  EXPECT_THROW(lower_central_series(s3, closure(s3, {by_label(s3, "(0 1)")})), PreconditionError);
}
