#include <gtest/gtest.h>

#include <sstream>

#include "fitdef/harness/checks.hpp"
#include "fitdef/harness/config.hpp"
#include "fitdef/harness/corpus.hpp"

using namespace fitdef;
using namespace fitdef::harness;

namespace {

const CheckReport& find_check(const EntryReport& e, std::string_view id) {
  for (const auto& c : e.checks)
    if (c.id == id) return c;
  throw std::runtime_error("missing check");
}

Corpus small_corpus() {
  Corpus c;
  c.push_back(CorpusEntry::from_family("S3", "symmetric:3"));
  c.push_back(CorpusEntry::from_family("Q8", "quaternion8"));
  c.push_back(CorpusEntry::from_family("A4", "alternating:4"));
  c.push_back(CorpusEntry::from_family("Z2xA5", "product(cyclic:2,alternating:5)"));
  return c;
}

}  // namespace

TEST(Config, DefaultsAndOverrides) {
  std::istringstream empty("");
  const auto d = parse_config(empty);
  EXPECT_EQ(d.max_order_oracle, 60u);
  EXPECT_EQ(d.max_order_exhaustive_tuples, 24u);
  EXPECT_EQ(d.sample_count, 1000u);
  EXPECT_EQ(d.seed, 0u);
  EXPECT_TRUE(d.report_path.empty());

  std::istringstream in("# budgets\n\nseed = 42\n  sample_count=10  \nreport_path = out/r.json\ntimings = true\n");
  const auto c = parse_config(in);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.sample_count, 10u);
  EXPECT_EQ(c.report_path, "out/r.json");
  EXPECT_TRUE(c.timings);
}

TEST(Config, Errors) {
  for (const char* text : {"bogus = 1\n", "seed 1\n", "seed = -1\n", "seed = abc\n", "timings = yes\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(parse_config(in), Error) << text;
  }
  EXPECT_THROW(load_config("/nonexistent/fitdef.cfg"), Error);
}

TEST(Corpus, DefaultCorpus) {
  const auto c = default_corpus();
  EXPECT_EQ(c.size(), 28u);
  std::set<std::string> names;
  for (const auto& e : c) EXPECT_TRUE(names.insert(e.name()).second) << e.name();
  const auto& last = c.back();
  EXPECT_EQ(last.name(), "Q8xA5");
  EXPECT_EQ(last.group().order(), 480u);
  EXPECT_EQ(last.factors(), (std::vector<std::string>{"quaternion8", "alternating:5"}));
}

TEST(Corpus, Directory) {
  const auto c = load_corpus_dir(std::string(FITDEF_TEST_DATA) + "/corpus_good");
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0].name(), "q8");
  EXPECT_EQ(c[1].name(), "q8xa5");
  EXPECT_EQ(c[1].factors().size(), 2u);
  EXPECT_EQ(c[2].group().order(), 6u);
  EXPECT_THROW(load_corpus_dir("/nonexistent/corpus"), Error);
}

TEST(RunCheck, Examples) {
  const Config cfg;
  const auto s3 = CorpusEntry::from_family("S3", "symmetric:3");
  const auto r = run_check(s3, "thm1-fitting", cfg);
  EXPECT_EQ(r.status, Status::Pass);
  EXPECT_EQ(r.details["definable_set_size"], 3);
  EXPECT_EQ(r.details["oracle"], "agree");

  const auto a5 = CorpusEntry::from_family("A5", "alternating:5");
  const auto rr = run_check(a5, "thm1-radical", cfg);
  EXPECT_EQ(rr.status, Status::Pass);
  ASSERT_EQ(rr.details["definable_set"].size(), 1u);
  EXPECT_EQ(rr.details["definable_set"][0]["label"], "()");

  EXPECT_THROW(run_check(s3, "lemma9", cfg), Error);
}

TEST(RunCheck, TrivialGroupPassesEveryApplicableCheck) {
  const auto z1 = CorpusEntry::from_family("Z1", "cyclic:1");
  for (const auto id : kCheckIds) {
    const auto r = run_check(z1, id, Config{});
    if (id == "product-example")
      EXPECT_EQ(r.status, Status::Skipped);
    else
      EXPECT_EQ(r.status, Status::Pass) << id;
  }
}

TEST(RunCheck, BudgetsBecomeSkips) {
  Config cfg;
  cfg.max_order_lemma1 = 10;
  cfg.max_order_oracle = 5;
  const auto s4 = CorpusEntry::from_family("S4", "symmetric:4");
  const auto r = run_check(s4, "lemma1", cfg);
  EXPECT_EQ(r.status, Status::Skipped);
  EXPECT_NE(r.reason.find("max_order_lemma1"), std::string::npos);
  const auto f = run_check(s4, "thm1-fitting", cfg);
  EXPECT_EQ(f.status, Status::Pass);
  EXPECT_NE(f.details["oracle"].get<std::string>().find("skipped"), std::string::npos);
}

TEST(RunCheck, ProductExampleFlagsCentralizerClaim) {
  const auto k = CorpusEntry::from_family("Q8xA5", "product(quaternion8,alternating:5)");
  const auto r = run_check(k, "product-example", Config{});
  EXPECT_EQ(r.status, Status::Pass);
  EXPECT_EQ(r.details["fitting_order"], 8);
  EXPECT_EQ(r.details["radical_order"], 8);
  EXPECT_EQ(r.details["centralizer_order"], 24);
  EXPECT_EQ(r.details["literal_claim_holds"], false);
  EXPECT_TRUE(r.details.contains("discrepancy"));

  const auto q8z3 = CorpusEntry::from_family("Q8xZ3", "product(quaternion8,cyclic:3)");
  EXPECT_EQ(run_check(q8z3, "product-example", Config{}).status, Status::Skipped);
}

TEST(RunCheck, Thm2RecordsTruncation) {
  const auto q = CorpusEntry::from_family("Q8", "quaternion8");
  const auto r = run_check(q, "thm2", Config{});
  EXPECT_EQ(r.status, Status::Pass);
  EXPECT_EQ(r.details["label"], "truncated T_p");
  EXPECT_EQ(r.details["bounds"].size(), 6u);
  EXPECT_EQ(r.details["bounds"][1]["truth"], false);
  EXPECT_EQ(r.details["bounds"][1]["m"], 2);
  EXPECT_TRUE(r.details["bounds"][1].contains("witness"));
}

TEST(Suite, EmptyCorpus) {
  const auto rep = run_suite({}, Config{});
  EXPECT_TRUE(rep.entries.empty());
  EXPECT_EQ(rep.exit_code(), 0);
  const auto j = to_json(rep);
  EXPECT_EQ(j["summary"]["checks"], 0);
  EXPECT_EQ(j["version"], 1);
}

TEST(Suite, CorruptedTableIsSurfacedAndSuiteContinues) {
  const auto corpus = load_corpus_dir(std::string(FITDEF_TEST_DATA) + "/corpus_bad");
  const auto rep = run_suite(corpus, Config{});
  ASSERT_EQ(rep.entries.size(), 3u);
  EXPECT_EQ(rep.entries[0].group, "broken");
  EXPECT_NE(rep.entries[0].error.find("not associative"), std::string::npos);
  EXPECT_TRUE(rep.entries[0].checks.empty());
  EXPECT_EQ(rep.entries[1].checks.size(), kCheckIds.size());
  EXPECT_EQ(rep.summary.errors, 1u);
  EXPECT_EQ(rep.summary.fail, 0u);
  EXPECT_NE(rep.exit_code(), 0);
}

TEST(Suite, SummaryAndOrdering) {
  const auto rep = run_suite(small_corpus(), Config{});
  std::vector<std::string> names;
  std::size_t pass = 0, fail = 0, skipped = 0;
  for (const auto& e : rep.entries) {
    names.push_back(e.group);
    for (const auto& c : e.checks) {
      pass += c.status == Status::Pass;
      fail += c.status == Status::Fail;
      skipped += c.status == Status::Skipped;
    }
    std::vector<std::string> ids;
    for (const auto& c : e.checks) ids.push_back(c.id);
    EXPECT_TRUE(std::is_sorted(ids.begin(), ids.end()));
  }
  EXPECT_EQ(names, (std::vector<std::string>{"A4", "Q8", "S3", "Z2xA5"}));
  EXPECT_EQ(rep.summary.pass, pass);
  EXPECT_EQ(rep.summary.fail, fail);
  EXPECT_EQ(rep.summary.skipped, skipped);
  EXPECT_EQ(rep.summary.checks, pass + fail + skipped);
  EXPECT_EQ(fail, 0u);
  EXPECT_EQ(find_check(rep.entries[3], "product-example").status, Status::Pass);
  EXPECT_EQ(rep.exit_code(), 0);
}

TEST(Suite, ReportsAreByteStable) {
  Config one, many;
  one.threads = 1;
  many.threads = 4;
  const auto a = to_json(run_suite(small_corpus(), one));
  const auto b = to_json(run_suite(small_corpus(), one));
  auto c = to_json(run_suite(small_corpus(), many));
  EXPECT_EQ(a.dump(2), b.dump(2));
  c["config"]["threads"] = 1;
  EXPECT_EQ(a.dump(2), c.dump(2));
}
