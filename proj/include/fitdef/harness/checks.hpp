#pragma once

// Verification checks run against corpus groups, and the suite driver that
// assembles them into a JSON report.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "json.hpp"

#include "fitdef/definability.hpp"
#include "fitdef/error.hpp"
#include "fitdef/formula.hpp"
#include "fitdef/group.hpp"
#include "fitdef/radicals.hpp"
#include "fitdef/series.hpp"
#include "fitdef/harness/config.hpp"
#include "fitdef/harness/corpus.hpp"

namespace fitdef::harness {

using Json = nlohmann::ordered_json;

/// Check ids in report order.
inline constexpr std::array<std::string_view, 10> kCheckIds{
    "engel",           "identities",   "lemma1",       "lemma2", "lemma3",
    "product-example", "thm1-fitting", "thm1-radical", "thm2",   "thm3-profile",
};

inline bool is_check_id(std::string_view id) {
  return std::find(kCheckIds.begin(), kCheckIds.end(), id) != kCheckIds.end();
}

enum class Status { Pass, Fail, Skipped };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

struct CheckReport {
  std::string group;
  std::string id;
  Status status = Status::Pass;
  std::string reason;
  Json details = Json::object();
};

inline Json to_json(const CheckReport& r) {
  Json j{{"id", r.id}, {"status", to_string(r.status)}};
  if (!r.reason.empty()) j["reason"] = r.reason;
  j["details"] = r.details;
  return j;
}

namespace detail {

inline Json element_json(const FiniteGroup& g, Element x) { return Json{{"index", x}, {"label", g.label(x)}}; }

template <class Range>
Json elements_json(const FiniteGroup& g, const Range& xs) {
  Json out = Json::array();
  for (const auto x : xs) out.push_back(element_json(g, x));
  return out;
}

inline Json assignment_json(const FiniteGroup& g, const Assignment& a) {
  Json out = Json::object();
  for (const auto& [v, x] : a) out["x" + std::to_string(v)] = element_json(g, x);
  return out;
}

inline Json class_json(const std::optional<std::size_t>& c) { return c ? Json(*c) : Json(nullptr); }

struct Outcome {
  Status status = Status::Pass;
  std::string reason;
};

inline Outcome pass() { return {}; }
inline Outcome fail(std::string why) { return {Status::Fail, std::move(why)}; }
inline Outcome skip(std::string why) { return {Status::Skipped, std::move(why)}; }

// --- identities -----------------------------------------------------------

inline Outcome check_identities(const FiniteGroup& g, const CorpusEntry&, const Config& cfg, Json& d) {
  std::uint64_t triples = 0;
  auto test = [&](Element x, Element y, Element z) {
    ++triples;
    if (const auto bad = failing_commutator_identity(g, x, y, z)) {
      d["counterexample"] = {{"identity", kCommutatorIdentities[*bad]},
                             {"x", element_json(g, x)},
                             {"y", element_json(g, y)},
                             {"z", element_json(g, z)}};
      return false;
    }
    return true;
  };
  bool ok = true;
  if (g.order() <= cfg.max_order_exhaustive_identities) {
    d["mode"] = "exhaustive";
    for (Element x = 0; x < g.order() && ok; ++x)
      for (Element y = 0; y < g.order() && ok; ++y)
        for (Element z = 0; z < g.order() && ok; ++z) ok = test(x, y, z);
  } else {
    d["mode"] = "sampled";
    d["seed"] = cfg.seed;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(g.order() - 1));
    for (std::size_t i = 0; i < cfg.identity_samples && ok; ++i) {
      const auto x = pick(rng), y = pick(rng), z = pick(rng);
      ok = test(x, y, z);
    }
  }
  d["triples"] = triples;
  return ok ? pass() : fail("a commutator identity fails");
}

// --- lemma1 ---------------------------------------------------------------

inline Outcome check_lemma1(const FiniteGroup& g, const CorpusEntry&, const Config& cfg, Json& d) {
  if (g.order() > cfg.max_order_lemma1)
    return skip("order " + std::to_string(g.order()) + " exceeds max_order_lemma1 = " +
                std::to_string(cfg.max_order_lemma1));
  const auto normals = normal_subgroups(g);
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < normals.size(); ++i)
    for (std::size_t j = i; j < normals.size(); ++j) {
      ++pairs;
      const auto via_x = commutator_subgroup(g, normals[i], normals[j]);
      const auto via_pairs = commutator_subgroup_all_pairs(g, normals[i], normals[j]);
      if (!(via_x == via_pairs)) {
        d["normal_subgroups"] = normals.size();
        d["pairs"] = pairs;
        d["counterexample"] = {{"H", elements_json(g, normals[i].generators())},
                               {"K", elements_json(g, normals[j].generators())},
                               {"x_generator_order", via_x.order()},
                               {"all_pairs_order", via_pairs.order()}};
        return fail("X-generator closure differs from the all-pairs commutator closure");
      }
    }
  d["normal_subgroups"] = normals.size();
  d["pairs"] = pairs;
  return pass();
}

// --- lemma2 ---------------------------------------------------------------

inline Outcome check_lemma2(const FiniteGroup& g, const CorpusEntry&, const Config&, Json& d) {
  std::size_t closures = 0;
  for (const auto& cls : g.classes()) {
    const auto x = cls.front();
    const auto n = normal_closure(g, {x});
    ++closures;
    for (const auto& rep : {lower_central_series(g, n), derived_series(g, n)}) {
      if (!rep.paths_agree) {
        std::size_t k = 0;
        while (k < rep.terms.size() && k < rep.word_terms.size() && rep.terms[k] == rep.word_terms[k]) ++k;
        d["closures"] = closures;
        d["counterexample"] = {{"element", element_json(g, x)},
                               {"series", to_string(rep.kind)},
                               {"term", k},
                               {"direct_order", k < rep.terms.size() ? Json(rep.terms[k].order()) : Json(nullptr)},
                               {"word_order",
                                k < rep.word_terms.size() ? Json(rep.word_terms[k].order()) : Json(nullptr)}};
        return fail("word-generator series differs from the direct series");
      }
    }
  }
  d["closures"] = closures;
  return pass();
}

// --- lemma3 ---------------------------------------------------------------

inline Outcome check_lemma3(const FiniteGroup& g, const CorpusEntry&, const Config& cfg, Json& d) {
  const auto order = g.order();
  const bool exhaustive = order <= cfg.max_order_exhaustive_tuples;
  if (!exhaustive && order > cfg.max_order_sampled_tuples)
    return skip("order " + std::to_string(order) + " exceeds max_order_sampled_tuples = " +
                std::to_string(cfg.max_order_sampled_tuples));
  d["mode"] = exhaustive ? "exhaustive" : "sampled";
  if (!exhaustive) d["seed"] = cfg.seed;

  std::uint64_t tuples = 0, evaluations = 0, materialized = 0;
  const bool cross_check = order <= cfg.max_order_materialized;
  std::vector<std::vector<Formula>> formulas;  // [m-1][n-1]
  if (cross_check)
    for (std::size_t m = 1; m <= 2; ++m) {
      formulas.emplace_back();
      for (std::size_t n = 1; n <= 3; ++n) formulas.back().push_back(build_phi_nm(n, m));
    }

  std::optional<Outcome> bad;
  auto test = [&](const std::vector<Element>& b) {
    ++tuples;
    const auto cls = nilpotency_class(g, normal_closure(g, b));
    for (std::size_t n = 1; n <= 3; ++n) {
      ++evaluations;
      const auto lazy = check_phi_nm_lazy(g, n, b.size(), b);
      const bool expected = cls && *cls <= n;
      std::optional<bool> full;
      if (cross_check) {
        Assignment a;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + 1] = b[i];
        full = evaluate(g, formulas[b.size() - 1][n - 1], {}, a).truth;
        ++materialized;
      }
      if (lazy.truth != expected || (full && *full != lazy.truth)) {
        d["counterexample"] = {{"n", n},
                               {"m", b.size()},
                               {"tuple", elements_json(g, b)},
                               {"formula_truth", lazy.truth},
                               {"materialized_truth", full ? Json(*full) : Json(nullptr)},
                               {"closure_class", class_json(cls)},
                               {"witness", assignment_json(g, lazy.witness)}};
        bad = fail("formula truth disagrees with the class of the normal closure");
        return false;
      }
    }
    return true;
  };

  if (exhaustive) {
    for (Element a = 0; a < order && !bad; ++a) test({a});
    for (Element a = 0; a < order && !bad; ++a)
      for (Element b = 0; b < order && !bad; ++b) test({a, b});
  } else {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(order - 1));
    for (std::size_t s = 0; s < cfg.sample_count && !bad; ++s) {
      std::vector<Element> b(1 + s % 2);
      for (auto& x : b) x = pick(rng);
      test(b);
    }
  }
  d["tuples"] = tuples;
  d["evaluations"] = evaluations;
  d["materialized_cross_checks"] = materialized;
  return bad ? *bad : pass();
}

// --- thm1 -----------------------------------------------------------------

inline Outcome check_definable(const FiniteGroup& g, const Config& cfg, Json& d, bool fitting_case) {
  const auto rad = fitting_case ? fitting(g) : soluble_radical(g);
  const auto n = std::max<std::size_t>(rad.invariant, 1);
  const auto f = fitting_case ? build_phi_defining(n) : build_psi_defining(n);
  const auto defined = definable_set(g, f);
  d[fitting_case ? "class" : "derived_length"] = rad.invariant;
  d["formula"] = render(f);
  d["subgroup_order"] = rad.subgroup.order();
  d["definable_set_size"] = defined.size();
  d["definable_set"] = elements_json(g, defined);

  if (g.order() <= cfg.max_order_oracle) {
    try {
      const auto oracle = fitting_case ? oracle_fitting(g) : oracle_radical(g);
      d["oracle"] = oracle == rad.subgroup ? "agree" : "disagree";
      if (!(oracle == rad.subgroup)) {
        d["oracle_order"] = oracle.order();
        return fail("elementwise result differs from the join of normal subgroups");
      }
    } catch (const BudgetError& e) {
      d["oracle"] = std::string("skipped: ") + e.what();
    }
  } else {
    d["oracle"] = "skipped: order " + std::to_string(g.order()) + " exceeds max_order_oracle = " +
                  std::to_string(cfg.max_order_oracle);
  }

  std::vector<bool> in_set(g.order(), false);
  for (const auto x : defined) in_set[x] = true;
  for (Element x = 0; x < g.order(); ++x) {
    if (in_set[x] == rad.subgroup.contains(x)) continue;
    const Element params[] = {x};
    const auto r = evaluate(g, f, params);
    d["counterexample"] = {{"element", element_json(g, x)},
                           {"formula_truth", r.truth},
                           {"in_subgroup", rad.subgroup.contains(x)},
                           {"witness", assignment_json(g, r.witness)}};
    return fail("definable set differs from the subgroup");
  }
  return pass();
}

// --- thm2 -----------------------------------------------------------------

inline Outcome check_thm2(const FiniteGroup& g, const CorpusEntry&, const Config& cfg, Json& d) {
  const auto fit = fitting(g);
  d["label"] = "truncated T_p";
  d["fitting_class"] = fit.invariant;
  Json rows = Json::array();
  std::optional<Outcome> bad;
  for (std::size_t p = 0; p <= cfg.p_max; ++p) {
    const auto t = check_tp(g, p, fit);
    const bool expected = fit.invariant <= p;
    Json row{{"p", p},
             {"truth", t.result.truth},
             {"expected", expected},
             {"n_star", t.n_star},
             {"m", t.m},
             {"premise_set_size", t.premise_set.size()},
             {"subsets_examined", t.subsets_examined}};
    if (!t.result.truth) row["witness"] = assignment_json(g, t.result.witness);
    rows.push_back(row);
    if (t.result.truth != expected && !bad) {
      d["counterexample"] = row;
      if (t.result.truth) d["counterexample"]["fitting_generators"] = elements_json(g, fit.subgroup.generators());
      bad = fail("truncated T_p truth disagrees with the class of F(G) at p = " + std::to_string(p));
    }
  }
  d["bounds"] = rows;
  return bad ? *bad : pass();
}

// --- thm3-profile ---------------------------------------------------------

inline Outcome check_thm3(const FiniteGroup& g, const CorpusEntry&, const Config& cfg, Json& d) {
  const auto fit = fitting(g);
  const auto prof = bound_profile(g, fit.subgroup, cfg.m_max, cfg.seed, kProfileSubsetCap, cfg.sample_count);
  d["fitting_class"] = fit.invariant;
  d["d_of_m"] = prof.d_of_m;
  d["sampled"] = prof.sampled;
  d["subsets_examined"] = prof.subsets_examined;
  for (std::size_t i = 0; i < prof.d_of_m.size(); ++i) {
    const bool drops = i > 0 && prof.d_of_m[i] < prof.d_of_m[i - 1];
    if (drops || prof.d_of_m[i] > fit.invariant) {
      d["counterexample"] = {{"m", prof.m_values[i]},
                             {"d", prof.d_of_m[i]},
                             {"subset", elements_json(g, prof.witnesses[i])}};
      return fail(drops ? "bound profile decreases" : "bound exceeds the class of F(G)");
    }
  }
  return pass();
}

// --- engel ----------------------------------------------------------------

inline Outcome check_engel(const FiniteGroup& g, const CorpusEntry&, const Config& cfg, Json& d) {
  std::size_t worst_closure = 0;
  bool all_nilpotent = true;
  std::optional<Element> worst_element;
  for (const auto& cls : g.classes()) {
    const auto c = nilpotency_class(g, normal_closure(g, {cls.front()}));
    if (!c) {
      all_nilpotent = false;
      if (!worst_element) worst_element = cls.front();
    } else if (*c > worst_closure) {
      worst_closure = *c;
      if (all_nilpotent) worst_element = cls.front();
    }
  }
  const bool all_abelian = all_nilpotent && worst_closure <= 1;
  const bool all_class2 = all_nilpotent && worst_closure <= 2;
  const bool engel2 = is_engel(g, 2), engel3 = is_engel(g, 3);
  const auto degree = engel_classify(g, cfg.engel_n_max);
  d["engel_2"] = engel2;
  d["engel_3"] = engel3;
  d["engel_degree"] = class_json(degree);
  d["closures_nilpotent"] = all_nilpotent;
  d["max_closure_class"] = all_nilpotent ? Json(worst_closure) : Json(nullptr);

  if (degree && !fitting(g).subgroup.is_whole()) {
    d["counterexample"] = {{"n", *degree}, {"fitting_order", fitting(g).subgroup.order()}};
    return fail("finite Engel group with a proper Fitting subgroup");
  }
  if (engel2 == all_abelian && engel3 == all_class2) return pass();
  const std::size_t n = engel2 != all_abelian ? 2 : 3;
  const bool engel = n == 2 ? engel2 : engel3;
  Json ce{{"n", n}};
  if (!engel) {
    for (Element x = 0; x < g.order(); ++x)
      for (Element y = 0; y < g.order(); ++y)
        if (!engel_degree(g, x, y, n)) {
          ce["x"] = element_json(g, x);
          ce["y"] = element_json(g, y);
          x = static_cast<Element>(g.order() - 1);
          break;
        }
  } else if (worst_element) {
    ce["closure_of"] = element_json(g, *worst_element);
  }
  d["counterexample"] = ce;
  return fail(std::to_string(n) + "-Engel property disagrees with the classes of the normal closures");
}

// --- product-example ------------------------------------------------------

inline Outcome check_product(const FiniteGroup& k, const CorpusEntry& entry, const Config&, Json& d) {
  const auto& f = entry.factors();
  if (f.size() != 2) return skip("not applicable: entry is not a direct product of two families");
  const auto left = families::family(f[0]);
  const auto right = families::family(f[1]);
  if (left.order() * right.order() != k.order()) return skip("not applicable: factor orders do not match");
  if (!nilpotency_class(left, whole_group(left)))
    return skip("not applicable: first factor is not nilpotent");
  if (right.is_abelian() || normal_subgroups(right).size() != 2)
    return skip("not applicable: second factor is not nonabelian simple");

  std::vector<Element> n_elems;
  for (Element a = 0; a < left.order(); ++a) n_elems.push_back(product_element(right, a, right.identity()));
  const auto n = closure(k, n_elems);
  const auto fit = fitting(k);
  const auto rad = soluble_radical(k);

  Element s = right.identity() == 0 ? 1 : 0;
  const auto cs = centralizer(right, s);
  const auto one_s = product_element(right, left.identity(), s);
  const auto ck = centralizer(k, one_s);
  bool structure_ok = ck.order() == left.order() * cs.order();
  for (Element a = 0; a < left.order() && structure_ok; ++a)
    for (Element t = 0; t < right.order(); ++t)
      if (ck.contains(product_element(right, a, t)) != cs.contains(t)) {
        structure_ok = false;
        break;
      }

  d["nilpotent_factor"] = f[0];
  d["simple_factor"] = f[1];
  d["fitting_order"] = fit.subgroup.order();
  d["radical_order"] = rad.subgroup.order();
  d["fitting_is_nilpotent_factor"] = fit.subgroup == n;
  d["radical_is_nilpotent_factor"] = rad.subgroup == n;
  d["s"] = element_json(k, one_s);
  d["centralizer_order"] = ck.order();
  d["centralizer_expected"] = "G x C_S(s)";
  d["centralizer_in_simple_factor_order"] = cs.order();
  d["centralizer_matches_expected"] = structure_ok;
  d["literal_claim"] = "C_K(s) = G";
  d["literal_claim_holds"] = ck == n;
  d["discrepancy"] = "s lies in C_S(s), so C_K((1,s)) = G x C_S(s) strictly contains G";

  if (!(fit.subgroup == n)) return fail("F(K) is not the nilpotent factor");
  if (!(rad.subgroup == n)) return fail("R(K) is not the nilpotent factor");
  if (!structure_ok) return fail("C_K((1,s)) is not G x C_S(s)");
  return pass();
}

}  // namespace detail

/// Runs one check on one entry.  Budget overruns become skips; any other
/// error is a failure carrying the error message.
inline CheckReport run_check(const CorpusEntry& entry, std::string_view id, const Config& cfg) {
  if (!is_check_id(id)) throw Error("unknown check id '" + std::string(id) + "'");
  CheckReport r{entry.name(), std::string(id)};
  const auto& g = entry.group();
  const auto start = std::chrono::steady_clock::now();
  detail::Outcome out;
  try {
    if (id == "identities") out = detail::check_identities(g, entry, cfg, r.details);
    else if (id == "lemma1") out = detail::check_lemma1(g, entry, cfg, r.details);
    else if (id == "lemma2") out = detail::check_lemma2(g, entry, cfg, r.details);
    else if (id == "lemma3") out = detail::check_lemma3(g, entry, cfg, r.details);
    else if (id == "thm1-fitting") out = detail::check_definable(g, cfg, r.details, true);
    else if (id == "thm1-radical") out = detail::check_definable(g, cfg, r.details, false);
    else if (id == "thm2") out = detail::check_thm2(g, entry, cfg, r.details);
    else if (id == "thm3-profile") out = detail::check_thm3(g, entry, cfg, r.details);
    else if (id == "engel") out = detail::check_engel(g, entry, cfg, r.details);
    else out = detail::check_product(g, entry, cfg, r.details);
  } catch (const BudgetError& e) {
    out = detail::skip(e.what());
  } catch (const std::exception& e) {
    out = detail::fail(std::string("error: ") + e.what());
  }
  r.status = out.status;
  r.reason = std::move(out.reason);
  if (cfg.timings)
    r.details["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

struct EntryReport {
  std::string group;
  std::string source;
  std::optional<std::size_t> order;
  std::vector<std::string> tags;
  /// Set when the group could not be constructed.
  std::string error;
  std::vector<CheckReport> checks;
};

struct Summary {
  std::size_t entries = 0;
  std::size_t checks = 0;
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t skipped = 0;
  std::size_t errors = 0;
};

struct SuiteReport {
  Config config;
  std::vector<EntryReport> entries;
  Summary summary;

  /// 0 when nothing failed and every group was built, 1 otherwise.
  int exit_code() const { return summary.fail == 0 && summary.errors == 0 ? 0 : 1; }
};

inline EntryReport run_entry(const CorpusEntry& entry, const Config& cfg) {
  EntryReport r{entry.name(), entry.source(), std::nullopt, entry.tags(), {}, {}};
  try {
    r.order = entry.group().order();
  } catch (const std::exception& e) {
    r.error = e.what();
    return r;
  }
  for (const auto id : kCheckIds) r.checks.push_back(run_check(entry, id, cfg));
  return r;
}

/// Runs every check on every entry, entries in parallel.  Entries are
/// reported in name order whatever order they finish in.
inline SuiteReport run_suite(const Corpus& corpus, const Config& cfg) {
  SuiteReport rep{cfg, std::vector<EntryReport>(corpus.size()), {}};
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (auto i = next++; i < corpus.size(); i = next++) rep.entries[i] = run_entry(corpus[i], cfg);
  };
  auto threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<std::size_t>(threads, corpus.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::stable_sort(rep.entries.begin(), rep.entries.end(),
                   [](const EntryReport& a, const EntryReport& b) { return a.group < b.group; });
  auto& s = rep.summary;
  s.entries = rep.entries.size();
  for (const auto& e : rep.entries) {
    if (!e.error.empty()) ++s.errors;
    for (const auto& c : e.checks) {
      ++s.checks;
      if (c.status == Status::Pass) ++s.pass;
      else if (c.status == Status::Fail) ++s.fail;
      else ++s.skipped;
    }
  }
  return rep;
}

inline Json to_json(const SuiteReport& rep) {
  Json entries = Json::array();
  for (const auto& e : rep.entries) {
    Json j{{"group", e.group}, {"source", e.source}};
    if (e.order) j["order"] = *e.order;
    j["tags"] = e.tags;
    if (!e.error.empty()) j["error"] = e.error;
    Json checks = Json::array();
    for (const auto& c : e.checks) checks.push_back(to_json(c));
    j["checks"] = checks;
    entries.push_back(j);
  }
  const auto& s = rep.summary;
  return Json{{"version", 1},
              {"config", to_json(rep.config)},
              {"entries", entries},
              {"summary",
               {{"entries", s.entries},
                {"checks", s.checks},
                {"pass", s.pass},
                {"fail", s.fail},
                {"skipped", s.skipped},
                {"errors", s.errors}}}};
}

}  // namespace fitdef::harness
