// Command-line front end: group information, formula evaluation, definable
// sets, single checks and the full verification suite.
//
// Exit codes: 0 success / check passed / formula true, 1 check failed or
// formula false, 2 usage or input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fitdef/definability.hpp"
#include "fitdef/error.hpp"
#include "fitdef/evaluate.hpp"
#include "fitdef/families.hpp"
#include "fitdef/group_io.hpp"
#include "fitdef/parser.hpp"
#include "fitdef/radicals.hpp"
#include "fitdef/harness/checks.hpp"
#include "fitdef/harness/config.hpp"
#include "fitdef/harness/corpus.hpp"

namespace {

using namespace fitdef;
using harness::CorpusEntry;

// A group argument is a file path if such a file exists or it looks like
// one, otherwise a family spec.
CorpusEntry group_entry(const std::string& arg) {
  const auto ext = std::filesystem::path(arg).extension();
  if (std::filesystem::is_regular_file(arg) || arg.find('/') != std::string::npos || ext == ".tbl" ||
      ext == ".perm")
    return CorpusEntry::from_file(std::filesystem::path(arg).stem().string(), arg);
  return CorpusEntry::from_family(arg, arg);
}

Element parse_element(const FiniteGroup& g, const std::string& text) {
  for (Element x = 0; x < g.order(); ++x)
    if (g.has_labels() && g.label(x) == text) return x;
  if (!text.empty() && text.find_first_not_of("0123456789") == std::string::npos && text.size() < 10) {
    const auto v = std::stoul(text);
    if (v < g.order()) return static_cast<Element>(v);
  }
  throw Error("'" + text + "' is not an element of the group");
}

std::string element_list(const FiniteGroup& g, std::span<const Element> xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + g.label(xs[i]);
  return out + "}";
}

int cmd_info(const std::string& arg) {
  const auto entry = group_entry(arg);
  const auto& g = entry.group();
  const auto z = center(g);
  const auto f = fitting(g);
  const auto r = soluble_radical(g);
  std::cout << "order: " << g.order() << "\n"
            << "abelian: " << (g.is_abelian() ? "yes" : "no") << "\n"
            << "center: order " << z.order() << " " << element_list(g, z.elements()) << "\n"
            << "fitting: order " << f.subgroup.order() << ", class " << f.invariant << " "
            << element_list(g, f.subgroup.elements()) << "\n"
            << "radical: order " << r.subgroup.order() << ", derived length " << r.invariant << "\n"
            << "classes: " << g.class_count() << "\n";
  for (const auto& cls : g.classes())
    std::cout << "  size " << cls.size() << ": " << element_list(g, cls) << "\n";
  return 0;
}

int cmd_eval(const std::string& arg, const std::string& text, const std::vector<std::string>& params) {
  const auto entry = group_entry(arg);
  const auto& g = entry.group();
  const auto f = parse(text, ParseOptions{std::set<std::size_t>{}});
  std::vector<Element> values;
  for (const auto& p : params) values.push_back(parse_element(g, p));
  if (values.size() < param_count(f))
    throw Error("formula uses " + std::to_string(param_count(f)) + " parameters, " +
                std::to_string(values.size()) + " given");
  const auto r = evaluate(g, f, values);
  std::cout << (r.truth ? "true" : "false") << "\n";
  for (const auto& [v, x] : r.witness) std::cout << "  x" << v << " = " << g.label(x) << "\n";
  return r.truth ? 0 : 1;
}

int cmd_define(const std::string& arg, std::size_t phi, std::size_t psi) {
  const auto entry = group_entry(arg);
  const auto& g = entry.group();
  const auto f = phi ? build_phi_defining(phi) : build_psi_defining(psi);
  const auto set = definable_set(g, f);
  std::cout << render(f) << "\n"
            << "size " << set.size() << ": " << element_list(g, set) << "\n";
  return 0;
}

int cmd_verify(const std::string& id, const std::string& arg, const harness::Config& cfg) {
  const auto entry = group_entry(arg);
  const auto r = harness::run_check(entry, id, cfg);
  std::cout << harness::to_json(r).dump(2) << "\n";
  return r.status == harness::Status::Fail ? 1 : 0;
}

int cmd_suite(const std::string& corpus_dir, const std::string& out_path, const harness::Config& cfg) {
  const auto corpus = corpus_dir.empty() ? harness::default_corpus() : harness::load_corpus_dir(corpus_dir);
  const auto rep = harness::run_suite(corpus, cfg);
  const auto text = harness::to_json(rep).dump(2) + "\n";
  const auto path = out_path.empty() ? cfg.report_path : out_path;
  if (path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(path);
    if (!out || !(out << text)) throw Error("cannot write report to '" + path + "'");
  }
  const auto& s = rep.summary;
  std::cerr << s.entries << " groups, " << s.checks << " checks: " << s.pass << " pass, " << s.fail << " fail, "
            << s.skipped << " skipped, " << s.errors << " construction errors\n";
  return rep.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fitting subgroup and soluble radical definability toolkit"};
  app.require_subcommand(1);

  std::string group, formula_text, check_id, corpus_dir, config_path, out_path;
  std::vector<std::string> params;
  std::size_t phi = 0, psi = 0;

  auto* info = app.add_subcommand("info", "Order, center, Fitting subgroup, radical and classes");
  info->add_option("group", group, "Group file or family spec")->required();

  auto* eval = app.add_subcommand("eval", "Evaluate a sentence, with parameters p0, p1, ...");
  eval->add_option("group", group, "Group file or family spec")->required();
  eval->add_option("formula", formula_text, "Formula text")->required();
  eval->add_option("params", params, "Parameter values (labels or indices)");

  auto* define = app.add_subcommand("define", "Print the set defined by phi_n or psi_n");
  define->add_option("group", group, "Group file or family spec")->required();
  auto* phi_opt = define->add_option("--phi", phi, "Use phi_n")->check(CLI::PositiveNumber);
  auto* psi_opt = define->add_option("--psi", psi, "Use psi_n")->check(CLI::PositiveNumber);
  phi_opt->excludes(psi_opt);
  define->callback([&] {
    if (!phi && !psi) throw CLI::ValidationError("define", "one of --phi or --psi is required");
  });

  auto* verify = app.add_subcommand("verify", "Run a single check");
  verify->add_option("check", check_id, "Check id")->required()->check([](const std::string& s) {
    return harness::is_check_id(s) ? std::string{} : "unknown check id '" + s + "'";
  });
  verify->add_option("group", group, "Group file or family spec")->required();
  verify->add_option("--config", config_path, "Config file");

  auto* suite = app.add_subcommand("suite", "Run every check on a corpus");
  suite->add_option("--corpus", corpus_dir, "Directory of group files (default: built-in corpus)");
  suite->add_option("--config", config_path, "Config file");
  suite->add_option("--out", out_path, "Report path (default: config report_path, else stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto cfg = config_path.empty() ? harness::Config{} : harness::load_config(config_path);
    if (*info) return cmd_info(group);
    if (*eval) return cmd_eval(group, formula_text, params);
    if (*define) return cmd_define(group, phi, psi);
    if (*verify) return cmd_verify(check_id, group, cfg);
    return cmd_suite(corpus_dir, out_path, cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
