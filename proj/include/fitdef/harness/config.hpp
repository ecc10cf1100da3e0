#pragma once

// Verification budgets, read from "key = value" text files.  Lines starting
// with '#' and blank lines are ignored.

#include <cstdint>
#include <fstream>
#include <istream>
#include <string>

#include "json.hpp"

#include "fitdef/error.hpp"

namespace fitdef::harness {

struct Config {
  std::size_t max_order_oracle = 60;
  std::size_t max_order_exhaustive_tuples = 24;
  std::size_t sample_count = 1000;
  std::uint64_t seed = 0;
  std::string report_path;

  std::size_t max_order_lemma1 = 48;
  std::size_t max_order_sampled_tuples = 120;
  std::size_t max_order_materialized = 24;
  std::size_t max_order_exhaustive_identities = 24;
  std::size_t identity_samples = 10000;
  std::size_t p_max = 5;
  std::size_t m_max = 4;
  std::size_t engel_n_max = 5;
  bool timings = false;
  /// Worker threads for the suite; 0 means one per hardware thread.
  std::size_t threads = 0;
};

inline nlohmann::ordered_json to_json(const Config& c) {
  return {
      {"max_order_oracle", c.max_order_oracle},
      {"max_order_exhaustive_tuples", c.max_order_exhaustive_tuples},
      {"sample_count", c.sample_count},
      {"seed", c.seed},
      {"report_path", c.report_path},
      {"max_order_lemma1", c.max_order_lemma1},
      {"max_order_sampled_tuples", c.max_order_sampled_tuples},
      {"max_order_materialized", c.max_order_materialized},
      {"max_order_exhaustive_identities", c.max_order_exhaustive_identities},
      {"identity_samples", c.identity_samples},
      {"p_max", c.p_max},
      {"m_max", c.m_max},
      {"engel_n_max", c.engel_n_max},
      {"timings", c.timings},
      {"threads", c.threads},
  };
}

namespace detail {
inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::uint64_t to_number(const std::string& key, const std::string& v) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
    throw Error("config: '" + key + "' expects a non-negative integer, got '" + v + "'");
  return std::stoull(v);
}
}  // namespace detail

inline Config parse_config(std::istream& in) {
  Config c;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = detail::trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error("config line " + std::to_string(lineno) + ": expected key = value");
    const auto key = detail::trim(line.substr(0, eq));
    const auto val = detail::trim(line.substr(eq + 1));
    auto num = [&] { return detail::to_number(key, val); };
    if (key == "max_order_oracle") c.max_order_oracle = num();
    else if (key == "max_order_exhaustive_tuples") c.max_order_exhaustive_tuples = num();
    else if (key == "sample_count") c.sample_count = num();
    else if (key == "seed") c.seed = num();
    else if (key == "report_path") c.report_path = val;
    else if (key == "max_order_lemma1") c.max_order_lemma1 = num();
    else if (key == "max_order_sampled_tuples") c.max_order_sampled_tuples = num();
    else if (key == "max_order_materialized") c.max_order_materialized = num();
    else if (key == "max_order_exhaustive_identities") c.max_order_exhaustive_identities = num();
    else if (key == "identity_samples") c.identity_samples = num();
    else if (key == "p_max") c.p_max = num();
    else if (key == "m_max") c.m_max = num();
    else if (key == "engel_n_max") c.engel_n_max = num();
    else if (key == "threads") c.threads = num();
    else if (key == "timings") {
      if (val != "true" && val != "false") throw Error("config: 'timings' expects true or false");
      c.timings = val == "true";
    } else {
      throw Error("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return c;
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file '" + path + "'");
  return parse_config(in);
}

}  // namespace fitdef::harness
