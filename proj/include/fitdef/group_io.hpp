#pragma once

// Text formats for groups.
//
// Cayley table: first line is the order n, then n lines of n
// space-separated 0-based indices (row g holds g*h).  Index 0 is the identity.
//
// Permutation file: first line is the degree d, then one generator per line
// as d space-separated 0-based images.
//
// Both readers reject anything after the expected data except whitespace.

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fitdef/error.hpp"
#include "fitdef/group.hpp"

namespace fitdef {

namespace detail {

inline std::vector<std::vector<std::uint64_t>> read_number_lines(std::istream& in,
                                                                 const std::string& what) {
  std::vector<std::vector<std::uint64_t>> lines;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::uint64_t> nums;
    std::size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(line[i])))
        throw GroupError(what + " line " + std::to_string(lineno) + ": unexpected character '" +
                         std::string(1, line[i]) + "'");
      std::uint64_t v = 0;
      while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) {
        v = v * 10 + static_cast<std::uint64_t>(line[i] - '0');
        if (v > (1ull << 32)) throw GroupError(what + " line " + std::to_string(lineno) + ": number too large");
        ++i;
      }
      nums.push_back(v);
    }
    lines.push_back(std::move(nums));
  }
  // Blank lines are only tolerated at the end.
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  for (std::size_t k = 0; k < lines.size(); ++k)
    if (lines[k].empty()) throw GroupError(what + " line " + std::to_string(k + 1) + ": blank line");
  return lines;
}

}  // namespace detail

inline FiniteGroup read_cayley_table(std::istream& in, std::size_t max_order = kDefaultMaxOrder) {
  const auto lines = detail::read_number_lines(in, "Cayley table");
  if (lines.empty() || lines[0].size() != 1) throw GroupError("Cayley table: first line must hold the order");
  const auto n = lines[0][0];
  if (n == 0) throw GroupError("Cayley table: order must be positive");
  if (n > max_order) throw GroupError("Cayley table: order exceeds limit " + std::to_string(max_order));
  if (lines.size() != n + 1)
    throw GroupError("Cayley table: expected " + std::to_string(n) + " rows, found " +
                     std::to_string(lines.size() - 1));
  std::vector<std::vector<Element>> rows(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (lines[r + 1].size() != n)
      throw GroupError("Cayley table: row " + std::to_string(r) + " has " +
                       std::to_string(lines[r + 1].size()) + " entries");
    for (const auto v : lines[r + 1]) rows[r].push_back(static_cast<Element>(v));
  }
  return from_cayley_table(rows, max_order);
}

inline void write_cayley_table(std::ostream& out, const FiniteGroup& g) {
  if (g.identity() != 0) throw GroupError("Cayley table format requires identity at index 0");
  out << g.order() << '\n';
  for (Element a = 0; a < g.order(); ++a) {
    const auto r = g.row(a);
    for (std::size_t b = 0; b < r.size(); ++b) out << (b ? " " : "") << r[b];
    out << '\n';
  }
}

inline PermutationSpec read_permutation_spec(std::istream& in) {
  const auto lines = detail::read_number_lines(in, "permutation file");
  if (lines.empty() || lines[0].size() != 1) throw GroupError("permutation file: first line must hold the degree");
  PermutationSpec spec;
  spec.degree = lines[0][0];
  if (spec.degree == 0) throw GroupError("permutation file: degree must be positive");
  for (std::size_t k = 1; k < lines.size(); ++k) {
    if (lines[k].size() != spec.degree)
      throw GroupError("permutation file: generator on line " + std::to_string(k + 1) +
                       " has " + std::to_string(lines[k].size()) + " images");
    spec.generators.emplace_back(lines[k].begin(), lines[k].end());
  }
  return spec;
}

inline void write_permutation_spec(std::ostream& out, const PermutationSpec& spec) {
  out << spec.degree << '\n';
  for (const auto& p : spec.generators) {
    for (std::size_t i = 0; i < p.size(); ++i) out << (i ? " " : "") << p[i];
    out << '\n';
  }
}

inline bool is_permutation_path(const std::string& path) {
  return path.size() >= 5 && path.compare(path.size() - 5, 5, ".perm") == 0;
}

/// Loads a group file: `.perm` files are permutation generators, anything
/// else is read as a Cayley table.
inline FiniteGroup load_group_file(const std::string& path, std::size_t max_order = kDefaultMaxOrder) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open group file '" + path + "'");
  if (is_permutation_path(path)) return from_permutations(read_permutation_spec(in), max_order);
  return read_cayley_table(in, max_order);
}

}  // namespace fitdef
