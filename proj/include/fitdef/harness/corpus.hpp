#pragma once

// Named groups to verify: the built-in default corpus and directories of
// group files.

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fitdef/error.hpp"
#include "fitdef/families.hpp"
#include "fitdef/group.hpp"
#include "fitdef/group_io.hpp"

namespace fitdef::harness {

class CorpusEntry {
public:
  CorpusEntry(std::string name, std::string source, std::function<FiniteGroup()> build,
              std::vector<std::string> factors = {}, std::vector<std::string> tags = {})
      : name_(std::move(name)),
        source_(std::move(source)),
        build_(std::move(build)),
        factors_(std::move(factors)),
        tags_(std::move(tags)) {}

  static CorpusEntry from_family(std::string name, const std::string& spec, std::vector<std::string> tags = {}) {
    return CorpusEntry(std::move(name), "family:" + spec, [spec] { return families::family(spec); },
                       families::product_factors(spec), std::move(tags));
  }

  static CorpusEntry from_file(std::string name, const std::string& path) {
    return CorpusEntry(std::move(name), "file:" + path, [path] { return load_group_file(path); });
  }

  const std::string& name() const noexcept { return name_; }
  const std::string& source() const noexcept { return source_; }
  /// Family specs of the two direct factors of a `product(A,B)` entry.
  const std::vector<std::string>& factors() const noexcept { return factors_; }
  const std::vector<std::string>& tags() const noexcept { return tags_; }

  /// Builds the group on first use; construction errors propagate.
  const FiniteGroup& group() const {
    if (!group_) group_ = std::make_shared<const FiniteGroup>(build_());
    return *group_;
  }

private:
  std::string name_;
  std::string source_;
  std::function<FiniteGroup()> build_;
  std::vector<std::string> factors_;
  std::vector<std::string> tags_;
  mutable std::shared_ptr<const FiniteGroup> group_;
};

using Corpus = std::vector<CorpusEntry>;

/// cyclic 1-12, dihedral 3-8, symmetric 3-5, alternating 4-5, Q8, V4,
/// Q8 x Z3, Z2 x A5, Q8 x A5.
inline Corpus default_corpus() {
  Corpus c;
  for (int n = 1; n <= 12; ++n) {
    std::vector<std::string> tags{"abelian", "nilpotent", "soluble"};
    if (n == 1) tags.insert(tags.begin(), "trivial");
    c.push_back(CorpusEntry::from_family("Z" + std::to_string(n), "cyclic:" + std::to_string(n), tags));
  }
  for (int n = 3; n <= 8; ++n) {
    std::vector<std::string> tags{"soluble"};
    if ((n & (n - 1)) == 0) tags.insert(tags.begin(), "nilpotent");
    c.push_back(CorpusEntry::from_family("D" + std::to_string(n), "dihedral:" + std::to_string(n), tags));
  }
  c.push_back(CorpusEntry::from_family("S3", "symmetric:3", {"soluble"}));
  c.push_back(CorpusEntry::from_family("S4", "symmetric:4", {"soluble"}));
  c.push_back(CorpusEntry::from_family("S5", "symmetric:5", {"insoluble"}));
  c.push_back(CorpusEntry::from_family("A4", "alternating:4", {"soluble"}));
  c.push_back(CorpusEntry::from_family("A5", "alternating:5", {"simple", "insoluble"}));
  c.push_back(CorpusEntry::from_family("Q8", "quaternion8", {"nilpotent", "soluble"}));
  c.push_back(CorpusEntry::from_family("V4", "klein4", {"abelian", "nilpotent", "soluble"}));
  c.push_back(CorpusEntry::from_family("Q8xZ3", "product(quaternion8,cyclic:3)", {"nilpotent", "soluble"}));
  c.push_back(CorpusEntry::from_family("Z2xA5", "product(cyclic:2,alternating:5)", {"insoluble"}));
  c.push_back(CorpusEntry::from_family("Q8xA5", "product(quaternion8,alternating:5)", {"insoluble"}));
  return c;
}

/// Entries for every `.tbl`, `.perm` and `.family` file in `dir`, sorted by
/// file name.  A `.family` file holds a single family spec.  Entry names are
/// file stems.
inline Corpus load_corpus_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error("corpus directory '" + dir + "' is not readable");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir, ec)) {
    if (!e.is_regular_file()) continue;
    const auto ext = e.path().extension().string();
    if (ext == ".tbl" || ext == ".perm" || ext == ".family") files.push_back(e.path());
  }
  if (ec) throw Error("cannot list corpus directory '" + dir + "'");
  std::sort(files.begin(), files.end());

  Corpus c;
  std::set<std::string> names;
  for (const auto& p : files) {
    const auto name = p.stem().string();
    if (!names.insert(name).second) throw Error("duplicate corpus entry name '" + name + "'");
    if (p.extension() == ".family") {
      std::ifstream in(p);
      std::string spec((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      while (!spec.empty() && std::isspace(static_cast<unsigned char>(spec.back()))) spec.pop_back();
      c.push_back(CorpusEntry::from_family(name, spec));
    } else {
      c.push_back(CorpusEntry::from_file(name, p.string()));
    }
  }
  return c;
}

}  // namespace fitdef::harness
