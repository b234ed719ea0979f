#ifndef EFG_CATALOG_HPP_
#define EFG_CATALOG_HPP_

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "efg/error.hpp"
#include "efg/group.hpp"
#include "efg/lattice.hpp"
#include "efg/permutation.hpp"
#include "efg/products.hpp"
#include "efg/report.hpp"
#include "efg/series.hpp"
#include "efg/subgroup.hpp"

namespace efg {

// ---------------------------------------------------------------------------
// Group files
//
//   pgrp v1
//   degree N
//   order M          (optional; the generated order must match)
//   name S           (optional)
//   (1 2 3)(4 5)     one generator per line, 1-based cycle notation
//
// Blank lines and lines starting with '#' are ignored; '#' also starts a
// trailing comment on header and generator lines.

inline constexpr std::string_view kGroupFileMagic = "pgrp";
inline constexpr int kGroupFileVersion = 1;

struct GroupFile {
  std::size_t degree = 1;
  std::optional<std::size_t> expected_order;
  std::optional<std::string> name;
  std::vector<Permutation> generators;
  FiniteGroup group;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::size_t parse_count(std::string_view text, std::size_t line, std::size_t column, const char* what) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ParseError(std::string("expected a non-negative integer ") + what, line, column);
  }
  return value;
}

}  // namespace detail

/// Parses and generates. Throws ParseError for syntax problems, InvalidArgument
/// for an order mismatch and BudgetExceeded when the closure is too large.
inline GroupFile parse_group_text(std::string_view text, const Limits& limits = {}) {
  GroupFile out;
  bool seen_magic = false, seen_degree = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view raw = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::size_t indent = line.find_first_not_of(" \t");
    if (indent == std::string_view::npos) continue;
    line = detail::trim(line);
    const std::size_t col = indent + 1;

    if (!seen_magic) {
      if (line.substr(0, kGroupFileMagic.size()) != kGroupFileMagic) {
        throw ParseError("expected header 'pgrp v1'", line_no, col);
      }
      if (line != "pgrp v1") throw ParseError("unsupported format version '" + std::string(line) + "'", line_no, col);
      seen_magic = true;
      continue;
    }
    auto keyword = [&](std::string_view kw) {
      return line.size() > kw.size() && line.substr(0, kw.size()) == kw &&
             (line[kw.size()] == ' ' || line[kw.size()] == '\t');
    };
    if (!seen_degree) {
      if (!keyword("degree")) throw ParseError("expected 'degree N'", line_no, col);
      std::string_view v = detail::trim(line.substr(6));
      out.degree = detail::parse_count(v, line_no, col + (line.size() - v.size()), "degree");
      if (out.degree == 0 || out.degree > 0xFFFF) throw ParseError("degree out of range", line_no, col + 7);
      seen_degree = true;
      continue;
    }
    if (out.generators.empty() && keyword("order")) {
      if (out.expected_order) throw ParseError("duplicate 'order'", line_no, col);
      std::string_view v = detail::trim(line.substr(5));
      out.expected_order = detail::parse_count(v, line_no, col + (line.size() - v.size()), "order");
      continue;
    }
    if (out.generators.empty() && keyword("name")) {
      if (out.name) throw ParseError("duplicate 'name'", line_no, col);
      out.name = std::string(detail::trim(line.substr(4)));
      continue;
    }
    if (line.front() != '(') throw ParseError("expected a generator in cycle notation", line_no, col);
    try {
      out.generators.push_back(Permutation::parse(line, out.degree));
    } catch (const ParseError& e) {
      throw ParseError(e.reason(), line_no, indent + e.column());
    }
  }
  if (!seen_magic) throw ParseError("empty input, expected header 'pgrp v1'", 1, 1);
  if (!seen_degree) throw ParseError("missing 'degree N'", line_no, 1);

  out.group = FiniteGroup::generate(out.generators, out.degree, limits);
  if (out.expected_order && *out.expected_order != out.group.order()) {
    throw InvalidArgument("order mismatch: file declares " + std::to_string(*out.expected_order) +
                          ", generators give " + std::to_string(out.group.order()));
  }
  return out;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// As parse_group_text, with the path prefixed to error messages.
inline GroupFile read_group_file(const std::filesystem::path& path, const Limits& limits = {}) {
  const std::string text = read_text(path);
  try {
    return parse_group_text(text, limits);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.reason(), e.line(), e.column());
  } catch (const BudgetExceeded& e) {
    throw BudgetExceeded(path.string() + ": " + e.what());
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

inline FiniteGroup parse_group_file(const std::filesystem::path& path, const Limits& limits = {}) {
  return read_group_file(path, limits).group;
}

/// Canonical text: header lines in fixed order, generators in canonical cycle
/// form, no comments.
inline std::string emit_group_file(const GroupFile& f) {
  std::string s = "pgrp v1\ndegree " + std::to_string(f.degree) + "\n";
  if (f.expected_order) s += "order " + std::to_string(*f.expected_order) + "\n";
  if (f.name) s += "name " + *f.name + "\n";
  for (const auto& g : f.generators) s += g.to_string() + "\n";
  return s;
}

/// File contents for a group: its stored generators, with its order and name.
inline std::string emit_group_file(const FiniteGroup& g, const std::string& name = "") {
  GroupFile f;
  f.degree = g.degree();
  f.expected_order = g.order();
  if (!name.empty()) f.name = name;
  for (Element e : g.generators()) f.generators.push_back(g.element(e));
  return emit_group_file(f);
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << text;
}

// ---------------------------------------------------------------------------
// Named constructors
//
//   cyclic:M  dihedral:N  symmetric:N  alternating:N  elem_abelian:P:K
//   direct(X,Y)  semidirect(X,Y,ACTION)
//
// ACTION is applied by every generator of Y: trivial, inversion, power:K, or
// cycle (the generators of X are permuted cyclically).

namespace detail {

class NameParser {
 public:
  NameParser(std::string_view text, const Limits& limits) : s_(text), limits_(limits) {}

  FiniteGroup parse() {
    FiniteGroup g = group();
    skip();
    if (i_ != s_.size()) fail("unexpected trailing text");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, 0, i_ + 1); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  void expect(char c) {
    skip();
    if (i_ >= s_.size() || s_[i_] != c) fail(std::string("expected '") + c + "'");
    ++i_;
  }

  std::string word() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    if (start == i_) fail("expected a name");
    return std::string(s_.substr(start, i_ - start));
  }

  std::size_t number() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected a number");
    std::size_t v = 0;
    std::from_chars(s_.data() + start, s_.data() + i_, v);
    return v;
  }

  FiniteGroup group() {
    const std::size_t at = i_;
    const std::string w = word();
    if (w == "direct") {
      expect('(');
      FiniteGroup a = group();
      expect(',');
      FiniteGroup b = group();
      expect(')');
      return direct_product(a, b, limits_);
    }
    if (w == "semidirect") {
      expect('(');
      FiniteGroup a = group();
      expect(',');
      FiniteGroup b = group();
      expect(',');
      const std::size_t action_at = i_;
      const std::string action = word();
      std::size_t k = 0;
      if (action == "power") {
        expect(':');
        k = number();
      }
      expect(')');
      try {
        return semidirect_product(a, b, action_maps(a, b, action, k), limits_);
      } catch (const ParseError&) {
        throw;
      } catch (const InvalidArgument& e) {
        i_ = action_at;
        fail(e.what());
      }
    }
    auto arg = [&] {
      expect(':');
      return number();
    };
    try {
      if (w == "cyclic") return cyclic_group(arg());
      if (w == "dihedral") return dihedral_group(arg());
      if (w == "symmetric") return symmetric_group(arg(), limits_);
      if (w == "alternating") return alternating_group(arg(), limits_);
      if (w == "elem_abelian") {
        const std::size_t p = arg();
        const std::size_t k = arg();
        return elementary_abelian_group(p, k, limits_);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const InvalidArgument& e) {
      i_ = at;
      fail(e.what());
    }
    i_ = at;
    fail("unknown group name '" + w + "'");
  }

  static std::vector<ElementMap> action_maps(const FiniteGroup& a, const FiniteGroup& b, const std::string& action,
                                             std::size_t k) {
    const auto agens = a.generators();
    std::vector<Element> images;
    if (action == "trivial") {
      images.assign(agens.begin(), agens.end());
    } else if (action == "inversion") {
      for (Element x : agens) images.push_back(a.inv(x));
    } else if (action == "power") {
      for (Element x : agens) images.push_back(a.pow(x, k));
    } else if (action == "cycle") {
      for (std::size_t i = 0; i < agens.size(); ++i) images.push_back(agens[(i + 1) % agens.size()]);
    } else {
      throw InvalidArgument("unknown action '" + action + "' (expected trivial, inversion, power:K or cycle)");
    }
    const ElementMap f = extend_to_automorphism(a, images);
    return std::vector<ElementMap>(b.generators().size(), f);
  }

  std::string_view s_;
  const Limits& limits_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline FiniteGroup build_named(std::string_view name, const Limits& limits = {}) {
  return detail::NameParser(name, limits).parse();
}

// ---------------------------------------------------------------------------
// Directories

struct CatalogEntry {
  std::string name;
  std::filesystem::path path;
  std::optional<FiniteGroup> group;
  std::string error;  // set when the file did not load
};

/// Every *.pgrp file under `dir` (not recursive). Files that fail to load keep
/// their error message. Sorted by (order, name); failures sort first by name.
inline std::vector<CatalogEntry> load_directory(const std::filesystem::path& dir, const Limits& limits = {},
                                                std::size_t max_order = 0) {
  if (!std::filesystem::is_directory(dir)) throw InvalidArgument(dir.string() + " is not a directory");
  std::vector<std::filesystem::path> paths;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".pgrp") paths.push_back(e.path());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<CatalogEntry> out;
  for (const auto& p : paths) {
    CatalogEntry entry{p.stem().string(), p, std::nullopt, {}};
    try {
      GroupFile f = read_group_file(p, limits);
      if (f.name) entry.name = *f.name;
      if (max_order != 0 && f.group.order() > max_order) continue;
      entry.group = std::move(f.group);
    } catch (const Error& e) {
      entry.error = e.what();
    }
    out.push_back(std::move(entry));
  }
  std::stable_sort(out.begin(), out.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
    const std::size_t oa = a.group ? a.group->order() : 0, ob = b.group ? b.group->order() : 0;
    if (oa != ob) return oa < ob;
    return a.name < b.name;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Lattice cache

inline constexpr std::string_view kLatticeCacheFormat = "efg-lattice-cache";
inline constexpr int kLatticeCacheVersion = 1;

class CacheError : public Error {
 public:
  enum class Kind { format, version, checksum };
  CacheError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

namespace detail {

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 0xF];
  return s;
}

}  // namespace detail

inline Json lattice_to_json(const SubgroupLattice& lattice) {
  const FiniteGroup& g = lattice.ambient().group();
  Json nodes = Json::array();
  for (const auto& h : lattice.nodes()) {
    Json gens = Json::array();
    for (Element e : h.generators()) gens.push_back(e);
    nodes.push_back(Json{{"members", members_of(h.members())}, {"generators", std::move(gens)}});
  }
  Json edges = Json::array();
  for (auto [lo, hi] : lattice.edges()) edges.push_back(Json::array({lo, hi}));
  Json expanded = Json::array();
  for (bool b : lattice.expanded()) expanded.push_back(b ? 1 : 0);
  return Json{{"format", kLatticeCacheFormat},
              {"version", kLatticeCacheVersion},
              {"group_checksum", detail::hex64(g.fingerprint())},
              {"group_order", g.order()},
              {"ambient", members_of(lattice.ambient().members())},
              {"nodes", std::move(nodes)},
              {"edges", std::move(edges)},
              {"expanded", std::move(expanded)}};
}

/// Rebuilds a lattice for `g`. Throws CacheError on a foreign or stale file.
inline SubgroupLattice lattice_from_json(const Json& j, const FiniteGroup& g) {
  try {
    if (j.at("format").get<std::string>() != kLatticeCacheFormat) {
      throw CacheError(CacheError::Kind::format, "not a lattice cache file");
    }
    if (j.at("version").get<int>() != kLatticeCacheVersion) {
      throw CacheError(CacheError::Kind::version, "lattice cache version " + j.at("version").dump() +
                                                      " is not supported (expected " +
                                                      std::to_string(kLatticeCacheVersion) + ")");
    }
    if (j.at("group_checksum").get<std::string>() != detail::hex64(g.fingerprint()) ||
        j.at("group_order").get<std::size_t>() != g.order()) {
      throw CacheError(CacheError::Kind::checksum, "lattice cache belongs to a different group");
    }
    auto to_set = [&](const Json& list) {
      ElementSet s = g.empty_set();
      for (const auto& e : list) {
        const auto v = e.get<std::size_t>();
        if (v >= g.order()) throw CacheError(CacheError::Kind::format, "element index out of range");
        s.set(v);
      }
      return s;
    };
    const ElementSet ambient_members = to_set(j.at("ambient"));
    const SubgroupRef ambient = subgroup_from_members(g, ambient_members);
    std::vector<SubgroupRef> nodes;
    for (const auto& n : j.at("nodes")) {
      std::vector<Element> gens = n.at("generators").get<std::vector<Element>>();
      ElementSet members = to_set(n.at("members"));
      if (!(subgroup_generated(g, gens).members() == members)) {
        throw CacheError(CacheError::Kind::format, "node generators do not match its members");
      }
      nodes.emplace_back(g, std::move(members), std::move(gens));
    }
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& e : j.at("edges")) {
      const auto lo = e.at(0).get<std::size_t>(), hi = e.at(1).get<std::size_t>();
      if (lo >= nodes.size() || hi >= nodes.size()) throw CacheError(CacheError::Kind::format, "edge out of range");
      edges.emplace_back(lo, hi);
    }
    std::vector<bool> expanded;
    for (const auto& b : j.at("expanded")) expanded.push_back(b.get<int>() != 0);
    if (expanded.size() != nodes.size()) throw CacheError(CacheError::Kind::format, "expanded flags truncated");
    return SubgroupLattice(ambient, std::move(nodes), std::move(edges), std::move(expanded));
  } catch (const nlohmann::json::exception& e) {
    throw CacheError(CacheError::Kind::format, std::string("malformed lattice cache: ") + e.what());
  }
}

inline void cache_save(const SubgroupLattice& lattice, const std::filesystem::path& path) {
  write_text(path, lattice_to_json(lattice).dump() + "\n");
}

inline SubgroupLattice cache_load(const std::filesystem::path& path, const FiniteGroup& g) {
  Json j;
  try {
    j = Json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw CacheError(CacheError::Kind::format, path.string() + ": " + e.what());
  }
  return lattice_from_json(j, g);
}

}  // namespace efg

#endif  // EFG_CATALOG_HPP_
