#ifndef EFG_PERMUTATION_HPP_
#define EFG_PERMUTATION_HPP_

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include <boost/functional/hash.hpp>

#include "efg/error.hpp"

namespace efg {

using Point = std::uint16_t;

/// A bijection on {0, ..., degree-1}. Products compose left to right:
/// (p * q)(x) = q(p(x)), so p * q means "apply p, then q".
class Permutation {
 public:
  Permutation() : images_{0} {}

  static Permutation identity(std::size_t degree) {
    if (degree == 0) throw InvalidArgument("permutation degree must be positive");
    if (degree > 0xFFFF) throw InvalidArgument("permutation degree too large");
    std::vector<Point> im(degree);
    std::iota(im.begin(), im.end(), Point{0});
    return Permutation(std::move(im), NoCheck{});
  }

  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    if (images_.empty()) throw InvalidArgument("permutation degree must be positive");
    std::vector<bool> seen(images_.size(), false);
    for (Point p : images_) {
      if (p >= images_.size() || seen[p]) {
        throw InvalidArgument("image array is not a bijection");
      }
      seen[p] = true;
    }
  }

  /// Builds a permutation from 0-based cycles.
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<std::size_t>>& cycles) {
    Permutation result = identity(degree);
    std::vector<bool> used(degree, false);
    for (const auto& cycle : cycles) {
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        std::size_t a = cycle[i];
        if (a >= degree) throw InvalidArgument("cycle point " + std::to_string(a + 1) +
                                               " exceeds degree " + std::to_string(degree));
        if (used[a]) throw InvalidArgument("point " + std::to_string(a + 1) +
                                           " occurs in more than one cycle");
        used[a] = true;
        result.images_[a] = static_cast<Point>(cycle[(i + 1) % cycle.size()]);
      }
    }
    return result;
  }

  /// Parses 1-based cycle notation such as "(1 2 3)(4 5)" or "(1,2)". "()" is the identity.
  static Permutation parse(std::string_view text, std::size_t degree) {
    std::vector<std::vector<std::size_t>> cycles;
    std::size_t i = 0;
    auto fail = [&](const std::string& what) {
      throw ParseError(what, 0, i + 1);
    };
    auto skip_ws = [&] {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    skip_ws();
    if (i == text.size()) fail("empty permutation");
    while (i < text.size()) {
      if (text[i] != '(') fail("expected '('");
      ++i;
      std::vector<std::size_t> cycle;
      for (;;) {
        skip_ws();
        if (i < text.size() && text[i] == ')') { ++i; break; }
        if (i < text.size() && text[i] == ',' && !cycle.empty()) { ++i; continue; }
        if (i >= text.size() || text[i] < '0' || text[i] > '9') fail("expected a point or ')'");
        std::size_t value = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
          value = value * 10 + static_cast<std::size_t>(text[i] - '0');
          if (value > 0xFFFF) fail("point out of range");
          ++i;
        }
        if (value == 0) fail("points are 1-based");
        if (value > degree) fail("point " + std::to_string(value) + " exceeds degree " +
                                 std::to_string(degree));
        cycle.push_back(value - 1);
      }
      if (!cycle.empty()) cycles.push_back(std::move(cycle));
      skip_ws();
    }
    try {
      return from_cycles(degree, cycles);
    } catch (const InvalidArgument& e) {
      fail(e.what());
    }
    return identity(degree);
  }

  std::size_t degree() const { return images_.size(); }
  Point operator[](std::size_t i) const { return images_[i]; }
  const std::vector<Point>& images() const { return images_; }

  Permutation operator*(const Permutation& rhs) const {
    if (rhs.degree() != degree()) throw InvalidArgument("degree mismatch in product");
    std::vector<Point> im(images_.size());
    for (std::size_t i = 0; i < im.size(); ++i) im[i] = rhs.images_[images_[i]];
    return Permutation(std::move(im), NoCheck{});
  }

  Permutation inverse() const {
    std::vector<Point> im(images_.size());
    for (std::size_t i = 0; i < im.size(); ++i) im[images_[i]] = static_cast<Point>(i);
    return Permutation(std::move(im), NoCheck{});
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) return false;
    }
    return true;
  }

  /// Canonical 1-based cycle notation: cycles start at their least point, ordered
  /// by that point, fixed points omitted.
  std::string to_string() const {
    std::string out;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t start = 0; start < images_.size(); ++start) {
      if (seen[start] || images_[start] == start) continue;
      out += '(';
      std::size_t x = start;
      bool first = true;
      while (!seen[x]) {
        seen[x] = true;
        if (!first) out += ' ';
        out += std::to_string(x + 1);
        first = false;
        x = images_[x];
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

 private:
  struct NoCheck {};
  Permutation(std::vector<Point> images, NoCheck) : images_(std::move(images)) {}

  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    return boost::hash_range(p.images().begin(), p.images().end());
  }
};

}  // namespace efg

#endif  // EFG_PERMUTATION_HPP_
