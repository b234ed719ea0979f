#ifndef EFG_GROUP_HPP_
#define EFG_GROUP_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "efg/error.hpp"
#include "efg/permutation.hpp"

namespace efg {

/// Index of an element in its group's canonical (lexicographic) element list.
using Element = std::uint32_t;

/// Subset of a group's elements, indexed by Element.
using ElementSet = boost::dynamic_bitset<std::uint64_t>;

inline std::vector<Element> members_of(const ElementSet& s) {
  std::vector<Element> out;
  out.reserve(s.count());
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i)) {
    out.push_back(static_cast<Element>(i));
  }
  return out;
}

/// Deterministic 64-bit FNV-1a, used wherever a hash ends up in a file.
class Fnv1a {
 public:
  void add(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h_ ^= (v >> (8 * i)) & 0xFF;
      h_ *= 0x100000001b3ULL;
    }
  }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

/// Lazily filled per-group caches.
enum class CacheSlot : std::size_t { center, derived, fitting, frattini, nilpotent_residual, count };

/// A fully enumerated permutation group. Elements are stored in lexicographic
/// order of their image arrays, so the identity is always element 0. The
/// multiplication table is complete. Copies share the same immutable data.
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(generate({}, 1)) {}

  /// Closure of `generators` under composition. Throws BudgetExceeded once the
  /// closure grows past `limits.max_order`.
  static FiniteGroup generate(std::span<const Permutation> generators, std::size_t degree,
                              const Limits& limits = {}) {
    if (degree == 0) throw InvalidArgument("degree must be positive");
    for (const auto& g : generators) {
      if (g.degree() != degree) {
        throw InvalidArgument("generator of degree " + std::to_string(g.degree()) +
                              " in a group of degree " + std::to_string(degree));
      }
    }
    std::vector<Permutation> gens;
    for (const auto& g : generators) {
      if (!g.is_identity() && std::find(gens.begin(), gens.end(), g) == gens.end()) {
        gens.push_back(g);
      }
    }
    const std::size_t ng = gens.size();

    // Breadth-first closure; right-multiplication by generators is recorded
    // so the full table can be filled from the search tree.
    std::vector<Permutation> bfs{Permutation::identity(degree)};
    std::unordered_map<Permutation, Element, PermutationHash> seen{{bfs[0], 0}};
    std::vector<Element> rmul;  // bfs index * ng + s -> bfs index
    std::vector<Element> parent{0};
    std::vector<std::uint32_t> via{0};
    for (std::size_t i = 0; i < bfs.size(); ++i) {
      for (std::size_t s = 0; s < ng; ++s) {
        Permutation y = bfs[i] * gens[s];
        auto [it, inserted] = seen.try_emplace(std::move(y), static_cast<Element>(bfs.size()));
        if (inserted) {
          if (bfs.size() >= limits.max_order) {
            throw BudgetExceeded("group order exceeds the configured maximum of " +
                                 std::to_string(limits.max_order));
          }
          bfs.push_back(it->first);
          parent.push_back(static_cast<Element>(i));
          via.push_back(static_cast<std::uint32_t>(s));
        }
        rmul.push_back(it->second);
      }
    }
    const std::size_t n = bfs.size();

    std::vector<Element> bfs_table(n * n);
    for (std::size_t x = 0; x < n; ++x) bfs_table[x * n] = static_cast<Element>(x);
    for (std::size_t j = 1; j < n; ++j) {
      const std::size_t p = parent[j], s = via[j];
      for (std::size_t x = 0; x < n; ++x) {
        bfs_table[x * n + j] = rmul[bfs_table[x * n + p] * ng + s];
      }
    }

    std::vector<Element> by_lex(n);
    std::iota(by_lex.begin(), by_lex.end(), Element{0});
    std::sort(by_lex.begin(), by_lex.end(),
              [&](Element a, Element b) { return bfs[a] < bfs[b]; });
    std::vector<Element> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[by_lex[i]] = static_cast<Element>(i);

    auto d = std::make_shared<Data>();
    d->degree = degree;
    d->elements.reserve(n);
    for (std::size_t i = 0; i < n; ++i) d->elements.push_back(std::move(bfs[by_lex[i]]));
    d->table.resize(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        d->table[pos[x] * n + pos[y]] = pos[bfs_table[x * n + y]];
      }
    }
    for (const auto& g : gens) {
      auto it = seen.find(g);
      d->generators.push_back(pos[it->second]);
    }
    finish(*d);
    return FiniteGroup(std::move(d));
  }

  /// Materializes the subgroup with the given (closed) member set as a group
  /// in its own right, reusing the parent's multiplication table.
  static FiniteGroup induced(const FiniteGroup& parent, const ElementSet& members,
                             std::span<const Element> generators) {
    const auto list = members_of(members);
    const std::size_t n = list.size();
    std::vector<Element> local(parent.order(), 0);
    for (std::size_t i = 0; i < n; ++i) local[list[i]] = static_cast<Element>(i);

    auto d = std::make_shared<Data>();
    d->degree = parent.degree();
    d->elements.reserve(n);
    for (Element e : list) d->elements.push_back(parent.element(e));
    d->table.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        d->table[i * n + j] = local[parent.mul(list[i], list[j])];
      }
    }
    for (Element g : generators) {
      if (!members.test(g)) throw InvalidArgument("generator outside member set");
      if (g != 0) d->generators.push_back(local[g]);
    }
    finish(*d);
    return FiniteGroup(std::move(d));
  }

  std::size_t order() const { return d_->elements.size(); }
  std::size_t degree() const { return d_->degree; }
  static constexpr Element identity() { return 0; }

  Element mul(Element a, Element b) const { return d_->table[a * order() + b]; }
  Element inv(Element a) const { return d_->inverse[a]; }
  /// a^g = g^-1 a g
  Element conj(Element a, Element g) const { return mul(mul(inv(g), a), g); }
  /// [a, b] = a^-1 b^-1 a b
  Element commutator(Element a, Element b) const {
    return mul(mul(inv(a), inv(b)), mul(a, b));
  }
  Element pow(Element a, std::size_t k) const {
    Element r = identity();
    for (std::size_t i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }
  std::uint32_t element_order(Element a) const { return d_->orders[a]; }

  const Permutation& element(Element a) const { return d_->elements[a]; }
  std::span<const Permutation> elements() const { return d_->elements; }
  std::span<const Element> generators() const { return d_->generators; }

  std::optional<Element> index_of(const Permutation& p) const {
    auto it = d_->index.find(p);
    if (it == d_->index.end()) return std::nullopt;
    return it->second;
  }

  ElementSet empty_set() const { return ElementSet(order()); }
  ElementSet full_set() const { return ElementSet(order()).set(); }

  /// Hash of the canonical element list; identifies the group across runs.
  std::uint64_t fingerprint() const { return d_->fingerprint; }

  bool is_abelian() const {
    for (Element a : generators()) {
      for (Element b : generators()) {
        if (mul(a, b) != mul(b, a)) return false;
      }
    }
    return true;
  }

  /// Same underlying group object (not isomorphism).
  bool same_as(const FiniteGroup& other) const { return d_ == other.d_; }

  /// Returns the cached set in `slot`, computing it with `compute` on first
  /// use. Concurrent first uses may both compute; one result is kept.
  template <typename F>
  ElementSet cached(CacheSlot slot, F&& compute) const {
    const auto i = static_cast<std::size_t>(slot);
    {
      std::lock_guard lock(d_->cache_mutex);
      if (d_->cache[i]) return *d_->cache[i];
    }
    ElementSet value = compute();
    std::lock_guard lock(d_->cache_mutex);
    if (!d_->cache[i]) d_->cache[i] = value;
    return *d_->cache[i];
  }

 private:
  struct Data {
    std::size_t degree = 1;
    std::vector<Permutation> elements;
    std::vector<Element> table;
    std::vector<Element> inverse;
    std::vector<std::uint32_t> orders;
    std::vector<Element> generators;
    std::unordered_map<Permutation, Element, PermutationHash> index;
    std::uint64_t fingerprint = 0;
    mutable std::mutex cache_mutex;
    mutable std::array<std::optional<ElementSet>, static_cast<std::size_t>(CacheSlot::count)>
        cache;
  };

  explicit FiniteGroup(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  static void finish(Data& d) {
    const std::size_t n = d.elements.size();
    d.inverse.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (d.table[a * n + b] == 0) {
          d.inverse[a] = static_cast<Element>(b);
          break;
        }
      }
    }
    d.orders.assign(n, 1);
    for (std::size_t a = 1; a < n; ++a) {
      Element x = static_cast<Element>(a);
      std::uint32_t k = 1;
      while (x != 0) {
        x = d.table[x * n + a];
        ++k;
      }
      d.orders[a] = k;
    }
    d.index.reserve(n);
    Fnv1a h;
    h.add(d.degree);
    h.add(n);
    for (std::size_t i = 0; i < n; ++i) {
      d.index.emplace(d.elements[i], static_cast<Element>(i));
      for (Point p : d.elements[i].images()) h.add(p);
    }
    d.fingerprint = h.value();
  }

  std::shared_ptr<const Data> d_;
};

}  // namespace efg

#endif  // EFG_GROUP_HPP_
