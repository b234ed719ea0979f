#ifndef EFG_QUOTIENT_HPP_
#define EFG_QUOTIENT_HPP_

#include <cstddef>
#include <limits>
#include <vector>

#include "efg/error.hpp"
#include "efg/group.hpp"
#include "efg/subgroup.hpp"

namespace efg {

inline constexpr Element kNoElement = std::numeric_limits<Element>::max();

/// Permutation image of `ambient` acting on the right cosets of `h`. The
/// kernel of this action is core_ambient(h), so the image realizes
/// ambient / core(h) on exactly [ambient : h] points.
inline FiniteGroup coset_action_image(const SubgroupRef& ambient, const SubgroupRef& h,
                                      std::vector<Element>* element_map = nullptr,
                                      const Limits& limits = {}) {
  require_contains(ambient, h);
  const FiniteGroup& g = ambient.group();
  const auto reps = right_transversal(ambient, h);
  const std::size_t index = reps.size();
  std::vector<Element> coset_of(g.order(), kNoElement);
  const auto hlist = h.elements();
  for (std::size_t r = 0; r < index; ++r) {
    for (Element y : hlist) coset_of[g.mul(y, reps[r])] = static_cast<Element>(r);
  }
  auto action_of = [&](Element x) {
    std::vector<Point> im(index);
    for (std::size_t r = 0; r < index; ++r) im[r] = static_cast<Point>(coset_of[g.mul(reps[r], x)]);
    return Permutation(std::move(im));
  };
  std::vector<Permutation> gens;
  for (Element a : ambient.generators()) gens.push_back(action_of(a));
  FiniteGroup image = FiniteGroup::generate(gens, index, limits);
  if (element_map != nullptr) {
    element_map->assign(g.order(), kNoElement);
    for (auto i = ambient.members().find_first(); i != ElementSet::npos;
         i = ambient.members().find_next(i)) {
      (*element_map)[i] = *image.index_of(action_of(static_cast<Element>(i)));
    }
  }
  return image;
}

/// Quotient witness: a surjection from `source` onto `image` with kernel `kernel`.
class GroupHom {
 public:
  GroupHom(SubgroupRef source, SubgroupRef kernel, FiniteGroup image, std::vector<Element> map)
      : source_(std::move(source)),
        kernel_(std::move(kernel)),
        image_(std::move(image)),
        map_(std::move(map)) {}

  const SubgroupRef& source() const { return source_; }
  const SubgroupRef& kernel() const { return kernel_; }
  const FiniteGroup& image() const { return image_; }

  Element operator()(Element x) const {
    if (!source_.contains(x)) throw InvalidArgument("element outside the homomorphism's source");
    return map_[x];
  }

  /// Image of a subgroup of the source.
  SubgroupRef image_of(const SubgroupRef& h) const {
    require_contains(source_, h);
    ElementSet members = image_.empty_set();
    for (auto i = h.members().find_first(); i != ElementSet::npos; i = h.members().find_next(i)) {
      members.set(map_[i]);
    }
    std::vector<Element> gens;
    for (Element e : h.generators()) {
      if (map_[e] != FiniteGroup::identity()) gens.push_back(map_[e]);
    }
    return SubgroupRef(image_, std::move(members), std::move(gens));
  }

  /// Full preimage of a subgroup of the image.
  SubgroupRef preimage(const SubgroupRef& k) const {
    if (!k.group().same_as(image_)) throw InvalidArgument("subgroup is not in the image group");
    const FiniteGroup& g = source_.group();
    ElementSet members = g.empty_set();
    for (auto i = source_.members().find_first(); i != ElementSet::npos;
         i = source_.members().find_next(i)) {
      if (k.contains(map_[i])) members.set(i);
    }
    return subgroup_from_members(g, members);
  }

 private:
  SubgroupRef source_;
  SubgroupRef kernel_;
  FiniteGroup image_;
  std::vector<Element> map_;
};

/// ambient / n, realized by the action on the right cosets of n.
inline GroupHom quotient(const SubgroupRef& ambient, const SubgroupRef& n,
                         const Limits& limits = {}) {
  require_contains(ambient, n);
  if (!is_normal(ambient, n)) throw InvalidArgument("quotient requires a normal subgroup");
  std::vector<Element> map;
  FiniteGroup image = coset_action_image(ambient, n, &map, limits);
  return GroupHom(ambient, n, std::move(image), std::move(map));
}

inline GroupHom quotient(const FiniteGroup& g, const SubgroupRef& n, const Limits& limits = {}) {
  return quotient(SubgroupRef::whole(g), n, limits);
}

}  // namespace efg

#endif  // EFG_QUOTIENT_HPP_
