#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace d3 {

/// Default bound on the order of an enumerated group.
inline constexpr std::size_t kDefaultGroupCap = 128;

/// A permutation of {0, ..., degree-1}. Composition is right-to-left:
/// (s * t)(x) = s(t(x)).
class Permutation {
public:
  Permutation() = default;
  /// Throws Error(BadPermutation) unless `images` is a bijection of 0..n-1.
  explicit Permutation(std::vector<std::uint32_t> images);
  static Permutation identity(std::size_t degree);
  /// Parses cycle notation such as "(0 1 2)(3 4)"; "()" is the identity.
  static Permutation parse(std::string_view text, std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  std::uint32_t operator()(std::uint32_t x) const { return images_[x]; }
  const std::vector<std::uint32_t> &images() const { return images_; }
  bool is_identity() const;
  Permutation inverse() const;

  /// Cycle notation with each cycle starting at its least point.
  std::string to_string() const;

  friend Permutation operator*(const Permutation &s, const Permutation &t);
  friend auto operator<=>(const Permutation &a, const Permutation &b) = default;
  friend bool operator==(const Permutation &a, const Permutation &b) = default;

private:
  std::vector<std::uint32_t> images_;
};

/// A finite permutation group with all elements enumerated in canonical
/// (lexicographic image tuple) order; the identity is element 0.
class PermGroup {
public:
  PermGroup() = default;

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Permutation> &generators() const { return generators_; }
  const std::vector<Permutation> &elements() const { return elements_; }
  const Permutation &element(std::size_t i) const { return elements_[i]; }

  /// Position of `p` in elements(), or -1.
  std::int64_t index_of(const Permutation &p) const;
  bool contains(const Permutation &p) const { return index_of(p) >= 0; }
  /// Index of element(i) * element(j).
  std::uint32_t mul(std::size_t i, std::size_t j) const { return table_[i * order() + j]; }
  std::uint32_t inv(std::size_t i) const { return inverse_[i]; }

  bool is_subgroup_of(const PermGroup &g) const;
  bool is_normal_in(const PermGroup &g) const;

  friend bool operator==(const PermGroup &a, const PermGroup &b) {
    return a.degree_ == b.degree_ && a.elements_ == b.elements_;
  }

private:
  friend PermGroup generate(std::size_t, const std::vector<Permutation> &, std::size_t);
  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
};

/// Closure of the generators. Throws CapExceeded past `cap` elements and
/// BadPermutation on a degree mismatch.
PermGroup generate(std::size_t degree, const std::vector<Permutation> &generators,
                   std::size_t cap = kDefaultGroupCap);

/// The subgroup of `g` generated by the given elements of `g`.
PermGroup subgroup(const PermGroup &g, const std::vector<Permutation> &generators);

/// Smallest normal subgroup of g containing k.
PermGroup normal_closure(const PermGroup &g, const PermGroup &k);

struct DoubleCoset {
  Permutation representative;        ///< least member
  std::vector<std::uint32_t> members; ///< indices into G.elements(), ascending
};

/// The partition of g into sets H x K, ordered by representative.
std::vector<DoubleCoset> double_cosets(const PermGroup &g, const PermGroup &h, const PermGroup &k);

enum class CosetSide { Left, Right };

/// Least member of each coset (xH for Left, Hx for Right), ascending.
std::vector<Permutation> coset_representatives(const PermGroup &g, const PermGroup &h, CosetSide side);

/// G > H > K on a common degree.
struct GroupTower {
  PermGroup G;
  PermGroup H;
  PermGroup K;
};

/// Validates K <= H <= G; throws NotSubgroup ("K not contained in H", ...).
GroupTower make_tower(PermGroup g, PermGroup h, PermGroup k);

/// True iff the normal closure of K in G lies in H.
bool check_group_depth3_condition(const GroupTower &t);

} // namespace d3
