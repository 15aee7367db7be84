#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <vector>

namespace ttg {

/// Set of small nonnegative indices stored in one machine word.
///
/// Atoms of a presentation and points of a finite space are both addressed
/// by index; the Tag parameter keeps the two index spaces from mixing.
template <typename Tag, typename Word>
class IndexSet {
public:
  using word_type = Word;

  constexpr IndexSet() = default;

  static constexpr IndexSet from_bits(Word bits) { return IndexSet(bits); }
  static constexpr IndexSet single(int i) { return IndexSet(Word{1} << i); }
  /// {0, 1, ..., n-1}
  static constexpr IndexSet first(int n) {
    return IndexSet(n >= capacity() ? ~Word{0} : (Word{1} << n) - Word{1});
  }
  static constexpr int capacity() { return std::numeric_limits<Word>::digits; }

  constexpr Word bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int i) const { return (bits_ >> i) & Word{1}; }
  constexpr bool subset_of(IndexSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool proper_subset_of(IndexSet o) const {
    return subset_of(o) && bits_ != o.bits_;
  }
  constexpr bool intersects(IndexSet o) const { return (bits_ & o.bits_) != 0; }

  constexpr IndexSet with(int i) const { return IndexSet(bits_ | (Word{1} << i)); }
  constexpr IndexSet without(int i) const { return IndexSet(bits_ & ~(Word{1} << i)); }

  friend constexpr IndexSet operator|(IndexSet a, IndexSet b) { return IndexSet(a.bits_ | b.bits_); }
  friend constexpr IndexSet operator&(IndexSet a, IndexSet b) { return IndexSet(a.bits_ & b.bits_); }
  friend constexpr IndexSet operator-(IndexSet a, IndexSet b) { return IndexSet(a.bits_ & ~b.bits_); }
  constexpr IndexSet& operator|=(IndexSet o) { bits_ |= o.bits_; return *this; }
  constexpr IndexSet& operator&=(IndexSet o) { bits_ &= o.bits_; return *this; }
  constexpr IndexSet& operator-=(IndexSet o) { bits_ &= ~o.bits_; return *this; }

  friend constexpr bool operator==(IndexSet a, IndexSet b) = default;

  /// Iterates the member indices in increasing order.
  class iterator {
  public:
    using value_type = int;
    constexpr iterator() = default;
    constexpr explicit iterator(Word rest) : rest_(rest) {}
    constexpr int operator*() const { return std::countr_zero(rest_); }
    constexpr iterator& operator++() {
      rest_ &= rest_ - Word{1};
      return *this;
    }
    friend constexpr bool operator==(iterator a, iterator b) = default;

  private:
    Word rest_ = 0;
  };

  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(Word{0}); }

  std::vector<int> indices() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (int i : *this) out.push_back(i);
    return out;
  }

private:
  constexpr explicit IndexSet(Word bits) : bits_(bits) {}
  Word bits_ = 0;
};

struct AtomTag {};
struct PointTag {};

using AtomSet = IndexSet<AtomTag, std::uint32_t>;
using PointSet = IndexSet<PointTag, std::uint64_t>;

/// An object up to the equivalence visible to thick ideals: the set of
/// its indecomposable summand classes.
using ObjectClass = AtomSet;

}  // namespace ttg
