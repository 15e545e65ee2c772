#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace kapranov {

/// Largest number of markings an IndexSet can describe.
inline constexpr int kMaxMarkings = 31;

/// A subset of the marking labels {1..n}. Bit (i-1) of the mask stands for
/// label i. The ambient n travels with the value; combining sets from
/// different ambients throws Errc::AmbientMismatch.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(int n);
  IndexSet(int n, std::initializer_list<int> labels);
  IndexSet(int n, std::span<const int> labels);

  static IndexSet from_mask(int n, std::uint32_t mask);
  static IndexSet full(int n);

  int ambient() const noexcept { return n_; }
  std::uint32_t mask() const noexcept { return mask_; }
  int size() const noexcept { return std::popcount(mask_); }
  bool empty() const noexcept { return mask_ == 0; }
  bool contains(int label) const noexcept;
  bool is_subset_of(const IndexSet& other) const;

  std::vector<int> members() const;
  int min_label() const;  // 0 when empty

  IndexSet complement() const;
  IndexSet with(int label) const;
  IndexSet without(int label) const;
  IndexSet operator|(const IndexSet& o) const;
  IndexSet operator&(const IndexSet& o) const;
  IndexSet operator-(const IndexSet& o) const;

  bool operator==(const IndexSet& o) const noexcept = default;

  /// Lexicographic order of the sorted member lists ({1,2} < {1,2,3} < {1,3}).
  /// Sets of different ambients are ordered by ambient first.
  std::strong_ordering operator<=>(const IndexSet& o) const noexcept;

  std::string to_string() const;

 private:
  void check_same_ambient(const IndexSet& o) const;

  int n_ = 0;
  std::uint32_t mask_ = 0;
};

/// Set complement {1..n} minus S.
inline IndexSet complement(const IndexSet& s) { return s.complement(); }

/// A bijection of {1..n}; images_[i-1] is the image of label i.
class Permutation {
 public:
  explicit Permutation(int n);  // identity
  Permutation(int n, std::vector<int> images);

  int ambient() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int label) const { return images_.at(static_cast<std::size_t>(label - 1)); }
  const std::vector<int>& images() const noexcept { return images_; }

  IndexSet apply(const IndexSet& s) const;
  std::vector<IndexSet> apply(std::span<const IndexSet> sets) const;

  /// (this * other)(x) = this(other(x)).
  Permutation compose(const Permutation& other) const;
  Permutation inverse() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

}  // namespace kapranov
