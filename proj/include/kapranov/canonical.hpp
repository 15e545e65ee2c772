#pragma once

#include <span>
#include <vector>

#include "kapranov/index_set.hpp"

namespace kapranov {

struct CanonicalForm {
  /// Relabelled sets, sorted ascending.
  std::vector<IndexSet> sets;
  /// Relabelling that produced `sets` from the input (old label -> new label).
  Permutation witness;
};

/// Lexicographically smallest sorted list obtainable by relabelling the
/// markings. Two families are relabelling-equivalent iff their canonical
/// forms are equal. Lists compare element-wise with IndexSet ordering.
///
/// The search assigns new labels 1, 2, ... in turn and bounds each partial
/// assignment by completing every set with the smallest still-free labels.
/// Old labels that lie in exactly the same sets are interchangeable, so only
/// one of them is tried per level.
CanonicalForm canonical_form(std::span<const IndexSet> sets);

/// Lexicographic comparison of two set lists.
bool set_list_less(std::span<const IndexSet> a, std::span<const IndexSet> b);

}  // namespace kapranov
