#include "kapranov/canonical.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>

#include "kapranov/error.hpp"

namespace kapranov {

bool set_list_less(std::span<const IndexSet> a, std::span<const IndexSet> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

struct Search {
  int n = 0;
  std::vector<std::uint32_t> old_masks;   // input sets
  std::vector<std::uint64_t> signature;   // per old label (0-based): which sets contain it

  std::vector<int> assignment;            // new label (0-based) -> old label (0-based)
  std::uint32_t used_old = 0;

  std::optional<std::vector<IndexSet>> best;
  std::vector<int> best_assignment;

  // Image masks restricted to the first `depth` new labels, plus the count of
  // members still unassigned.
  std::vector<IndexSet> bound(const std::vector<std::uint32_t>& known,
                              const std::vector<int>& remaining, int depth) const {
    std::vector<IndexSet> out;
    out.reserve(known.size());
    for (std::size_t s = 0; s < known.size(); ++s) {
      std::uint32_t fill = remaining[s] == 0
                               ? 0u
                               : ((std::uint32_t{1} << remaining[s]) - 1) << depth;
      out.push_back(IndexSet::from_mask(n, known[s] | fill));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  void descend(std::vector<std::uint32_t>& known, std::vector<int>& remaining, int depth) {
    if (depth == n) {
      auto leaf = bound(known, remaining, depth);
      if (!best || set_list_less(leaf, *best)) {
        best = std::move(leaf);
        best_assignment = assignment;
      }
      return;
    }

    struct Child {
      int old_label;
      std::vector<IndexSet> lower;
    };
    std::vector<Child> children;
    std::vector<std::uint64_t> tried;
    for (int old = 0; old < n; ++old) {
      if (used_old & (std::uint32_t{1} << old)) continue;
      if (std::find(tried.begin(), tried.end(), signature[static_cast<std::size_t>(old)]) != tried.end())
        continue;
      tried.push_back(signature[static_cast<std::size_t>(old)]);

      for (std::size_t s = 0; s < known.size(); ++s)
        if (old_masks[s] & (std::uint32_t{1} << old)) {
          known[s] |= std::uint32_t{1} << depth;
          --remaining[s];
        }
      children.push_back({old, bound(known, remaining, depth + 1)});
      for (std::size_t s = 0; s < known.size(); ++s)
        if (old_masks[s] & (std::uint32_t{1} << old)) {
          known[s] &= ~(std::uint32_t{1} << depth);
          ++remaining[s];
        }
    }
    std::stable_sort(children.begin(), children.end(), [](const Child& a, const Child& b) {
      return set_list_less(a.lower, b.lower);
    });

    for (const auto& child : children) {
      if (best && set_list_less(*best, child.lower)) break;
      const int old = child.old_label;
      for (std::size_t s = 0; s < known.size(); ++s)
        if (old_masks[s] & (std::uint32_t{1} << old)) {
          known[s] |= std::uint32_t{1} << depth;
          --remaining[s];
        }
      used_old |= std::uint32_t{1} << old;
      assignment[static_cast<std::size_t>(depth)] = old;

      descend(known, remaining, depth + 1);

      used_old &= ~(std::uint32_t{1} << old);
      for (std::size_t s = 0; s < known.size(); ++s)
        if (old_masks[s] & (std::uint32_t{1} << old)) {
          known[s] &= ~(std::uint32_t{1} << depth);
          ++remaining[s];
        }
    }
  }
};

}  // namespace

CanonicalForm canonical_form(std::span<const IndexSet> sets) {
  if (sets.empty()) throw Error(Errc::Precondition, "canonical_form of an empty list");
  const int n = sets.front().ambient();
  if (sets.size() > 64) throw Error(Errc::SizeOutOfRange, "at most 64 sets supported");

  Search search;
  search.n = n;
  search.signature.assign(static_cast<std::size_t>(n), 0);
  for (std::size_t s = 0; s < sets.size(); ++s) {
    if (sets[s].ambient() != n) throw Error(Errc::AmbientMismatch, "canonical_form");
    search.old_masks.push_back(sets[s].mask());
    for (int l : sets[s].members())
      search.signature[static_cast<std::size_t>(l - 1)] |= std::uint64_t{1} << s;
  }
  search.assignment.assign(static_cast<std::size_t>(n), -1);

  std::vector<std::uint32_t> known(sets.size(), 0);
  std::vector<int> remaining;
  for (const auto& s : sets) remaining.push_back(s.size());
  search.descend(known, remaining, 0);

  std::vector<int> images(static_cast<std::size_t>(n));
  for (int neu = 0; neu < n; ++neu)
    images[static_cast<std::size_t>(search.best_assignment[static_cast<std::size_t>(neu)])] = neu + 1;
  return {std::move(*search.best), Permutation(n, std::move(images))};
}

}  // namespace kapranov
