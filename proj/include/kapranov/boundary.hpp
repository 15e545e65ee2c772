#pragma once

#include <compare>
#include <string>
#include <vector>

#include "kapranov/index_set.hpp"

namespace kapranov {

/// A boundary divisor E_I = E_{I*}, stored by its canonical side: the side
/// of the partition that contains label 1. Both sides have at least two
/// elements.
class BoundaryLabel {
 public:
  int ambient() const noexcept { return side_.ambient(); }
  const IndexSet& side() const noexcept { return side_; }
  IndexSet other_side() const { return side_.complement(); }
  /// The side of the partition that contains `label`.
  IndexSet side_containing(int label) const;
  /// min(|I|, |I*|).
  int folded_size() const;

  bool operator==(const BoundaryLabel&) const = default;
  auto operator<=>(const BoundaryLabel& o) const { return side_ <=> o.side_; }

  std::string to_string() const { return "E" + side_.to_string(); }

 private:
  friend BoundaryLabel boundary_label(const IndexSet& s);
  explicit BoundaryLabel(IndexSet side) : side_(side) {}
  IndexSet side_;
};

/// Label of E_I. Throws Errc::SizeOutOfRange unless 2 <= |I| <= n-2.
BoundaryLabel boundary_label(const IndexSet& s);

/// All boundary labels for n markings, in canonical-side order.
std::vector<BoundaryLabel> all_boundary_labels(int n);

/// The vital linear subspace V^i_J: span of the Kapranov points labelled by J
/// in the chart of marking i. Projective dimension |J| - 1.
class VitalSpace {
 public:
  VitalSpace(int chart, IndexSet span);

  int ambient() const noexcept { return span_.ambient(); }
  int chart() const noexcept { return chart_; }
  const IndexSet& span() const noexcept { return span_; }
  int dimension() const noexcept { return span_.size() - 1; }
  /// The boundary divisor whose image in this chart is this space.
  BoundaryLabel label() const { return boundary_label(span_.with(chart_)); }

  bool operator==(const VitalSpace&) const = default;
  std::string to_string() const;

 private:
  int chart_;
  IndexSet span_;
};

/// f_i(E_L): V^i_{J \ {i}} where J is the side of L containing i.
VitalSpace vital_of_boundary(const BoundaryLabel& label, int chart);

/// Image of V under the Cremona transformation into chart `target`, computed
/// with the two branch formulas (target inside or outside the span).
/// Throws Errc::SameChart when target == V.chart().
VitalSpace cremona_image(const VitalSpace& v, int target);

/// The same image read off the boundary label: vital_of_boundary(label(V), target).
VitalSpace cremona_image_via_label(const VitalSpace& v, int target);

}  // namespace kapranov
