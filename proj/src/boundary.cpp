#include "kapranov/boundary.hpp"

#include <algorithm>

#include "kapranov/error.hpp"

namespace kapranov {

BoundaryLabel boundary_label(const IndexSet& s) {
  const int n = s.ambient();
  if (s.size() < 2 || s.size() > n - 2)
    throw Error(Errc::SizeOutOfRange,
                s.to_string() + " does not split " + std::to_string(n) + " markings 2|2");
  return BoundaryLabel(s.contains(1) ? s : s.complement());
}

std::vector<BoundaryLabel> all_boundary_labels(int n) {
  std::vector<BoundaryLabel> out;
  const std::uint32_t rest = n >= 32 ? 0 : (std::uint32_t{1} << (n - 1));
  for (std::uint32_t m = 0; m < rest; ++m) {
    // side = {1} u shifted(m)
    IndexSet side = IndexSet::from_mask(n, (m << 1) | 1u);
    if (side.size() >= 2 && side.size() <= n - 2) out.push_back(boundary_label(side));
  }
  std::sort(out.begin(), out.end());
  return out;
}

IndexSet BoundaryLabel::side_containing(int label) const {
  if (label < 1 || label > ambient())
    throw Error(Errc::LabelOutOfRange, "label " + std::to_string(label));
  return side_.contains(label) ? side_ : side_.complement();
}

int BoundaryLabel::folded_size() const {
  return std::min(side_.size(), ambient() - side_.size());
}

VitalSpace::VitalSpace(int chart, IndexSet span) : chart_(chart), span_(span) {
  const int n = span.ambient();
  if (chart < 1 || chart > n) throw Error(Errc::LabelOutOfRange, "chart " + std::to_string(chart));
  if (span.contains(chart))
    throw Error(Errc::ChartInSpan, "V^" + std::to_string(chart) + "_" + span.to_string());
  if (span.size() < 1 || span.size() > n - 3)
    throw Error(Errc::SizeOutOfRange, "vital span " + span.to_string() + " needs 1..n-3 points");
}

std::string VitalSpace::to_string() const {
  return "V^" + std::to_string(chart_) + "_" + span_.to_string();
}

VitalSpace vital_of_boundary(const BoundaryLabel& label, int chart) {
  return VitalSpace(chart, label.side_containing(chart).without(chart));
}

VitalSpace cremona_image(const VitalSpace& v, int target) {
  if (target == v.chart())
    throw Error(Errc::SameChart, "target chart equals source chart " + std::to_string(target));
  const IndexSet& span = v.span();
  if (span.contains(target)) return VitalSpace(target, span.without(target).with(v.chart()));
  return VitalSpace(target, span.with(v.chart()).complement().without(target));
}

VitalSpace cremona_image_via_label(const VitalSpace& v, int target) {
  if (target == v.chart())
    throw Error(Errc::SameChart, "target chart equals source chart " + std::to_string(target));
  return vital_of_boundary(v.label(), target);
}

}  // namespace kapranov
