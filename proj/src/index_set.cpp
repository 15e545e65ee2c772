#include "kapranov/index_set.hpp"

#include <algorithm>
#include <sstream>

#include "kapranov/error.hpp"

namespace kapranov {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::AmbientMismatch: return "AmbientMismatch";
    case Errc::LabelOutOfRange: return "LabelOutOfRange";
    case Errc::SizeOutOfRange: return "SizeOutOfRange";
    case Errc::SameChart: return "SameChart";
    case Errc::ChartInSpan: return "ChartInSpan";
    case Errc::Precondition: return "Precondition";
    case Errc::NonIntegerGenus: return "NonIntegerGenus";
    case Errc::NegativeGenus: return "NegativeGenus";
    case Errc::ChartInconsistency: return "ChartInconsistency";
    case Errc::NonIntegerDegree: return "NonIntegerDegree";
    case Errc::NonPositiveDegree: return "NonPositiveDegree";
    case Errc::DegenerateSeed: return "DegenerateSeed";
    case Errc::DegenerateConfig: return "DegenerateConfig";
    case Errc::DegeneratePoint: return "DegeneratePoint";
    case Errc::IndeterminatePoint: return "IndeterminatePoint";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

namespace {

void check_ambient(int n) {
  if (n < 1 || n > kMaxMarkings)
    throw Error(Errc::LabelOutOfRange, "ambient n=" + std::to_string(n) + " unsupported");
}

std::uint32_t bit(int n, int label) {
  if (label < 1 || label > n)
    throw Error(Errc::LabelOutOfRange,
                "label " + std::to_string(label) + " outside 1.." + std::to_string(n));
  return std::uint32_t{1} << (label - 1);
}

std::uint32_t full_mask(int n) {
  return n >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
}

}  // namespace

IndexSet::IndexSet(int n) : n_(n) { check_ambient(n); }

IndexSet::IndexSet(int n, std::initializer_list<int> labels)
    : IndexSet(n, std::span<const int>(labels.begin(), labels.size())) {}

IndexSet::IndexSet(int n, std::span<const int> labels) : n_(n) {
  check_ambient(n);
  for (int l : labels) mask_ |= bit(n, l);
}

IndexSet IndexSet::from_mask(int n, std::uint32_t mask) {
  IndexSet s(n);
  if ((mask & ~full_mask(n)) != 0)
    throw Error(Errc::LabelOutOfRange, "mask has bits above n=" + std::to_string(n));
  s.mask_ = mask;
  return s;
}

IndexSet IndexSet::full(int n) { return from_mask(n, full_mask(n)); }

bool IndexSet::contains(int label) const noexcept {
  return label >= 1 && label <= n_ && ((mask_ >> (label - 1)) & 1u) != 0;
}

bool IndexSet::is_subset_of(const IndexSet& other) const {
  check_same_ambient(other);
  return (mask_ & ~other.mask_) == 0;
}

std::vector<int> IndexSet::members() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

int IndexSet::min_label() const { return mask_ == 0 ? 0 : std::countr_zero(mask_) + 1; }

IndexSet IndexSet::complement() const { return from_mask(n_, full_mask(n_) & ~mask_); }

IndexSet IndexSet::with(int label) const {
  IndexSet s = *this;
  s.mask_ |= bit(n_, label);
  return s;
}

IndexSet IndexSet::without(int label) const {
  IndexSet s = *this;
  s.mask_ &= ~bit(n_, label);
  return s;
}

IndexSet IndexSet::operator|(const IndexSet& o) const {
  check_same_ambient(o);
  return from_mask(n_, mask_ | o.mask_);
}

IndexSet IndexSet::operator&(const IndexSet& o) const {
  check_same_ambient(o);
  return from_mask(n_, mask_ & o.mask_);
}

IndexSet IndexSet::operator-(const IndexSet& o) const {
  check_same_ambient(o);
  return from_mask(n_, mask_ & ~o.mask_);
}

std::strong_ordering IndexSet::operator<=>(const IndexSet& o) const noexcept {
  if (n_ != o.n_) return n_ <=> o.n_;
  std::uint32_t a = mask_, b = o.mask_;
  while (a != 0 && b != 0) {
    int x = std::countr_zero(a), y = std::countr_zero(b);
    if (x != y) return x <=> y;
    a &= a - 1;
    b &= b - 1;
  }
  // One list is a prefix of the other; the shorter one sorts first.
  return (a != 0) <=> (b != 0);
}

std::string IndexSet::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int l : members()) {
    if (!first) os << ',';
    os << l;
    first = false;
  }
  os << '}';
  return os.str();
}

void IndexSet::check_same_ambient(const IndexSet& o) const {
  if (n_ != o.n_)
    throw Error(Errc::AmbientMismatch,
                "n=" + std::to_string(n_) + " vs n=" + std::to_string(o.n_));
}

Permutation::Permutation(int n) : images_(static_cast<std::size_t>(n)) {
  check_ambient(n);
  for (int i = 0; i < n; ++i) images_[static_cast<std::size_t>(i)] = i + 1;
}

Permutation::Permutation(int n, std::vector<int> images) : images_(std::move(images)) {
  check_ambient(n);
  if (static_cast<int>(images_.size()) != n)
    throw Error(Errc::SizeOutOfRange, "permutation needs exactly n images");
  std::uint32_t seen = 0;
  for (int v : images_) seen |= bit(n, v);
  if (seen != full_mask(n)) throw Error(Errc::Precondition, "images are not a bijection");
}

IndexSet Permutation::apply(const IndexSet& s) const {
  if (s.ambient() != ambient())
    throw Error(Errc::AmbientMismatch, "permutation and set ambients differ");
  std::uint32_t out = 0;
  for (std::uint32_t m = s.mask(); m != 0; m &= m - 1)
    out |= std::uint32_t{1} << (images_[static_cast<std::size_t>(std::countr_zero(m))] - 1);
  return IndexSet::from_mask(ambient(), out);
}

std::vector<IndexSet> Permutation::apply(std::span<const IndexSet> sets) const {
  std::vector<IndexSet> out;
  out.reserve(sets.size());
  for (const auto& s : sets) out.push_back(apply(s));
  return out;
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.ambient() != ambient()) throw Error(Errc::AmbientMismatch, "compose");
  std::vector<int> img(images_.size());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = (*this)(other.images_[i]);
  return Permutation(ambient(), std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<int> img(images_.size());
  for (std::size_t i = 0; i < img.size(); ++i)
    img[static_cast<std::size_t>(images_[i] - 1)] = static_cast<int>(i) + 1;
  return Permutation(ambient(), std::move(img));
}

}  // namespace kapranov
