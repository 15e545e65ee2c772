#include "kapranov/picard.hpp"

#include <array>
#include <functional>
#include <memory>
#include <mutex>
#include <sstream>

#include "kapranov/error.hpp"

namespace kapranov {

namespace {

void check_n(int n) {
  if (n < kMinPicardN || n > kMaxPicardN)
    throw Error(Errc::SizeOutOfRange, "Picard computations need 5 <= n <= 16, got n=" +
                                          std::to_string(n));
}

void check_chart(int n, int i) {
  if (i < 1 || i > n) throw Error(Errc::LabelOutOfRange, "chart " + std::to_string(i));
}

// Calls f(I) for every I with required ⊆ I, I ∩ forbidden = ∅, 2 <= |I| <= n-2.
void for_each_boundary_set(int n, std::uint32_t required, std::uint32_t forbidden,
                           const std::function<void(const IndexSet&)>& f) {
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  const std::uint32_t free = full & ~required & ~forbidden;
  // Enumerate submasks of `free`.
  std::uint32_t sub = free;
  while (true) {
    const std::uint32_t m = sub | required;
    const int size = std::popcount(m);
    if (size >= 2 && size <= n - 2) f(IndexSet::from_mask(n, m));
    if (sub == 0) break;
    sub = (sub - 1) & free;
  }
}

}  // namespace

PicardBasis::PicardBasis(int n) : n_(n), index_by_mask_(std::size_t{1} << n, -1) {
  for (const auto& label : all_boundary_labels(n))
    if (label.side().size() <= n - 3) sides_.push_back(label.side());
  for (std::size_t k = 0; k < sides_.size(); ++k)
    index_by_mask_[sides_[k].mask()] = static_cast<int>(k);
}

const PicardBasis& PicardBasis::of(int n) {
  check_n(n);
  static std::array<std::once_flag, kMaxPicardN + 1> flags;
  static std::array<std::unique_ptr<PicardBasis>, kMaxPicardN + 1> cache;
  const auto slot = static_cast<std::size_t>(n);
  std::call_once(flags[slot], [&] { cache[slot].reset(new PicardBasis(n)); });
  return *cache[slot];
}

int PicardBasis::index_of(const IndexSet& side) const {
  if (side.ambient() != n_) throw Error(Errc::AmbientMismatch, "basis lookup");
  return index_by_mask_[side.mask()];
}

long picard_rank(int n) {
  check_n(n);
  long rank = 1;
  long binom = 1;  // C(n-1, s)
  for (int s = 1; s <= n - 4; ++s) {
    binom = binom * (n - s) / s;
    rank += binom;
  }
  return rank;
}

DivisorClass::DivisorClass(int n) : n_(n), psi1_(0), e_(PicardBasis::of(n).exceptional_count()) {}

DivisorClass DivisorClass::zero(int n) { return DivisorClass(n); }

DivisorClass DivisorClass::psi1(int n) {
  DivisorClass d(n);
  d.psi1_ = 1;
  return d;
}

DivisorClass DivisorClass::basis_vector(const IndexSet& side) {
  DivisorClass d(side.ambient());
  d.e_coeff(side) = 1;
  return d;
}

mpz_class& DivisorClass::e_coeff(const IndexSet& side) {
  const int k = PicardBasis::of(n_).index_of(side);
  if (k < 0) throw Error(Errc::Precondition, side.to_string() + " is not a basis label");
  return e_[static_cast<std::size_t>(k)];
}

const mpz_class& DivisorClass::e_coeff(const IndexSet& side) const {
  return const_cast<DivisorClass*>(this)->e_coeff(side);
}

bool DivisorClass::is_zero() const {
  if (psi1_ != 0) return false;
  for (const auto& c : e_)
    if (c != 0) return false;
  return true;
}

void DivisorClass::check_same(const DivisorClass& o) const {
  if (n_ != o.n_) throw Error(Errc::AmbientMismatch, "divisor classes on different n");
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& o) {
  check_same(o);
  psi1_ += o.psi1_;
  for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& o) {
  check_same(o);
  psi1_ -= o.psi1_;
  for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
  return *this;
}

DivisorClass& DivisorClass::operator*=(const mpz_class& k) {
  psi1_ *= k;
  for (auto& c : e_) c *= k;
  return *this;
}

bool DivisorClass::operator==(const DivisorClass& o) const {
  return n_ == o.n_ && psi1_ == o.psi1_ && e_ == o.e_;
}

std::string DivisorClass::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto term = [&](const mpz_class& c, const std::string& name) {
    if (c == 0) return;
    if (c < 0)
      os << (first ? "-" : " - ");
    else if (!first)
      os << " + ";
    mpz_class a = abs(c);
    if (a != 1) os << a.get_str() << '*';
    os << name;
    first = false;
  };
  term(psi1_, "Psi1");
  const auto& sides = PicardBasis::of(n_).sides();
  for (std::size_t k = 0; k < e_.size(); ++k) term(e_[k], "E" + sides[k].to_string());
  if (first) os << '0';
  return os.str();
}

void add_boundary(DivisorClass& acc, const IndexSet& s, const mpz_class& coeff) {
  if (coeff == 0) return;
  const int n = acc.ambient();
  const IndexSet side = boundary_label(s).side();
  if (side.size() <= n - 3) {
    acc.e_coeff(side) += coeff;
    return;
  }
  // Strict transform of the vital hyperplane spanned by side \ {1} in chart 1.
  acc.psi1_coeff() += coeff;
  const std::uint32_t rest = side.without(1).mask();
  for (std::uint32_t sub = (rest - 1) & rest; sub != 0; sub = (sub - 1) & rest)
    acc.e_coeff(IndexSet::from_mask(n, sub | 1u)) -= coeff;
}

DivisorClass boundary_class(const BoundaryLabel& label) {
  check_n(label.ambient());
  DivisorClass d = DivisorClass::zero(label.ambient());
  add_boundary(d, label.side(), 1);
  return d;
}

DivisorClass psi_class(int n, int i) {
  check_n(n);
  check_chart(n, i);
  if (i == 1) return DivisorClass::psi1(n);
  DivisorClass d = mpz_class(n - 3) * DivisorClass::psi1(n);
  for_each_boundary_set(n, 1u, std::uint32_t{1} << (i - 1), [&](const IndexSet& s) {
    add_boundary(d, s, -(n - 2 - s.size()));
  });
  return d;
}

DivisorClass canonical_class(int n) {
  check_n(n);
  DivisorClass d = mpz_class(2 - n) * DivisorClass::psi1(n);
  for_each_boundary_set(n, 1u, 0u, [&](const IndexSet& s) { add_boundary(d, s, n - 2 - s.size()); });
  return d;
}

std::string_view relation_name(Relation r) noexcept {
  switch (r) {
    case Relation::CanonicalViaPsi: return "i";
    case Relation::PsiPair: return "ii";
    case Relation::Boundary: return "iii";
    case Relation::PsiDifference: return "eq1";
    case Relation::PsiMultiple: return "eq3";
    case Relation::PsiHyperplane: return "psi_sum";
    case Relation::PsiPullback: return "pullback";
  }
  return "?";
}

Relation relation_from_name(std::string_view name) {
  for (Relation r : kAllRelations)
    if (relation_name(r) == name) return r;
  throw Error(Errc::Parse, "unknown relation '" + std::string(name) + "'");
}

int relation_arity(Relation r) noexcept {
  switch (r) {
    case Relation::CanonicalViaPsi:
    case Relation::Boundary:
    case Relation::PsiMultiple: return 1;
    case Relation::PsiPair:
    case Relation::PsiDifference:
    case Relation::PsiPullback: return 2;
    case Relation::PsiHyperplane: return 3;
  }
  return 0;
}

DivisorClass verify_relation(Relation r, int n, std::span<const int> charts) {
  check_n(n);
  if (static_cast<int>(charts.size()) != relation_arity(r))
    throw Error(Errc::Precondition, "relation " + std::string(relation_name(r)) + " takes " +
                                        std::to_string(relation_arity(r)) + " charts");
  std::uint32_t seen = 0;
  for (int c : charts) {
    check_chart(n, c);
    const std::uint32_t b = std::uint32_t{1} << (c - 1);
    if (seen & b) throw Error(Errc::SameChart, "charts must be distinct");
    seen |= b;
  }
  auto bit = [](int label) { return std::uint32_t{1} << (label - 1); };
  const int i = charts[0];
  const DivisorClass K = canonical_class(n);
  DivisorClass lhs = DivisorClass::zero(n);
  DivisorClass rhs = DivisorClass::zero(n);

  switch (r) {
    case Relation::CanonicalViaPsi:
      lhs = K;
      rhs = mpz_class(2 - n) * psi_class(n, i);
      for_each_boundary_set(n, bit(i), 0, [&](const IndexSet& s) { add_boundary(rhs, s, n - 2 - s.size()); });
      break;
    case Relation::PsiPair: {
      const int j = charts[1];
      lhs = psi_class(n, i) + psi_class(n, j);
      rhs = -K;
      for_each_boundary_set(n, bit(i) | bit(j), 0,
                            [&](const IndexSet& s) { add_boundary(rhs, s, n - 2 - s.size()); });
      break;
    }
    case Relation::Boundary:
      for_each_boundary_set(n, bit(i), 0, [&](const IndexSet& s) {
        const int m = s.size();
        add_boundary(lhs, s, (m - 2) * (n - 2 - m) - 2);
      });
      lhs -= mpz_class(n - 1) * K;
      break;
    case Relation::PsiDifference: {
      const int j = charts[1];
      lhs = mpz_class(n - 2) * (psi_class(n, i) - psi_class(n, j));
      for_each_boundary_set(n, bit(i), bit(j), [&](const IndexSet& s) { add_boundary(rhs, s, n - 2 * s.size()); });
      break;
    }
    case Relation::PsiMultiple:
      lhs = mpz_class((n - 1) * (n - 2)) * psi_class(n, i);
      for_each_boundary_set(n, bit(i), 0, [&](const IndexSet& s) {
        const int m = s.size();
        add_boundary(rhs, s, (n - m) * (n - m - 1));
      });
      break;
    case Relation::PsiHyperplane:
      lhs = psi_class(n, i);
      for_each_boundary_set(n, bit(i), bit(charts[1]) | bit(charts[2]),
                            [&](const IndexSet& s) { add_boundary(rhs, s, 1); });
      break;
    case Relation::PsiPullback: {
      const int j = charts[1];
      lhs = psi_class(n, j);
      rhs = mpz_class(n - 3) * psi_class(n, i);
      for_each_boundary_set(n, bit(i), bit(j), [&](const IndexSet& s) { add_boundary(rhs, s, -(n - 2 - s.size())); });
      break;
    }
  }
  return lhs - rhs;
}

std::vector<RelationResidual> verify_all_relations(int n) {
  check_n(n);
  std::vector<RelationResidual> out;
  for (Relation r : kAllRelations) {
    const int arity = relation_arity(r);
    std::vector<int> tuple(static_cast<std::size_t>(arity));
    std::function<void(int, std::uint32_t)> rec = [&](int pos, std::uint32_t used) {
      if (pos == arity) {
        out.push_back({r, tuple, verify_relation(r, n, tuple)});
        return;
      }
      for (int c = 1; c <= n; ++c) {
        if (used & (std::uint32_t{1} << (c - 1))) continue;
        tuple[static_cast<std::size_t>(pos)] = c;
        rec(pos + 1, used | (std::uint32_t{1} << (c - 1)));
      }
    };
    rec(0, 0);
  }
  return out;
}

}  // namespace kapranov
