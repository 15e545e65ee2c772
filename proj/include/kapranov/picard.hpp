#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kapranov/boundary.hpp"
#include "kapranov/index_set.hpp"

namespace kapranov {

inline constexpr int kMinPicardN = 5;
inline constexpr int kMaxPicardN = 16;

/// Canonical free basis of Pic for n markings in chart 1:
/// Psi_1 followed by E_I with 1 in I and 2 <= |I| <= n-3.
class PicardBasis {
 public:
  static const PicardBasis& of(int n);

  int ambient() const noexcept { return n_; }
  /// Number of E_I basis labels (rank - 1).
  std::size_t exceptional_count() const noexcept { return sides_.size(); }
  const std::vector<IndexSet>& sides() const noexcept { return sides_; }
  /// Position of the side in the E-block, or -1 when the side is not a basis label.
  int index_of(const IndexSet& side) const;

 private:
  explicit PicardBasis(int n);
  int n_;
  std::vector<IndexSet> sides_;
  std::vector<int> index_by_mask_;
};

/// 1 + sum_{s=1}^{n-4} C(n-1, s).
long picard_rank(int n);

/// Integer vector in the canonical basis. Arithmetic is exact (GMP).
class DivisorClass {
 public:
  static DivisorClass zero(int n);
  static DivisorClass psi1(int n);
  /// Basis vector E_I; `side` must contain 1 and have size 2..n-3.
  static DivisorClass basis_vector(const IndexSet& side);

  int ambient() const noexcept { return n_; }
  const mpz_class& psi1_coeff() const noexcept { return psi1_; }
  const std::vector<mpz_class>& e_coeffs() const noexcept { return e_; }
  mpz_class& psi1_coeff() noexcept { return psi1_; }
  mpz_class& e_coeff(const IndexSet& side);
  const mpz_class& e_coeff(const IndexSet& side) const;

  bool is_zero() const;

  DivisorClass& operator+=(const DivisorClass& o);
  DivisorClass& operator-=(const DivisorClass& o);
  DivisorClass& operator*=(const mpz_class& k);
  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator*(const mpz_class& k, DivisorClass a) { return a *= k; }
  DivisorClass operator-() const { return mpz_class(-1) * *this; }
  bool operator==(const DivisorClass& o) const;

  /// Human-readable, e.g. "2*Psi1 - E{1,3} - E{1,4}".
  std::string to_string() const;

 private:
  explicit DivisorClass(int n);
  void check_same(const DivisorClass& o) const;
  int n_;
  mpz_class psi1_;
  std::vector<mpz_class> e_;
};

/// Psi_i written in the canonical basis.
DivisorClass psi_class(int n, int i);
/// K = (2-n) Psi_1 + sum_{1 in I} (n-2-|I|) E_I. Requires n >= 5.
DivisorClass canonical_class(int n);
/// E_L in the basis. When the side through 1 has n-2 elements, E_L is the
/// strict transform of a vital hyperplane: Psi_1 minus every E over a vital
/// subspace it contains, each with multiplicity one.
DivisorClass boundary_class(const BoundaryLabel& label);

/// Accumulate coeff * E_I for any 2 <= |I| <= n-2 (either side).
void add_boundary(DivisorClass& acc, const IndexSet& side, const mpz_class& coeff);

enum class Relation {
  CanonicalViaPsi,      // (i)   K = (2-n)Psi_i + sum_{i in I}(n-2-|I|)E_I
  PsiPair,              // (ii)  Psi_i + Psi_j = sum_{i,j in I}(n-2-|I|)E_I - K
  Boundary,             // (iii) sum_{i in I}[(|I|-2)(n-2-|I|)-2]E_I - (n-1)K = 0
  PsiDifference,        // (n-2)(Psi_i - Psi_j) = sum_{i in I, j notin I}(n-2|I|)E_I
  PsiMultiple,          // (n-1)(n-2)Psi_i = sum_{i in I}(n-|I|)(n-|I|-1)E_I
  PsiHyperplane,        // Psi_i = sum_{i in I; h,j notin I} E_I
  PsiPullback,          // Psi_j = (n-3)Psi_i - sum_{i in I, j notin I}(n-2-|I|)E_I
};

inline constexpr Relation kAllRelations[] = {
    Relation::CanonicalViaPsi, Relation::PsiPair,     Relation::Boundary,
    Relation::PsiDifference,   Relation::PsiMultiple, Relation::PsiHyperplane,
    Relation::PsiPullback,
};

/// Short names used on the command line: i, ii, iii, eq1, eq3, psi_sum, pullback.
std::string_view relation_name(Relation r) noexcept;
Relation relation_from_name(std::string_view name);
/// Number of distinct charts the relation takes.
int relation_arity(Relation r) noexcept;

/// LHS - RHS of the relation in the canonical basis; the zero class when the
/// relation holds. Charts must be distinct labels in 1..n.
DivisorClass verify_relation(Relation r, int n, std::span<const int> charts);

struct RelationResidual {
  Relation kind;
  std::vector<int> charts;
  DivisorClass residual;
};

/// Every relation over every ordered tuple of distinct charts.
std::vector<RelationResidual> verify_all_relations(int n);

}  // namespace kapranov
