#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace kapranov {

using Vec = std::vector<mpq_class>;
using Matrix = std::vector<Vec>;  // row-major

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(Matrix& a);
std::size_t rank(Matrix a);
/// Basis of {x : a x = 0}, one vector per free column.
Matrix nullspace(Matrix a, std::size_t cols);
mpq_class determinant(Matrix a);
/// Solves a x = b for square invertible a; throws Errc::DegenerateConfig otherwise.
Vec solve(Matrix a, const Vec& b);
Matrix inverse(const Matrix& a);
Vec mul(const Matrix& a, const Vec& x);

/// Scales a nonzero vector so its first nonzero entry is 1.
Vec normalized(Vec v);
bool proportional(const Vec& a, const Vec& b);

/// "p/q" or "p".
std::string to_string(const mpq_class& q);
mpq_class parse_rational(const std::string& s);

/// Linear subspace of k^{N+1}, i.e. a projective subspace of P^N, stored as
/// the rows of its reduced echelon basis. The zero subspace has no rows and
/// projective dimension -1.
class LinearSubspace {
 public:
  explicit LinearSubspace(int ambient_dim);
  static LinearSubspace span(int ambient_dim, const Matrix& vectors);

  int ambient_dim() const noexcept { return n_; }
  int dimension() const noexcept { return static_cast<int>(basis_.size()) - 1; }
  const Matrix& basis() const noexcept { return basis_; }

  bool contains(const Vec& point) const;
  bool contains(const LinearSubspace& other) const;
  LinearSubspace join(const LinearSubspace& o) const;
  LinearSubspace meet(const LinearSubspace& o) const;
  /// Linear forms vanishing on the subspace.
  Matrix annihilator() const;

  bool operator==(const LinearSubspace&) const = default;

 private:
  int n_;
  Matrix basis_;
};

}  // namespace kapranov
