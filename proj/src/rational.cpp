#include "kapranov/rational.hpp"

#include "kapranov/error.hpp"

namespace kapranov {

std::vector<std::size_t> rref(Matrix& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size();
  const std::size_t cols = a.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const mpq_class lead = a[r][c];
    for (auto& x : a[r]) x /= lead;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const mpq_class f = a[i][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  return pivots;
}

std::size_t rank(Matrix a) { return rref(a).size(); }

Matrix nullspace(Matrix a, std::size_t cols) {
  const auto pivots = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  Matrix out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(cols, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][f];
    out.push_back(std::move(v));
  }
  return out;
}

mpq_class determinant(Matrix a) {
  const std::size_t n = a.size();
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      const mpq_class f = a[i][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[i][k] -= f * a[c][k];
    }
  }
  return det;
}

Vec solve(Matrix a, const Vec& b) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  const auto pivots = rref(a);
  if (pivots.size() != n || pivots.back() != n - 1)
    throw Error(Errc::DegenerateConfig, "singular linear system");
  Vec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

Matrix inverse(const Matrix& a) {
  const std::size_t n = a.size();
  Matrix aug = a;
  for (std::size_t i = 0; i < n; ++i) {
    aug[i].resize(2 * n, 0);
    aug[i][n + i] = 1;
  }
  const auto pivots = rref(aug);
  if (pivots.size() != n || pivots.back() != n - 1)
    throw Error(Errc::DegenerateConfig, "singular matrix");
  Matrix inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[i].assign(aug[i].begin() + static_cast<long>(n), aug[i].end());
  return inv;
}

Vec mul(const Matrix& a, const Vec& x) {
  Vec out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < x.size(); ++k) out[i] += a[i][k] * x[k];
  return out;
}

Vec normalized(Vec v) {
  for (const auto& x : v)
    if (x != 0) {
      const mpq_class lead = x;
      for (auto& y : v) y /= lead;
      return v;
    }
  throw Error(Errc::DegeneratePoint, "zero vector is not a projective point");
}

bool proportional(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return false;
  return rank(Matrix{a, b}) == 1;
}

std::string to_string(const mpq_class& q) { return q.get_str(); }

mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw Error(Errc::Parse, "bad rational '" + s + "'");
  q.canonicalize();
  return q;
}

LinearSubspace::LinearSubspace(int ambient_dim) : n_(ambient_dim) {}

LinearSubspace LinearSubspace::span(int ambient_dim, const Matrix& vectors) {
  LinearSubspace s(ambient_dim);
  for (const auto& v : vectors)
    if (static_cast<int>(v.size()) != ambient_dim + 1)
      throw Error(Errc::AmbientMismatch, "vector length does not match P^" + std::to_string(ambient_dim));
  s.basis_ = vectors;
  rref(s.basis_);
  return s;
}

bool LinearSubspace::contains(const Vec& point) const {
  Matrix m = basis_;
  m.push_back(point);
  return rank(std::move(m)) == basis_.size();
}

bool LinearSubspace::contains(const LinearSubspace& other) const {
  return join(other).dimension() == dimension();
}

LinearSubspace LinearSubspace::join(const LinearSubspace& o) const {
  if (o.n_ != n_) throw Error(Errc::AmbientMismatch, "join");
  Matrix m = basis_;
  m.insert(m.end(), o.basis_.begin(), o.basis_.end());
  return span(n_, m);
}

Matrix LinearSubspace::annihilator() const {
  return nullspace(basis_, static_cast<std::size_t>(n_ + 1));
}

LinearSubspace LinearSubspace::meet(const LinearSubspace& o) const {
  if (o.n_ != n_) throw Error(Errc::AmbientMismatch, "meet");
  Matrix eqs = annihilator();
  Matrix more = o.annihilator();
  eqs.insert(eqs.end(), more.begin(), more.end());
  return span(n_, nullspace(std::move(eqs), static_cast<std::size_t>(n_ + 1)));
}

}  // namespace kapranov
