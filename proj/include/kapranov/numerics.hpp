#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kapranov/boundary.hpp"

namespace kapranov {

/// Intersection numbers of a curve class with the boundary divisors (m) and
/// with the psi classes (d), plus its arithmetic genus.
struct CurveNumerics {
  int n = 0;
  std::map<BoundaryLabel, long> m;  // nonzero entries only
  std::optional<long> g;
  std::optional<std::map<int, long>> d;

  long m_of(const BoundaryLabel& label) const;
  long m_of(const IndexSet& side) const { return m_of(boundary_label(side)); }
  void set(const IndexSet& side, long value);
  bool operator==(const CurveNumerics&) const = default;
};

/// (|I|-2)(n-2-|I|)-2, the coefficient of m_I in the genus identity.
long genus_coefficient(int n, int size);

/// Solves the genus identity through every chart. Throws NonIntegerGenus,
/// ChartInconsistency or NegativeGenus.
long genus_from_m(const CurveNumerics& c);
/// (n-2) d_i = sum_{i in I}(n-2-|I|) m_I + 2-2g. Throws NonIntegerDegree or
/// NonPositiveDegree.
long degree_from_m(const CurveNumerics& c, long g, int chart);

/// Fills g and every d_i from m.
CurveNumerics complete_numerics(CurveNumerics c);

/// First pair i<j violating d_i + d_j = sum_{i,j in I}(n-2-|I|) m_I + 2-2g.
/// Requires g and d.
std::optional<std::pair<int, int>> check_pair_identity(const CurveNumerics& c);

struct IdentityFailure {
  std::string identity;  // "i", "ii" or "iii"
  std::vector<int> charts;
  mpz_class lhs, rhs;
};
/// Every identity instance that fails for the given g and d.
std::vector<IdentityFailure> check_identities(const CurveNumerics& c);

/// sum_k coeff_k * S_k = rhs, where S_k sums m over labels with
/// min(|I|,|I*|) = k.
struct LinearForm {
  int n = 0;
  std::vector<std::pair<int, long>> terms;  // (folded size, coefficient), nonzero
  long rhs = 0;
  bool operator==(const LinearForm&) const = default;
  std::string to_string() const;
};

/// Genus identity for fixed n and g, sizes folded, divided by its content
/// and with a positive leading coefficient.
LinearForm specialize_identity_iii(int n, long g);

/// True when n = 5 or every m_I with 3 <= |I| <= n-3 vanishes.
bool factors_through_point(const CurveNumerics& c);

/// m_I + sum over labels with chart in J, J strictly inside I, |J| >= 2.
/// `hyperplane` must contain the chart and have n-2 elements.
long degree_via_hyperplane(const CurveNumerics& c, const IndexSet& hyperplane, int chart);

/// m_I != 0 and m_J = 0, for |I| = n-3, I inside J, |J| = n-2.
bool restricts_to_curve_fibration(const CurveNumerics& c, const IndexSet& i_set, const IndexSet& j_set);

/// Genus of a complete-intersection curve in P^N: 2g-2 = prod(d)(sum(d)-N-1).
mpz_class ci_genus(int ambient_dim, const std::vector<long>& degrees);

}  // namespace kapranov
