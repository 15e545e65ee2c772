#include "kapranov/numerics.hpp"

#include <numeric>
#include <sstream>

#include "kapranov/error.hpp"

namespace kapranov {

namespace {

void check_chart(int n, int i) {
  if (i < 1 || i > n) throw Error(Errc::LabelOutOfRange, "chart " + std::to_string(i));
}

// sum over labels of weight(|side containing every chart|) * m.
template <typename W>
mpz_class weighted_sum(const CurveNumerics& c, std::initializer_list<int> charts, W weight) {
  mpz_class total = 0;
  for (const auto& [label, v] : c.m) {
    const IndexSet side = label.side_containing(*charts.begin());
    bool all = true;
    for (int k : charts) all = all && side.contains(k);
    if (all) total += mpz_class(weight(side.size())) * v;
  }
  return total;
}

mpz_class degree_rhs(const CurveNumerics& c, long g, std::initializer_list<int> charts) {
  return weighted_sum(c, charts, [&](int s) { return c.n - 2 - s; }) + 2 - 2 * g;
}

}  // namespace

long CurveNumerics::m_of(const BoundaryLabel& label) const {
  auto it = m.find(label);
  return it == m.end() ? 0 : it->second;
}

void CurveNumerics::set(const IndexSet& side, long value) {
  if (side.ambient() != n) throw Error(Errc::AmbientMismatch, "numerics label");
  if (value < 0) throw Error(Errc::Precondition, "m values are nonnegative");
  const BoundaryLabel label = boundary_label(side);
  if (value == 0)
    m.erase(label);
  else
    m.insert_or_assign(label, value);
}

long genus_coefficient(int n, int size) { return static_cast<long>(size - 2) * (n - 2 - size) - 2; }

long genus_from_m(const CurveNumerics& c) {
  std::optional<mpz_class> first;
  for (int i = 1; i <= c.n; ++i) {
    const mpz_class s = weighted_sum(c, {i}, [&](int size) { return genus_coefficient(c.n, size); });
    if (first && *first != s)
      throw Error(Errc::ChartInconsistency, "genus sum differs between chart 1 and chart " + std::to_string(i));
    first = s;
  }
  // (n-1)(2-2g) = -sum
  const mpz_class minus = -*first;
  if (minus % (c.n - 1) != 0)
    throw Error(Errc::NonIntegerGenus, "(n-1) does not divide " + minus.get_str());
  const mpz_class two_minus_2g = minus / (c.n - 1);
  if ((2 - two_minus_2g) % 2 != 0)
    throw Error(Errc::NonIntegerGenus, "2-2g = " + two_minus_2g.get_str() + " is odd");
  const mpz_class g = (2 - two_minus_2g) / 2;
  if (g < 0) throw Error(Errc::NegativeGenus, "g = " + g.get_str());
  return g.get_si();
}

long degree_from_m(const CurveNumerics& c, long g, int chart) {
  check_chart(c.n, chart);
  const mpz_class rhs = degree_rhs(c, g, {chart});
  if (rhs % (c.n - 2) != 0)
    throw Error(Errc::NonIntegerDegree, "(n-2) d_" + std::to_string(chart) + " = " + rhs.get_str());
  const mpz_class d = rhs / (c.n - 2);
  if (d <= 0) throw Error(Errc::NonPositiveDegree, "d_" + std::to_string(chart) + " = " + d.get_str());
  return d.get_si();
}

CurveNumerics complete_numerics(CurveNumerics c) {
  const long g = genus_from_m(c);
  std::map<int, long> d;
  for (int i = 1; i <= c.n; ++i) d[i] = degree_from_m(c, g, i);
  c.g = g;
  c.d = std::move(d);
  return c;
}

std::vector<IdentityFailure> check_identities(const CurveNumerics& c) {
  if (!c.g || !c.d) throw Error(Errc::Precondition, "identities need g and d");
  const long g = *c.g;
  auto d = [&](int i) -> mpz_class {
    auto it = c.d->find(i);
    if (it == c.d->end()) throw Error(Errc::Precondition, "missing d_" + std::to_string(i));
    return it->second;
  };
  std::vector<IdentityFailure> out;
  for (int i = 1; i <= c.n; ++i) {
    mpz_class lhs = (c.n - 2) * d(i);
    mpz_class rhs = degree_rhs(c, g, {i});
    if (lhs != rhs) out.push_back({"i", {i}, lhs, rhs});
  }
  for (int i = 1; i <= c.n; ++i)
    for (int j = i + 1; j <= c.n; ++j) {
      mpz_class lhs = d(i) + d(j);
      mpz_class rhs = degree_rhs(c, g, {i, j});
      if (lhs != rhs) out.push_back({"ii", {i, j}, lhs, rhs});
    }
  for (int i = 1; i <= c.n; ++i) {
    mpz_class lhs = weighted_sum(c, {i}, [&](int s) { return genus_coefficient(c.n, s); });
    mpz_class rhs = mpz_class(c.n - 1) * (2 * g - 2);
    if (lhs != rhs) out.push_back({"iii", {i}, lhs, rhs});
  }
  return out;
}

std::optional<std::pair<int, int>> check_pair_identity(const CurveNumerics& c) {
  for (const auto& f : check_identities(c))
    if (f.identity == "ii") return std::make_pair(f.charts[0], f.charts[1]);
  return std::nullopt;
}

std::string LinearForm::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [size, coeff] : terms) {
    if (coeff < 0)
      os << (first ? "-" : " - ");
    else if (!first)
      os << " + ";
    if (std::abs(coeff) != 1) os << std::abs(coeff) << '*';
    os << 'S' << size;
    first = false;
  }
  if (first) os << '0';
  os << " = " << rhs;
  return os.str();
}

LinearForm specialize_identity_iii(int n, long g) {
  if (n < 5) throw Error(Errc::SizeOutOfRange, "n >= 5 required");
  // sum -c(s) S_s = (n-1)(2-2g); c(s) = c(n-s), so each folded size appears once.
  LinearForm f{n, {}, static_cast<long>(n - 1) * (2 - 2 * g)};
  for (int s = 2; 2 * s <= n; ++s) {
    const long coeff = -genus_coefficient(n, s);
    if (coeff != 0) f.terms.emplace_back(s, coeff);
  }
  long content = std::abs(f.rhs);
  for (const auto& t : f.terms) content = std::gcd(content, std::abs(t.second));
  if (content > 1) {
    for (auto& t : f.terms) t.second /= content;
    f.rhs /= content;
  }
  if (!f.terms.empty() && f.terms.front().second < 0) {
    for (auto& t : f.terms) t.second = -t.second;
    f.rhs = -f.rhs;
  }
  return f;
}

bool factors_through_point(const CurveNumerics& c) {
  if (c.n == 5) return true;
  for (const auto& [label, v] : c.m)
    if (v != 0 && label.folded_size() >= 3) return false;
  return true;
}

long degree_via_hyperplane(const CurveNumerics& c, const IndexSet& hyperplane, int chart) {
  check_chart(c.n, chart);
  if (hyperplane.size() != c.n - 2 || !hyperplane.contains(chart))
    throw Error(Errc::Precondition, "need a set of size n-2 containing the chart");
  long total = c.m_of(hyperplane);
  const std::uint32_t rest = hyperplane.without(chart).mask();
  const std::uint32_t bit = std::uint32_t{1} << (chart - 1);
  for (std::uint32_t sub = (rest - 1) & rest; sub != 0; sub = (sub - 1) & rest)
    total += c.m_of(IndexSet::from_mask(c.n, sub | bit));
  return total;
}

bool restricts_to_curve_fibration(const CurveNumerics& c, const IndexSet& i_set, const IndexSet& j_set) {
  if (i_set.size() != c.n - 3 || j_set.size() != c.n - 2 || !i_set.is_subset_of(j_set))
    throw Error(Errc::Precondition, "need |I| = n-3, |J| = n-2 and I inside J");
  return c.m_of(i_set) != 0 && c.m_of(j_set) == 0;
}

mpz_class ci_genus(int ambient_dim, const std::vector<long>& degrees) {
  if (ambient_dim < 2) throw Error(Errc::NegativeGenus, "ambient dimension must be at least 2");
  if (static_cast<int>(degrees.size()) != ambient_dim - 1)
    throw Error(Errc::NegativeGenus, "a curve in P^N needs N-1 hypersurfaces");
  mpz_class prod = 1;
  mpz_class sum = 0;
  for (long d : degrees) {
    if (d <= 0) throw Error(Errc::NegativeGenus, "degrees must be positive");
    prod *= d;
    sum += d;
  }
  const mpz_class twice = prod * (sum - ambient_dim - 1) + 2;
  if (twice % 2 != 0 || twice < 0) throw Error(Errc::NegativeGenus, "2g = " + twice.get_str());
  return twice / 2;
}

}  // namespace kapranov
