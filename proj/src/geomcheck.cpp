#include "kapranov/geomcheck.hpp"

#include <algorithm>
#include <bit>
#include <future>

#include "kapranov/error.hpp"

namespace kapranov {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

const Vec& RationalConfig::point(int label) const {
  auto it = std::lower_bound(labels.begin(), labels.end(), label);
  if (it == labels.end() || *it != label)
    throw Error(Errc::LabelOutOfRange, "no point labelled " + std::to_string(label));
  return points[static_cast<std::size_t>(it - labels.begin())];
}

std::vector<std::vector<long>> default_coordinates(int n, std::uint64_t subseed, int) {
  std::mt19937_64 rng(subseed);
  std::uniform_int_distribution<long> dist(-1000, 1000);
  std::vector<std::vector<long>> rows(static_cast<std::size_t>(n - 1), std::vector<long>(static_cast<std::size_t>(n - 2)));
  for (auto& row : rows)
    for (auto& x : row) x = dist(rng);
  return rows;
}

namespace {

void check_config_args(int n, int chart) {
  if (n < 5 || n > kMaxMarkings) throw Error(Errc::SizeOutOfRange, "configs need 5 <= n <= 31");
  if (chart < 1 || chart > n) throw Error(Errc::LabelOutOfRange, "chart " + std::to_string(chart));
}

std::vector<int> labels_without(int n, int chart) {
  std::vector<int> out;
  for (int l = 1; l <= n; ++l)
    if (l != chart) out.push_back(l);
  return out;
}

// Every choice of `size` rows is linearly independent.
bool subsets_independent(const Matrix& rows, std::size_t size, std::size_t must_include = SIZE_MAX) {
  const std::size_t count = rows.size();
  std::vector<bool> pick(count, false);
  std::fill(pick.end() - static_cast<long>(size), pick.end(), true);
  do {
    if (must_include != SIZE_MAX && !pick[must_include]) continue;
    Matrix sub;
    for (std::size_t i = 0; i < count; ++i)
      if (pick[i]) sub.push_back(rows[i]);
    if (rank(std::move(sub)) != size) return false;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return true;
}

Matrix points_of(const RationalConfig& cfg, const IndexSet& j) {
  Matrix out;
  for (int l : j.members()) out.push_back(cfg.point(l));
  return out;
}

std::uint32_t label_mask(const RationalConfig& cfg) {
  return IndexSet::full(cfg.n).without(cfg.chart).mask();
}

}  // namespace

bool in_general_position(const Matrix& points) {
  if (points.empty()) return true;
  const std::size_t dim = points.front().size();
  if (points.size() < dim) return rank(points) == points.size();
  return subsets_independent(points, dim);
}

RationalConfig config_from_points(int n, int chart, const Matrix& points) {
  check_config_args(n, chart);
  if (points.size() != static_cast<std::size_t>(n - 1))
    throw Error(Errc::DegenerateConfig, "need n-1 points");
  for (const auto& p : points)
    if (p.size() != static_cast<std::size_t>(n - 2))
      throw Error(Errc::DegenerateConfig, "points of P^{n-3} have n-2 coordinates");
  if (!in_general_position(points)) throw Error(Errc::DegenerateConfig, "points are not in general position");
  RationalConfig cfg;
  cfg.n = n;
  cfg.chart = chart;
  cfg.labels = labels_without(n, chart);
  cfg.points = points;
  return cfg;
}

RationalConfig random_config(int n, int chart, std::uint64_t seed, const CoordinateSource& source) {
  check_config_args(n, chart);
  const std::uint64_t salt = splitmix64(static_cast<std::uint64_t>(n) * 64 + static_cast<std::uint64_t>(chart));
  for (int attempt = 0; attempt < kMaxConfigAttempts; ++attempt) {
    const std::uint64_t subseed = splitmix64(seed + static_cast<std::uint64_t>(attempt)) ^ salt;
    const auto raw = source(n, subseed, attempt);
    Matrix points;
    for (const auto& row : raw) {
      Vec p;
      for (long x : row) p.emplace_back(x);
      points.push_back(std::move(p));
    }
    try {
      RationalConfig cfg = config_from_points(n, chart, points);
      cfg.seed = seed;
      cfg.attempts = attempt + 1;
      return cfg;
    } catch (const Error& e) {
      if (e.code() != Errc::DegenerateConfig) throw;
    }
  }
  throw Error(Errc::DegenerateSeed, "no general configuration after " + std::to_string(kMaxConfigAttempts) +
                                        " attempts for seed " + std::to_string(seed));
}

LinearSubspace vital_span(const RationalConfig& cfg, const IndexSet& j) {
  if (j.ambient() != cfg.n) throw Error(Errc::AmbientMismatch, "vital_span");
  if (j.contains(cfg.chart)) throw Error(Errc::ChartInSpan, "span contains the chart label");
  return LinearSubspace::span(cfg.dim(), points_of(cfg, j));
}

Vec random_point(int dim, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> dist(-1000, 1000);
  Vec v;
  for (int k = 0; k <= dim; ++k) v.emplace_back(dist(rng));
  return v;
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(splitmix64(splitmix64(seed) + trial));
}

LinearSubspace linear_fiber(const RationalConfig& cfg, const ForgetfulMorphism& m, const Vec& point) {
  if (m.n != cfg.n) throw Error(Errc::AmbientMismatch, "morphism and config");
  LinearSubspace fiber = LinearSubspace::span(cfg.dim(), {point});
  bool first = true;
  for (const auto& s : m.forgotten) {
    if (s.contains(cfg.chart)) throw Error(Errc::ChartInSpan, "set " + s.to_string() + " contains the chart");
    Matrix gens = points_of(cfg, s);
    gens.push_back(point);
    LinearSubspace piece = LinearSubspace::span(cfg.dim(), gens);
    fiber = first ? piece : fiber.meet(piece);
    first = false;
  }
  return fiber;
}

namespace {

int star_trial(const RationalConfig& cfg, const ForgetfulMorphism& m, int trial) {
  auto rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(trial));
  const Vec y = random_point(cfg.dim(), rng);
  const Vec x = random_point(cfg.dim(), rng);
  std::optional<LinearSubspace> fiber;
  for (const auto& s : m.forgotten) {
    Matrix gens = points_of(cfg, s.without(cfg.chart));
    if (s.contains(cfg.chart)) gens.push_back(x);
    gens.push_back(y);
    LinearSubspace piece = LinearSubspace::span(cfg.dim(), gens);
    fiber = fiber ? fiber->meet(piece) : piece;
  }
  return fiber->dimension();
}

}  // namespace

StarRankReport star_rank_check(const RationalConfig& cfg, const ForgetfulMorphism& m, int trials,
                               unsigned threads) {
  if (m.n != cfg.n) throw Error(Errc::AmbientMismatch, "morphism and config");
  if (!validate(m).empty()) throw Error(Errc::Precondition, "invalid morphism");
  if (trials < 1) throw Error(Errc::Precondition, "at least one trial");
  StarRankReport r;
  r.h = m.fiber_dim();
  r.trial_dims.assign(static_cast<std::size_t>(trials), 0);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
  if (threads == 1) {
    for (int t = 0; t < trials; ++t) r.trial_dims[static_cast<std::size_t>(t)] = star_trial(cfg, m, t);
  } else {
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < threads; ++w)
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (int t = static_cast<int>(w); t < trials; t += static_cast<int>(threads))
          r.trial_dims[static_cast<std::size_t>(t)] = star_trial(cfg, m, t);
      }));
    for (auto& j : jobs) j.get();
  }
  r.min_dim = *std::min_element(r.trial_dims.begin(), r.trial_dims.end());
  r.verdict = r.min_dim == r.h;
  return r;
}

Frame make_frame(const RationalConfig& cfg, int unit) {
  Frame f;
  f.unit = unit;
  for (int l : cfg.labels)
    if (l != unit) f.simplex.push_back(l);
  if (f.simplex.size() == cfg.labels.size()) throw Error(Errc::LabelOutOfRange, "unit label not in config");
  const std::size_t d1 = static_cast<std::size_t>(cfg.dim() + 1);
  Matrix cols(d1, Vec(d1));
  for (std::size_t k = 0; k < d1; ++k) {
    const Vec& p = cfg.point(f.simplex[k]);
    for (std::size_t r = 0; r < d1; ++r) cols[r][k] = p[r];
  }
  const Vec lambda = solve(cols, cfg.point(unit));
  for (std::size_t k = 0; k < d1; ++k) {
    if (lambda[k] == 0) throw Error(Errc::DegenerateConfig, "unit point lies on a simplex face");
    for (std::size_t r = 0; r < d1; ++r) cols[r][k] *= lambda[k];
  }
  f.to_world = cols;
  f.to_frame = inverse(cols);
  return f;
}

Vec RNC::at(const mpq_class& s, const mpq_class& t) const {
  Vec out;
  for (const auto& form : coords) {
    mpq_class v = 0;
    for (std::size_t e = 0; e < form.size(); ++e) {
      mpq_class term = form[e];
      for (std::size_t k = 0; k < form.size() - 1 - e; ++k) term *= s;
      for (std::size_t k = 0; k < e; ++k) term *= t;
      v += term;
    }
    out.push_back(v);
  }
  return out;
}

namespace {

BinaryForm multiply(const BinaryForm& a, const BinaryForm& b) {
  BinaryForm out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

using Poly = std::vector<mpq_class>;  // coefficient of t^e

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mod(Poly a, const Poly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const mpq_class f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= f * b[k];
    trim(a);
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

int distinct_roots(Poly p) {
  trim(p);
  if (p.size() <= 1) return 0;
  Poly dp;
  for (std::size_t e = 1; e < p.size(); ++e) dp.push_back(p[e] * static_cast<long>(e));
  const Poly g = poly_gcd(p, dp);
  return static_cast<int>(p.size() - 1) - static_cast<int>(g.size() - 1);
}

}  // namespace

RNC rnc_through(const RationalConfig& cfg, const Vec& extra) {
  if (extra.size() != static_cast<std::size_t>(cfg.dim() + 1))
    throw Error(Errc::AmbientMismatch, "extra point has the wrong length");
  Matrix all = cfg.points;
  all.push_back(extra);
  if (!subsets_independent(all, static_cast<std::size_t>(cfg.dim() + 1), all.size() - 1))
    throw Error(Errc::DegeneratePoint, "extra point is not in general position with the configuration");

  const Frame f = make_frame(cfg, cfg.labels.back());
  const Vec z = f.coords(extra);
  const std::size_t d1 = z.size();
  Vec a(d1);
  for (std::size_t k = 0; k < d1; ++k) a[k] = -1 / z[k];

  RNC c;
  c.degree = static_cast<int>(d1) - 1;
  c.coords.assign(d1, BinaryForm(d1, 0));
  for (std::size_t k = 0; k < d1; ++k) {
    BinaryForm xk{1};
    for (std::size_t l = 0; l < d1; ++l)
      if (l != k) xk = multiply(xk, BinaryForm{-a[l], 1});
    for (std::size_t r = 0; r < d1; ++r)
      for (std::size_t e = 0; e < d1; ++e) c.coords[r][e] += f.to_world[r][k] * xk[e];
  }
  for (std::size_t k = 0; k < d1; ++k) c.params.push_back({f.simplex[k], {1, a[k]}});
  c.params.push_back({f.unit, {0, 1}});
  c.params.push_back({0, {1, 0}});
  return c;
}

RncCheck check_rnc(const RationalConfig& cfg, const RNC& c, const Vec& extra, std::mt19937_64& rng) {
  RncCheck out;
  out.incidence = true;
  for (const auto& [label, st] : c.params) {
    const Vec& target = label == 0 ? extra : cfg.point(label);
    out.incidence = out.incidence && proportional(c.at(st.first, st.second), target);
  }
  out.spans = rank(c.coords) == static_cast<std::size_t>(c.degree + 1);
  const Vec h = random_point(c.degree, rng);
  Poly form(static_cast<std::size_t>(c.degree + 1), 0);
  for (std::size_t r = 0; r < c.coords.size(); ++r)
    for (std::size_t e = 0; e < form.size(); ++e) form[e] += h[r] * c.coords[r][e];
  // Dehomogenize at s = 1; a drop in degree is a root at s = 0.
  Poly p = form;
  trim(p);
  const int finite = p.empty() ? 0 : static_cast<int>(p.size()) - 1;
  const int at_infinity = c.degree - finite;
  out.hyperplane_roots = distinct_roots(p) + (at_infinity > 0 ? 1 : 0);
  if (p.empty()) out.hyperplane_roots = 0;
  return out;
}

Vec cremona_sample(const RationalConfig& cfg, int target, const Vec& point) {
  const Frame f = make_frame(cfg, target);
  Vec z = f.coords(point);
  for (auto& x : z) {
    if (x == 0) throw Error(Errc::IndeterminatePoint, "point has a vanishing frame coordinate");
    x = 1 / x;
  }
  return normalized(f.world(z));
}

std::vector<IndexSet> vital_hyperplanes_containing(const RationalConfig& cfg, const LinearSubspace& l) {
  std::vector<IndexSet> out;
  const std::uint32_t labels = label_mask(cfg);
  for (std::uint32_t sub = labels; sub != 0; sub = (sub - 1) & labels) {
    if (std::popcount(sub) != cfg.n - 3) continue;
    const IndexSet j = IndexSet::from_mask(cfg.n, sub);
    if (vital_span(cfg, j).contains(l)) out.push_back(j);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<ForgetfulMorphism> linear_fiber_factorization(const RationalConfig& cfg, const LinearSubspace& l) {
  if (l.ambient_dim() != cfg.dim()) throw Error(Errc::AmbientMismatch, "subspace and config");
  if (l.dimension() < 1) throw Error(Errc::Precondition, "L must have positive dimension");
  const auto inside = vital_hyperplanes_containing(cfg, l);
  if (!inside.empty()) throw Error(Errc::Precondition, "L lies in the vital hyperplane of " + inside.front().to_string());

  const std::uint32_t labels = label_mask(cfg);
  std::vector<std::uint32_t> hits;
  for (std::uint32_t sub = labels; sub != 0; sub = (sub - 1) & labels) {
    const int size = std::popcount(sub);
    if (size > cfg.n - 4) continue;
    if (vital_span(cfg, IndexSet::from_mask(cfg.n, sub)).meet(l).dimension() == l.dimension() - 1)
      hits.push_back(sub);
  }
  ForgetfulMorphism m{cfg.n, {}};
  for (auto a : hits) {
    bool minimal = true;
    for (auto b : hits)
      if (b != a && (b & a) == b) minimal = false;
    if (minimal) m.forgotten.push_back(IndexSet::from_mask(cfg.n, a));
  }
  std::sort(m.forgotten.begin(), m.forgotten.end());
  int codims = 0;
  for (const auto& s : m.forgotten) codims += cfg.n - 3 - s.size();
  if (m.forgotten.empty() || codims != cfg.n - 3 - l.dimension()) return std::nullopt;
  return m;
}

CurveNumerics line_numerics(const RationalConfig& cfg, const LinearSubspace& line) {
  if (line.dimension() != 1) throw Error(Errc::Precondition, "expected a line");
  const std::uint32_t labels = label_mask(cfg);
  std::map<std::uint32_t, int> meet_dim;
  for (std::uint32_t sub = labels; sub != 0; sub = (sub - 1) & labels) {
    if (std::popcount(sub) > cfg.n - 3) continue;
    const LinearSubspace v = vital_span(cfg, IndexSet::from_mask(cfg.n, sub));
    const int dim = v.meet(line).dimension();
    if (dim == 1) throw Error(Errc::Precondition, "line lies in a vital space");
    meet_dim[sub] = dim;
  }
  CurveNumerics c;
  c.n = cfg.n;
  for (const auto& [sub, dim] : meet_dim) {
    if (dim != 0) continue;
    bool smallest = true;
    for (std::uint32_t part = (sub - 1) & sub; part != 0; part = (part - 1) & sub)
      if (meet_dim.at(part) >= 0) smallest = false;
    if (smallest) c.set(IndexSet::from_mask(cfg.n, sub).with(cfg.chart), 1);
  }
  return c;
}

}  // namespace kapranov
