#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "kapranov/forgetful.hpp"
#include "kapranov/numerics.hpp"
#include "kapranov/rational.hpp"

namespace kapranov {

/// splitmix64 step, used to derive sub-seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// n-1 points of P^{n-3} labelled by {1..n} minus the chart: a Kapranov set.
struct RationalConfig {
  int n = 0;
  int chart = 0;
  std::uint64_t seed = 0;
  std::vector<int> labels;  // ascending
  Matrix points;            // points[k] is the point labelled labels[k]
  int attempts = 1;         // draws needed to reach general position

  int dim() const noexcept { return n - 3; }
  const Vec& point(int label) const;
  bool operator==(const RationalConfig& o) const {
    return n == o.n && chart == o.chart && seed == o.seed && labels == o.labels && points == o.points;
  }
};

/// Integer coordinates for one attempt: n-1 rows of n-2 entries.
using CoordinateSource = std::function<std::vector<std::vector<long>>(int n, std::uint64_t subseed, int attempt)>;

/// mt19937_64 seeded with the sub-seed, entries uniform in [-1000, 1000].
std::vector<std::vector<long>> default_coordinates(int n, std::uint64_t subseed, int attempt);

inline constexpr int kMaxConfigAttempts = 64;

/// Deterministic general-position configuration. Attempt a uses sub-seed
/// splitmix64(seed + a) mixed with n and chart; degenerate draws are retried
/// up to kMaxConfigAttempts times, then Errc::DegenerateSeed.
RationalConfig random_config(int n, int chart, std::uint64_t seed,
                             const CoordinateSource& source = default_coordinates);

/// Wraps given points; throws DegenerateConfig unless in general position.
RationalConfig config_from_points(int n, int chart, const Matrix& points);

/// Every n-2 of the n-1 points are linearly independent.
bool in_general_position(const Matrix& points);

/// Span of the points labelled by J (J must avoid the chart).
LinearSubspace vital_span(const RationalConfig& cfg, const IndexSet& j);

/// Uniform random point with integer entries in [-1000, 1000].
Vec random_point(int dim, std::mt19937_64& rng);
/// Generator for trial t of a run seeded with `seed`.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

/// Linear fiber through `point` of a morphism none of whose sets contains
/// the chart: the intersection of the spans <V_{I_j}, point>.
LinearSubspace linear_fiber(const RationalConfig& cfg, const ForgetfulMorphism& m, const Vec& point);

struct StarRankReport {
  int h = 0;
  std::vector<int> trial_dims;
  int min_dim = 0;
  bool verdict = false;  // min_dim == h
};

/// Exact-rank test of surjectivity. Each trial draws a probe y and a general
/// centre x; sets containing the chart are spanned with x in place of the
/// chart point, and the dimension of the intersection of the <U_j, y> is
/// recorded. The generic dimension is the minimum over trials. Trials depend
/// only on (cfg.seed, trial index); `threads` does not change the result.
StarRankReport star_rank_check(const RationalConfig& cfg, const ForgetfulMorphism& m, int trials,
                               unsigned threads = 1);

/// Projective frame: the points labelled `simplex` go to coordinate points
/// and `unit` goes to (1,...,1).
struct Frame {
  std::vector<int> simplex;
  int unit = 0;
  Matrix to_world;  // columns are the scaled simplex points
  Matrix to_frame;

  Vec coords(const Vec& world) const { return mul(to_frame, world); }
  Vec world(const Vec& frame) const { return mul(to_world, frame); }
};

/// Frame whose unit point is the config point labelled `unit`.
Frame make_frame(const RationalConfig& cfg, int unit);

/// Binary form of degree d: coeffs[e] multiplies s^{d-e} t^e.
using BinaryForm = std::vector<mpq_class>;

struct RNC {
  int degree = 0;
  std::vector<BinaryForm> coords;  // one form per ambient coordinate
  /// Parameter [s:t] for each defining point; label 0 is the extra point.
  std::vector<std::pair<int, std::pair<mpq_class, mpq_class>>> params;

  Vec at(const mpq_class& s, const mpq_class& t) const;
};

/// The unique rational normal curve through the n-1 config points and
/// `extra`. Throws DegeneratePoint when `extra` is not in general position
/// with the configuration.
RNC rnc_through(const RationalConfig& cfg, const Vec& extra);

struct RncCheck {
  bool incidence = false;    // every defining point lies on the curve
  bool spans = false;        // the image spans P^d
  int hyperplane_roots = 0;  // distinct roots of h.P(s,t) for a random h
};
RncCheck check_rnc(const RationalConfig& cfg, const RNC& c, const Vec& extra, std::mt19937_64& rng);

/// Standard Cremona map into the chart `target`: coordinatewise reciprocal
/// in the frame with the other points as simplex and p_target as unit.
/// Throws IndeterminatePoint when a frame coordinate vanishes.
Vec cremona_sample(const RationalConfig& cfg, int target, const Vec& point);

/// Vital hyperplanes (|J| = n-3) that contain L.
std::vector<IndexSet> vital_hyperplanes_containing(const RationalConfig& cfg, const LinearSubspace& l);

/// Recovers the forgetful morphism whose linear fiber is L: the
/// inclusion-minimal J with dim(V_J meet L) = dim L - 1, accepted when
/// sum (n-3-|J|) = n-3-dim L. Throws Precondition when L lies in a vital
/// hyperplane.
std::optional<ForgetfulMorphism> linear_fiber_factorization(const RationalConfig& cfg, const LinearSubspace& l);

/// Intersection multiplicities of a line with the exceptional divisors of
/// the chart: V_J gets 1 when the line meets it in a point lying on no
/// smaller vital space. Throws Precondition if the line lies in a vital space.
CurveNumerics line_numerics(const RationalConfig& cfg, const LinearSubspace& line);

}  // namespace kapranov
