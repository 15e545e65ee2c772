#include <doctest.h>

#include "kapranov/error.hpp"
#include "kapranov/numerics.hpp"

using namespace kapranov;

namespace {

// Line fiber of the map forgetting 6, seen in chart 1.
CurveNumerics line_fiber6() {
  CurveNumerics c{6, {}, {}, {}};
  c.set(IndexSet(6, {1, 6}), 1);
  for (int k = 2; k <= 5; ++k) c.set(IndexSet(6, {1, 2, 3, 4, 5}).without(k), 1);
  return c;
}

CurveNumerics size3_pattern6() {
  CurveNumerics c{6, {}, {}, {}};
  for (int a = 2; a <= 6; ++a)
    for (int b = a + 1; b <= 6; ++b) c.set(IndexSet(6, {1, a, b}), 1);
  return c;
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error");
  return Errc::Parse;
}

// Direct transcription of the genus identity for chart 1, summing over all
// subsets containing 1 (each label appears once because its 1-side is unique).
long genus_oracle_sum(const CurveNumerics& c) {
  long total = 0;
  for (std::uint32_t m = 1; m < (std::uint32_t{1} << c.n); m += 2) {
    const int s = std::popcount(m);
    if (s < 2 || s > c.n - 2) continue;
    total += ((s - 2) * (c.n - 2 - s) - 2) * c.m_of(IndexSet::from_mask(c.n, m));
  }
  return total;
}

}  // namespace

TEST_CASE("genus examples") {
  CHECK(genus_from_m(line_fiber6()) == 0);
  CurveNumerics one{7, {}, {}, {}};
  one.set(IndexSet(7, {1, 2}), 1);
  CHECK(code_of([&] { genus_from_m(one); }) == Errc::NonIntegerGenus);
  CHECK(genus_from_m(CurveNumerics{7, {}, {}, {}}) == 1);
  CurveNumerics big{5, {}, {}, {}};
  for (const auto& l : all_boundary_labels(5)) big.set(l.side(), 3);  // sum = -60, 2-2g = 15
  CHECK(code_of([&] { genus_from_m(big); }) == Errc::NonIntegerGenus);
  CurveNumerics neg{5, {}, {}, {}};  // -2*m = -8 -> 2-2g = 2 -> g=0; m = 8 -> 2-2g = 4 -> g=-1
  neg.set(IndexSet(5, {1, 2}), 8);
  CHECK(code_of([&] { genus_from_m(neg); }) == Errc::NegativeGenus);
}

TEST_CASE("genus agrees with the chart-1 transcription and is chart independent") {
  for (const auto& c : {line_fiber6(), size3_pattern6()}) {
    const long s = genus_oracle_sum(c);
    CHECK(s + (c.n - 1) * (2 - 2 * genus_from_m(c)) == 0);
    for (int i = 1; i <= c.n; ++i) {
      long via_i = 0;
      for (const auto& [label, v] : c.m) via_i += genus_coefficient(c.n, label.side_containing(i).size()) * v;
      CHECK(via_i == s);
    }
  }
}

TEST_CASE("degree examples") {
  const auto line = line_fiber6();
  CHECK(degree_from_m(line, 0, 1) == 1);
  for (int i = 1; i <= 5; ++i) CHECK(degree_from_m(line, 0, i) == 1);
  CHECK(degree_from_m(line, 0, 6) == 3);
  CHECK(degree_from_m(size3_pattern6(), 0, 1) == 3);
  CHECK(code_of([] { degree_from_m(CurveNumerics{7, {}, {}, {}}, 1, 1); }) == Errc::NonPositiveDegree);
  CurveNumerics odd{7, {}, {}, {}};  // 5*d_1 = 3*2 + 2
  odd.set(IndexSet(7, {1, 2}), 2);
  CHECK(code_of([&] { degree_from_m(odd, 0, 1); }) == Errc::NonIntegerDegree);
}

TEST_CASE("pair identity and mutations") {
  for (const auto& base : {line_fiber6(), size3_pattern6()}) {
    const auto full = complete_numerics(base);
    CHECK(!check_pair_identity(full));
    CHECK(check_identities(full).empty());
    // Perturbing any single m breaks some identity.
    for (const auto& label : all_boundary_labels(base.n))
      for (int delta : {-1, 1}) {
        auto bad = full;
        const long v = bad.m_of(label) + delta;
        if (v < 0) continue;
        bad.set(label.side(), v);
        CHECK(!check_identities(bad).empty());
      }
  }
  auto c = complete_numerics(size3_pattern6());
  CHECK(c.d->at(1) == 3);
  // 3+3 = four size-3 labels through 1,2 plus 2.
  c.set(IndexSet(6, {1, 2, 3}), 2);
  CHECK(check_pair_identity(c) == std::pair{1, 2});
  auto all_ones = complete_numerics(line_fiber6());
  for (auto& [i, d] : *all_ones.d) d = 1;
  CHECK(check_pair_identity(all_ones).has_value());
}

TEST_CASE("specialized genus identity") {
  CHECK(specialize_identity_iii(7, 0).to_string() == "S2 = 6");
  CHECK(specialize_identity_iii(6, 0).to_string() == "2*S2 + S3 = 10");
  CHECK(specialize_identity_iii(7, 1).to_string() == "S2 = 0");
  const auto f = specialize_identity_iii(6, 0);
  CHECK(f.terms == std::vector<std::pair<int, long>>{{2, 2}, {3, 1}});
  CHECK(f.rhs == 10);
  // Both worked patterns satisfy their specialization.
  for (const auto& c : {line_fiber6(), size3_pattern6()}) {
    long lhs = 0;
    for (const auto& [label, v] : c.m)
      for (const auto& [size, coeff] : f.terms)
        if (label.folded_size() == size) lhs += coeff * v;
    CHECK(lhs == f.rhs);
  }
}

TEST_CASE("factorization through a point") {
  CHECK(factors_through_point(CurveNumerics{5, {}, {}, {}}));
  CHECK(factors_through_point(line_fiber6()));
  CHECK(!factors_through_point(size3_pattern6()));
}

TEST_CASE("degree via hyperplanes") {
  const auto line = line_fiber6();
  CHECK(degree_via_hyperplane(line, IndexSet(6, {1, 3, 4, 5}), 1) == 1);
  const auto s3 = size3_pattern6();
  CHECK(degree_via_hyperplane(s3, IndexSet(6, {1, 2, 3, 4}), 1) == 3);
  CHECK_THROWS_AS(degree_via_hyperplane(s3, IndexSet(6, {1, 2, 3}), 1), Error);
  CHECK_THROWS_AS(degree_via_hyperplane(s3, IndexSet(6, {2, 3, 4, 5}), 1), Error);
  // Constant over hyperplanes through each chart, equal to d_i.
  for (const auto& c : {line, s3}) {
    const long g = genus_from_m(c);
    for (int i = 1; i <= c.n; ++i) {
      const long d = degree_from_m(c, g, i);
      for (std::uint32_t m = 0; m < (std::uint32_t{1} << c.n); ++m) {
        const IndexSet h = IndexSet::from_mask(c.n, m);
        if (h.size() != c.n - 2 || !h.contains(i)) continue;
        CHECK(degree_via_hyperplane(c, h, i) == d);
      }
    }
  }
}

TEST_CASE("restriction to a curve fibration") {
  const auto s3 = size3_pattern6();
  CHECK(restricts_to_curve_fibration(s3, IndexSet(6, {1, 2, 3}), IndexSet(6, {1, 2, 3, 4})));
  CHECK(!restricts_to_curve_fibration(line_fiber6(), IndexSet(6, {2, 3, 4}), IndexSet(6, {1, 2, 3, 4})));
  CurveNumerics hit = s3;
  hit.set(IndexSet(6, {1, 2, 3, 4}), 1);
  CHECK(!restricts_to_curve_fibration(hit, IndexSet(6, {1, 2, 3}), IndexSet(6, {1, 2, 3, 4})));
  CHECK_THROWS_AS(restricts_to_curve_fibration(s3, IndexSet(6, {1, 2}), IndexSet(6, {1, 2, 3, 4})), Error);
}

TEST_CASE("complete intersection genus") {
  CHECK(ci_genus(3, {2, 2}) == 1);
  CHECK(ci_genus(4, {2, 2, 2}) == 5);
  CHECK(ci_genus(5, {2, 2, 2, 2}) == 17);
  CHECK(ci_genus(2, {3}) == 1);
  CHECK(ci_genus(2, {1}) == 0);
  for (int k = 4; k <= 10; ++k) {
    const mpz_class closed = mpz_class(k - 4) * (mpz_class(1) << (k - 3)) + 1;
    CHECK(ci_genus(k - 1, std::vector<long>(static_cast<std::size_t>(k - 2), 2)) == closed);
  }
  CHECK_THROWS_AS(ci_genus(1, {}), Error);
  CHECK_THROWS_AS(ci_genus(3, {2}), Error);
  CHECK_THROWS_AS(ci_genus(3, {0, 2}), Error);
}
