#include <doctest.h>

#include <map>

#include "kapranov/error.hpp"
#include "kapranov/picard.hpp"
#include "oracles.hpp"

using namespace kapranov;

namespace {

// Classes as psi1 coefficient plus coefficients on canonical sides.
struct Cls {
  mpz_class psi = 0;
  std::map<std::uint32_t, mpz_class> e;
};

std::uint32_t canonical_side(int n, std::uint32_t m) {
  return (m & 1u) ? m : (((std::uint32_t{1} << n) - 1) & ~m);
}

// E_I from the geometry of chart 1: a vital space V^1_J when |J| <= n-4,
// otherwise the strict transform of the hyperplane through the n-3 points J,
// which loses every blown-up centre it contains.
void add_e(int n, Cls& c, std::uint32_t i_mask, const mpz_class& coeff) {
  const std::uint32_t side = canonical_side(n, i_mask);
  const std::uint32_t j = side & ~1u;
  if (std::popcount(j) <= n - 4) {
    c.e[side] += coeff;
    return;
  }
  c.psi += coeff;
  const std::uint32_t others = ((std::uint32_t{1} << n) - 1) & ~1u;
  for (std::uint32_t v = others; v != 0; v = (v - 1) & others) {
    const bool centre = std::popcount(v) <= n - 4;
    const bool inside = (v & j) == v;
    if (centre && inside) c.e[v | 1u] -= coeff;
  }
}

// Psi_i from the hyperplane-pencil identity with two auxiliary charts.
Cls psi_oracle(int n, int i) {
  int h = 0, j = 0;
  for (int l = 1; l <= n && !j; ++l)
    if (l != i) (h ? j : h) = l;
  Cls c;
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m) {
    const int s = std::popcount(m);
    if (s < 2 || s > n - 2) continue;
    if ((m & oracle::bit(i)) && !(m & oracle::bit(h)) && !(m & oracle::bit(j))) add_e(n, c, m, 1);
  }
  return c;
}

Cls canonical_oracle(int n) {
  Cls c;
  c.psi = 2 - n;
  for (std::uint32_t m = 1; m < (std::uint32_t{1} << n); m += 2) {
    const int s = std::popcount(m);
    if (s >= 2 && s <= n - 3) c.e[m] += n - 2 - s;
  }
  return c;
}

bool same(const DivisorClass& d, const Cls& c) {
  if (d.psi1_coeff() != c.psi) return false;
  const auto& sides = PicardBasis::of(d.ambient()).sides();
  for (std::size_t k = 0; k < sides.size(); ++k) {
    auto it = c.e.find(sides[k].mask());
    const mpz_class want = it == c.e.end() ? mpz_class(0) : it->second;
    if (d.e_coeffs()[k] != want) return false;
  }
  for (const auto& [mask, v] : c.e)
    if (v != 0 && PicardBasis::of(d.ambient()).index_of(IndexSet::from_mask(d.ambient(), mask)) < 0) return false;
  return true;
}

long binom(int a, int b) {
  long r = 1;
  for (int k = 1; k <= b; ++k) r = r * (a - b + k) / k;
  return r;
}

}  // namespace

TEST_CASE("picard rank and basis size") {
  CHECK(picard_rank(5) == 5);
  CHECK(picard_rank(6) == 16);
  CHECK(picard_rank(7) == 42);
  for (int n = 5; n <= 12; ++n) {
    long expected = 1;
    for (int s = 1; s <= n - 4; ++s) expected += binom(n - 1, s);
    CHECK(picard_rank(n) == expected);
    CHECK(static_cast<long>(PicardBasis::of(n).exceptional_count()) + 1 == expected);
  }
  CHECK_THROWS_AS(picard_rank(4), Error);
}

TEST_CASE("psi class examples") {
  CHECK(psi_class(5, 1) == DivisorClass::psi1(5));
  CHECK(psi_class(5, 2).to_string() == "2*Psi1 - E{1,3} - E{1,4} - E{1,5}");
  DivisorClass want = mpz_class(3) * DivisorClass::psi1(6);
  for (int k : {3, 4, 5, 6}) want -= mpz_class(2) * DivisorClass::basis_vector(IndexSet(6, {1, k}));
  for (auto [a, b] : {std::pair{3, 4}, {3, 5}, {3, 6}, {4, 5}, {4, 6}, {5, 6}})
    want -= DivisorClass::basis_vector(IndexSet(6, {1, a, b}));
  CHECK(psi_class(6, 2) == want);
}

TEST_CASE("canonical class examples") {
  CHECK(canonical_class(5).to_string() == "-3*Psi1 + E{1,2} + E{1,3} + E{1,4} + E{1,5}");
  const DivisorClass k6 = canonical_class(6);
  CHECK(k6.psi1_coeff() == -4);
  for (const auto& side : PicardBasis::of(6).sides()) CHECK(k6.e_coeff(side) == (side.size() == 2 ? 2 : 1));
  CHECK_THROWS_AS(canonical_class(4), Error);
}

TEST_CASE("boundary class examples") {
  CHECK(boundary_class(boundary_label(IndexSet(6, {1, 2}))) == DivisorClass::basis_vector(IndexSet(6, {1, 2})));
  CHECK(boundary_class(boundary_label(IndexSet(5, {2, 3}))).to_string() == "Psi1 - E{1,4} - E{1,5}");
  const DivisorClass e56 = boundary_class(boundary_label(IndexSet(6, {5, 6})));
  CHECK(e56.psi1_coeff() == 1);
  for (const auto& side : PicardBasis::of(6).sides())
    CHECK(e56.e_coeff(side) == (side.is_subset_of(IndexSet(6, {1, 2, 3, 4})) ? -1 : 0));
}

TEST_CASE("classes agree with the independent expansions") {
  for (int n = 5; n <= 9; ++n) {
    CHECK(same(canonical_class(n), canonical_oracle(n)));
    for (int i = 1; i <= n; ++i) CHECK(same(psi_class(n, i), psi_oracle(n, i)));
    for (const auto& label : all_boundary_labels(n)) {
      Cls c;
      add_e(n, c, label.side().mask(), 1);
      CHECK(same(boundary_class(label), c));
      CHECK(boundary_class(boundary_label(label.other_side())) == boundary_class(label));
    }
  }
}

TEST_CASE("boundary classes are pairwise distinct") {
  for (int n = 5; n <= 8; ++n) {
    std::vector<DivisorClass> seen;
    for (const auto& label : all_boundary_labels(n)) {
      const auto c = boundary_class(label);
      CHECK(!c.is_zero());
      for (const auto& other : seen) CHECK(!(other == c));
      seen.push_back(c);
    }
  }
}

TEST_CASE("relations hold for every chart tuple, 5 <= n <= 9") {
  for (int n = 5; n <= 9; ++n) {
    std::size_t bad = 0;
    for (const auto& r : verify_all_relations(n))
      if (!r.residual.is_zero()) ++bad;
    CHECK_MESSAGE(bad == 0, "n=" << n);
  }
  CHECK(verify_relation(Relation::CanonicalViaPsi, 5, std::vector<int>{1}).is_zero());
  CHECK(verify_relation(Relation::Boundary, 7, std::vector<int>{3}).is_zero());
  CHECK(verify_relation(Relation::PsiHyperplane, 6, std::vector<int>{1, 2, 3}).is_zero());
}

TEST_CASE("difference relation needs the (n-2) factor") {
  // Without the factor the identity fails for every pair.
  for (int n = 5; n <= 7; ++n) {
    DivisorClass rhs = DivisorClass::zero(n);
    for (std::uint32_t m = 1; m < (std::uint32_t{1} << n); ++m) {
      const int s = std::popcount(m);
      if (s >= 2 && s <= n - 2 && (m & 1u) && !(m & 2u)) add_boundary(rhs, IndexSet::from_mask(n, m), n - 2 * s);
    }
    CHECK(!(psi_class(n, 1) - psi_class(n, 2) == rhs));
    CHECK(mpz_class(n - 2) * (psi_class(n, 1) - psi_class(n, 2)) == rhs);
  }
}

TEST_CASE("relation arguments are checked") {
  CHECK_THROWS_AS(verify_relation(Relation::PsiPair, 6, std::vector<int>{1}), Error);
  CHECK_THROWS_AS(verify_relation(Relation::PsiPair, 6, std::vector<int>{2, 2}), Error);
  CHECK_THROWS_AS(verify_relation(Relation::PsiPair, 6, std::vector<int>{1, 7}), Error);
  CHECK(relation_from_name("eq3") == Relation::PsiMultiple);
  CHECK_THROWS_AS(relation_from_name("nope"), Error);
  CHECK_THROWS_AS(psi_class(6, 2) + psi_class(7, 2), Error);
}
