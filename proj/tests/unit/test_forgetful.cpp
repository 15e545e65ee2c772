#include <doctest.h>

#include <random>

#include "kapranov/canonical.hpp"
#include "kapranov/error.hpp"
#include "kapranov/forgetful.hpp"
#include "oracles.hpp"

using namespace kapranov;

namespace {

const ForgetfulMorphism kElliptic = make_morphism(8, {{1, 2, 3, 4}, {1, 2, 5, 6}, {3, 4, 7, 8}, {5, 6, 7, 8}});
const ForgetfulMorphism kCanonical10 = make_morphism(
    10, {{1, 2, 3, 4, 9, 10}, {1, 2, 5, 6, 9, 10}, {3, 4, 7, 8, 9, 10}, {5, 6, 7, 8, 9, 10}, {1, 2, 5, 6, 7, 8}, {3, 4, 5, 6, 7, 8}});
const ForgetfulMorphism kTriple = make_morphism(7, {{1, 2, 3}, {4, 5, 6}, {1, 4, 7}});

oracle::Masks masks_of(const ForgetfulMorphism& m) {
  oracle::Masks out;
  for (const auto& s : m.forgotten) out.push_back(s.mask());
  return out;
}

ForgetfulMorphism from_masks(int n, const oracle::Masks& ms) { return {n, oracle::to_sets(n, ms)}; }

std::vector<IndexSet> sorted(std::vector<IndexSet> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Every complete merge order, depth first; collects canonical end results.
void all_reductions(const ForgetfulMorphism& m, std::set<std::vector<IndexSet>>& ends) {
  const auto eq = equality_subfamilies(m);
  if (eq.empty()) {
    ends.insert(m.forgotten.size() == 1 && m.forgotten[0].empty() ? m.forgotten : canonical_form(m.forgotten).sets);
    return;
  }
  for (const auto& s : eq) all_reductions(merge_subfamily(m, s), ends);
}

}  // namespace

TEST_CASE("validate") {
  auto kinds = [](const ForgetfulMorphism& m) {
    std::vector<IssueKind> out;
    for (const auto& i : validate(m)) out.push_back(i.kind);
    return out;
  };
  CHECK(kinds(make_morphism(7, {{1, 2}, {1, 2, 3}})) == std::vector<IssueKind>{IssueKind::Inclusion});
  CHECK(kinds(make_morphism(6, {{1, 2, 3}})) == std::vector<IssueKind>{IssueKind::TargetTooSmall});
  CHECK(validate(make_morphism(8, {{1, 2, 3, 4}, {5, 6, 7, 8}})).empty());
  CHECK(kinds(make_morphism(6, {{}})) == std::vector<IssueKind>{IssueKind::EmptySet});
  CHECK(kinds(ForgetfulMorphism{6, {}}) == std::vector<IssueKind>{IssueKind::NoSets});
  const auto issues = validate(make_morphism(7, {{1, 2}, {1, 2}}));
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].positions == std::vector<int>{1, 2});
  CHECK_THROWS_AS(is_surjective(make_morphism(7, {{1, 2}, {1, 2, 3}})), Error);
}

TEST_CASE("fiber dimension") {
  CHECK(kElliptic.fiber_dim() == 1);
  CHECK(kTriple.fiber_dim() == 1);
  CHECK(make_morphism(6, {{1, 2}}).fiber_dim() == 2);
  CHECK(kCanonical10.fiber_dim() == 1);
}

TEST_CASE("surjectivity examples") {
  CHECK(is_surjective(kElliptic));
  CHECK(is_surjective(kCanonical10));
  const auto bad = make_morphism(10, {{1, 2, 3, 4, 5, 6}, {1, 2, 3, 4, 5, 7}, {1, 2, 3, 4, 5, 8}});
  CHECK(!is_surjective(bad));
  CHECK(star_violations(bad) == std::vector<Subfamily>{{1, 2, 3}});
  CHECK(is_surjective(kTriple));
}

TEST_CASE("reducedness examples") {
  CHECK(is_reduced(make_morphism(6, {{1, 2}, {3, 4}})));
  CHECK(!is_reduced(make_morphism(6, {{1, 2}, {2, 3}})));
  CHECK(is_reduced(kTriple));
  CHECK(!is_reduced(make_morphism(7, {{1, 2}, {1, 3, 4}})));
}

TEST_CASE("reduce examples") {
  const auto r = reduce(make_morphism(6, {{1, 2}, {2, 3}}));
  CHECK(r.reduced.forgotten == std::vector<IndexSet>{IndexSet(6, {2})});
  REQUIRE(r.trace.size() == 1);
  CHECK(r.trace[0].positions == Subfamily{1, 2});
  CHECK(r.trace[0].result == IndexSet(6, {2}));
  CHECK(reduce(make_morphism(8, {{1, 2, 3, 4}, {1, 2, 3, 5}})).reduced.forgotten ==
        std::vector<IndexSet>{IndexSet(8, {1, 2, 3})});
  const auto same = reduce(kTriple);
  CHECK(same.reduced == kTriple);
  CHECK(same.trace.empty());
  CHECK_THROWS_AS(reduce(make_morphism(10, {{1, 2, 3, 4, 5, 6}, {1, 2, 3, 4, 5, 7}, {1, 2, 3, 4, 5, 8}})), Error);
}

TEST_CASE("linear chart") {
  CHECK(linear_chart(make_morphism(6, {{1, 2}, {3, 4}})) == 5);
  CHECK(!linear_chart(kElliptic));
  CHECK(!linear_chart(kTriple));
}

TEST_CASE("fiber descriptor") {
  const auto slice = fiber_descriptor(make_morphism(6, {{2, 3}}), 1);
  REQUIRE(slice.components.size() == 1);
  CHECK(slice.components[0].kind == FiberComponent::Kind::LinearSlice);
  CHECK(slice.components[0].dimension == 2);
  CHECK(slice.components[0].codimension == 1);

  const auto cone = fiber_descriptor(make_morphism(6, {{1, 2}}), 1);
  REQUIRE(cone.components.size() == 1);
  CHECK(cone.components[0].kind == FiberComponent::Kind::Cone);
  CHECK(cone.components[0].vertex == VitalSpace(1, IndexSet(6, {2})));
  CHECK(cone.components[0].base_degree == 2);

  const auto point_cone = fiber_descriptor(make_morphism(6, {{1}}), 1);
  CHECK(!point_cone.components[0].vertex);
  CHECK(point_cone.components[0].base_degree == 3);

  const auto e = fiber_descriptor(kElliptic, 1);
  int cones = 0, slices = 0;
  for (const auto& c : e.components) {
    if (c.kind == FiberComponent::Kind::Cone) {
      ++cones;
      CHECK(c.base_degree == 2);
      CHECK(c.vertex->dimension() == 2);
    } else {
      ++slices;
      CHECK(c.dimension == 4);
    }
  }
  CHECK(cones == 2);
  CHECK(slices == 2);
}

TEST_CASE("exhaustive properties for n <= 7, k <= 3") {
  std::size_t surjective = 0;
  for (int n = 5; n <= 7; ++n)
    oracle::for_each_family(n, 3, [&](const oracle::Masks& ms) {
      const auto m = from_masks(n, ms);
      REQUIRE(validate(m).empty());
      const bool surj = is_surjective(m);
      CHECK(surj == oracle::star(n, ms, false));
      if (!surj) return;
      ++surjective;
      CHECK(m.fiber_dim() >= 0);
      CHECK(is_reduced(m) == oracle::star(n, ms, true));
      // Subfamilies of a surjective family are surjective.
      for (std::size_t drop = 0; drop < ms.size() && ms.size() > 1; ++drop) {
        auto part = ms;
        part.erase(part.begin() + static_cast<long>(drop));
        CHECK(is_surjective(from_masks(n, part)));
      }
      const auto r = reduce(m);
      CHECK(r.reduced.fiber_dim() == m.fiber_dim());
      const bool identity = r.reduced.forgotten.size() == 1 && r.reduced.forgotten[0].empty();
      if (identity) {
        CHECK(m.fiber_dim() == 0);
      } else {
        CHECK(validate(r.reduced).empty());
        CHECK(is_surjective(r.reduced));
        CHECK(is_reduced(r.reduced));
      }
      // Every output set is an intersection of input sets.
      for (const auto& s : r.reduced.forgotten) {
        IndexSet inter = IndexSet::full(n);
        for (const auto& t : m.forgotten)
          if (s.is_subset_of(t)) inter = inter & t;
        CHECK(inter == s);
      }
      // Confluence up to relabelling.
      std::set<std::vector<IndexSet>> ends;
      all_reductions(m, ends);
      CHECK(ends.size() == 1);
    });
  CHECK(surjective > 1000);
}

TEST_CASE("relabelling equivariance") {
  std::mt19937_64 rng(11);
  for (int n = 5; n <= 8; ++n)
    oracle::for_each_family(n, 2, [&](const oracle::Masks& ms) {
      if (rng() % 7 != 0) return;
      const auto m = from_masks(n, ms);
      std::vector<int> image(static_cast<std::size_t>(n));
      std::iota(image.begin(), image.end(), 1);
      std::shuffle(image.begin(), image.end(), rng);
      const ForgetfulMorphism p{n, Permutation(n, image).apply(m.forgotten)};
      CHECK(p.fiber_dim() == m.fiber_dim());
      CHECK(is_surjective(p) == is_surjective(m));
      if (is_surjective(m)) CHECK(is_reduced(p) == is_reduced(m));
    });
}

TEST_CASE("classification examples") {
  const auto six = classify_orbits(6, 1);
  REQUIRE(six.size() == 2);
  CHECK(six[0].forgotten == std::vector<IndexSet>{IndexSet(6, {1})});
  CHECK(six[1].forgotten == std::vector<IndexSet>{IndexSet(6, {1, 2}), IndexSet(6, {3, 4})});
  const auto five = classify_orbits(5, 1);
  REQUIRE(five.size() == 1);
  CHECK(five[0].forgotten == std::vector<IndexSet>{IndexSet(5, {1})});
  CHECK_THROWS_AS(classify_orbits(9, 1), Error);
  CHECK_THROWS_AS(classify_orbits(6, 0), Error);
}

TEST_CASE("classification matches brute force") {
  const std::vector<std::pair<int, int>> cases{{5, 1}, {5, 2}, {6, 1}, {6, 2}, {7, 1}, {7, 2}, {7, 3}, {8, 1}, {8, 2}};
  for (auto [n, h] : cases) {
    const auto got = classify_orbits(n, h);
    std::set<std::vector<std::vector<int>>> lists;
    for (const auto& m : got) {
      CHECK(validate(m).empty());
      CHECK(is_surjective(m));
      CHECK(is_reduced(m));
      CHECK(m.fiber_dim() == h);
      CHECK(canonical_form(m.forgotten).sets == m.forgotten);
      std::vector<std::vector<int>> l;
      for (const auto& s : m.forgotten) l.push_back(s.members());
      lists.insert(l);
    }
    CHECK_MESSAGE(lists.size() == got.size(), "duplicate orbits for n=" << n << " h=" << h);
    CHECK_MESSAGE(lists == oracle::brute_orbits(n, h), "n=" << n << " h=" << h);
  }
}

TEST_CASE("classification output is independent of threads") {
  CHECK(classify_orbits(7, 1, 1) == classify_orbits(7, 1, 4));
  CHECK(classify_orbits(8, 1, 1) == classify_orbits(8, 1, 3));
}
