#include "kapranov/forgetful.hpp"

#include <algorithm>
#include <bit>
#include <future>
#include <set>
#include <sstream>
#include <thread>

#include "kapranov/canonical.hpp"
#include "kapranov/error.hpp"

namespace kapranov {

namespace {

constexpr std::size_t kMaxSets = 20;

int weight(int n, const IndexSet& s) { return n - s.size() - 3; }

Subfamily positions_of(std::uint32_t mask) {
  Subfamily out;
  for (std::uint32_t m = mask; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

// Walks every nonempty subfamily with its intersection and weight sum.
template <typename F>
void for_each_subfamily(int n, std::span<const IndexSet> sets, F&& f) {
  if (sets.size() > kMaxSets) throw Error(Errc::SizeOutOfRange, "too many forgotten sets");
  const std::uint32_t count = std::uint32_t{1} << sets.size();
  std::vector<std::uint32_t> inter(count);
  std::vector<int> sum(count);
  inter[0] = IndexSet::full(n).mask();
  sum[0] = 0;
  for (std::uint32_t mask = 1; mask < count; ++mask) {
    const int low = std::countr_zero(mask);
    const std::uint32_t rest = mask & (mask - 1);
    const auto& s = sets[static_cast<std::size_t>(low)];
    inter[mask] = inter[rest] & s.mask();
    sum[mask] = sum[rest] + weight(n, s);
    f(mask, n - std::popcount(inter[mask]) - 3, sum[mask]);
  }
}

void require_valid(const ForgetfulMorphism& m) {
  auto issues = validate(m);
  if (!issues.empty()) throw Error(Errc::Precondition, "invalid morphism: " + issues.front().message);
}

}  // namespace

int ForgetfulMorphism::fiber_dim() const {
  int h = n - 3;
  for (const auto& s : forgotten) h -= weight(n, s);
  return h;
}

std::string ForgetfulMorphism::to_string() const {
  std::ostringstream os;
  os << "n=" << n << " [";
  for (std::size_t j = 0; j < forgotten.size(); ++j) os << (j ? "," : "") << forgotten[j].to_string();
  os << ']';
  return os.str();
}

ForgetfulMorphism make_morphism(int n, const std::vector<std::vector<int>>& sets) {
  ForgetfulMorphism m{n, {}};
  for (const auto& s : sets) m.forgotten.emplace_back(n, std::span<const int>(s));
  return m;
}

std::string_view issue_name(IssueKind k) noexcept {
  switch (k) {
    case IssueKind::EmptySet: return "EmptySet";
    case IssueKind::TargetTooSmall: return "TargetTooSmall";
    case IssueKind::Inclusion: return "Inclusion";
    case IssueKind::AmbientMismatch: return "AmbientMismatch";
    case IssueKind::NoSets: return "NoSets";
  }
  return "?";
}

std::vector<MorphismIssue> validate(const ForgetfulMorphism& m) {
  std::vector<MorphismIssue> issues;
  if (m.forgotten.empty()) {
    issues.push_back({IssueKind::NoSets, {}, "at least one forgotten set is required"});
    return issues;
  }
  if (m.forgotten.size() > kMaxSets)
    issues.push_back({IssueKind::NoSets, {}, "more than 20 forgotten sets"});
  for (std::size_t j = 0; j < m.forgotten.size(); ++j) {
    const auto& s = m.forgotten[j];
    const int pos = static_cast<int>(j) + 1;
    if (s.ambient() != m.n) {
      issues.push_back({IssueKind::AmbientMismatch, {pos}, "set " + std::to_string(pos) + " has another n"});
      continue;
    }
    if (s.empty()) issues.push_back({IssueKind::EmptySet, {pos}, "set " + std::to_string(pos) + " is empty"});
    if (m.n - s.size() < 4)
      issues.push_back({IssueKind::TargetTooSmall, {pos},
                        "forgetting " + s.to_string() + " leaves " + std::to_string(m.n - s.size()) +
                            " < 4 markings"});
  }
  for (std::size_t a = 0; a < m.forgotten.size(); ++a)
    for (std::size_t b = 0; b < m.forgotten.size(); ++b) {
      if (a == b) continue;
      const auto& x = m.forgotten[a];
      const auto& y = m.forgotten[b];
      if (x.ambient() != m.n || y.ambient() != m.n) continue;
      // Report equal sets once.
      if (x == y && b < a) continue;
      if (x.is_subset_of(y))
        issues.push_back({IssueKind::Inclusion,
                          {static_cast<int>(a) + 1, static_cast<int>(b) + 1},
                          x.to_string() + " is contained in " + y.to_string()});
    }
  return issues;
}

bool satisfies_star(int n, std::span<const IndexSet> sets) {
  bool ok = true;
  for_each_subfamily(n, sets, [&](std::uint32_t, int lhs, int rhs) { ok = ok && lhs >= rhs; });
  return ok;
}

bool satisfies_strict_star(int n, std::span<const IndexSet> sets) {
  bool ok = true;
  for_each_subfamily(n, sets, [&](std::uint32_t mask, int lhs, int rhs) {
    if (std::popcount(mask) >= 2) ok = ok && lhs > rhs;
  });
  return ok;
}

std::vector<Subfamily> star_violations(const ForgetfulMorphism& m) {
  require_valid(m);
  std::vector<Subfamily> out;
  for_each_subfamily(m.n, m.forgotten, [&](std::uint32_t mask, int lhs, int rhs) {
    if (lhs < rhs) out.push_back(positions_of(mask));
  });
  std::sort(out.begin(), out.end());
  return out;
}

bool is_surjective(const ForgetfulMorphism& m) {
  require_valid(m);
  return satisfies_star(m.n, m.forgotten);
}

bool is_reduced(const ForgetfulMorphism& m) {
  require_valid(m);
  if (!satisfies_star(m.n, m.forgotten))
    throw Error(Errc::Precondition, "is_reduced needs a surjective morphism");
  return satisfies_strict_star(m.n, m.forgotten);
}

std::vector<Subfamily> equality_subfamilies(const ForgetfulMorphism& m) {
  std::vector<Subfamily> out;
  for_each_subfamily(m.n, m.forgotten, [&](std::uint32_t mask, int lhs, int rhs) {
    if (std::popcount(mask) >= 2 && lhs == rhs) out.push_back(positions_of(mask));
  });
  std::sort(out.begin(), out.end());
  return out;
}

ForgetfulMorphism merge_subfamily(const ForgetfulMorphism& m, const Subfamily& s) {
  if (s.size() < 2) throw Error(Errc::Precondition, "merge needs at least two sets");
  IndexSet inter = IndexSet::full(m.n);
  for (int p : s) {
    if (p < 1 || p > static_cast<int>(m.forgotten.size()))
      throw Error(Errc::Precondition, "merge position out of range");
    inter = inter & m.forgotten[static_cast<std::size_t>(p - 1)];
  }
  ForgetfulMorphism out{m.n, {}};
  for (std::size_t j = 0; j < m.forgotten.size(); ++j) {
    const int pos = static_cast<int>(j) + 1;
    if (pos == s.front())
      out.forgotten.push_back(inter);
    else if (std::find(s.begin(), s.end(), pos) == s.end())
      out.forgotten.push_back(m.forgotten[j]);
  }
  // Any set now containing the intersection is redundant: its fiber contains
  // the merged fiber. Under (*) this cannot happen, but keep the family clean.
  std::vector<IndexSet> kept;
  for (const auto& x : out.forgotten)
    if (x == inter || !inter.is_subset_of(x)) kept.push_back(x);
  out.forgotten = std::move(kept);
  return out;
}

Reduction reduce(const ForgetfulMorphism& m) {
  require_valid(m);
  if (!satisfies_star(m.n, m.forgotten))
    throw Error(Errc::Precondition, "reduce needs a surjective morphism");
  Reduction r{m, {}};
  while (true) {
    auto eq = equality_subfamilies(r.reduced);
    if (eq.empty()) break;
    const Subfamily& s = eq.front();
    MergeStep step{s, {}, IndexSet(m.n)};
    for (int p : s) step.merged.push_back(r.reduced.forgotten[static_cast<std::size_t>(p - 1)]);
    r.reduced = merge_subfamily(r.reduced, s);
    step.result = r.reduced.forgotten[static_cast<std::size_t>(s.front() - 1)];
    r.trace.push_back(std::move(step));
  }
  return r;
}

std::optional<int> linear_chart(const ForgetfulMorphism& m) {
  require_valid(m);
  IndexSet used(m.n);
  for (const auto& s : m.forgotten) used = used | s;
  const IndexSet free = used.complement();
  if (free.empty()) return std::nullopt;
  return free.min_label();
}

FiberDescriptor fiber_descriptor(const ForgetfulMorphism& m, int chart) {
  require_valid(m);
  if (chart < 1 || chart > m.n) throw Error(Errc::LabelOutOfRange, "chart " + std::to_string(chart));
  FiberDescriptor d{chart, {}};
  for (const auto& s : m.forgotten) {
    FiberComponent c{FiberComponent::Kind::LinearSlice, s, s.size(), m.n - 3 - s.size(), std::nullopt, 0};
    if (s.contains(chart)) {
      c.kind = FiberComponent::Kind::Cone;
      const IndexSet vertex = s.without(chart);
      if (!vertex.empty()) c.vertex = VitalSpace(chart, vertex);
      c.base_degree = m.n - s.size() - 2;
    }
    d.components.push_back(std::move(c));
  }
  return d;
}

namespace {

using Family = std::vector<std::uint32_t>;  // canonical masks, sorted by IndexSet order

Family to_family(const std::vector<IndexSet>& sets) {
  Family f;
  for (const auto& s : sets) f.push_back(s.mask());
  return f;
}

struct Expansion {
  std::set<Family> next;
  std::set<Family> done;
};

Expansion expand(int n, int target, const std::vector<IndexSet>& candidates,
                 std::span<const Family> frontier) {
  Expansion out;
  for (const Family& fam : frontier) {
    std::vector<IndexSet> sets;
    int used = 0;
    for (auto mask : fam) {
      sets.push_back(IndexSet::from_mask(n, mask));
      used += weight(n, sets.back());
    }
    for (const auto& c : candidates) {
      if (weight(n, c) > target - used) continue;
      bool clash = false;
      for (const auto& s : sets)
        if (c.is_subset_of(s) || s.is_subset_of(c)) clash = true;
      if (clash) continue;
      sets.push_back(c);
      if (satisfies_star(n, sets) && satisfies_strict_star(n, sets)) {
        Family canon = to_family(canonical_form(sets).sets);
        if (used + weight(n, c) == target)
          out.done.insert(std::move(canon));
        else
          out.next.insert(std::move(canon));
      }
      sets.pop_back();
    }
  }
  return out;
}

}  // namespace

std::vector<ForgetfulMorphism> classify_orbits(int n, int h, unsigned threads) {
  if (n < 5 || n > 8) throw Error(Errc::SizeOutOfRange, "classify_orbits needs 5 <= n <= 8");
  if (h < 1) throw Error(Errc::SizeOutOfRange, "classify_orbits needs h >= 1");
  const int target = n - 3 - h;
  std::set<Family> results;
  if (target <= 0) return {};

  std::vector<IndexSet> candidates;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    IndexSet s = IndexSet::from_mask(n, mask);
    if (n - s.size() >= 4) candidates.push_back(s);
  }
  std::sort(candidates.begin(), candidates.end());

  std::vector<Family> frontier{Family{}};
  threads = std::max(1u, threads);
  while (!frontier.empty()) {
    std::set<Family> next;
    const std::size_t chunks = std::min<std::size_t>(threads, frontier.size());
    const std::size_t per = (frontier.size() + chunks - 1) / chunks;
    std::vector<std::future<Expansion>> jobs;
    for (std::size_t c = 0; c < chunks; ++c) {
      const std::size_t lo = c * per;
      const std::size_t hi = std::min(frontier.size(), lo + per);
      if (lo >= hi) break;
      std::span<const Family> part(frontier.data() + lo, hi - lo);
      jobs.push_back(std::async(chunks > 1 ? std::launch::async : std::launch::deferred,
                                [&, part] { return expand(n, target, candidates, part); }));
    }
    for (auto& job : jobs) {
      Expansion e = job.get();
      next.merge(e.next);
      results.merge(e.done);
    }
    frontier.assign(next.begin(), next.end());
  }

  std::vector<ForgetfulMorphism> out;
  for (const auto& fam : results) {
    ForgetfulMorphism m{n, {}};
    for (auto mask : fam) m.forgotten.push_back(IndexSet::from_mask(n, mask));
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(), [](const ForgetfulMorphism& a, const ForgetfulMorphism& b) {
    if (a.forgotten.size() != b.forgotten.size()) return a.forgotten.size() < b.forgotten.size();
    return set_list_less(a.forgotten, b.forgotten);
  });
  return out;
}

}  // namespace kapranov
