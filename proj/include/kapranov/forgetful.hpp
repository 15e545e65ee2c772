#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kapranov/boundary.hpp"
#include "kapranov/index_set.hpp"

namespace kapranov {

/// psi = prod_j phi_{I_j}: the product of the maps forgetting each I_j.
struct ForgetfulMorphism {
  int n = 0;
  std::vector<IndexSet> forgotten;

  /// h = n-3 - sum_j (n-|I_j|-3); may be negative.
  int fiber_dim() const;
  bool operator==(const ForgetfulMorphism&) const = default;
  std::string to_string() const;
};

ForgetfulMorphism make_morphism(int n, const std::vector<std::vector<int>>& sets);

enum class IssueKind { EmptySet, TargetTooSmall, Inclusion, AmbientMismatch, NoSets };

struct MorphismIssue {
  IssueKind kind;
  std::vector<int> positions;  // 1-based indices into `forgotten`
  std::string message;
};

std::string_view issue_name(IssueKind k) noexcept;

/// Every violated structural constraint; empty when the morphism is valid.
std::vector<MorphismIssue> validate(const ForgetfulMorphism& m);

inline int fiber_dim(const ForgetfulMorphism& m) { return m.fiber_dim(); }

/// Subfamily S as 1-based positions, sorted.
using Subfamily = std::vector<int>;

/// Nonempty S failing  n-|cap_S I_j|-3 >= sum_S (n-|I_j|-3).  Throws
/// Errc::Precondition for invalid morphisms.
std::vector<Subfamily> star_violations(const ForgetfulMorphism& m);
bool is_surjective(const ForgetfulMorphism& m);

/// Strict inequality for every |S| >= 2. Requires a valid surjective morphism.
bool is_reduced(const ForgetfulMorphism& m);

/// The raw inequalities, without validation. Sets may be empty here.
bool satisfies_star(int n, std::span<const IndexSet> sets);
bool satisfies_strict_star(int n, std::span<const IndexSet> sets);

struct MergeStep {
  Subfamily positions;           // positions in the family before this step
  std::vector<IndexSet> merged;  // the sets that were replaced
  IndexSet result;               // their intersection
};

struct Reduction {
  ForgetfulMorphism reduced;
  std::vector<MergeStep> trace;
};

/// Repeatedly replaces a subfamily achieving equality in (*) by its
/// intersection until the strict inequality holds for every |S| >= 2. Among
/// equality subfamilies the lexicographically smallest position list merges
/// first; the intersection takes the place of the first merged set. A
/// birational input (h = 0) can collapse to the single empty set, which
/// stands for the identity.
Reduction reduce(const ForgetfulMorphism& m);

/// Reduction step with a caller-chosen subfamily; `s` must achieve equality.
ForgetfulMorphism merge_subfamily(const ForgetfulMorphism& m, const Subfamily& s);

/// All subfamilies with |S| >= 2 achieving equality in (*).
std::vector<Subfamily> equality_subfamilies(const ForgetfulMorphism& m);

/// Smallest chart not forgotten by any map; in that chart the fiber image is
/// linear of dimension h.
std::optional<int> linear_chart(const ForgetfulMorphism& m);

struct FiberComponent {
  enum class Kind { LinearSlice, Cone };
  Kind kind;
  IndexSet forgotten;
  /// Projective dimension of the component inside P^{n-3}; equals |I_j|.
  int dimension;
  int codimension;
  /// Cone vertex V^i_{I_j \ {i}}; empty when I_j = {i}.
  std::optional<VitalSpace> vertex;
  /// Degree of the rational normal curve the cone is built over; 0 for slices.
  int base_degree = 0;
};

/// Image in chart i of the general fiber, one component per forgotten set;
/// the fiber image is their intersection.
struct FiberDescriptor {
  int chart;
  std::vector<FiberComponent> components;
};

FiberDescriptor fiber_descriptor(const ForgetfulMorphism& m, int chart);

/// Valid, surjective, reduced morphisms with fiber dimension h, one per
/// relabelling orbit, in canonical form. Sorted by number of sets then by set
/// list. Requires 5 <= n <= 8 and h >= 1. Frontier expansion can be split
/// across `threads` workers; the output does not depend on it.
std::vector<ForgetfulMorphism> classify_orbits(int n, int h, unsigned threads = 1);

}  // namespace kapranov
