#pragma once

// Lifting a tolerance T of a finite algebra A to a congruence: B is the
// subalgebra {(x, Y) : Y a block of T, x in Y} of A x (blocks of T), theta is
// the kernel of the projection onto the block coordinate, and phi is the
// projection onto A. Then phi(theta) = T, and B satisfies every linear
// identity that A does.

#include <cstddef>
#include <string>
#include <vector>

#include "tolift/algebra.hpp"
#include "tolift/complex.hpp"
#include "tolift/relation.hpp"
#include "tolift/term.hpp"

namespace tolift {

struct LiftElement {
  Element x;
  Element block;

  friend auto operator<=>(LiftElement const&, LiftElement const&) = default;
};

struct CheckResult {
  int number;
  std::string name;
  bool passed;
  std::string detail;
};

struct TransportOutcome {
  Identity identity;
  bool linear;
  bool balanced;
  SatisfactionResult in_a;
  SatisfactionResult in_b;

  // Only linear identities of A are promised to survive the lift.
  bool required() const noexcept { return linear && in_a.holds; }
  bool ok() const noexcept { return !required() || in_b.holds; }
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  std::vector<TransportOutcome> identities;
  // Identities that fail in A itself, i.e. A is outside the variety.
  std::vector<std::string> warnings;

  bool passed() const;
  CheckResult const& check(int number) const;
};

std::string format_report(VerificationReport const& report);

struct LiftResult {
  FiniteAlgebra b;
  // Ascending bitmask order.
  std::vector<SubsetCode> blocks;
  // Sorted by (block, x).
  std::vector<LiftElement> elements;
  // Unverified as stored; `lift` only produces congruences, and check (4) of
  // verify_lift re-establishes it for any other source.
  BinaryRelation theta;
  ElementMap phi;
  VerificationReport report;
};

struct LiftOptions {
  std::size_t cap_n = default_complex_cap;
  std::size_t cap_assignments = default_assignment_cap;
};

LiftResult lift(FiniteAlgebra const& alg, Tolerance const& t,
                IdentitySet const& ids, LiftOptions const& opts = {});
LiftResult lift(FiniteAlgebra const& alg, Tolerance const& t,
                LiftOptions const& opts = {});

// Re-derives every claim about `lr` from `alg` and `t` alone:
//   1. B is the subalgebra of A x (blocks) on {(x, Y) : x in Y}
//   2. phi is a homomorphism
//   3. phi is onto, witnessed by x -> (x, {x})
//   4. theta is a congruence of B
//   5. phi(theta) is contained in T
//   6. T is contained in phi(theta), witnessed by Y = {x1, x2}
//   7. linear identities of A hold in B (non-linear ones are only reported)
// Throws StructuralMismatch if the parts of `lr` do not fit together.
VerificationReport verify_lift(FiniteAlgebra const& alg, Tolerance const& t,
                               LiftResult const& lr, IdentitySet const& ids,
                               LiftOptions const& opts = {});

}  // namespace tolift
