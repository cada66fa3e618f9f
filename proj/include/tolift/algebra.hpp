#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tolift/term.hpp"

namespace tolift {

using Element = std::uint32_t;
using Assignment = std::map<std::string, Element>;

// A finite algebra on {0,...,n-1}. Each operation of arity k is stored as a
// flat table of n^k entries, row-major with the leftmost argument most
// significant.
class FiniteAlgebra {
 public:
  // Throws tolift::Error when a table has the wrong length or an entry lies
  // outside the universe.
  FiniteAlgebra(std::size_t size, Signature sig,
                std::vector<std::vector<Element>> tables);

  std::size_t size() const noexcept { return size_; }
  Signature const& signature() const noexcept { return sig_; }
  std::span<Element const> table(std::size_t op) const { return tables_[op]; }
  std::size_t arity(std::size_t op) const { return sig_[op].arity; }

  std::size_t table_index(std::span<Element const> args) const;
  Element apply(std::size_t op, std::span<Element const> args) const {
    return tables_[op][table_index(args)];
  }

  friend bool operator==(FiniteAlgebra const&, FiniteAlgebra const&) = default;

 private:
  std::size_t size_;
  Signature sig_;
  std::vector<std::vector<Element>> tables_;
};

// n^k with an overflow check; std::nullopt when the result exceeds `limit`.
std::optional<std::size_t> checked_power(std::size_t n, std::size_t k,
                                         std::size_t limit = SIZE_MAX);

// Odometer over {0,...,n-1}^k in lexicographic order, last position fastest.
// Returns false once the tuple wraps around to all zeros.
bool next_tuple(std::span<Element> tuple, std::size_t n);

Element evaluate(FiniteAlgebra const& alg, Term const& t, Assignment const& a);

inline constexpr std::size_t default_assignment_cap = 10'000'000;

struct SatisfactionResult {
  bool holds = true;
  // Lexicographically first failing assignment (variables in identity order,
  // first variable most significant).
  std::optional<Assignment> witness;

  explicit operator bool() const noexcept { return holds; }
};

SatisfactionResult satisfies(FiniteAlgebra const& alg, Identity const& id,
                             std::size_t cap = default_assignment_cap);

struct IdentityOutcome {
  Identity identity;
  SatisfactionResult result;
};

struct SatisfactionReport {
  std::vector<IdentityOutcome> outcomes;

  bool all_hold() const;
};

SatisfactionReport satisfies_all(FiniteAlgebra const& alg,
                                 IdentitySet const& ids,
                                 std::size_t cap = default_assignment_cap);

// Pair (i, j) is encoded as i * a2.size() + j.
FiniteAlgebra direct_product(FiniteAlgebra const& a1, FiniteAlgebra const& a2);

std::set<Element> subuniverse_closure(FiniteAlgebra const& alg,
                                      std::set<Element> seed);

// Renders "x=0 y=1" in the identity's variable order.
std::string format_assignment(Assignment const& a,
                              std::vector<std::string> const& order);

}  // namespace tolift
