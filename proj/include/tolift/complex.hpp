#pragma once

// Algebras of complexes: the nonempty subsets of a finite algebra with every
// operation applied elementwise over all choices of arguments, and the
// subalgebra formed by the blocks of a tolerance.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tolift/algebra.hpp"
#include "tolift/relation.hpp"

namespace tolift {

// Nonempty subset of {0,...,n-1}; bit i set iff i is a member.
class SubsetCode {
 public:
  constexpr SubsetCode() = default;
  constexpr explicit SubsetCode(std::uint64_t bits) : bits_(bits) {}

  static SubsetCode singleton(Element x) { return SubsetCode(bit(x)); }
  static SubsetCode of(std::initializer_list<Element> xs);

  constexpr std::uint64_t bits() const noexcept { return bits_; }
  bool empty() const noexcept { return bits_ == 0; }
  bool contains(Element x) const { return (bits_ & bit(x)) != 0; }
  std::size_t cardinality() const noexcept {
    return static_cast<std::size_t>(std::popcount(bits_));
  }
  std::vector<Element> members() const;

  SubsetCode& operator|=(SubsetCode other) {
    bits_ |= other.bits_;
    return *this;
  }

  friend auto operator<=>(SubsetCode, SubsetCode) = default;

  static constexpr std::uint64_t bit(Element x) { return std::uint64_t{1} << x; }

 private:
  std::uint64_t bits_ = 0;
};

// "{0,2}"
std::string format_subset(SubsetCode s);

using SubsetAssignment = std::map<std::string, SubsetCode>;

inline constexpr std::size_t default_complex_cap = 6;

// {f(x_1,...,x_k) : x_i in X_i}
SubsetCode complex_apply(FiniteAlgebra const& alg, std::size_t op,
                         std::span<SubsetCode const> args);

class ComplexAlgebra {
 public:
  ComplexAlgebra(FiniteAlgebra base, FiniteAlgebra algebra)
      : base_(std::move(base)), algebra_(std::move(algebra)) {}

  FiniteAlgebra const& base() const noexcept { return base_; }
  // The complex algebra itself, over indices into carrier order.
  FiniteAlgebra const& algebra() const noexcept { return algebra_; }

  std::size_t carrier_size() const noexcept { return algebra_.size(); }
  // Carrier is every nonempty subset in ascending bitmask order.
  SubsetCode subset(Element index) const { return SubsetCode(index + 1); }
  Element index_of(SubsetCode s) const {
    return static_cast<Element>(s.bits() - 1);
  }
  std::vector<SubsetCode> carrier() const;

 private:
  FiniteAlgebra base_;
  FiniteAlgebra algebra_;
};

ComplexAlgebra complex_algebra(FiniteAlgebra const& alg,
                               std::size_t cap_n = default_complex_cap);

// Compositional evaluation inside the complex algebra.
SubsetCode complex_term_eval(ComplexAlgebra const& c, Term const& t,
                             SubsetAssignment const& a);

// {t(x_1,...,x_m) : x_i in X_i}, one choice per variable.
SubsetCode pointwise_term_eval(FiniteAlgebra const& alg, Term const& t,
                               SubsetAssignment const& a);

class BlockAlgebra {
 public:
  BlockAlgebra(FiniteAlgebra base, Tolerance tolerance,
               std::vector<SubsetCode> blocks, FiniteAlgebra algebra)
      : base_(std::move(base)),
        tolerance_(std::move(tolerance)),
        blocks_(std::move(blocks)),
        algebra_(std::move(algebra)) {}

  FiniteAlgebra const& base() const noexcept { return base_; }
  Tolerance const& tolerance() const noexcept { return tolerance_; }
  // Ascending bitmask order.
  std::vector<SubsetCode> const& blocks() const noexcept { return blocks_; }
  FiniteAlgebra const& algebra() const noexcept { return algebra_; }

  std::optional<Element> index_of(SubsetCode s) const;

 private:
  FiniteAlgebra base_;
  Tolerance tolerance_;
  std::vector<SubsetCode> blocks_;
  FiniteAlgebra algebra_;
};

// True iff X x X is contained in `r`.
bool is_block(BinaryRelation const& r, SubsetCode x);

// Throws NotATolerance if `t` does not hold up on `alg`, CapExceeded past
// `cap_n`, ConsistencyError if the blocks fail to be closed.
BlockAlgebra block_algebra(FiniteAlgebra const& alg, Tolerance const& t,
                           std::size_t cap_n = default_complex_cap);

}  // namespace tolift
