#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tolift/algebra.hpp"

namespace tolift {

using Pair = std::pair<Element, Element>;

// Dense n x n boolean matrix.
class BinaryRelation {
 public:
  explicit BinaryRelation(std::size_t n) : n_(n), bits_(n * n, false) {}

  static BinaryRelation diagonal(std::size_t n);
  static BinaryRelation full(std::size_t n);
  // Throws OutOfRange for entries >= n.
  static BinaryRelation from_pairs(std::size_t n, std::vector<Pair> const& ps);

  std::size_t size() const noexcept { return n_; }
  bool contains(Element i, Element j) const { return bits_[i * n_ + j]; }
  // Returns true if the pair was not present before.
  bool insert(Element i, Element j);
  void erase(Element i, Element j) { bits_[i * n_ + j] = false; }

  std::size_t count() const;
  // Member pairs in row-major order.
  std::vector<Pair> pairs() const;

  bool is_reflexive() const;
  bool is_symmetric() const;
  bool is_transitive() const;
  bool is_subset_of(BinaryRelation const& other) const;

  friend bool operator==(BinaryRelation const&, BinaryRelation const&)
      = default;

  // (pair count, row-major matrix bits with absent < present).
  friend bool canonical_less(BinaryRelation const& a, BinaryRelation const& b);

 private:
  std::size_t n_;
  std::vector<bool> bits_;
};

BinaryRelation intersection(BinaryRelation const& a, BinaryRelation const& b);

// Identifies the algebra a relation was verified against.
std::uint64_t fingerprint(FiniteAlgebra const& alg);

struct CompatibilityViolation {
  std::size_t op;
  std::vector<Pair> arguments;
  Pair image;
};

struct CompatibilityResult {
  bool compatible = true;
  std::optional<CompatibilityViolation> violation;

  explicit operator bool() const noexcept { return compatible; }
};

CompatibilityResult is_compatible(FiniteAlgebra const& alg,
                                  BinaryRelation const& r);
bool is_tolerance(FiniteAlgebra const& alg, BinaryRelation const& r);
bool is_congruence(FiniteAlgebra const& alg, BinaryRelation const& r);

// A relation certified reflexive, symmetric and compatible on one algebra.
class Tolerance {
 public:
  // Throws NotATolerance (or SizeMismatch) when `r` fails the check.
  static Tolerance verify(FiniteAlgebra const& alg, BinaryRelation r);

  BinaryRelation const& relation() const noexcept { return rel_; }
  std::size_t size() const noexcept { return rel_.size(); }
  bool contains(Element i, Element j) const { return rel_.contains(i, j); }
  std::uint64_t algebra_fingerprint() const noexcept { return algebra_; }
  bool certified_for(FiniteAlgebra const& alg) const {
    return alg.size() == rel_.size() && fingerprint(alg) == algebra_;
  }

  friend bool operator==(Tolerance const& a, Tolerance const& b) {
    return a.rel_ == b.rel_;
  }

 private:
  Tolerance(BinaryRelation r, std::uint64_t algebra)
      : rel_(std::move(r)), algebra_(algebra) {}

  BinaryRelation rel_;
  std::uint64_t algebra_;
};

// A tolerance additionally certified transitive.
class Congruence {
 public:
  static Congruence verify(FiniteAlgebra const& alg, BinaryRelation r);

  Tolerance const& tolerance() const noexcept { return tol_; }
  BinaryRelation const& relation() const noexcept { return tol_.relation(); }

 private:
  explicit Congruence(Tolerance t) : tol_(std::move(t)) {}

  Tolerance tol_;
};

class ElementMap {
 public:
  // Throws OutOfRange when an image is >= codomain.
  ElementMap(std::size_t codomain, std::vector<Element> images);

  static ElementMap identity(std::size_t n);

  std::size_t domain() const noexcept { return images_.size(); }
  std::size_t codomain() const noexcept { return codomain_; }
  Element operator()(Element x) const { return images_[x]; }
  std::vector<Element> const& images() const noexcept { return images_; }
  bool is_surjective() const;

  friend bool operator==(ElementMap const&, ElementMap const&) = default;

 private:
  std::size_t codomain_;
  std::vector<Element> images_;
};

Tolerance tolerance_generated(FiniteAlgebra const& alg,
                              std::vector<Pair> const& pairs);

inline constexpr std::size_t default_enumeration_cap = 5;

// Every tolerance of `alg`, ordered by canonical_less.
std::vector<Tolerance> enumerate_tolerances(
    FiniteAlgebra const& alg, std::size_t cap_n = default_enumeration_cap);

BinaryRelation kernel(ElementMap const& m);
// Kernel certified as a congruence of `domain_alg`; throws NotACongruence when
// the kernel is not compatible with its operations.
Congruence kernel(ElementMap const& m, FiniteAlgebra const& domain_alg);

BinaryRelation image_under(ElementMap const& m, BinaryRelation const& r);

}  // namespace tolift
