#pragma once

// Small algebras and random generators shared by the unit and acceptance
// suites. Randomness uses std::mt19937 with plain modulo reduction so the
// generated data is identical on every platform.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tolift/algebra.hpp"
#include "tolift/term.hpp"

namespace tolift::testing {

inline Signature binary_sig() { return Signature({{"m", 2}}); }

inline FiniteAlgebra binary_algebra(std::size_t n, std::vector<Element> table) {
  return FiniteAlgebra(n, binary_sig(), {std::move(table)});
}

inline FiniteAlgebra min_chain(std::size_t n) {
  std::vector<Element> t;
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      t.push_back(std::min(a, b));
    }
  }
  return binary_algebra(n, std::move(t));
}

// Bottom 0, atoms 1 and 2, m(1,2) = 0.
inline FiniteAlgebra two_atom_semilattice() {
  return binary_algebra(3, {0, 0, 0, 0, 1, 0, 0, 0, 2});
}

inline FiniteAlgebra left_zero(std::size_t n) {
  std::vector<Element> t;
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      t.push_back(a);
    }
  }
  return binary_algebra(n, std::move(t));
}

inline FiniteAlgebra cyclic_group(std::size_t n) {
  std::vector<Element> t;
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      t.push_back(static_cast<Element>((a + b) % n));
    }
  }
  return binary_algebra(n, std::move(t));
}

inline FiniteAlgebra random_magma(std::size_t n, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<Element> t(n * n);
  for (auto& e : t) {
    e = static_cast<Element>(rng() % n);
  }
  return binary_algebra(n, std::move(t));
}

inline constexpr std::uint32_t corpus_magma_seed = 2012;

struct NamedAlgebra {
  std::string name;
  FiniteAlgebra alg;
  bool associative;
  bool commutative;
};

// The bundled corpus: every member has n <= 3 and a single binary operation.
inline std::vector<NamedAlgebra> corpus() {
  return {
      {"3-chain min", min_chain(3), true, true},
      {"two-atom semilattice", two_atom_semilattice(), true, true},
      {"2-element left-zero", left_zero(2), true, false},
      {"cyclic group of order 3", cyclic_group(3), true, true},
      {"random magma", random_magma(3, corpus_magma_seed), false, false},
  };
}

// Algebra with a constant, a unary and a ternary operation alongside m.
inline FiniteAlgebra mixed_algebra() {
  Signature sig({{"e", 0}, {"i", 1}, {"m", 2}, {"t", 3}});
  std::vector<Element> t3;
  for (Element a = 0; a < 3; ++a) {
    for (Element b = 0; b < 3; ++b) {
      for (Element c = 0; c < 3; ++c) {
        t3.push_back(std::max({a, b, c}));
      }
    }
  }
  return FiniteAlgebra(
      3, sig, {{0}, {0, 2, 1}, {0, 0, 0, 0, 1, 1, 0, 1, 2}, std::move(t3)});
}

inline std::vector<std::string> variable_pool() {
  return {"x", "y", "z", "w"};
}

// Random term of depth <= max_depth; leaves are variables or constants.
inline Term random_term(std::mt19937& rng, Signature const& sig,
                        std::vector<std::string> const& vars,
                        std::size_t max_depth) {
  std::vector<std::size_t> constants, others;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    (sig[i].arity == 0 ? constants : others).push_back(i);
  }
  bool const leaf = max_depth == 0 || others.empty() || rng() % 3 == 0;
  if (leaf) {
    if (!constants.empty() && rng() % 4 == 0) {
      return Term::apply(sig[constants[rng() % constants.size()]].name);
    }
    return Term::variable(vars[rng() % vars.size()]);
  }
  auto const& op = sig[others[rng() % others.size()]];
  std::vector<Term> args;
  for (std::size_t i = 0; i < op.arity; ++i) {
    args.push_back(random_term(rng, sig, vars, max_depth - 1));
  }
  return Term::apply(op.name, std::move(args));
}

namespace detail {
  inline Term linear_shape(std::mt19937& rng, Signature const& sig,
                           std::size_t max_depth, std::size_t& leaves_left,
                           std::vector<std::string>& fresh) {
    std::vector<std::size_t> fits;
    for (std::size_t i = 0; i < sig.size(); ++i) {
      if (sig[i].arity >= 1 && sig[i].arity <= leaves_left) {
        fits.push_back(i);
      }
    }
    if (max_depth == 0 || fits.empty() || rng() % 3 == 0) {
      --leaves_left;
      auto v = fresh.back();
      fresh.pop_back();
      return Term::variable(std::move(v));
    }
    auto const& op = sig[fits[rng() % fits.size()]];
    // Reserve one leaf for each remaining argument.
    leaves_left -= op.arity;
    std::vector<Term> args;
    for (std::size_t i = 0; i < op.arity; ++i) {
      ++leaves_left;
      args.push_back(linear_shape(rng, sig, max_depth - 1, leaves_left, fresh));
    }
    return Term::apply(op.name, std::move(args));
  }
}  // namespace detail

// Random term in which no variable repeats; at most vars.size() leaves.
inline Term random_linear_term(std::mt19937& rng, Signature const& sig,
                               std::vector<std::string> vars,
                               std::size_t max_depth) {
  for (std::size_t i = vars.size(); i > 1; --i) {
    std::swap(vars[i - 1], vars[rng() % i]);
  }
  std::size_t leaves = vars.size();
  return detail::linear_shape(rng, sig, max_depth, leaves, vars);
}

}  // namespace tolift::testing
