#include <doctest.h>

#include <random>

#include "support/corpus.hpp"
#include "support/oracle.hpp"
#include "tolift/complex.hpp"
#include "tolift/error.hpp"

using namespace tolift;
using namespace tolift::testing;

namespace {
  SubsetCode set(std::initializer_list<Element> xs) { return SubsetCode::of(xs); }

  std::set<Element> as_set(SubsetCode s) {
    auto const m = s.members();
    return {m.begin(), m.end()};
  }
}  // namespace

TEST_CASE("SubsetCode") {
  auto const s = set({0, 2});
  CHECK(s.bits() == 5);
  CHECK(s.cardinality() == 2);
  CHECK(s.contains(2));
  CHECK_FALSE(s.contains(1));
  CHECK(s.members() == std::vector<Element>{0, 2});
  CHECK(format_subset(s) == "{0,2}");
  CHECK(SubsetCode::singleton(1) < set({0, 1}));
}

TEST_CASE("complex_algebra") {
  auto const chain = min_chain(3);
  auto const c = complex_algebra(chain);
  CHECK(c.carrier_size() == 7);
  CHECK(c.carrier().front() == set({0}));
  CHECK(c.carrier().back() == set({0, 1, 2}));

  std::vector<Element> const args{c.index_of(set({0, 1})),
                                  c.index_of(set({1, 2}))};
  CHECK(c.subset(c.algebra().apply(0, args)) == set({0, 1}));

  CHECK_THROWS_AS(complex_algebra(min_chain(7)), CapExceeded);
  CHECK_NOTHROW(complex_algebra(min_chain(7), 7));
  CHECK_THROWS_AS(complex_algebra(min_chain(3), 2), CapExceeded);
}

TEST_CASE("complex operations on singletons act like the base") {
  auto algebras = corpus();
  algebras.push_back({"mixed", mixed_algebra(), false, false});
  for (auto const& [name, alg, a, c] : algebras) {
    CAPTURE(name);
    auto const cx = complex_algebra(alg);
    for (std::size_t op = 0; op < alg.signature().size(); ++op) {
      for (auto const& xs : oracle::all_tuples(alg.size(), alg.arity(op))) {
        std::vector<Element> idx;
        for (Element x : xs) {
          idx.push_back(cx.index_of(SubsetCode::singleton(x)));
        }
        CHECK(cx.subset(cx.algebra().apply(op, idx))
              == SubsetCode::singleton(oracle::lookup(alg, op, xs)));
      }
    }
  }
}

TEST_CASE("complex tables decode to elementwise images") {
  auto const alg = mixed_algebra();
  auto const cx = complex_algebra(alg);
  for (std::size_t op = 0; op < alg.signature().size(); ++op) {
    for (auto const& idx : oracle::all_tuples(cx.carrier_size(), alg.arity(op))) {
      std::set<Element> expected;
      std::vector<std::set<Element>> args;
      for (Element i : idx) {
        args.push_back(as_set(cx.subset(i)));
      }
      for (auto const& xs : oracle::all_tuples(alg.size(), alg.arity(op))) {
        bool inside = true;
        for (std::size_t i = 0; i < xs.size(); ++i) {
          inside = inside && args[i].contains(xs[i]);
        }
        if (inside) {
          expected.insert(oracle::lookup(alg, op, xs));
        }
      }
      CHECK(as_set(cx.subset(cx.algebra().apply(op, idx))) == expected);
    }
  }
}

TEST_CASE("complex_term_eval and pointwise_term_eval") {
  auto const sig = binary_sig();
  auto const chain = min_chain(3);
  auto const semi = two_atom_semilattice();

  auto const mxy = parse_term("m(x,y)", sig);
  SubsetAssignment const a{{"x", set({0, 1})}, {"y", set({1, 2})}};
  CHECK(complex_term_eval(complex_algebra(chain), mxy, a) == set({0, 1}));
  CHECK(pointwise_term_eval(chain, mxy, a) == set({0, 1}));

  auto const mxx = parse_term("m(x,x)", sig);
  SubsetAssignment const b{{"x", set({1, 2})}};
  auto const cx = complex_term_eval(complex_algebra(semi), mxx, b);
  auto const pw = pointwise_term_eval(semi, mxx, b);
  CHECK(cx == set({0, 1, 2}));
  CHECK(pw == set({1, 2}));
  CHECK((cx.bits() & pw.bits()) == pw.bits());
  CHECK(cx != pw);

  auto const x = parse_term("x", sig);
  SubsetAssignment const c{{"x", set({0, 2})}};
  CHECK(complex_term_eval(complex_algebra(chain), x, c) == set({0, 2}));
  CHECK(pointwise_term_eval(chain, x, c) == set({0, 2}));

  CHECK_THROWS_AS(pointwise_term_eval(chain, mxy, c), EvaluationError);
  CHECK_THROWS_AS(complex_term_eval(complex_algebra(chain), mxy, c),
                  EvaluationError);
  CHECK_THROWS_AS(pointwise_term_eval(chain, x, {{"x", SubsetCode{}}}),
                  OutOfRange);
  CHECK_THROWS_AS(pointwise_term_eval(chain, x, {{"x", set({3})}}),
                  OutOfRange);
}

TEST_CASE("pointwise evaluation matches the listing oracle") {
  auto const alg = mixed_algebra();
  std::mt19937 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    auto const t = random_term(rng, alg.signature(), {"x", "y"}, 3);
    SubsetAssignment a;
    std::map<std::string, std::set<Element>> listed;
    for (auto const* v : {"x", "y"}) {
      auto const s = SubsetCode(1 + rng() % 7);
      a[v] = s;
      listed[v] = as_set(s);
    }
    // Unused variables would widen the oracle's listing but not the result.
    CHECK(as_set(pointwise_term_eval(alg, t, a))
          == oracle::pointwise(alg, t, listed));
  }
}

TEST_CASE("complex evaluation equals pointwise on linear terms") {
  std::vector<FiniteAlgebra> const algebras{min_chain(4), mixed_algebra(),
                                            two_atom_semilattice(),
                                            random_magma(3, 99)};
  std::mt19937 rng(29);
  for (auto const& alg : algebras) {
    auto const cx = complex_algebra(alg);
    for (int trial = 0; trial < 40; ++trial) {
      auto const t
          = random_linear_term(rng, alg.signature(), {"x", "y", "z"}, 3);
      auto const arbitrary
          = random_term(rng, alg.signature(), {"x", "y", "z"}, 3);
      for (int s = 0; s < 30; ++s) {
        SubsetAssignment a;
        for (auto const* v : {"x", "y", "z"}) {
          a[v] = SubsetCode(1 + rng() % ((1U << alg.size()) - 1));
        }
        CHECK(complex_term_eval(cx, t, a) == pointwise_term_eval(alg, t, a));
        auto const c = complex_term_eval(cx, arbitrary, a);
        auto const p = pointwise_term_eval(alg, arbitrary, a);
        CHECK((c.bits() & p.bits()) == p.bits());
      }
    }
  }
}

TEST_CASE("block_algebra") {
  auto const chain = min_chain(3);
  auto const t1 = tolerance_generated(chain, {{0, 1}, {1, 2}});
  auto const ba = block_algebra(chain, t1);
  CHECK(ba.blocks()
        == std::vector<SubsetCode>{set({0}), set({1}), set({0, 1}), set({2}),
                                   set({1, 2})});
  CHECK(ba.algebra().size() == 5);
  CHECK(ba.index_of(set({0, 2})) == std::nullopt);
  CHECK(ba.index_of(set({1, 2})) == Element{4});

  for (auto const& [name, alg, a, c] : corpus()) {
    CAPTURE(name);
    std::size_t const n = alg.size();
    auto const diag = block_algebra(alg, Tolerance::verify(alg, BinaryRelation::diagonal(n)));
    CHECK(diag.blocks().size() == n);
    for (auto const& b : diag.blocks()) {
      CHECK(b.cardinality() == 1);
    }
    auto const full = block_algebra(alg, Tolerance::verify(alg, BinaryRelation::full(n)));
    CHECK(full.blocks().size() == (std::size_t{1} << n) - 1);
    // With T full, the block algebra is the whole complex algebra.
    CHECK(full.algebra() == complex_algebra(alg).algebra());
  }
}

TEST_CASE("block_algebra re-verifies tolerances from another algebra") {
  auto const chain = min_chain(3);
  auto const z3 = cyclic_group(3);
  auto const t1 = tolerance_generated(chain, {{0, 1}, {1, 2}});
  CHECK_FALSE(t1.certified_for(z3));
  CHECK_THROWS_AS(block_algebra(z3, t1), NotATolerance);
  auto const d = Tolerance::verify(chain, BinaryRelation::diagonal(3));
  CHECK_NOTHROW(block_algebra(z3, d));
  CHECK_THROWS_AS(block_algebra(min_chain(7), Tolerance::verify(
                                    min_chain(7), BinaryRelation::diagonal(7))),
                  CapExceeded);
}

TEST_CASE("every enumerated tolerance yields closed blocks") {
  auto algebras = corpus();
  algebras.push_back({"mixed", mixed_algebra(), false, false});
  algebras.push_back({"4-chain", min_chain(4), true, true});
  for (auto const& [name, alg, a, c] : algebras) {
    CAPTURE(name);
    auto const cx = complex_algebra(alg);
    for (auto const& t : enumerate_tolerances(alg)) {
      auto const ba = block_algebra(alg, t);
      CHECK(ba.blocks().size() >= alg.size());
      for (Element x = 0; x < alg.size(); ++x) {
        CHECK(ba.index_of(SubsetCode::singleton(x)).has_value());
      }
      // Each block table agrees with the full complex algebra.
      for (std::size_t op = 0; op < alg.signature().size(); ++op) {
        for (auto const& idx :
             oracle::all_tuples(ba.blocks().size(), alg.arity(op))) {
          std::vector<Element> cidx;
          for (Element i : idx) {
            cidx.push_back(cx.index_of(ba.blocks()[i]));
          }
          CHECK(ba.blocks()[ba.algebra().apply(op, idx)]
                == cx.subset(cx.algebra().apply(op, cidx)));
        }
      }
    }
  }
}
