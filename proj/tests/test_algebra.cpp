#include <doctest.h>

#include <random>

#include "support/corpus.hpp"
#include "support/oracle.hpp"
#include "tolift/algebra.hpp"
#include "tolift/error.hpp"

using namespace tolift;
using namespace tolift::testing;

TEST_CASE("FiniteAlgebra validates its tables") {
  CHECK_THROWS_AS(binary_algebra(2, {0, 1, 1}), Error);
  CHECK_THROWS_AS(binary_algebra(2, {0, 1, 1, 2}), OutOfRange);
  CHECK_THROWS_AS(FiniteAlgebra(0, Signature{}, {}), Error);
  CHECK_NOTHROW(FiniteAlgebra(1, Signature{}, {}));
}

TEST_CASE("evaluate") {
  auto const sig = binary_sig();
  auto const chain = min_chain(3);
  CHECK(evaluate(chain, parse_term("m(m(x,y),z)", sig),
                 {{"x", 2}, {"y", 1}, {"z", 0}})
        == 0);
  CHECK(evaluate(chain, parse_term("x", sig), {{"x", 1}}) == 1);
  CHECK(evaluate(chain, parse_term("m(x,y)", sig), {{"x", 2}, {"y", 2}}) == 2);

  CHECK_THROWS_AS(evaluate(chain, parse_term("m(x,y)", sig), {{"x", 0}}),
                  EvaluationError);
  CHECK_THROWS_AS(evaluate(chain, Term::apply("f", {Term::variable("x")}),
                           {{"x", 0}}),
                  EvaluationError);
}

TEST_CASE("evaluate agrees with the reference evaluator") {
  auto algebras = corpus();
  algebras.push_back({"mixed", mixed_algebra(), false, false});
  std::mt19937 rng(3);
  for (auto const& [name, alg, a, c] : algebras) {
    CAPTURE(name);
    for (int trial = 0; trial < 200; ++trial) {
      auto const t
          = random_term(rng, alg.signature(), variable_pool(), 4);
      Assignment as;
      for (auto const& v : variable_pool()) {
        as[v] = static_cast<Element>(rng() % alg.size());
      }
      CHECK(evaluate(alg, t, as) == oracle::eval(alg, t, as));
    }
  }
}

TEST_CASE("satisfies") {
  auto const sig = binary_sig();
  auto const assoc = parse_identity("m(m(x,y),z) = m(x,m(y,z))", sig);
  auto const comm = parse_identity("m(x,y) = m(y,x)", sig);
  auto const left = parse_identity("m(x,y) = x", sig);

  CHECK(satisfies(min_chain(3), assoc).holds);
  CHECK(satisfies(left_zero(2), left).holds);

  auto const r = satisfies(left_zero(2), comm);
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness);
  CHECK(*r.witness == Assignment{{"x", 0}, {"y", 1}});
  CHECK(format_assignment(*r.witness, comm.variables()) == "x=0 y=1");

  CHECK_THROWS_AS(satisfies(min_chain(3), assoc, 26), CapExceeded);
  CHECK_NOTHROW(satisfies(min_chain(3), assoc, 27));
}

TEST_CASE("satisfies witnesses match the exhaustive scan") {
  std::mt19937 rng(5);
  auto const vars = std::vector<std::string>{"x", "y", "z"};
  for (auto const& [name, alg, a, c] : corpus()) {
    CAPTURE(name);
    for (int trial = 0; trial < 100; ++trial) {
      Identity const id(random_term(rng, alg.signature(), vars, 3),
                        random_term(rng, alg.signature(), vars, 3));
      auto const got = satisfies(alg, id);
      auto const expected = oracle::first_failure(alg, id);
      CHECK(got.holds == !expected.has_value());
      if (expected) {
        REQUIRE(got.witness);
        CHECK(*got.witness == *expected);
        CHECK(oracle::eval(alg, id.lhs(), *got.witness)
              != oracle::eval(alg, id.rhs(), *got.witness));
      }
    }
  }
}

TEST_CASE("satisfies_all") {
  auto const sig = binary_sig();
  IdentitySet ids(sig, {parse_identity("m(m(x,y),z) = m(x,m(y,z))", sig),
                        parse_identity("m(x,y) = m(y,x)", sig)});

  auto const chain = satisfies_all(min_chain(3), ids);
  CHECK(chain.all_hold());
  CHECK(chain.outcomes.size() == 2);

  auto const lz = satisfies_all(left_zero(2), ids);
  CHECK_FALSE(lz.all_hold());
  CHECK(lz.outcomes[0].result.holds);
  CHECK_FALSE(lz.outcomes[1].result.holds);

  auto const none = satisfies_all(left_zero(2), IdentitySet(sig));
  CHECK(none.all_hold());
  CHECK(none.outcomes.empty());
}

TEST_CASE("direct_product") {
  auto const two = min_chain(2);
  auto const p = direct_product(two, two);
  CHECK(p.size() == 4);
  auto const enc = [](Element i, Element j) { return i * 2 + j; };
  std::vector<Element> const args{enc(1, 0), enc(0, 1)};
  CHECK(p.apply(0, args) == enc(0, 0));

  CHECK(direct_product(min_chain(3), min_chain(2)).size() == 6);

  auto const trivial = binary_algebra(1, {0});
  CHECK(direct_product(min_chain(3), trivial) == min_chain(3));
  CHECK(direct_product(trivial, cyclic_group(3)) == cyclic_group(3));

  CHECK_THROWS_AS(direct_product(min_chain(2), mixed_algebra()), SizeMismatch);
}

TEST_CASE("direct_product projections are homomorphisms") {
  std::vector<FiniteAlgebra> const small{min_chain(2), left_zero(2),
                                         two_atom_semilattice(),
                                         cyclic_group(3)};
  for (auto const& a1 : small) {
    for (auto const& a2 : small) {
      auto const p = direct_product(a1, a2);
      for (auto const& args : oracle::all_tuples(p.size(), 2)) {
        std::vector<Element> l, r;
        for (Element e : args) {
          l.push_back(static_cast<Element>(e / a2.size()));
          r.push_back(static_cast<Element>(e % a2.size()));
        }
        Element const out = p.apply(0, args);
        CHECK(out / a2.size() == a1.apply(0, l));
        CHECK(out % a2.size() == a2.apply(0, r));
      }
    }
  }
}

TEST_CASE("subuniverse_closure") {
  using Set = std::set<Element>;
  CHECK(subuniverse_closure(min_chain(3), {2}) == Set{2});
  CHECK(subuniverse_closure(min_chain(3), {1, 2}) == Set{1, 2});
  CHECK(subuniverse_closure(two_atom_semilattice(), {1, 2}) == Set{0, 1, 2});
  CHECK(subuniverse_closure(cyclic_group(3), {1}) == Set{0, 1, 2});
  // The constant of the mixed algebra is always generated.
  CHECK(subuniverse_closure(mixed_algebra(), {}) == Set{0});
  CHECK_THROWS_AS(subuniverse_closure(min_chain(3), {3}), OutOfRange);
}

TEST_CASE("subuniverse_closure is idempotent and monotone") {
  auto algebras = corpus();
  algebras.push_back({"mixed", mixed_algebra(), false, false});
  algebras.push_back({"4-chain", min_chain(4), true, true});
  for (auto const& [name, alg, a, c] : algebras) {
    CAPTURE(name);
    std::size_t const n = alg.size();
    auto const seed_of = [&](unsigned bits) {
      std::set<Element> s;
      for (Element i = 0; i < n; ++i) {
        if ((bits >> i) & 1U) {
          s.insert(i);
        }
      }
      return s;
    };
    for (unsigned s = 0; s < (1U << n); ++s) {
      auto const seed = seed_of(s);
      auto const cs = subuniverse_closure(alg, seed);
      CHECK(subuniverse_closure(alg, cs) == cs);
      CHECK(std::includes(cs.begin(), cs.end(), seed.begin(), seed.end()));
      for (unsigned t = s; t < (1U << n); t = (t + 1) | s) {
        auto const ct = subuniverse_closure(alg, seed_of(t));
        CHECK(std::includes(ct.begin(), ct.end(), cs.begin(), cs.end()));
      }
    }
  }
}
