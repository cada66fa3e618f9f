#include "tolift/algebra.hpp"

#include <algorithm>

#include "compiled_term.hpp"
#include "tolift/error.hpp"

namespace tolift {

FiniteAlgebra::FiniteAlgebra(std::size_t size, Signature sig,
                             std::vector<std::vector<Element>> tables)
    : size_(size), sig_(std::move(sig)), tables_(std::move(tables)) {
  if (size_ == 0) {
    throw Error("algebra universe must be nonempty");
  }
  if (tables_.size() != sig_.size()) {
    throw Error("expected " + std::to_string(sig_.size())
                + " operation table(s), got " + std::to_string(tables_.size()));
  }
  for (std::size_t op = 0; op < sig_.size(); ++op) {
    auto const expected = checked_power(size_, sig_[op].arity);
    if (!expected || tables_[op].size() != *expected) {
      throw Error("table for '" + sig_[op].name + "' has "
                  + std::to_string(tables_[op].size()) + " entries, expected "
                  + (expected ? std::to_string(*expected) : "too many"));
    }
    for (Element e : tables_[op]) {
      if (e >= size_) {
        throw OutOfRange("table for '" + sig_[op].name + "' contains "
                         + std::to_string(e) + ", outside universe of size "
                         + std::to_string(size_));
      }
    }
  }
}

std::size_t FiniteAlgebra::table_index(std::span<Element const> args) const {
  std::size_t idx = 0;
  for (Element a : args) {
    idx = idx * size_ + a;
  }
  return idx;
}

std::optional<std::size_t> checked_power(std::size_t n, std::size_t k,
                                         std::size_t limit) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (n != 0 && r > limit / n) {
      return std::nullopt;
    }
    r *= n;
  }
  if (r > limit) {
    return std::nullopt;
  }
  return r;
}

bool next_tuple(std::span<Element> tuple, std::size_t n) {
  for (std::size_t i = tuple.size(); i-- > 0;) {
    if (++tuple[i] < n) {
      return true;
    }
    tuple[i] = 0;
  }
  return false;
}

Element evaluate(FiniteAlgebra const& alg, Term const& t, Assignment const& a) {
  if (t.is_variable()) {
    auto const it = a.find(t.name());
    if (it == a.end()) {
      throw EvaluationError("unassigned variable '" + t.name() + "'");
    }
    if (it->second >= alg.size()) {
      throw OutOfRange("variable '" + t.name() + "' assigned "
                       + std::to_string(it->second)
                       + ", outside universe of size "
                       + std::to_string(alg.size()));
    }
    return it->second;
  }
  auto const op = alg.signature().find(t.name());
  if (!op) {
    throw EvaluationError("unknown operation '" + t.name() + "'");
  }
  if (alg.arity(*op) != t.args().size()) {
    throw EvaluationError("operation '" + t.name() + "' has arity "
                          + std::to_string(alg.arity(*op)));
  }
  std::vector<Element> args;
  args.reserve(t.args().size());
  for (auto const& c : t.args()) {
    args.push_back(evaluate(alg, c, a));
  }
  return alg.apply(*op, args);
}

SatisfactionResult satisfies(FiniteAlgebra const& alg, Identity const& id,
                             std::size_t cap) {
  auto const& vars = id.variables();
  if (!checked_power(alg.size(), vars.size(), cap)) {
    throw CapExceeded(std::to_string(alg.size()) + "^"
                      + std::to_string(vars.size())
                      + " assignments exceed the cap of "
                      + std::to_string(cap));
  }
  detail::CompiledTerm const lhs(id.lhs(), alg.signature(), vars);
  detail::CompiledTerm const rhs(id.rhs(), alg.signature(), vars);
  std::vector<Element> values(vars.size(), 0);
  std::vector<Element> stack;
  do {
    if (lhs.eval(alg, values, stack) != rhs.eval(alg, values, stack)) {
      Assignment w;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        w[vars[i]] = values[i];
      }
      return {false, std::move(w)};
    }
  } while (next_tuple(values, alg.size()));
  return {};
}

bool SatisfactionReport::all_hold() const {
  return std::all_of(outcomes.begin(), outcomes.end(),
                     [](IdentityOutcome const& o) { return o.result.holds; });
}

SatisfactionReport satisfies_all(FiniteAlgebra const& alg,
                                 IdentitySet const& ids, std::size_t cap) {
  SatisfactionReport report;
  for (auto const& id : ids) {
    report.outcomes.push_back({id, satisfies(alg, id, cap)});
  }
  return report;
}

FiniteAlgebra direct_product(FiniteAlgebra const& a1, FiniteAlgebra const& a2) {
  if (!(a1.signature() == a2.signature())) {
    throw SizeMismatch("direct product of algebras with different signatures");
  }
  std::size_t const n2 = a2.size();
  std::size_t const n = a1.size() * n2;
  std::vector<std::vector<Element>> tables;
  for (std::size_t op = 0; op < a1.signature().size(); ++op) {
    std::size_t const k = a1.arity(op);
    auto const len = checked_power(n, k);
    if (!len) {
      throw CapExceeded("product table too large");
    }
    std::vector<Element> table;
    table.reserve(*len);
    std::vector<Element> args(k, 0), left(k), right(k);
    do {
      for (std::size_t i = 0; i < k; ++i) {
        left[i] = static_cast<Element>(args[i] / n2);
        right[i] = static_cast<Element>(args[i] % n2);
      }
      table.push_back(
          static_cast<Element>(a1.apply(op, left) * n2 + a2.apply(op, right)));
    } while (next_tuple(args, n));
    tables.push_back(std::move(table));
  }
  return FiniteAlgebra(n, a1.signature(), std::move(tables));
}

std::set<Element> subuniverse_closure(FiniteAlgebra const& alg,
                                      std::set<Element> seed) {
  for (Element e : seed) {
    if (e >= alg.size()) {
      throw OutOfRange("seed element " + std::to_string(e)
                       + " outside universe of size "
                       + std::to_string(alg.size()));
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Element> const members(seed.begin(), seed.end());
    for (std::size_t op = 0; op < alg.signature().size(); ++op) {
      std::size_t const k = alg.arity(op);
      if (k > 0 && members.empty()) {
        continue;
      }
      std::vector<Element> pick(k, 0), args(k);
      do {
        for (std::size_t i = 0; i < k; ++i) {
          args[i] = members[pick[i]];
        }
        changed |= seed.insert(alg.apply(op, args)).second;
      } while (next_tuple(pick, members.size()));
    }
  }
  return seed;
}

std::string format_assignment(Assignment const& a,
                              std::vector<std::string> const& order) {
  std::string out;
  for (auto const& v : order) {
    auto const it = a.find(v);
    if (it == a.end()) {
      continue;
    }
    if (!out.empty()) {
      out += ' ';
    }
    out += v + "=" + std::to_string(it->second);
  }
  return out;
}

}  // namespace tolift
