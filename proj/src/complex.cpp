#include "tolift/complex.hpp"

#include <algorithm>

#include "compiled_term.hpp"
#include "tolift/error.hpp"

namespace tolift {

namespace {

  constexpr std::size_t max_table_entries = std::size_t{1} << 27;

  void check_subset(std::size_t n, SubsetCode s, std::string const& var) {
    if (s.empty()) {
      throw OutOfRange("variable '" + var + "' assigned the empty set");
    }
    if (n < 64 && (s.bits() >> n) != 0) {
      throw OutOfRange("variable '" + var + "' assigned " + format_subset(s)
                       + ", not a subset of a " + std::to_string(n)
                       + "-element universe");
    }
  }

  void check_cap(std::size_t n, std::size_t cap_n) {
    if (n > cap_n) {
      throw CapExceeded("complex construction on a " + std::to_string(n)
                        + "-element algebra exceeds the cap of "
                        + std::to_string(cap_n));
    }
    if (n >= 32) {
      throw CapExceeded("subset carrier of a " + std::to_string(n)
                        + "-element algebra cannot be represented");
    }
  }

  // Mixed-radix odometer: pick[i] ranges over choices[i].
  bool next_choice(std::vector<std::size_t>& pick,
                   std::vector<std::vector<Element>> const& choices) {
    for (std::size_t i = pick.size(); i-- > 0;) {
      if (++pick[i] < choices[i].size()) {
        return true;
      }
      pick[i] = 0;
    }
    return false;
  }

  std::vector<std::string> variables_of(Term const& t) {
    return Identity(t, t).variables();
  }

  // Tables for `ops` over a carrier of `size` elements, where `apply` maps an
  // argument tuple of carrier indices to a carrier index.
  template <typename Apply>
  std::vector<std::vector<Element>> build_tables(Signature const& sig,
                                                 std::size_t size,
                                                 Apply&& apply) {
    std::vector<std::vector<Element>> tables;
    for (std::size_t op = 0; op < sig.size(); ++op) {
      auto const len = checked_power(size, sig[op].arity, max_table_entries);
      if (!len) {
        throw CapExceeded("operation table for '" + sig[op].name
                          + "' would exceed "
                          + std::to_string(max_table_entries) + " entries");
      }
      std::vector<Element> table;
      table.reserve(*len);
      std::vector<Element> args(sig[op].arity, 0);
      do {
        table.push_back(apply(op, args));
      } while (next_tuple(args, size));
      tables.push_back(std::move(table));
    }
    return tables;
  }

}  // namespace

SubsetCode SubsetCode::of(std::initializer_list<Element> xs) {
  SubsetCode s;
  for (Element x : xs) {
    s.bits_ |= bit(x);
  }
  return s;
}

std::vector<Element> SubsetCode::members() const {
  std::vector<Element> out;
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
    out.push_back(static_cast<Element>(std::countr_zero(b)));
  }
  return out;
}

std::string format_subset(SubsetCode s) {
  std::string out = "{";
  bool first = true;
  for (Element x : s.members()) {
    if (!first) {
      out += ',';
    }
    out += std::to_string(x);
    first = false;
  }
  return out + "}";
}

SubsetCode complex_apply(FiniteAlgebra const& alg, std::size_t op,
                         std::span<SubsetCode const> args) {
  std::size_t const k = args.size();
  std::vector<std::vector<Element>> choices(k);
  for (std::size_t i = 0; i < k; ++i) {
    choices[i] = args[i].members();
    if (choices[i].empty()) {
      return SubsetCode{};
    }
  }
  SubsetCode out;
  std::vector<std::size_t> pick(k, 0);
  std::vector<Element> xs(k);
  do {
    for (std::size_t i = 0; i < k; ++i) {
      xs[i] = choices[i][pick[i]];
    }
    out |= SubsetCode::singleton(alg.apply(op, xs));
  } while (next_choice(pick, choices));
  return out;
}

std::vector<SubsetCode> ComplexAlgebra::carrier() const {
  std::vector<SubsetCode> out;
  out.reserve(carrier_size());
  for (Element i = 0; i < carrier_size(); ++i) {
    out.push_back(subset(i));
  }
  return out;
}

ComplexAlgebra complex_algebra(FiniteAlgebra const& alg, std::size_t cap_n) {
  check_cap(alg.size(), cap_n);
  std::size_t const carrier = (std::size_t{1} << alg.size()) - 1;
  std::vector<SubsetCode> args;
  auto tables = build_tables(
      alg.signature(), carrier,
      [&](std::size_t op, std::vector<Element> const& idx) {
        args.clear();
        for (Element i : idx) {
          args.push_back(SubsetCode(i + 1));
        }
        return static_cast<Element>(complex_apply(alg, op, args).bits() - 1);
      });
  return ComplexAlgebra(
      alg, FiniteAlgebra(carrier, alg.signature(), std::move(tables)));
}

SubsetCode complex_term_eval(ComplexAlgebra const& c, Term const& t,
                             SubsetAssignment const& a) {
  Assignment indices;
  for (auto const& [var, s] : a) {
    check_subset(c.base().size(), s, var);
    indices[var] = c.index_of(s);
  }
  return c.subset(evaluate(c.algebra(), t, indices));
}

SubsetCode pointwise_term_eval(FiniteAlgebra const& alg, Term const& t,
                               SubsetAssignment const& a) {
  auto const vars = variables_of(t);
  std::vector<std::vector<Element>> choices;
  for (auto const& v : vars) {
    auto const it = a.find(v);
    if (it == a.end()) {
      throw EvaluationError("unassigned variable '" + v + "'");
    }
    check_subset(alg.size(), it->second, v);
    choices.push_back(it->second.members());
  }
  detail::CompiledTerm const compiled(t, alg.signature(), vars);
  std::vector<std::size_t> pick(vars.size(), 0);
  std::vector<Element> values(vars.size()), stack;
  SubsetCode out;
  do {
    for (std::size_t i = 0; i < vars.size(); ++i) {
      values[i] = choices[i][pick[i]];
    }
    out |= SubsetCode::singleton(compiled.eval(alg, values, stack));
  } while (next_choice(pick, choices));
  return out;
}

std::optional<Element> BlockAlgebra::index_of(SubsetCode s) const {
  auto const it = std::lower_bound(blocks_.begin(), blocks_.end(), s);
  if (it == blocks_.end() || *it != s) {
    return std::nullopt;
  }
  return static_cast<Element>(it - blocks_.begin());
}

bool is_block(BinaryRelation const& r, SubsetCode x) {
  if (x.empty()) {
    return false;
  }
  auto const members = x.members();
  for (Element a : members) {
    if (a >= r.size()) {
      return false;
    }
    for (Element b : members) {
      if (!r.contains(a, b)) {
        return false;
      }
    }
  }
  return true;
}

BlockAlgebra block_algebra(FiniteAlgebra const& alg, Tolerance const& t,
                           std::size_t cap_n) {
  check_cap(alg.size(), cap_n);
  Tolerance const tol
      = t.certified_for(alg) ? t : Tolerance::verify(alg, t.relation());
  std::uint64_t const limit = std::uint64_t{1} << alg.size();
  std::vector<SubsetCode> blocks;
  for (std::uint64_t bits = 1; bits < limit; ++bits) {
    if (is_block(tol.relation(), SubsetCode(bits))) {
      blocks.emplace_back(bits);
    }
  }
  for (Element x = 0; x < alg.size(); ++x) {
    if (!std::binary_search(blocks.begin(), blocks.end(),
                            SubsetCode::singleton(x))) {
      throw ConsistencyError("singleton {" + std::to_string(x)
                             + "} is not a block");
    }
  }
  std::vector<SubsetCode> args;
  auto tables = build_tables(
      alg.signature(), blocks.size(),
      [&](std::size_t op, std::vector<Element> const& idx) {
        args.clear();
        for (Element i : idx) {
          args.push_back(blocks[i]);
        }
        auto const image = complex_apply(alg, op, args);
        auto const it = std::lower_bound(blocks.begin(), blocks.end(), image);
        if (it == blocks.end() || *it != image) {
          throw ConsistencyError("blocks are not closed under '"
                                 + alg.signature()[op].name + "': image "
                                 + format_subset(image) + " is not a block");
        }
        return static_cast<Element>(it - blocks.begin());
      });
  auto const count = blocks.size();
  return BlockAlgebra(alg, tol, std::move(blocks),
                      FiniteAlgebra(count, alg.signature(), std::move(tables)));
}

}  // namespace tolift
