#pragma once

#include <string>
#include <vector>

#include "tolift/algebra.hpp"
#include "tolift/error.hpp"

namespace tolift::detail {

// A term flattened to postorder against a fixed signature and variable list,
// so brute-force scans avoid map lookups per evaluation.
class CompiledTerm {
 public:
  CompiledTerm(Term const& t, Signature const& sig,
               std::vector<std::string> const& variables) {
    compile(t, sig, variables);
  }

  Element eval(FiniteAlgebra const& alg, std::vector<Element> const& values,
               std::vector<Element>& stack) const {
    stack.clear();
    for (auto const& node : program_) {
      if (node.is_variable) {
        stack.push_back(values[node.index]);
        continue;
      }
      auto const first = stack.size() - node.arity;
      Element const r = alg.apply(
          node.index, std::span<Element const>(stack.data() + first, node.arity));
      stack.resize(first);
      stack.push_back(r);
    }
    return stack.back();
  }

 private:
  struct Node {
    bool is_variable;
    std::size_t index;
    std::size_t arity;
  };

  void compile(Term const& t, Signature const& sig,
               std::vector<std::string> const& variables) {
    if (t.is_variable()) {
      for (std::size_t i = 0; i < variables.size(); ++i) {
        if (variables[i] == t.name()) {
          program_.push_back({true, i, 0});
          return;
        }
      }
      throw EvaluationError("unassigned variable '" + t.name() + "'");
    }
    auto const op = sig.find(t.name());
    if (!op) {
      throw EvaluationError("unknown operation '" + t.name() + "'");
    }
    if (sig[*op].arity != t.args().size()) {
      throw EvaluationError("operation '" + t.name() + "' applied to "
                            + std::to_string(t.args().size())
                            + " argument(s), arity is "
                            + std::to_string(sig[*op].arity));
    }
    for (auto const& a : t.args()) {
      compile(a, sig, variables);
    }
    program_.push_back({false, *op, t.args().size()});
  }

  std::vector<Node> program_;
};

}  // namespace tolift::detail
