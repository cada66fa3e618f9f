#pragma once

// Signatures, first-order terms and identities over them, in prefix
// functional notation:
//
//   term := IDENT | IDENT '(' term (',' term)* ')'
//
// An identifier is an operation application iff the signature declares it;
// anything else is a variable.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tolift {

struct OpSymbol {
  std::string name;
  std::size_t arity;

  friend bool operator==(OpSymbol const&, OpSymbol const&) = default;
};

bool is_identifier(std::string_view text);

class Signature {
 public:
  Signature() = default;
  // Throws tolift::Error on duplicate or malformed names.
  explicit Signature(std::vector<OpSymbol> ops);

  std::vector<OpSymbol> const& ops() const noexcept { return ops_; }
  std::size_t size() const noexcept { return ops_.size(); }
  OpSymbol const& operator[](std::size_t i) const { return ops_[i]; }

  std::optional<std::size_t> find(std::string_view name) const;
  bool declares(std::string_view name) const { return find(name).has_value(); }

  friend bool operator==(Signature const& a, Signature const& b) {
    return a.ops_ == b.ops_;
  }

 private:
  std::vector<OpSymbol> ops_;
};

// Parses "m/2,e/0" style declarations.
Signature parse_signature(std::string_view text);
std::string print_signature(Signature const& sig);

class Term {
 public:
  static Term variable(std::string name);
  static Term apply(std::string op, std::vector<Term> args = {});

  bool is_variable() const noexcept { return variable_; }
  std::string const& name() const noexcept { return name_; }
  std::vector<Term> const& args() const noexcept { return args_; }

  std::size_t depth() const;

  friend bool operator==(Term const& a, Term const& b);

 private:
  Term(bool variable, std::string name, std::vector<Term> args)
      : variable_(variable), name_(std::move(name)), args_(std::move(args)) {}

  bool variable_ = true;
  std::string name_;
  std::vector<Term> args_;
};

// Throws tolift::Error if `t` is not well formed over `sig`: wrong child
// count, undeclared operation, or a variable named like an operation.
void validate(Term const& t, Signature const& sig);

Term parse_term(std::string_view text, Signature const& sig);
std::string print_term(Term const& t);

std::map<std::string, std::size_t> variable_occurrences(Term const& t);

class Identity {
 public:
  Identity(Term lhs, Term rhs);

  Term const& lhs() const noexcept { return lhs_; }
  Term const& rhs() const noexcept { return rhs_; }
  // Distinct variables in first-occurrence order, lhs first.
  std::vector<std::string> const& variables() const noexcept {
    return variables_;
  }

  friend bool operator==(Identity const&, Identity const&) = default;

 private:
  Term lhs_;
  Term rhs_;
  std::vector<std::string> variables_;
};

Identity parse_identity(std::string_view text, Signature const& sig);
std::string print_identity(Identity const& id);

bool is_linear(Identity const& id);
bool is_balanced_linear(Identity const& id);

class IdentitySet {
 public:
  explicit IdentitySet(Signature sig) : sig_(std::move(sig)) {}
  // Each identity is validated against `sig`.
  IdentitySet(Signature sig, std::vector<Identity> ids);

  Signature const& signature() const noexcept { return sig_; }
  std::vector<Identity> const& identities() const noexcept { return ids_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  void add(Identity id);

  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

 private:
  Signature sig_;
  std::vector<Identity> ids_;
};

// One identity per line; '#' starts a comment; blank lines are skipped.
IdentitySet parse_identity_file(std::string_view text, Signature const& sig);

}  // namespace tolift
