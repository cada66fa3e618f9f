#include "tolift/term.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "tolift/error.hpp"

namespace tolift {

namespace {

  bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) != 0;
  }

  bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
  }

  std::string_view trim(std::string_view s) {
    auto const ws = " \t\r\n";
    auto const b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
      return {};
    }
    auto const e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
  }

  class TermParser {
   public:
    TermParser(std::string_view text, Signature const& sig, std::size_t base)
        : text_(text), sig_(sig), base_(base) {}

    Term parse() {
      Term t = term();
      skip_ws();
      if (pos_ != text_.size()) {
        fail("unexpected '" + std::string(1, text_[pos_]) + "'");
      }
      return t;
    }

   private:
    [[noreturn]] void fail(std::string const& msg) const {
      throw ParseError(msg, base_ + pos_);
    }

    void skip_ws() {
      while (pos_ < text_.size()
             && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) {
        ++pos_;
      }
    }

    bool peek(char c) {
      skip_ws();
      return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(char c) {
      if (!peek(c)) {
        fail(pos_ < text_.size() ? "expected '" + std::string(1, c)
                                       + "' but found '"
                                       + std::string(1, text_[pos_]) + "'"
                                 : "expected '" + std::string(1, c)
                                       + "' but reached end of input");
      }
      ++pos_;
    }

    std::string identifier() {
      skip_ws();
      if (pos_ >= text_.size()) {
        fail("expected identifier but reached end of input");
      }
      if (!is_ident_start(text_[pos_])) {
        fail("expected identifier but found '" + std::string(1, text_[pos_])
             + "'");
      }
      auto const start = pos_;
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) {
        ++pos_;
      }
      return std::string(text_.substr(start, pos_ - start));
    }

    Term term() {
      skip_ws();
      auto const start = pos_;
      std::string name = identifier();
      auto const op = sig_.find(name);
      if (!op) {
        if (peek('(')) {
          fail("variable '" + name + "' written with an argument list");
        }
        return Term::variable(std::move(name));
      }
      std::size_t const arity = sig_[*op].arity;
      std::vector<Term> args;
      if (peek('(')) {
        ++pos_;
        if (peek(')')) {
          ++pos_;
        } else {
          args.push_back(term());
          while (peek(',')) {
            ++pos_;
            args.push_back(term());
          }
          expect(')');
        }
      }
      if (args.size() != arity) {
        throw ArityMismatch(name, arity, args.size(), base_ + start);
      }
      return Term::apply(std::move(name), std::move(args));
    }

    std::string_view text_;
    Signature const& sig_;
    std::size_t base_;
    std::size_t pos_ = 0;
  };

  void count_into(Term const& t, std::map<std::string, std::size_t>& out) {
    if (t.is_variable()) {
      ++out[t.name()];
      return;
    }
    for (auto const& a : t.args()) {
      count_into(a, out);
    }
  }

  void collect_variables(Term const& t, std::vector<std::string>& out) {
    if (t.is_variable()) {
      if (std::find(out.begin(), out.end(), t.name()) == out.end()) {
        out.push_back(t.name());
      }
      return;
    }
    for (auto const& a : t.args()) {
      collect_variables(a, out);
    }
  }

  void print_into(Term const& t, std::string& out) {
    out += t.name();
    if (t.is_variable()) {
      return;
    }
    out += '(';
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      if (i != 0) {
        out += ',';
      }
      print_into(t.args()[i], out);
    }
    out += ')';
  }

  Term parse_term_at(std::string_view text, Signature const& sig,
                     std::size_t base) {
    return TermParser(text, sig, base).parse();
  }

}  // namespace

bool is_identifier(std::string_view text) {
  return !text.empty() && is_ident_start(text.front())
         && std::all_of(text.begin(), text.end(), is_ident_char);
}

Signature::Signature(std::vector<OpSymbol> ops) : ops_(std::move(ops)) {
  std::set<std::string_view> seen;
  for (auto const& op : ops_) {
    if (!is_identifier(op.name)) {
      throw Error("invalid operation name '" + op.name + "'");
    }
    if (!seen.insert(op.name).second) {
      throw Error("duplicate operation name '" + op.name + "'");
    }
  }
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    if (ops_[i].name == name) {
      return i;
    }
  }
  return std::nullopt;
}

Signature parse_signature(std::string_view text) {
  std::vector<OpSymbol> ops;
  std::size_t start = 0;
  text = trim(text);
  if (text.empty()) {
    return Signature{};
  }
  while (start <= text.size()) {
    auto const comma = text.find(',', start);
    auto const item
        = trim(text.substr(start, comma == std::string_view::npos
                                      ? std::string_view::npos
                                      : comma - start));
    auto const slash = item.find('/');
    if (slash == std::string_view::npos) {
      throw ParseError("expected NAME/ARITY in signature", start);
    }
    auto const name = trim(item.substr(0, slash));
    auto const arity = trim(item.substr(slash + 1));
    if (arity.empty()
        || !std::all_of(arity.begin(), arity.end(), [](char c) {
             return std::isdigit(static_cast<unsigned char>(c)) != 0;
           })) {
      throw ParseError("bad arity in signature", start);
    }
    ops.push_back({std::string(name), std::stoul(std::string(arity))});
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return Signature(std::move(ops));
}

std::string print_signature(Signature const& sig) {
  std::string out;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (i != 0) {
      out += ',';
    }
    out += sig[i].name + "/" + std::to_string(sig[i].arity);
  }
  return out;
}

Term Term::variable(std::string name) {
  return Term(true, std::move(name), {});
}

Term Term::apply(std::string op, std::vector<Term> args) {
  return Term(false, std::move(op), std::move(args));
}

std::size_t Term::depth() const {
  std::size_t d = 0;
  for (auto const& a : args_) {
    d = std::max(d, a.depth() + 1);
  }
  return d;
}

bool operator==(Term const& a, Term const& b) {
  return a.variable_ == b.variable_ && a.name_ == b.name_
         && a.args_ == b.args_;
}

void validate(Term const& t, Signature const& sig) {
  auto const op = sig.find(t.name());
  if (t.is_variable()) {
    if (op) {
      throw Error("variable '" + t.name()
                  + "' collides with an operation name");
    }
    if (!is_identifier(t.name())) {
      throw Error("invalid variable name '" + t.name() + "'");
    }
    return;
  }
  if (!op) {
    throw Error("undeclared operation '" + t.name() + "'");
  }
  if (sig[*op].arity != t.args().size()) {
    throw ArityMismatch(t.name(), sig[*op].arity, t.args().size(), 0);
  }
  for (auto const& a : t.args()) {
    validate(a, sig);
  }
}

Term parse_term(std::string_view text, Signature const& sig) {
  return parse_term_at(text, sig, 0);
}

std::string print_term(Term const& t) {
  std::string out;
  print_into(t, out);
  return out;
}

std::map<std::string, std::size_t> variable_occurrences(Term const& t) {
  std::map<std::string, std::size_t> out;
  count_into(t, out);
  return out;
}

Identity::Identity(Term lhs, Term rhs)
    : lhs_(std::move(lhs)), rhs_(std::move(rhs)) {
  collect_variables(lhs_, variables_);
  collect_variables(rhs_, variables_);
}

Identity parse_identity(std::string_view text, Signature const& sig) {
  auto const eq = text.find('=');
  if (eq == std::string_view::npos) {
    throw ParseError("identity needs exactly one '=', found none", 0);
  }
  auto const second = text.find('=', eq + 1);
  if (second != std::string_view::npos) {
    throw ParseError("identity needs exactly one '=', found several", second);
  }
  return Identity(parse_term_at(text.substr(0, eq), sig, 0),
                  parse_term_at(text.substr(eq + 1), sig, eq + 1));
}

std::string print_identity(Identity const& id) {
  return print_term(id.lhs()) + " = " + print_term(id.rhs());
}

bool is_linear(Identity const& id) {
  auto const at_most_once = [](Term const& t) {
    auto const occ = variable_occurrences(t);
    return std::all_of(occ.begin(), occ.end(),
                       [](auto const& kv) { return kv.second <= 1; });
  };
  return at_most_once(id.lhs()) && at_most_once(id.rhs());
}

bool is_balanced_linear(Identity const& id) {
  auto const lhs = variable_occurrences(id.lhs());
  auto const rhs = variable_occurrences(id.rhs());
  return std::all_of(id.variables().begin(), id.variables().end(),
                     [&](std::string const& v) {
                       auto const l = lhs.find(v);
                       auto const r = rhs.find(v);
                       return l != lhs.end() && l->second == 1
                              && r != rhs.end() && r->second == 1;
                     });
}

IdentitySet::IdentitySet(Signature sig, std::vector<Identity> ids)
    : sig_(std::move(sig)) {
  for (auto& id : ids) {
    add(std::move(id));
  }
}

void IdentitySet::add(Identity id) {
  validate(id.lhs(), sig_);
  validate(id.rhs(), sig_);
  ids_.push_back(std::move(id));
}

IdentitySet parse_identity_file(std::string_view text, Signature const& sig) {
  IdentitySet out(sig);
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto const nl = text.find('\n', start);
    auto line = text.substr(
        start, nl == std::string_view::npos ? std::string_view::npos
                                            : nl - start);
    ++line_no;
    if (auto const hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    if (!trim(line).empty()) {
      try {
        out.add(parse_identity(line, sig));
      } catch (ParseError const& e) {
        throw ParseError(e.what(), line_no, "line");
      }
    }
    if (nl == std::string_view::npos) {
      break;
    }
    start = nl + 1;
  }
  return out;
}

}  // namespace tolift
