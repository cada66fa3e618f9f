#include "tolift/io.hpp"

#include <charconv>
#include <sstream>

#include "tolift/error.hpp"

namespace tolift {

namespace {

  struct Line {
    std::size_t number;
    std::string_view text;
  };

  std::string_view trim(std::string_view s) {
    auto const ws = " \t\r";
    auto const b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
      return {};
    }
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
  }

  // Non-blank lines with comments removed.
  std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      auto const nl = text.find('\n', start);
      auto line = text.substr(start, nl == std::string_view::npos
                                         ? std::string_view::npos
                                         : nl - start);
      ++number;
      if (auto const hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
      }
      line = trim(line);
      if (!line.empty()) {
        out.push_back({number, line});
      }
      if (nl == std::string_view::npos) {
        break;
      }
      start = nl + 1;
    }
    return out;
  }

  std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
      while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
        ++i;
      }
      auto const b = i;
      while (i < s.size() && s[i] != ' ' && s[i] != '\t') {
        ++i;
      }
      if (i > b) {
        out.push_back(s.substr(b, i - b));
      }
    }
    return out;
  }

  [[noreturn]] void fail(std::string const& msg, std::size_t line) {
    throw ParseError(msg, line, "line");
  }

  std::size_t to_number(std::string_view tok, std::size_t line) {
    std::size_t v = 0;
    auto const [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
      fail("expected a nonnegative integer, found '" + std::string(tok) + "'",
           line);
    }
    return v;
  }

  // Walks the whitespace-separated tokens of a sequence of lines.
  class Tokens {
   public:
    explicit Tokens(std::vector<Line> const& lines, std::size_t first = 0)
        : lines_(lines), line_(first) {
      load();
    }

    bool done() const { return line_ >= lines_.size(); }
    std::size_t line_number() const {
      return done() ? (lines_.empty() ? 0 : lines_.back().number)
                    : lines_[line_].number;
    }
    std::string_view peek() const { return toks_[tok_]; }
    std::string_view next() {
      auto const t = toks_[tok_++];
      if (tok_ >= toks_.size()) {
        ++line_;
        load();
      }
      return t;
    }
    // Index of the line holding the next token; only valid at a line start.
    std::size_t line_index() const { return line_; }
    bool at_line_start() const { return tok_ == 0; }

   private:
    void load() {
      tok_ = 0;
      toks_.clear();
      while (line_ < lines_.size()) {
        toks_ = split_ws(lines_[line_].text);
        if (!toks_.empty()) {
          return;
        }
        ++line_;
      }
    }

    std::vector<Line> const& lines_;
    std::size_t line_;
    std::size_t tok_ = 0;
    std::vector<std::string_view> toks_;
  };

  constexpr std::size_t max_table_entries = std::size_t{1} << 27;

  // Reads "op NAME ARITY" and its table; stops at the first token that is
  // not part of the table.
  std::pair<OpSymbol, std::vector<Element>> read_op(Tokens& toks,
                                                    std::size_t n) {
    std::size_t const line = toks.line_number();
    if (toks.done() || toks.next() != "op") {
      fail("expected 'op NAME ARITY'", line);
    }
    if (toks.done()) {
      fail("missing operation name", line);
    }
    std::string name(toks.next());
    if (!is_identifier(name)) {
      fail("invalid operation name '" + name + "'", line);
    }
    if (toks.done()) {
      fail("missing arity for '" + name + "'", line);
    }
    std::size_t const arity = to_number(toks.next(), line);
    auto const len = checked_power(n, arity, max_table_entries);
    if (!len) {
      fail("table for '" + name + "' is too large", line);
    }
    std::vector<Element> table;
    table.reserve(*len);
    while (table.size() < *len) {
      if (toks.done() || toks.peek() == "op") {
        fail("table for '" + name + "' has " + std::to_string(table.size())
                 + " entries, expected " + std::to_string(*len),
             toks.line_number());
      }
      std::size_t const at = toks.line_number();
      std::size_t const v = to_number(toks.next(), at);
      if (v >= n) {
        fail("table entry " + std::to_string(v) + " outside universe of size "
                 + std::to_string(n),
             at);
      }
      table.push_back(static_cast<Element>(v));
    }
    return {OpSymbol{std::move(name), arity}, std::move(table)};
  }

  void write_table(std::ostream& out, std::span<Element const> table,
                   std::size_t n, std::size_t arity) {
    if (arity == 0) {
      out << table[0] << '\n';
      return;
    }
    for (std::size_t i = 0; i < table.size(); ++i) {
      out << table[i] << ((i + 1) % n == 0 ? '\n' : ' ');
    }
  }

  void write_ops(std::ostream& out, FiniteAlgebra const& alg) {
    for (std::size_t op = 0; op < alg.signature().size(); ++op) {
      out << "op " << alg.signature()[op].name << ' ' << alg.arity(op) << '\n';
      write_table(out, alg.table(op), alg.size(), alg.arity(op));
    }
  }

  Pair read_pair(std::string_view a, std::string_view b, std::size_t line) {
    return {static_cast<Element>(to_number(trim(a), line)),
            static_cast<Element>(to_number(trim(b), line))};
  }

  // Expects "KEYWORD N" as the whole line.
  std::size_t header(Line const& line, std::string_view keyword) {
    auto const toks = split_ws(line.text);
    if (toks.size() != 2 || toks[0] != keyword) {
      fail("expected '" + std::string(keyword) + " N'", line.number);
    }
    return to_number(toks[1], line.number);
  }

  // Splits "IDX: REST" and checks IDX against the expected running index.
  std::string_view indexed(Line const& line, std::size_t expected) {
    auto const colon = line.text.find(':');
    if (colon == std::string_view::npos) {
      fail("expected 'INDEX: ...'", line.number);
    }
    if (to_number(trim(line.text.substr(0, colon)), line.number) != expected) {
      fail("expected index " + std::to_string(expected), line.number);
    }
    return trim(line.text.substr(colon + 1));
  }

}  // namespace

FiniteAlgebra parse_algebra(std::string_view text) {
  auto const lines = content_lines(text);
  Tokens toks(lines);
  if (toks.done() || toks.next() != "size") {
    fail("expected 'size N'", toks.line_number());
  }
  if (toks.done()) {
    fail("missing universe size", toks.line_number());
  }
  std::size_t const n = to_number(toks.next(), toks.line_number());
  if (n == 0) {
    fail("universe size must be positive", toks.line_number());
  }
  if (n > (std::size_t{1} << 24)) {
    fail("universe size too large", toks.line_number());
  }
  std::vector<OpSymbol> ops;
  std::vector<std::vector<Element>> tables;
  while (!toks.done()) {
    std::size_t const line = toks.line_number();
    auto [op, table] = read_op(toks, n);
    for (auto const& o : ops) {
      if (o.name == op.name) {
        fail("duplicate operation '" + op.name + "'", line);
      }
    }
    ops.push_back(std::move(op));
    tables.push_back(std::move(table));
  }
  return FiniteAlgebra(n, Signature(std::move(ops)), std::move(tables));
}

std::string format_algebra(FiniteAlgebra const& alg) {
  std::ostringstream out;
  out << "size " << alg.size() << '\n';
  write_ops(out, alg);
  return out.str();
}

BinaryRelation parse_relation(std::string_view text) {
  auto const lines = content_lines(text);
  if (lines.empty()) {
    fail("expected 'rel N'", 1);
  }
  std::size_t const n = header(lines[0], "rel");
  if (n == 0) {
    fail("relation size must be positive", lines[0].number);
  }
  if (lines.size() != n + 1) {
    fail("expected " + std::to_string(n) + " matrix rows, found "
             + std::to_string(lines.size() - 1),
         lines.back().number);
  }
  BinaryRelation r(n);
  for (Element i = 0; i < n; ++i) {
    auto const& row = lines[i + 1];
    if (row.text.size() != n) {
      fail("expected " + std::to_string(n) + " characters", row.number);
    }
    for (Element j = 0; j < n; ++j) {
      char const c = row.text[j];
      if (c != '0' && c != '1') {
        fail("expected '0' or '1'", row.number);
      }
      if (c == '1') {
        r.insert(i, j);
      }
    }
  }
  return r;
}

std::string format_relation(BinaryRelation const& r) {
  std::string out = "rel " + std::to_string(r.size()) + "\n";
  for (Element i = 0; i < r.size(); ++i) {
    for (Element j = 0; j < r.size(); ++j) {
      out += r.contains(i, j) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

std::vector<Pair> parse_pairs_spec(std::string_view spec) {
  std::vector<Pair> out;
  spec = trim(spec);
  if (spec.empty()) {
    return out;
  }
  std::size_t start = 0;
  while (true) {
    auto const comma = spec.find(',', start);
    auto const item = trim(spec.substr(
        start, comma == std::string_view::npos ? std::string_view::npos
                                               : comma - start));
    auto const dash = item.find('-');
    if (dash == std::string_view::npos) {
      throw ParseError("expected pair 'a-b', found '" + std::string(item) + "'",
                       start);
    }
    try {
      out.push_back(read_pair(item.substr(0, dash), item.substr(dash + 1), 1));
    } catch (ParseError const&) {
      throw ParseError("expected pair 'a-b', found '" + std::string(item) + "'",
                       start);
    }
    if (comma == std::string_view::npos) {
      return out;
    }
    start = comma + 1;
  }
}

std::vector<Pair> parse_pairs_file(std::string_view text) {
  std::vector<Pair> out;
  for (auto const& line : content_lines(text)) {
    auto const toks = split_ws(line.text);
    if (toks.size() != 2) {
      fail("expected 'a b'", line.number);
    }
    out.push_back(read_pair(toks[0], toks[1], line.number));
  }
  return out;
}

std::string format_tolerance_list(std::vector<Tolerance> const& ts) {
  std::string out = "tolerances " + std::to_string(ts.size()) + "\n";
  for (auto const& t : ts) {
    out += format_relation(t.relation());
  }
  return out;
}

std::string format_complex_algebra(ComplexAlgebra const& c) {
  std::ostringstream out;
  out << "# complex algebra of a " << c.base().size()
      << "-element algebra; carrier index -> subset\n";
  for (Element i = 0; i < c.carrier_size(); ++i) {
    out << "# " << i << ": " << format_subset(c.subset(i)) << '\n';
  }
  out << format_algebra(c.algebra());
  return out.str();
}

std::string format_lift(LiftResult const& lr) {
  std::ostringstream out;
  out << "blocks " << lr.blocks.size() << '\n';
  for (std::size_t i = 0; i < lr.blocks.size(); ++i) {
    out << i << ": " << format_subset(lr.blocks[i]) << '\n';
  }
  out << "elements " << lr.elements.size() << '\n';
  for (std::size_t j = 0; j < lr.elements.size(); ++j) {
    out << j << ": (" << lr.elements[j].x << ", block "
        << lr.elements[j].block << ")\n";
  }
  write_ops(out, lr.b);
  out << "theta\n";
  // Classes listed by smallest member.
  std::vector<bool> seen(lr.theta.size(), false);
  std::size_t c = 0;
  for (Element j = 0; j < lr.theta.size(); ++j) {
    if (seen[j]) {
      continue;
    }
    out << "class " << c++ << ":";
    for (Element k = j; k < lr.theta.size(); ++k) {
      if (lr.theta.contains(j, k)) {
        seen[k] = true;
        out << ' ' << k;
      }
    }
    out << '\n';
  }
  out << "phi\n";
  for (Element j = 0; j < lr.phi.domain(); ++j) {
    out << j << " -> " << lr.phi(j) << '\n';
  }
  return out.str();
}

LiftResult parse_lift(std::string_view text, std::size_t base_size) {
  auto const lines = content_lines(text);
  std::size_t at = 0;
  auto const need = [&](std::string_view what) -> Line const& {
    if (at >= lines.size()) {
      fail("unexpected end of input, expected " + std::string(what),
           lines.empty() ? 1 : lines.back().number);
    }
    return lines[at];
  };

  std::size_t const k = header(need("'blocks K'"), "blocks");
  ++at;
  std::vector<SubsetCode> blocks;
  for (std::size_t i = 0; i < k; ++i) {
    auto const& line = need("a block line");
    auto const rest = indexed(line, i);
    if (rest.size() < 2 || rest.front() != '{' || rest.back() != '}') {
      fail("expected '{a,b,...}'", line.number);
    }
    auto const inner = trim(rest.substr(1, rest.size() - 2));
    std::uint64_t bits = 0;
    std::size_t start = 0;
    while (!inner.empty()) {
      auto const comma = inner.find(',', start);
      auto const x = to_number(
          trim(inner.substr(start, comma == std::string_view::npos
                                       ? std::string_view::npos
                                       : comma - start)),
          line.number);
      if (x >= 63) {
        fail("block member " + std::to_string(x) + " too large", line.number);
      }
      bits |= std::uint64_t{1} << x;
      if (comma == std::string_view::npos) {
        break;
      }
      start = comma + 1;
    }
    if (bits == 0) {
      fail("empty block", line.number);
    }
    blocks.emplace_back(bits);
    ++at;
  }

  std::size_t const m = header(need("'elements M'"), "elements");
  ++at;
  std::vector<LiftElement> elements;
  for (std::size_t j = 0; j < m; ++j) {
    auto const& line = need("an element line");
    auto const rest = indexed(line, j);
    auto const comma = rest.find(',');
    auto const kw = rest.find("block");
    if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')'
        || comma == std::string_view::npos || kw == std::string_view::npos
        || kw < comma) {
      fail("expected '(x, block i)'", line.number);
    }
    auto const x = to_number(trim(rest.substr(1, comma - 1)), line.number);
    if (x >= base_size) {
      fail("element " + std::to_string(x) + " outside the base algebra",
           line.number);
    }
    auto const b = to_number(
        trim(rest.substr(kw + 5, rest.size() - 1 - (kw + 5))), line.number);
    if (b >= blocks.size()) {
      fail("block index " + std::to_string(b) + " out of range", line.number);
    }
    elements.push_back({static_cast<Element>(x), static_cast<Element>(b)});
    ++at;
  }
  if (m == 0) {
    fail("B must have at least one element", lines[at - 1].number);
  }

  std::vector<OpSymbol> ops;
  std::vector<std::vector<Element>> tables;
  std::size_t table_end = at;
  while (at < lines.size() && lines[at].text.starts_with("op ")) {
    // Tables may span lines; re-sync on the next line-aligned section.
    std::vector<Line> rest(lines.begin() + static_cast<std::ptrdiff_t>(at),
                           lines.end());
    Tokens toks(rest);
    auto [op, table] = read_op(toks, m);
    if (!toks.done() && !toks.at_line_start()) {
      fail("table for '" + op.name + "' has too many entries",
           toks.line_number());
    }
    ops.push_back(std::move(op));
    tables.push_back(std::move(table));
    at += toks.done() ? rest.size() : toks.line_index();
    table_end = at;
  }
  at = table_end;

  if (need("'theta'").text != "theta") {
    fail("expected 'theta'", lines[at].number);
  }
  ++at;
  BinaryRelation theta(m);
  std::size_t c = 0;
  while (at < lines.size() && lines[at].text.starts_with("class")) {
    auto const& line = lines[at];
    auto const colon = line.text.find(':');
    if (colon == std::string_view::npos
        || to_number(trim(line.text.substr(5, colon - 5)), line.number) != c) {
      fail("expected 'class " + std::to_string(c) + ": ...'", line.number);
    }
    std::vector<Element> members;
    for (auto const tok : split_ws(line.text.substr(colon + 1))) {
      auto const j = to_number(tok, line.number);
      if (j >= m) {
        fail("element " + std::to_string(j) + " out of range", line.number);
      }
      members.push_back(static_cast<Element>(j));
    }
    for (Element a : members) {
      for (Element b : members) {
        theta.insert(a, b);
      }
    }
    ++c;
    ++at;
  }

  if (need("'phi'").text != "phi") {
    fail("expected 'phi'", lines[at].number);
  }
  ++at;
  std::vector<Element> images;
  for (std::size_t j = 0; j < m; ++j) {
    auto const& line = need("a phi line");
    auto const arrow = line.text.find("->");
    if (arrow == std::string_view::npos
        || to_number(trim(line.text.substr(0, arrow)), line.number) != j) {
      fail("expected '" + std::to_string(j) + " -> x'", line.number);
    }
    auto const x = to_number(trim(line.text.substr(arrow + 2)), line.number);
    if (x >= base_size) {
      fail("image " + std::to_string(x) + " outside the base algebra",
           line.number);
    }
    images.push_back(static_cast<Element>(x));
    ++at;
  }
  if (at != lines.size()) {
    fail("unexpected trailing content", lines[at].number);
  }

  return LiftResult{FiniteAlgebra(m, Signature(std::move(ops)),
                                  std::move(tables)),
                    std::move(blocks),
                    std::move(elements),
                    std::move(theta),
                    ElementMap(base_size, std::move(images)),
                    {}};
}

}  // namespace tolift
