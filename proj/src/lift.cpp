#include "tolift/lift.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "tolift/error.hpp"

namespace tolift {

namespace {

  constexpr std::size_t max_table_entries = std::size_t{1} << 27;

  std::string pair_text(Element a, Element b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
  }

  std::string tuple_text(std::vector<Element> const& xs) {
    std::string out = "(";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      out += (i == 0 ? "" : ",") + std::to_string(xs[i]);
    }
    return out + ")";
  }

  // Elementwise image of subsets, computed straight from the base table.
  std::uint64_t image_of_subsets(FiniteAlgebra const& alg, std::size_t op,
                                 std::vector<std::uint64_t> const& masks) {
    std::size_t const k = masks.size();
    std::vector<Element> xs(k, 0);
    std::uint64_t out = 0;
    do {
      bool inside = true;
      for (std::size_t i = 0; i < k && inside; ++i) {
        inside = ((masks[i] >> xs[i]) & 1U) != 0;
      }
      if (inside) {
        out |= std::uint64_t{1} << alg.apply(op, xs);
      }
    } while (next_tuple(xs, alg.size()));
    return out;
  }

  void check_structure(FiniteAlgebra const& alg, Tolerance const& t,
                       LiftResult const& lr, LiftOptions const& opts) {
    auto const fail = [](std::string const& msg) {
      throw StructuralMismatch("lift does not match the algebra: " + msg);
    };
    std::size_t const n = alg.size();
    if (n > opts.cap_n || n >= 32) {
      throw CapExceeded("verifying a lift over a " + std::to_string(n)
                        + "-element algebra exceeds the cap of "
                        + std::to_string(opts.cap_n));
    }
    if (t.size() != n) {
      fail("tolerance is on " + std::to_string(t.size()) + " elements");
    }
    if (!(lr.b.signature() == alg.signature())) {
      fail("signature of B differs from the signature of A");
    }
    std::size_t const m = lr.b.size();
    if (lr.elements.size() != m) {
      fail("B has " + std::to_string(m) + " elements but "
           + std::to_string(lr.elements.size()) + " are listed");
    }
    if (lr.theta.size() != m) {
      fail("theta is on " + std::to_string(lr.theta.size()) + " elements");
    }
    if (lr.phi.domain() != m || lr.phi.codomain() != n) {
      fail("phi does not map B to A");
    }
    for (auto const& y : lr.blocks) {
      if (y.empty() || (y.bits() >> n) != 0) {
        fail("block " + format_subset(y) + " is not a nonempty subset of A");
      }
    }
    for (auto const& e : lr.elements) {
      if (e.x >= n || e.block >= lr.blocks.size()) {
        fail("element (" + std::to_string(e.x) + ", block "
             + std::to_string(e.block) + ") is out of range");
      }
    }
  }

  CheckResult check_subalgebra(FiniteAlgebra const& alg, Tolerance const& t,
                               LiftResult const& lr) {
    CheckResult r{1, "B is the subalgebra {(x,Y) : x in Y} of A x blocks",
                  true, ""};
    auto const fail = [&r](std::string msg) {
      r.passed = false;
      r.detail = std::move(msg);
      return r;
    };
    std::size_t const n = alg.size();
    auto const& rel = t.relation();
    auto const mask_of = [&](LiftElement const& e) {
      return lr.blocks[e.block].bits();
    };

    std::map<std::pair<Element, std::uint64_t>, Element> index;
    for (Element j = 0; j < lr.elements.size(); ++j) {
      auto const& e = lr.elements[j];
      auto const y = mask_of(e);
      if (((y >> e.x) & 1U) == 0) {
        return fail("element " + std::to_string(j) + " has x="
                    + std::to_string(e.x) + " outside its block");
      }
      for (Element a = 0; a < n; ++a) {
        for (Element b = 0; b < n; ++b) {
          if (((y >> a) & 1U) && ((y >> b) & 1U) && !rel.contains(a, b)) {
            return fail("element " + std::to_string(j) + " uses "
                        + format_subset(SubsetCode(y)) + ", but "
                        + pair_text(a, b) + " is not in T");
          }
        }
      }
      if (!index.emplace(std::pair{e.x, y}, j).second) {
        return fail("element " + std::to_string(j) + " is listed twice");
      }
    }

    std::size_t expected = 0;
    for (std::uint64_t y = 1; y < (std::uint64_t{1} << n); ++y) {
      bool is_blk = true;
      for (Element a = 0; a < n && is_blk; ++a) {
        for (Element b = 0; b < n && is_blk; ++b) {
          is_blk = !(((y >> a) & 1U) && ((y >> b) & 1U)) || rel.contains(a, b);
        }
      }
      if (!is_blk) {
        continue;
      }
      for (Element x = 0; x < n; ++x) {
        if (((y >> x) & 1U) && !index.contains({x, y})) {
          return fail("(" + std::to_string(x) + ", "
                      + format_subset(SubsetCode(y)) + ") is missing from B");
        }
        expected += (y >> x) & 1U;
      }
    }
    if (expected != lr.elements.size()) {
      return fail("B has extra elements");
    }

    std::size_t const m = lr.b.size();
    for (std::size_t op = 0; op < alg.signature().size(); ++op) {
      std::size_t const k = alg.arity(op);
      if (!checked_power(m, k, max_table_entries)) {
        throw CapExceeded("table of B too large to verify");
      }
      std::vector<Element> args(k, 0), xs(k);
      std::vector<std::uint64_t> ys(k);
      do {
        for (std::size_t i = 0; i < k; ++i) {
          xs[i] = lr.elements[args[i]].x;
          ys[i] = mask_of(lr.elements[args[i]]);
        }
        Element const x = alg.apply(op, xs);
        std::uint64_t const y = image_of_subsets(alg, op, ys);
        auto const it = index.find({x, y});
        if (it == index.end()) {
          return fail("'" + alg.signature()[op].name + "' maps "
                      + tuple_text(args) + " outside B");
        }
        if (lr.b.apply(op, args) != it->second) {
          return fail("table of '" + alg.signature()[op].name + "' at "
                      + tuple_text(args) + " is "
                      + std::to_string(lr.b.apply(op, args)) + ", expected "
                      + std::to_string(it->second));
        }
      } while (next_tuple(args, m));
    }
    return r;
  }

  CheckResult check_homomorphism(FiniteAlgebra const& alg,
                                 LiftResult const& lr) {
    CheckResult r{2, "phi is a homomorphism from B to A", true, ""};
    for (std::size_t op = 0; op < alg.signature().size(); ++op) {
      std::size_t const k = alg.arity(op);
      std::vector<Element> args(k, 0), images(k);
      do {
        for (std::size_t i = 0; i < k; ++i) {
          images[i] = lr.phi(args[i]);
        }
        Element const lhs = lr.phi(lr.b.apply(op, args));
        Element const rhs = alg.apply(op, images);
        if (lhs != rhs) {
          r.passed = false;
          r.detail = "phi(" + alg.signature()[op].name + tuple_text(args)
                     + ") = " + std::to_string(lhs) + " but "
                     + alg.signature()[op].name + tuple_text(images) + " = "
                     + std::to_string(rhs);
          return r;
        }
      } while (next_tuple(args, lr.b.size()));
    }
    return r;
  }

  CheckResult check_surjective(FiniteAlgebra const& alg, LiftResult const& lr) {
    CheckResult r{3, "phi is surjective, witnessed by x -> (x,{x})", true, ""};
    for (Element x = 0; x < alg.size(); ++x) {
      auto const singleton = SubsetCode::singleton(x);
      bool found = false;
      for (Element j = 0; j < lr.elements.size() && !found; ++j) {
        auto const& e = lr.elements[j];
        found = e.x == x && lr.blocks[e.block] == singleton && lr.phi(j) == x;
      }
      if (!found) {
        r.passed = false;
        r.detail = "no element (" + std::to_string(x) + ", {"
                   + std::to_string(x) + "}) mapping to " + std::to_string(x);
        return r;
      }
    }
    return r;
  }

  CheckResult check_congruence(LiftResult const& lr) {
    CheckResult r{4, "theta is a congruence of B", true, ""};
    if (!lr.theta.is_reflexive()) {
      r.detail = "theta is not reflexive";
    } else if (!lr.theta.is_symmetric()) {
      r.detail = "theta is not symmetric";
    } else if (!lr.theta.is_transitive()) {
      r.detail = "theta is not transitive";
    } else if (auto const c = is_compatible(lr.b, lr.theta); !c) {
      r.detail = "theta is not compatible with '"
                 + lr.b.signature()[c.violation->op].name + "'";
    }
    r.passed = r.detail.empty();
    return r;
  }

  CheckResult check_image_within(Tolerance const& t, LiftResult const& lr) {
    CheckResult r{5, "phi(theta) is contained in T", true, ""};
    for (auto const& [a, b] : lr.theta.pairs()) {
      Element const x = lr.phi(a);
      Element const y = lr.phi(b);
      if (!t.contains(x, y)) {
        r.passed = false;
        r.detail = "theta relates " + std::to_string(a) + " and "
                   + std::to_string(b) + ", whose images "
                   + pair_text(x, y) + " are not in T";
        return r;
      }
    }
    return r;
  }

  CheckResult check_image_covers(Tolerance const& t, LiftResult const& lr) {
    CheckResult r{6, "T is contained in phi(theta), witnessed by Y={x1,x2}",
                  true, ""};
    auto const find = [&](Element x, SubsetCode y) -> std::optional<Element> {
      for (Element j = 0; j < lr.elements.size(); ++j) {
        if (lr.elements[j].x == x && lr.blocks[lr.elements[j].block] == y) {
          return j;
        }
      }
      return std::nullopt;
    };
    for (auto const& [x1, x2] : t.relation().pairs()) {
      auto const y = SubsetCode::of({x1, x2});
      auto const j1 = find(x1, y);
      auto const j2 = find(x2, y);
      bool const ok = j1 && j2 && lr.theta.contains(*j1, *j2)
                      && lr.phi(*j1) == x1 && lr.phi(*j2) == x2;
      if (!ok) {
        r.passed = false;
        r.detail = "pair " + pair_text(x1, x2) + " is not witnessed by "
                   + format_subset(y);
        return r;
      }
    }
    return r;
  }

}  // namespace

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](CheckResult const& c) { return c.passed; });
}

CheckResult const& VerificationReport::check(int number) const {
  for (auto const& c : checks) {
    if (c.number == number) {
      return c;
    }
  }
  throw Error("no check numbered " + std::to_string(number));
}

std::string format_report(VerificationReport const& report) {
  std::ostringstream out;
  for (auto const& c : report.checks) {
    out << "check " << c.number << " " << c.name << ": "
        << (c.passed ? "PASS" : "FAIL");
    if (!c.detail.empty()) {
      out << " (" << c.detail << ")";
    }
    out << '\n';
  }
  for (auto const& o : report.identities) {
    auto const vars = o.identity.variables();
    out << "identity " << print_identity(o.identity) << " ["
        << (o.balanced ? "BALANCED-LINEAR"
                       : o.linear ? "LINEAR" : "NON-LINEAR")
        << "]: A " << (o.in_a.holds ? "holds" : "fails");
    if (o.in_a.witness) {
      out << " at " << format_assignment(*o.in_a.witness, vars);
    }
    out << ", B " << (o.in_b.holds ? "holds" : "fails");
    if (o.in_b.witness) {
      out << " at " << format_assignment(*o.in_b.witness, vars);
    }
    out << (o.required() ? (o.ok() ? "" : " REQUIRED") : " (informational)")
        << '\n';
  }
  for (auto const& w : report.warnings) {
    out << "warning: " << w << '\n';
  }
  out << (report.passed() ? "VERIFIED" : "NOT VERIFIED") << '\n';
  return out.str();
}

VerificationReport verify_lift(FiniteAlgebra const& alg, Tolerance const& t,
                               LiftResult const& lr, IdentitySet const& ids,
                               LiftOptions const& opts) {
  check_structure(alg, t, lr, opts);
  VerificationReport report;
  report.checks.push_back(check_subalgebra(alg, t, lr));
  report.checks.push_back(check_homomorphism(alg, lr));
  report.checks.push_back(check_surjective(alg, lr));
  report.checks.push_back(check_congruence(lr));
  report.checks.push_back(check_image_within(t, lr));
  report.checks.push_back(check_image_covers(t, lr));

  CheckResult transport{7, "linear identities of A hold in B", true, ""};
  for (auto const& id : ids) {
    TransportOutcome o{id,
                       is_linear(id),
                       is_balanced_linear(id),
                       satisfies(alg, id, opts.cap_assignments),
                       satisfies(lr.b, id, opts.cap_assignments)};
    if (!o.in_a.holds) {
      report.warnings.push_back("A does not satisfy "
                                + print_identity(id));
    }
    if (!o.ok() && transport.passed) {
      transport.passed = false;
      transport.detail = print_identity(id) + " fails in B";
    }
    report.identities.push_back(std::move(o));
  }
  report.checks.push_back(std::move(transport));
  return report;
}

LiftResult lift(FiniteAlgebra const& alg, Tolerance const& t,
                IdentitySet const& ids, LiftOptions const& opts) {
  auto const blocks = block_algebra(alg, t, opts.cap_n);
  auto const& blk = blocks.algebra();

  std::vector<LiftElement> elements;
  std::vector<std::size_t> offset;
  for (Element i = 0; i < blocks.blocks().size(); ++i) {
    offset.push_back(elements.size());
    for (Element x : blocks.blocks()[i].members()) {
      elements.push_back({x, i});
    }
  }
  auto const index_of = [&](Element x, Element block) {
    auto const members = blocks.blocks()[block].members();
    auto const it = std::lower_bound(members.begin(), members.end(), x);
    if (it == members.end() || *it != x) {
      throw ConsistencyError("(" + std::to_string(x) + ", "
                             + format_subset(blocks.blocks()[block])
                             + ") is not an element of B");
    }
    return static_cast<Element>(offset[block] + (it - members.begin()));
  };

  std::size_t const m = elements.size();
  std::vector<std::vector<Element>> tables;
  for (std::size_t op = 0; op < alg.signature().size(); ++op) {
    std::size_t const k = alg.arity(op);
    auto const len = checked_power(m, k, max_table_entries);
    if (!len) {
      throw CapExceeded("operation table of B for '"
                        + alg.signature()[op].name + "' is too large");
    }
    std::vector<Element> table;
    table.reserve(*len);
    std::vector<Element> args(k, 0), xs(k), ys(k);
    do {
      for (std::size_t i = 0; i < k; ++i) {
        xs[i] = elements[args[i]].x;
        ys[i] = elements[args[i]].block;
      }
      table.push_back(index_of(alg.apply(op, xs), blk.apply(op, ys)));
    } while (next_tuple(args, m));
    tables.push_back(std::move(table));
  }
  FiniteAlgebra b(m, alg.signature(), std::move(tables));

  std::vector<Element> first, second;
  for (auto const& e : elements) {
    first.push_back(e.x);
    second.push_back(e.block);
  }
  auto theta = kernel(ElementMap(blocks.blocks().size(), std::move(second)), b);
  ElementMap phi(alg.size(), std::move(first));

  LiftResult lr{std::move(b),     blocks.blocks(), std::move(elements),
                theta.relation(), std::move(phi),  {}};
  lr.report = verify_lift(alg, blocks.tolerance(), lr, ids, opts);
  return lr;
}

LiftResult lift(FiniteAlgebra const& alg, Tolerance const& t,
                LiftOptions const& opts) {
  return lift(alg, t, IdentitySet(alg.signature()), opts);
}

}  // namespace tolift
