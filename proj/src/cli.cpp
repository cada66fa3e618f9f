#include "tolift/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tolift/error.hpp"
#include "tolift/io.hpp"
#include "tolift/lift.hpp"

namespace tolift::cli {

namespace {

  class UsageError : public Error {
   public:
    using Error::Error;
  };

  std::string read_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw UsageError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  template <typename Parse>
  auto parse_file(std::string const& path, Parse&& parse) {
    auto const text = read_file(path);
    try {
      return parse(text);
    } catch (ParseError const& e) {
      throw UsageError(path + ": " + e.what());
    }
  }

  std::string const& require(std::optional<std::string> const& v,
                             std::string const& flag,
                             std::string const& command) {
    if (!v) {
      throw UsageError("'" + command + "' needs " + flag);
    }
    return *v;
  }

  void emit(RunConfig const& cfg, std::string const& text, std::ostream& out) {
    if (!cfg.out) {
      out << text;
      return;
    }
    std::ofstream file(*cfg.out, std::ios::binary | std::ios::trunc);
    if (!file || !(file << text)) {
      throw UsageError("cannot write '" + *cfg.out + "'");
    }
  }

  FiniteAlgebra load_algebra(RunConfig const& cfg) {
    return parse_file(require(cfg.algebra, "--algebra", cfg.command),
                      [](std::string const& t) { return parse_algebra(t); });
  }

  IdentitySet load_identities(RunConfig const& cfg, Signature const& sig) {
    if (!cfg.identities) {
      return IdentitySet(sig);
    }
    return parse_file(*cfg.identities, [&](std::string const& t) {
      return parse_identity_file(t, sig);
    });
  }

  // "--pairs a-b,..." or "--pairs @file".
  std::vector<Pair> load_pairs(std::string const& spec) {
    if (spec.starts_with("@")) {
      return parse_file(spec.substr(1), [](std::string const& t) {
        return parse_pairs_file(t);
      });
    }
    try {
      return parse_pairs_spec(spec);
    } catch (ParseError const& e) {
      throw UsageError(std::string("--pairs: ") + e.what());
    }
  }

  // --pairs is closed to the generated tolerance; --relation must already be
  // one.
  Tolerance load_tolerance(RunConfig const& cfg, FiniteAlgebra const& alg) {
    if (cfg.pairs && cfg.relation) {
      throw UsageError("give either --pairs or --relation, not both");
    }
    if (cfg.pairs) {
      return tolerance_generated(alg, load_pairs(*cfg.pairs));
    }
    auto rel = parse_file(
        require(cfg.relation, "--pairs or --relation", cfg.command),
        [](std::string const& t) { return parse_relation(t); });
    return Tolerance::verify(alg, std::move(rel));
  }

  LiftOptions lift_options(RunConfig const& cfg) {
    LiftOptions opts;
    if (cfg.cap_n) {
      opts.cap_n = *cfg.cap_n;
    }
    if (cfg.cap_assignments) {
      opts.cap_assignments = *cfg.cap_assignments;
    }
    return opts;
  }

  char const* classify(Identity const& id) {
    if (is_balanced_linear(id)) {
      return "BALANCED-LINEAR";
    }
    return is_linear(id) ? "LINEAR" : "NON-LINEAR";
  }

  int cmd_check(RunConfig const& cfg, std::ostream& out) {
    auto const alg = load_algebra(cfg);
    auto const ids
        = parse_file(require(cfg.identities, "--identities", cfg.command),
                     [&](std::string const& t) {
                       return parse_identity_file(t, alg.signature());
                     });
    auto const report = satisfies_all(
        alg, ids, cfg.cap_assignments.value_or(default_assignment_cap));
    std::ostringstream text;
    for (auto const& o : report.outcomes) {
      text << (o.result.holds ? "PASS " : "FAIL ")
           << print_identity(o.identity);
      if (o.result.witness) {
        text << " witness "
             << format_assignment(*o.result.witness, o.identity.variables());
      }
      text << '\n';
    }
    emit(cfg, text.str(), out);
    return report.all_hold() ? verified : verification_failed;
  }

  int cmd_linear(RunConfig const& cfg, std::ostream& out) {
    Signature sig;
    if (cfg.algebra && cfg.sig) {
      throw UsageError("give either --algebra or --sig, not both");
    }
    if (cfg.algebra) {
      sig = load_algebra(cfg).signature();
    } else if (cfg.sig) {
      try {
        sig = parse_signature(*cfg.sig);
      } catch (Error const& e) {
        throw UsageError(std::string("--sig: ") + e.what());
      }
    } else {
      throw UsageError("'linear' needs --algebra or --sig");
    }
    auto const ids
        = parse_file(require(cfg.identities, "--identities", cfg.command),
                     [&](std::string const& t) {
                       return parse_identity_file(t, sig);
                     });
    std::ostringstream text;
    for (auto const& id : ids) {
      text << classify(id) << ' ' << print_identity(id) << '\n';
    }
    emit(cfg, text.str(), out);
    return verified;
  }

  int cmd_close(RunConfig const& cfg, std::ostream& out) {
    auto const alg = load_algebra(cfg);
    auto const pairs = load_pairs(require(cfg.pairs, "--pairs", cfg.command));
    emit(cfg, format_relation(tolerance_generated(alg, pairs).relation()), out);
    return verified;
  }

  int cmd_lift(RunConfig const& cfg, std::ostream& out, std::ostream& err) {
    auto const alg = load_algebra(cfg);
    auto const t = load_tolerance(cfg, alg);
    auto const ids = load_identities(cfg, alg.signature());
    auto const lr = lift(alg, t, ids, lift_options(cfg));
    emit(cfg, format_lift(lr), out);
    (cfg.out ? out : err) << format_report(lr.report);
    return lr.report.passed() ? verified : verification_failed;
  }

  int cmd_verify(RunConfig const& cfg, std::ostream& out) {
    auto const alg = load_algebra(cfg);
    auto const t = load_tolerance(cfg, alg);
    auto const ids = load_identities(cfg, alg.signature());
    auto const lr = parse_file(require(cfg.lift, "--lift", cfg.command),
                               [&](std::string const& text) {
                                 return parse_lift(text, alg.size());
                               });
    auto const report = verify_lift(alg, t, lr, ids, lift_options(cfg));
    emit(cfg, format_report(report), out);
    return report.passed() ? verified : verification_failed;
  }

  int cmd_complex(RunConfig const& cfg, std::ostream& out) {
    auto const alg = load_algebra(cfg);
    auto const c = complex_algebra(alg, cfg.cap_n.value_or(default_complex_cap));
    emit(cfg, format_complex_algebra(c), out);
    return verified;
  }

  int cmd_tolerances(RunConfig const& cfg, std::ostream& out) {
    auto const alg = load_algebra(cfg);
    auto const ts
        = enumerate_tolerances(alg, cfg.cap_n.value_or(default_enumeration_cap));
    emit(cfg, format_tolerance_list(ts), out);
    return verified;
  }

  void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--algebra", cfg.algebra, "Algebra file");
    sub->add_option("--identities", cfg.identities, "Identity file");
    sub->add_option("--pairs", cfg.pairs,
                    "Generating pairs 'a-b,c-d', or @FILE with one 'a b' per "
                    "line");
    sub->add_option("--relation", cfg.relation, "Relation file (rel N)");
    sub->add_option("--lift", cfg.lift, "Lift file written by 'lift'");
    sub->add_option("--out", cfg.out, "Write output here instead of stdout");
    sub->add_option("--sig", cfg.sig, "Signature such as 'm/2,e/0'");
    sub->add_option("--cap-n", cfg.cap_n,
                    "Largest universe for enumeration and complex algebras");
    sub->add_option("--cap-assignments", cfg.cap_assignments,
                    "Largest number of assignments per identity check");
    sub->add_option("--seed", cfg.seed, "Random seed");
  }

}  // namespace

int run(std::vector<std::string> const& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Lift tolerances of finite algebras to congruences"};
  app.name("tolift");
  app.require_subcommand(1);
  RunConfig cfg;
  struct Command {
    char const* name;
    char const* help;
  };
  for (auto const& [name, help] : std::initializer_list<Command>{
           {"check", "Check identities on an algebra"},
           {"linear", "Classify identities as linear, balanced or neither"},
           {"close", "Tolerance generated by pairs"},
           {"lift", "Lift a tolerance to a congruence and verify"},
           {"verify", "Re-verify a lift file"},
           {"complex", "Complex algebra of an algebra"},
           {"tolerances", "All tolerances of an algebra"}}) {
    add_common(app.add_subcommand(name, help), cfg);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (CLI::CallForHelp const&) {
    out << app.help();
    return verified;
  } catch (CLI::CallForAllHelp const&) {
    out << app.help("", CLI::AppFormatMode::All);
    return verified;
  } catch (CLI::ParseError const& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (cfg.command == "check") {
      return cmd_check(cfg, out);
    }
    if (cfg.command == "linear") {
      return cmd_linear(cfg, out);
    }
    if (cfg.command == "close") {
      return cmd_close(cfg, out);
    }
    if (cfg.command == "lift") {
      return cmd_lift(cfg, out, err);
    }
    if (cfg.command == "verify") {
      return cmd_verify(cfg, out);
    }
    if (cfg.command == "complex") {
      return cmd_complex(cfg, out);
    }
    return cmd_tolerances(cfg, out);
  } catch (Error const& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }
}

}  // namespace tolift::cli
