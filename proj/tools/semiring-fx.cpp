// semiring-fx: denote, compare and check programs and values.
//
// Exit codes: 0 success / equal / member, 1 negative result, 2 usage or input
// error, 3 unknown.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "semfx/semfx.hpp"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;
constexpr int kUnknown = 3;

struct Options {
  std::optional<std::uint64_t> seed;
  std::size_t trials = 200;
  std::size_t bound = 8;
  std::size_t max_nodes = 10000;
  bool json = true;
  bool mutate = false;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InputError(path + ": malformed JSON: " + e.what());
  }
}

semfx::lang::Program load_program(const std::string& path) {
  try {
    return semfx::lang::parse(read_file(path));
  } catch (const semfx::Error& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("SEMIRING_FX_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw InputError(std::string("SEMIRING_FX_SEED is not an unsigned 64-bit integer: '") + env + "'");
    }
  }
  return 0;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_denote(const Options& o, const std::string& file) {
  const auto program = load_program(file);
  std::optional<semfx::lang::Denotation> d;
  try {
    d = semfx::lang::denote(program);
  } catch (const semfx::Error& e) {
    throw InputError(file + ": " + e.what());
  }
  if (o.json) {
    emit(semfx::lang::to_json(*d));
  } else {
    std::cout << semfx::lang::to_text(*d);
  }
  return kOk;
}

int cmd_equiv(const Options& o, const std::string& f1, const std::string& f2) {
  const auto p1 = load_program(f1);
  const auto p2 = load_program(f2);
  std::optional<semfx::lang::EquivResult> r;
  try {
    r = semfx::lang::equiv(p1, p2);
  } catch (const semfx::Error& e) {
    throw InputError(e.what());
  }
  if (o.json) {
    emit(semfx::lang::to_json(*r));
  } else if (r->equal) {
    std::cout << "equivalent\n";
  } else {
    std::cout << "not equivalent at outcome " << *r->outcome << ": " << r->left << " vs " << r->right << "\n";
  }
  return r->equal ? kOk : kNegative;
}

int cmd_member(const Options& o, const std::string& value_file, const std::string& class_name,
               const std::string& certificate_file) {
  try {
    const semfx::SemiringValue v = semfx::value_from_json(read_json(value_file));
    const semfx::ConvexityClass cls(semfx::parse_class_name(class_name), v.tag());
    semfx::Certificate supplied;
    if (!certificate_file.empty()) {
      const json c = read_json(certificate_file);
      if (cls.kind() == semfx::ClassKind::ProbIOTensorClass) {
        supplied = semfx::prob_io_tree_from_json(c, semfx::coefficient_tag(v.tag()));
      } else if (cls.kind() == semfx::ClassKind::IOTreeClass) {
        supplied = semfx::io_tree_from_json(c);
      }
    }
    const semfx::MembershipResult m = semfx::member(cls, v, supplied);
    json j{{"class", std::string(semfx::class_name(cls.kind()))},
           {"semiring", semfx::tag_name(v.tag())},
           {"verdict", std::string(semfx::membership_name(m.verdict))}};
    if (!v.tag().index.empty()) j["index"] = v.tag().index;
    if (m.certificate.index() != 0) j["certificate"] = semfx::certificate_to_json(m.certificate, v.tag().index);
    if (o.json) {
      emit(j);
    } else {
      std::cout << semfx::membership_name(m.verdict) << "\n";
    }
    switch (m.verdict) {
      case semfx::Membership::Member: return kOk;
      case semfx::Membership::NonMember: return kNegative;
      case semfx::Membership::Unknown: return kUnknown;
    }
  } catch (const semfx::Error& e) {
    throw InputError(e.what());
  }
  return kUnknown;
}

int cmd_laws(const Options& o, const std::string& suite) {
  std::vector<std::string> names;
  if (suite == "all") {
    names = semfx::laws::suite_names();
  } else if (std::find(semfx::laws::suite_names().begin(), semfx::laws::suite_names().end(), suite) !=
             semfx::laws::suite_names().end()) {
    names = {suite};
  } else {
    throw InputError("unknown suite '" + suite + "' (expected semiring, convexity, theory, commute or all)");
  }
  const std::uint64_t seed = resolve_seed(o);
  json suites = json::array();
  bool ok = true;
  for (const auto& n : names) {
    const auto report = semfx::laws::run_suite(n, o.trials, seed, o.mutate);
    ok = ok && report.ok();
    suites.push_back(semfx::laws::to_json(report));
    if (!o.json) {
      for (const auto& c : report.cases) {
        std::cout << (c.ok() ? "pass " : "FAIL ") << n << ": " << c.name << " (" << c.passed << "/" << c.trials << ")\n";
        if (c.counterexample) {
          std::cout << "     " << c.counterexample->law << " at trial " << c.counterexample->trial << ", seed "
                    << c.counterexample->seed << "\n";
          for (const auto& v : c.counterexample->values) std::cout << "       " << v << "\n";
        }
      }
    }
  }
  if (o.json) emit({{"ok", ok}, {"seed", seed}, {"trials", o.trials}, {"mutate", o.mutate}, {"suites", suites}});
  return ok ? kOk : kNegative;
}

int cmd_oracle(const Options& o, const std::string& file, const std::string& t1, const std::string& t2) {
  try {
    const semfx::Presentation p = semfx::presentation_from_json(read_json(file));
    const semfx::OracleResult r = semfx::presented_eq_oracle(p, t1, t2, o.bound, o.max_nodes);
    json j{{"verdict", std::string(semfx::verdict_name(r.verdict))},
           {"presentation", p.name()},
           {"bound", o.bound},
           {"visited", r.visited}};
    if (r.verdict == semfx::OracleVerdict::Equal) j["chain"] = r.chain;
    if (r.verdict == semfx::OracleVerdict::Distinct) j["witness"] = r.witness;
    if (o.json) {
      emit(j);
    } else {
      std::cout << semfx::verdict_name(r.verdict) << "\n";
      for (const auto& step : r.chain) std::cout << "  " << step << "\n";
      if (!r.witness.empty()) std::cout << "  " << r.witness << "\n";
    }
    switch (r.verdict) {
      case semfx::OracleVerdict::Equal: return kOk;
      case semfx::OracleVerdict::Distinct: return kNegative;
      case semfx::OracleVerdict::Unknown: return kUnknown;
    }
  } catch (const semfx::Error& e) {
    throw InputError(e.what());
  }
  return kUnknown;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact semiring semantics for effectful programs", "semiring-fx"};
  app.require_subcommand(1);
  Options o;
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "Random seed (falls back to SEMIRING_FX_SEED)");
  app.add_option("--trials", o.trials, "Trials per law suite case")->check(CLI::PositiveNumber);
  app.add_option("--bound", o.bound, "Maximum rewrite chain length for the oracle");
  app.add_option("--max-nodes", o.max_nodes, "Maximum number of terms the oracle visits")->check(CLI::PositiveNumber);
  bool text = false, json_flag = false;
  app.add_flag("--text", text, "Human-readable output");
  app.add_flag("--json", json_flag, "JSON output (default)");
  app.add_flag("--mutate", o.mutate, "Add a deliberately broken semiring to the law suite");

  std::string file, file2, cls, cert, suite, t1, t2;
  auto* denote = app.add_subcommand("denote", "Denote a program");
  denote->add_option("file", file, "Program (.sfx)")->required();
  auto* equiv = app.add_subcommand("equiv", "Compare the denotations of two programs");
  equiv->add_option("first", file, "Program (.sfx)")->required();
  equiv->add_option("second", file2, "Program (.sfx)")->required();
  auto* member = app.add_subcommand("member", "Test membership of a value in a convexity class");
  member->add_option("value", file, "Value (JSON)")->required();
  member->add_option("class", cls, "one, unit-interval, whole, io-trees, function-matrices, row-stochastic, prob-io-trees")
      ->required();
  member->add_option("--certificate", cert, "Certificate (JSON)");
  auto* laws = app.add_subcommand("laws", "Run the property suites");
  laws->add_option("suite", suite, "semiring, convexity, theory, commute or all")->required();
  auto* oracle = app.add_subcommand("oracle", "Bounded equality search in a presented semiring");
  oracle->add_option("presentation", file, "Presentation (JSON)")->required();
  oracle->add_option("t1", t1, "First term")->required();
  oracle->add_option("t2", t2, "Second term")->required();
  for (auto* sub : {denote, equiv, member, laws, oracle}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }
  if (text && json_flag) {
    std::cerr << "semiring-fx: --json and --text are mutually exclusive\n";
    return kInputError;
  }
  o.json = !text;
  if (seed_opt->count() > 0) o.seed = seed_value;

  try {
    if (*denote) return cmd_denote(o, file);
    if (*equiv) return cmd_equiv(o, file, file2);
    if (*member) return cmd_member(o, file, cls, cert);
    if (*laws) return cmd_laws(o, suite);
    if (*oracle) return cmd_oracle(o, file, t1, t2);
  } catch (const InputError& e) {
    std::cerr << "semiring-fx: " << e.what() << "\n";
    return kInputError;
  } catch (const semfx::Error& e) {
    std::cerr << "semiring-fx: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
