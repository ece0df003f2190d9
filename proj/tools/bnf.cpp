// bnf: generate decorated-tree classes, expand normal forms, verify them
// against the Birkhoff iteration, and render trees.
//
// Exit codes: 0 success, 1 verification residual, 2 configuration/IO error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bnf/bnf.hpp"

namespace {

using namespace bnf;

struct RunConfig {
  int dim = 1;
  int K = 2;
  long N = 0;
  int m = 1;
  int ell = 2;
  int i = 1;
  std::string kind = "circ";
  std::string format = "text";
  std::string out;
  std::string mode = "le";
  std::size_t cap = 1'000'000;
  std::string tree;
  std::string ledger;
};

struct Flags {
  CLI::Option* dim = nullptr;
  CLI::Option* K = nullptr;
  CLI::Option* N = nullptr;
  CLI::Option* mode = nullptr;
  CLI::Option* cap = nullptr;
};

// Fills in values from the file named by BNF_CONFIG for every option not
// given on the command line.
void apply_config_file(RunConfig& rc, const Flags& flags) {
  const char* path = std::getenv("BNF_CONFIG");
  if (path == nullptr || *path == '\0') return;
  std::ifstream in(path);
  if (!in) throw ConfigError(std::string("cannot read config file ") + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config file: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  auto take = [&](const char* key, CLI::Option* flag, auto& target) {
    if (flag->count() == 0 && j.contains(key)) target = detail::get_field<std::decay_t<decltype(target)>>(j, key);
  };
  take("dim", flags.dim, rc.dim);
  take("K", flags.K, rc.K);
  take("N", flags.N, rc.N);
  take("assumption_mode", flags.mode, rc.mode);
  take("cap", flags.cap, rc.cap);
}

AssumptionMode parse_mode(const std::string& s) {
  const auto m = mode_from_name(s);
  if (!m) throw ConfigError("assumption mode must be 'le' or 'ge'");
  return *m;
}

void check_lattice(const RunConfig& rc) {
  if (rc.dim < 1) throw ConfigError("--dim must be >= 1");
  if (rc.K < 1) throw ConfigError("--K must be >= 1");
  if (rc.N < 0) throw ConfigError("--N must be >= 0");
}

EvalConfig eval_config(const RunConfig& rc, int cutoff) {
  check_lattice(rc);
  EvalConfig c{ModeLattice(rc.dim, rc.K), ResonanceConfig{rc.N}, cutoff, parse_mode(rc.mode), rc.cap};
  c.validate();
  return c;
}

TreeClassQuery query_for(const RunConfig& rc) {
  if (rc.kind == "res") return TreeClassQuery::res_below(rc.m);
  if (rc.kind == "circ") return TreeClassQuery::circ_exact(rc.m);
  if (rc.kind == "n") return TreeClassQuery::n_exact(rc.m);
  if (rc.kind == "circ-range") return TreeClassQuery::circ_range(rc.m, rc.ell);
  throw ConfigError("--kind must be one of res, circ, n, circ-range");
}

// Writes `doc` to --out, or to stdout when no path is given.
void emit(const RunConfig& rc, const std::string& doc) {
  if (rc.out.empty()) {
    std::cout << doc;
    return;
  }
  std::ofstream f(rc.out, std::ios::binary);
  if (!f || !(f << doc) || !(f.flush())) throw ConfigError("cannot write " + rc.out);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string ledger_table(const ExpansionLedger& l) {
  std::ostringstream os;
  os << "entries: " << l.entries.size() << "\n";
  for (const auto& e : l.entries) {
    os << canonical(e.tree) << "\tS=" << e.symmetry << "\tmonomials=" << e.kernel.size() << "\n";
  }
  os << "total monomials: " << l.total.size() << "\n";
  return os.str();
}

int cmd_trees(const RunConfig& rc) {
  const TreeSet set = tree_class(query_for(rc), {parse_mode(rc.mode), rc.cap});
  const AssumptionMode mode = parse_mode(rc.mode);
  std::ostringstream summary;
  summary << "count: " << set.trees.size() << "\ndegrees:";
  for (const auto& t : set.trees) summary << ' ' << degree(t);
  summary << "\n";
  std::string doc;
  if (rc.format == "json") {
    doc = dump(tree_set_to_json(set, mode));
  } else if (rc.format == "latex" || rc.format == "dot") {
    for (const auto& t : set.trees) doc += render(t, rc.format == "dot" ? TreeFormat::dot : TreeFormat::latex) + "\n";
  } else {
    for (const auto& t : set.trees) {
      summary << canonical(t) << "\t|T|=" << degree(t) << "\tS=" << symmetry_factor(t, 0, mode) << "\n";
    }
  }
  if (doc.empty() || !rc.out.empty()) std::cout << summary.str();
  if (!doc.empty()) emit(rc, doc);
  return 0;
}

int write_ledger(const RunConfig& rc, const ExpansionLedger& l, const LedgerInfo& info) {
  if (rc.format == "json") {
    emit(rc, dump(ledger_to_json(l, info)));
    if (!rc.out.empty()) std::cout << ledger_table(l);
  } else if (rc.format == "text") {
    emit(rc, ledger_table(l));
  } else {
    throw ConfigError("ledgers are written as json or text");
  }
  return 0;
}

int cmd_expand(const RunConfig& rc) {
  if (!(rc.m >= 1 && rc.m < rc.ell)) throw ConfigError("expand requires 1 <= m < ell");
  const EvalConfig cfg = eval_config(rc, 2 * rc.ell);
  Evaluator ev(cfg);
  return write_ledger(rc, ev.normal_form(rc.m, rc.ell), {"normal_form", rc.m, rc.ell, cfg});
}

int cmd_f_transform(const RunConfig& rc) {
  if (rc.i < 1) throw ConfigError("--i must be >= 1");
  const int ell = std::max(rc.ell, rc.i + 1);
  const EvalConfig cfg = eval_config(rc, 2 * ell);
  Evaluator ev(cfg);
  return write_ledger(rc, ev.f_transform(rc.i), {"f_transform", rc.i, ell, cfg});
}

int cmd_verify(const RunConfig& rc) {
  EvalConfig cfg;
  int m = rc.m;
  int ell = rc.ell;
  std::optional<Kernel> expansion;
  if (!rc.ledger.empty()) {
    std::ifstream in(rc.ledger);
    if (!in) throw ConfigError("cannot read ledger " + rc.ledger);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("ledger: ") + e.what());
    }
    LoadedLedger loaded = ledger_from_json(j);
    if (loaded.info.kind != "normal_form") throw ConfigError("verify expects a normal_form ledger");
    if (loaded.info.config.cutoff != 2 * loaded.info.ell) throw ConfigError("ledger cutoff must equal 2 * ell");
    cfg = loaded.info.config;
    m = loaded.info.m;
    ell = loaded.info.ell;
    expansion = std::move(loaded.ledger.total);
  } else {
    cfg = eval_config(rc, 2 * ell);
  }
  if (!(m >= 1 && m < ell)) throw ConfigError("verify requires 1 <= m < ell");
  Evaluator ev(cfg);
  if (!expansion) expansion = ev.normal_form(m, ell).total;
  const BirkhoffResult oracle = birkhoff_iterate(m, ell, cfg.lattice, cfg.resonance);
  const DiffReport diff = compare(*expansion, oracle.normal_form);

  bool ok = diff.equal && oracle.recursion_consistent;
  std::ostringstream log;
  log << "normal_form(" << m << "," << ell << ") vs oracle: " << (diff.equal ? "equal" : "DIFFERENT")
      << " (residual monomials: " << diff.residual.size() << ")\n";
  log << "oracle slice vs truncation-term recursion: " << (oracle.recursion_consistent ? "consistent" : "INCONSISTENT")
      << "\n";
  for (int i = 1; i <= m; ++i) {
    const Kernel residual = ev.cancellation_check(i);
    const DiffReport f = compare(ev.f_transform(i).total, oracle.generators[static_cast<std::size_t>(i - 1)]);
    ok = ok && residual.empty() && f.equal;
    log << "cancellation_check(" << i << "): " << (residual.empty() ? "empty" : "NONEMPTY") << " (" << residual.size()
        << ")\n";
    log << "F_" << i << " trees vs oracle: " << (f.equal ? "equal" : "DIFFERENT") << " (" << f.residual.size() << ")\n";
  }
  if (rc.format == "json") {
    emit(rc, dump(diff_to_json(diff)));
    if (!rc.out.empty()) std::cout << log.str();
  } else {
    emit(rc, log.str());
  }
  return ok ? 0 : 1;
}

int cmd_render(const RunConfig& rc) {
  if (rc.tree.empty()) throw ConfigError("render needs --tree");
  const DecoratedTree t = parse_tree(rc.tree);
  const AssumptionMode mode = parse_mode(rc.mode);
  std::string doc;
  if (rc.format == "latex") {
    doc = render(t, TreeFormat::latex);
  } else if (rc.format == "dot") {
    doc = render(t, TreeFormat::dot);
  } else if (rc.format == "json") {
    Json j{{"tree", canonical(t)}, {"degree", degree(t)}, {"valid", is_valid(t, mode)}};
    if (is_valid(t, mode)) j["S"] = symmetry_factor(t, 0, mode);
    doc = dump(j);
  } else {
    std::ostringstream os;
    os << canonical(t) << "\n|T| = " << degree(t) << "\n";
    const ValidationReport report = validate_tree(t, mode);
    if (report.valid) {
      os << "S = " << symmetry_factor(t, 0, mode) << "\n";
    } else {
      for (const auto& v : report.violations) {
        os << "violates (" << rule_name(v.rule) << ") at " << (v.path.empty() ? "root" : v.path) << "\n";
      }
    }
    doc = os.str();
  }
  emit(rc, doc);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decorated-tree Birkhoff normal forms for cubic NLS"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig rc;
  Flags flags;
  flags.dim = app.add_option("--dim", rc.dim, "Lattice dimension d");
  flags.K = app.add_option("--K", rc.K, "Lattice radius: modes in [-K, K]^d");
  flags.N = app.add_option("--N", rc.N, "Resonance threshold: |phase| <= N is resonant");
  flags.mode = app.add_option("--assumption-mode", rc.mode, "Nested size rule for o-rooted left children: le or ge");
  flags.cap = app.add_option("--cap", rc.cap, "Maximum number of trees generated");
  app.add_option("--format", rc.format, "text, json, latex or dot")
      ->check(CLI::IsMember({"text", "json", "latex", "dot"}));
  app.add_option("--out", rc.out, "Output file (default stdout)");

  auto* trees = app.add_subcommand("trees", "List a tree class");
  trees->add_option("--kind", rc.kind, "res, circ, n or circ-range")->required();
  trees->add_option("--m", rc.m)->required();
  trees->add_option("--ell", rc.ell, "Upper index for circ-range");

  auto* expand = app.add_subcommand("expand", "Tree expansion of the normal form H_m^l");
  expand->add_option("--m", rc.m)->required();
  expand->add_option("--ell", rc.ell)->required();

  auto* verify = app.add_subcommand("verify", "Check the tree expansion against the Birkhoff iteration");
  verify->add_option("--m", rc.m);
  verify->add_option("--ell", rc.ell);
  verify->add_option("--ledger", rc.ledger, "Check this normal_form ledger instead of recomputing it");

  auto* render_cmd = app.add_subcommand("render", "Render one tree");
  render_cmd->add_option("--tree", rc.tree, "Canonical tree string, e.g. \"(o (k) (n))\"")->required();

  auto* ftrans = app.add_subcommand("f-transform", "Tree expansion of the generator F_i");
  ftrans->add_option("--i", rc.i)->required();
  ftrans->add_option("--ell", rc.ell, "Cutoff is 2*ell (default i+1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    apply_config_file(rc, flags);
    if (*trees) return cmd_trees(rc);
    if (*expand) return cmd_expand(rc);
    if (*verify) return cmd_verify(rc);
    if (*render_cmd) return cmd_render(rc);
    if (*ftrans) return cmd_f_transform(rc);
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
