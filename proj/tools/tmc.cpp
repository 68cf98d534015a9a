// Command-line front-end: check, translate, regions, graph, oracle.
// Exit codes: 0 ran, 2 parse error, 3 semantic error, 4 I/O error.

#include <CLI11.hpp>

#include <iostream>

#include "tmc/eval.hpp"
#include "tmc/oracle.hpp"
#include "tmc/region_automaton.hpp"
#include "tmc/translate.hpp"

namespace {

using namespace tmc;

struct RunConfig {
  std::string command;
  std::string ta_path;
  std::string formula;
  std::string logic = "lrel";
  std::vector<std::string> states;
  std::string format = "text";
  std::string variant = "general";
  std::string policy = "shared";
  unsigned bound = 0;
  std::vector<std::string> clocks;
  bool strict = false;
};

constexpr int kParseError = 2;
constexpr int kSemanticError = 3;
constexpr int kIoError = 4;

TimedAutomaton load_valid(const std::string& path) {
  TimedAutomaton ta = load_ta(path);
  for (const auto& defect : validate(ta)) {
    if (defect.warning)
      std::cerr << "warning: " << defect.message << "\n";
    else
      throw SemanticError(defect.message);
  }
  return ta;
}

ClockPolicy parse_policy(const std::string& text) {
  if (text == "shared") return ClockPolicy::shared;
  if (text == "fresh") return ClockPolicy::fresh;
  throw ParseError("unknown clock policy '" + text + "'", 0);
}

const char* verdict(bool b) { return b ? "true" : "false"; }

int run_check(const RunConfig& cfg) {
  TimedAutomaton ta = load_valid(cfg.ta_path);
  CheckOptions options{.variant = parse_variant(cfg.variant), .policy = parse_policy(cfg.policy)};
  Verdict v = check(ta, cfg.formula, parse_logic(cfg.logic), cfg.states, options);
  if (cfg.format == "structured") {
    std::cout << render_structured(ta, v);
    return 0;
  }
  bool summary = v.holds_initially();
  if (!v.points.empty()) {
    summary = true;
    for (const auto& p : v.points) summary = summary && p.holds;
  }
  std::cout << verdict(summary) << "\n" << render_text(ta, v);
  return 0;
}

int run_translate(const RunConfig& cfg) {
  TranslateOptions options{.variant = parse_variant(cfg.variant), .policy = parse_policy(cfg.policy)};
  std::cout << print(translate(parse(cfg.formula, parse_logic(cfg.logic)), options)) << "\n";
  return 0;
}

int run_regions(const RunConfig& cfg) {
  TimedAutomaton ta = load_valid(cfg.ta_path);
  ClockNames clocks = ta.clocks;
  clocks.insert(cfg.clocks.begin(), cfg.clocks.end());
  auto space = region_space(clocks, std::max(cfg.bound, ta_bound(ta)));
  if (cfg.format == "structured") {
    std::cout << "regions=" << space->size() << "\n";
    for (RegionId r = 0; r < space->size(); ++r) std::cout << "region." << r << "=" << space->describe(r) << "\n";
    return 0;
  }
  for (RegionId r = 0; r < space->size(); ++r) std::cout << "r" << r << ": " << space->describe(r) << "\n";
  std::cout << space->size() << " regions\n";
  return 0;
}

int run_graph(const RunConfig& cfg) {
  TimedAutomaton ta = load_valid(cfg.ta_path);
  if (cfg.formula.empty()) {
    std::cout << RegionAutomaton::build(ta, {}, 0).to_dot();
    return 0;
  }
  TranslateOptions options{.variant = parse_variant(cfg.variant), .policy = parse_policy(cfg.policy)};
  options.avoid.insert(ta.clocks.begin(), ta.clocks.end());
  FormulaPtr f = translate(parse(cfg.formula, parse_logic(cfg.logic)), options);
  std::cout << RegionAutomaton::build_relativized(ta, f).to_dot();
  return 0;
}

int run_oracle(const RunConfig& cfg) {
  TimedAutomaton ta = load_valid(cfg.ta_path);
  if (cfg.states.empty()) throw SemanticError("oracle needs --state");
  SurfaceFormula surface = parse(cfg.formula, parse_logic(cfg.logic));
  for (const auto& spec : cfg.states) {
    ConcreteState s = parse_state(ta, spec);
    bool holds = false;
    if (cfg.strict) {
      if (surface.root->op != Op::until_s) throw SemanticError("--strict needs a top-level ~s formula");
      SurfaceFormula lhs{surface.logic, surface.root->args.at(0)};
      SurfaceFormula rhs{surface.logic, surface.root->args.at(1)};
      holds = strict_until_check(ta, translate(lhs), translate(rhs), s);
    } else {
      holds = point_check(ta, translate(surface), s);
    }
    std::cout << verdict(holds) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Region-based model checker for timed mu-calculi and TCTL"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_logic = [&](CLI::App* sub) {
    sub->add_option("--logic", cfg.logic, "lrel, lnu, lmunu, lc, tmu or tctl")->capture_default_str();
    sub->add_option("--variant", cfg.variant, "TCTL embedding: general, tn or n")->capture_default_str();
    sub->add_option("--policy", cfg.policy, "reserved clocks: shared or fresh")->capture_default_str();
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "text or structured")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();
  };

  auto* check_cmd = app.add_subcommand("check", "evaluate a formula on an automaton");
  check_cmd->add_option("ta", cfg.ta_path, "automaton file")->required();
  check_cmd->add_option("formula", cfg.formula, "formula text")->required();
  check_cmd->add_option("--state", cfg.states, "point query loc:x=N/D,...");
  add_logic(check_cmd);
  add_format(check_cmd);

  auto* translate_cmd = app.add_subcommand("translate", "print the core formula");
  translate_cmd->add_option("formula", cfg.formula, "formula text")->required();
  add_logic(translate_cmd);

  auto* regions_cmd = app.add_subcommand("regions", "list the regions of the automaton's clocks");
  regions_cmd->add_option("ta", cfg.ta_path, "automaton file")->required();
  regions_cmd->add_option("--bound", cfg.bound, "raise the region bound");
  regions_cmd->add_option("--clock", cfg.clocks, "additional clock");
  add_format(regions_cmd);

  auto* graph_cmd = app.add_subcommand("graph", "DOT export of the region automaton");
  graph_cmd->add_option("ta", cfg.ta_path, "automaton file")->required();
  graph_cmd->add_option("formula", cfg.formula, "relativize to this formula");
  add_logic(graph_cmd);

  auto* oracle_cmd = app.add_subcommand("oracle", "concrete point check of a fixpoint-free formula");
  oracle_cmd->add_option("ta", cfg.ta_path, "automaton file")->required();
  oracle_cmd->add_option("formula", cfg.formula, "formula text")->required();
  oracle_cmd->add_option("--state", cfg.states, "point query loc:x=N/D,...")->required();
  oracle_cmd->add_flag("--strict", cfg.strict, "read a top-level ~s as the strict variant");
  add_logic(oracle_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParseError;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    if (cfg.command == "check") return run_check(cfg);
    if (cfg.command == "translate") return run_translate(cfg);
    if (cfg.command == "regions") return run_regions(cfg);
    if (cfg.command == "graph") return run_graph(cfg);
    return run_oracle(cfg);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIoError;
  } catch (const SemanticError& e) {
    std::cerr << "semantic error: " << e.what() << "\n";
    return kSemanticError;
  } catch (const DomainError& e) {
    std::cerr << "semantic error: " << e.what() << "\n";
    return kSemanticError;
  } catch (const UnsupportedFormula& e) {
    std::cerr << "semantic error: " << e.what() << "\n";
    return kSemanticError;
  } catch (const RegionError& e) {
    std::cerr << "semantic error: " << e.what() << "\n";
    return kSemanticError;
  }
}
