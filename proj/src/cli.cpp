#include "fuzzy_placer/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "fuzzy_placer/documents.hpp"
#include "fuzzy_placer/resource_model.hpp"
#include "fuzzy_placer/selector.hpp"

namespace fuzzy_placer::cli {

namespace {

std::optional<std::string> env_rulebase() {
  if (const char* v = std::getenv(kRulebaseEnv); v != nullptr && *v != '\0') return std::string(v);
  return std::nullopt;
}

bool write_text(const std::string& path, const std::string& text, std::ostream& err) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (f) f << text;
  if (!f) {
    err << "error: cannot write " << path << "\n";
    return false;
  }
  return true;
}

// Runs `body`, mapping library errors onto the exit-code contract.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ZeroMass& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

void add_rulebase_flags(CLI::App* cmd, RulebaseOptions& opts) {
  cmd->add_option("--rulebase", opts.path, "Rulebase document (default: $FUZZY_PLACER_RULEBASE or built-in rules)");
  cmd->add_flag("--defaults", opts.defaults, "Use the built-in rules when the rulebase file does not exist");
}

// Fills `strategy` through a string option so the default text stays readable.
void add_strategy_option(CLI::App* cmd, sim::Strategy& strategy) {
  cmd->add_option_function<std::string>(
         "--strategy", [&strategy](const std::string& name) { strategy = *sim::parse_strategy(name); },
         "argmax | sample | round-robin | always-first")
      ->check(CLI::IsMember({"argmax", "sample", "round-robin", "always-first"}));
}

}  // namespace

fuzzy::RuleBase resolve_rulebase(const RulebaseOptions& opts, const std::optional<std::string>& env_path) {
  const auto path = opts.path ? opts.path : env_path;
  if (!path) return resource::default_rulebase();
  if (opts.defaults && !std::filesystem::exists(*path)) return resource::default_rulebase();
  return documents::load_rulebase(*path);
}

int cmd_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const resource::ResourceMetrics m{args.speed, args.reliability, args.concentration};
    resource::validate(m);
    const auto rb = resolve_rulebase(args.rulebase, env_rulebase());
    out << documents::fixed6(resource::resource_probability(m, rb)) << "\n";
    return kExitOk;
  });
}

int cmd_select(const SelectArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.strategy != sim::Strategy::FuzzyArgmax && args.strategy != sim::Strategy::FuzzySample) {
      err << "error: select supports --strategy argmax or sample\n";
      return kExitInputError;
    }
    if (args.strategy == sim::Strategy::FuzzySample && !args.seed) {
      err << "error: --seed is required for --strategy sample\n";
      return kExitInputError;
    }
    const auto inventory = documents::load_inventory(args.inventory);
    if (inventory.empty()) {
      err << "error: " << args.inventory << ": inventory has no resources\n";
      return kExitInputError;
    }
    const auto rb = resolve_rulebase(args.rulebase, env_rulebase());
    const auto scores = resource::score_all(inventory, rb);

    std::optional<selection::SelectionDistribution> dist;
    std::string chosen;
    if (args.strategy == sim::Strategy::FuzzySample) {
      dist = selection::normalize(scores);
      chosen = selection::sample(*dist, {*args.seed}, 0);
    } else {
      chosen = selection::select_argmax(scores);
      if (args.verbose) {
        try {
          dist = selection::normalize(scores);
        } catch (const ZeroMass&) {
        }
      }
    }

    if (args.verbose) {
      out << "id,p,weight\n";
      for (std::size_t i = 0; i < scores.size(); ++i) {
        out << scores[i].id << "," << documents::fixed6(scores[i].p) << ","
            << (dist ? documents::fixed6(dist->weights()[i]) : std::string("-")) << "\n";
      }
    }
    out << chosen << "\n";
    return kExitOk;
  });
}

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto inventory = documents::load_inventory(args.inventory);
    if (inventory.empty()) {
      err << "error: " << args.inventory << ": inventory has no resources\n";
      return kExitInputError;
    }
    const auto rb = resolve_rulebase(args.rulebase, env_rulebase());
    std::vector<sim::SimResource> resources;
    for (const auto& [id, m] : inventory) resources.push_back({id, m.speed_mbs, m.reliability_pct, 0});

    const auto report = sim::run(sim::ClusterState(std::move(resources)), args.strategy, rb, {args.seed}, args.chunks,
                                 args.trace);
    if (args.out) {
      const auto text = documents::serialize_report(report, {args.strategy, args.seed, args.chunks});
      if (!write_text(*args.out, text, err)) return kExitInputError;
    }
    if (report.shares_defined) {
      out << "max_share=" << documents::fixed6(report.max_share) << " min_share=" << documents::fixed6(report.min_share)
          << "\n";
    } else {
      out << "no chunks placed\n";
    }
    return kExitOk;
  });
}

int cmd_plot(const PlotArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto rb = resolve_rulebase(args.rulebase, env_rulebase());
    const fuzzy::LinguisticVariable* variable = nullptr;
    if (rb.output().name() == args.variable) variable = &rb.output();
    for (const auto& v : rb.inputs()) {
      if (v.name() == args.variable) variable = &v;
    }
    if (variable == nullptr) {
      err << "error: unknown variable '" << args.variable << "'\n";
      return kExitInputError;
    }
    const auto text = documents::export_curves(*variable);
    if (!args.out) {
      out << text;
      return kExitOk;
    }
    return write_text(*args.out, text, err) ? kExitOk : kExitInputError;
  });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fuzzy scoring and placement of storage resources", "fuzzy_placer"};
  app.require_subcommand(1);

  EvaluateArgs eval;
  auto* evaluate = app.add_subcommand("evaluate", "Score one resource");
  evaluate->add_option("--speed", eval.speed, "Access speed, Mb/s")->required();
  evaluate->add_option("--reliability", eval.reliability, "Uptime, percent")->required();
  evaluate->add_option("--concentration", eval.concentration, "Share of stored data on the resource, percent")
      ->required();
  add_rulebase_flags(evaluate, eval.rulebase);

  SelectArgs sel;
  std::uint64_t sel_seed = 0;
  auto* select = app.add_subcommand("select", "Pick a resource from an inventory");
  select->add_option("--inventory", sel.inventory, "Inventory CSV")->required();
  add_strategy_option(select, sel.strategy);
  auto* seed_opt = select->add_option("--seed", sel_seed, "Seed for --strategy sample");
  select->add_flag("--verbose", sel.verbose, "Print the score table");
  add_rulebase_flags(select, sel.rulebase);

  SimulateArgs simu;
  std::string sim_out;
  auto* simulate = app.add_subcommand("simulate", "Place chunks on a synthetic cluster");
  simulate->add_option("--inventory", simu.inventory, "Inventory CSV (concentration column ignored)")->required();
  add_strategy_option(simulate, simu.strategy);
  simulate->add_option("--chunks", simu.chunks, "Number of chunks to place")->required();
  simulate->add_option("--seed", simu.seed, "Seed for --strategy sample");
  auto* sim_out_opt = simulate->add_option("--out", sim_out, "Report path");
  simulate->add_flag("--trace", simu.trace, "Record every placement in the report");
  add_rulebase_flags(simulate, simu.rulebase);

  PlotArgs plt;
  std::string plot_out;
  auto* plot = app.add_subcommand("plot", "Export membership curves of one variable as CSV");
  plot->add_option("--variable", plt.variable, "Variable name")->required();
  auto* plot_out_opt = plot->add_option("--out", plot_out, "CSV path (default: stdout)");
  add_rulebase_flags(plot, plt.rulebase);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  if (evaluate->parsed()) return cmd_evaluate(eval, out, err);
  if (select->parsed()) {
    if (seed_opt->count() > 0) sel.seed = sel_seed;
    return cmd_select(sel, out, err);
  }
  if (simulate->parsed()) {
    if (sim_out_opt->count() > 0) simu.out = sim_out;
    return cmd_simulate(simu, out, err);
  }
  if (plot_out_opt->count() > 0) plt.out = plot_out;
  return cmd_plot(plt, out, err);
}

}  // namespace fuzzy_placer::cli
