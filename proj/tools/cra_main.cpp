// Command-line front end: eval | simulate | optimize | sweep | verify.
// Exit codes: 0 success, 2 configuration error, 3 verification failure.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cra/config.hpp"
#include "cra/model.hpp"
#include "cra/optimizer.hpp"
#include "cra/oracle.hpp"
#include "cra/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitVerifyFailure = 3;

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::optional<uint64_t> seed;
  std::optional<int> starts;
  std::optional<uint64_t> slots;
};

// Attaches the shared flag vocabulary to a subcommand.
void add_common_flags(CLI::App* cmd, CommonArgs* args, bool with_starts,
                      bool with_slots) {
  cmd->add_option("--config", args->config_path, "configuration file (flat key = value)");
  cmd->add_option("--out", args->out_path, "output path (default: standard output)");
  cmd->add_option("--seed", args->seed, "override the configured seed");
  if (with_starts)
    cmd->add_option("--starts", args->starts, "override the number of optimizer starts");
  if (with_slots)
    cmd->add_option("--slots", args->slots, "override the number of simulated slots");
}

cra::Config load_config(const CommonArgs& args) {
  cra::Config cfg = args.config_path.empty()
                        ? cra::parse_config(std::string{})
                        : cra::parse_config_file(args.config_path);
  if (args.seed) cfg.sweep.seed = *args.seed;
  if (args.starts) {
    if (*args.starts < 1) throw cra::ParseError("--starts: must be at least 1");
    cfg.sweep.n_starts = *args.starts;
  }
  if (args.slots) {
    if (*args.slots < 1) throw cra::ParseError("--slots: must be at least 1");
    cfg.n_slots = *args.slots;
    cfg.warmup_slots = *args.slots / 10;
    cfg.sweep.sim_slots = *args.slots;
  }
  return cfg;
}

// --out routing: returns the file stream when a path is given, else stdout.
std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw cra::ParseError("cannot open output file: " + path);
  return file;
}

void print_report(const cra::ThroughputReport& rep, std::ostream& out) {
  out << "mu_s = " << cra::format_double(rep.mu_s) << '\n'
      << "mu_p = " << cra::format_double(rep.mu_p) << '\n'
      << "pr_empty = " << cra::format_double(rep.pr_empty) << '\n'
      << "energy_su = " << cra::format_double(rep.energy_su) << '\n'
      << "energy_pu = " << cra::format_double(rep.energy_pu) << '\n'
      << "stable = " << (rep.stable ? "true" : "false") << '\n'
      << "feasible = " << (rep.feasible ? "true" : "false") << '\n';
  for (const auto& s : rep.slacks)
    out << "slack " << s.name << " = " << cra::format_double(s.value) << '\n';
}

void print_sim(const cra::SimResult& res, std::ostream& out) {
  out << "emp_mu_s = " << cra::format_double(res.emp_mu_s) << '\n'
      << "emp_mu_p = " << cra::format_double(res.emp_mu_p) << '\n'
      << "emp_pr_empty = " << cra::format_double(res.emp_pr_empty) << '\n'
      << "mean_queue_len = " << cra::format_double(res.mean_queue_len) << '\n'
      << "max_queue_len = " << res.max_queue_len << '\n'
      << "emp_energy_su = " << cra::format_double(res.emp_energy_su) << '\n'
      << "emp_energy_pu = " << cra::format_double(res.emp_energy_pu) << '\n'
      << "slots_counted = " << res.slots_counted << '\n'
      << "queue_drift_slope = " << cra::format_double(res.queue_drift_slope)
      << '\n';
  for (size_t i = 0; i < res.per_su_mu.size(); ++i)
    out << "emp_mu_s[" << i << "] = " << cra::format_double(res.per_su_mu[i])
        << '\n';
}

void print_solve(const cra::SolveReport& sol, std::ostream& out) {
  out << "mode = " << cra::to_string(sol.mode) << '\n'
      << "status = "
      << (sol.status == cra::SolveStatus::Optimal ? "optimal"
                                                  : "globally_infeasible")
      << '\n';
  if (sol.status != cra::SolveStatus::Optimal) return;
  out << "a1 = " << cra::format_double(sol.best_policy.a1) << '\n'
      << "a2 = " << cra::format_double(sol.best_policy.a2) << '\n'
      << "gamma1 = " << cra::format_double(sol.best_policy.gamma1) << '\n'
      << "gamma2 = " << cra::format_double(sol.best_policy.gamma2) << '\n'
      << "mu_s = " << cra::format_double(sol.best_mu_s) << '\n'
      << "n_starts = " << sol.n_starts << '\n'
      << "n_feasible_starts = " << sol.n_feasible_starts << '\n'
      << "starts_within_tolerance_of_best = "
      << sol.starts_within_tolerance_of_best << '\n';
}

int cmd_eval(const CommonArgs& args) {
  const cra::Config cfg = load_config(args);
  std::ofstream file;
  std::ostream& out = open_out(args.out_path, file);
  const auto rep = cra::evaluate(cfg.policy, cfg.params,
                                 cfg.constraints.lambda_p, cfg.constraints);
  print_report(rep, out);
  return kExitOk;
}

int cmd_simulate(const CommonArgs& args) {
  const cra::Config cfg = load_config(args);
  std::ofstream file;
  std::ostream& out = open_out(args.out_path, file);

  cra::SimConfig sim;
  sim.n_slots = cfg.n_slots;
  sim.warmup_slots = cfg.warmup_slots;
  sim.seed = cfg.sweep.seed;
  sim.lambda_p = cfg.constraints.lambda_p;
  sim.policy = cfg.policy;
  sim.params = cfg.params;
  // With tracing on, the machine-readable stream is the trace; the summary
  // moves to stderr so the two never interleave.
  if (cfg.sim_trace) sim.trace = &out;
  const auto res = cra::simulate_network(sim);
  print_sim(res, cfg.sim_trace ? std::cerr : out);
  return kExitOk;
}

int cmd_optimize(const CommonArgs& args) {
  const cra::Config cfg = load_config(args);
  std::ofstream file;
  std::ostream& out = open_out(args.out_path, file);
  bool first = true;
  for (const cra::SolveMode mode : cfg.sweep.modes) {
    if (!first) out << '\n';
    first = false;
    cra::SolveReport sol;
    switch (mode) {
      case cra::SolveMode::AdaptivePower:
        sol = cra::optimize(cfg.params, cfg.constraints, cfg.sweep.n_starts,
                            cfg.sweep.seed);
        break;
      case cra::SolveMode::FixedPower:
        sol = cra::optimize_fixed_power(cfg.params, cfg.constraints,
                                        cfg.gamma1_fixed, cfg.gamma2_fixed,
                                        cfg.sweep.n_starts, cfg.sweep.seed);
        break;
      case cra::SolveMode::Conventional:
        sol = cra::conventional_baseline(cfg.params, cfg.constraints,
                                         cfg.gamma1_fixed, cfg.sweep.n_starts,
                                         cfg.sweep.seed);
        break;
    }
    print_solve(sol, out);
  }
  return kExitOk;
}

int cmd_sweep(const CommonArgs& args) {
  const cra::Config cfg = load_config(args);
  std::ofstream file;
  std::ostream& out = open_out(args.out_path, file);
  cra::run_sweep(cfg, out);
  return kExitOk;
}

int cmd_verify(const CommonArgs& args) {
  const cra::Config cfg = load_config(args);
  std::ofstream file;
  std::ostream& out = open_out(args.out_path, file);
  const auto report =
      cra::verify_model(cfg.params, cfg.mc_samples, cfg.sweep.seed);
  cra::print_verify_report(report, out);
  return report.pass ? kExitOk : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-access policy engine for a shared fading channel"};
  app.require_subcommand(1);

  CommonArgs args;
  auto* eval = app.add_subcommand("eval", "closed-form report for one policy");
  add_common_flags(eval, &args, false, false);
  auto* simulate = app.add_subcommand("simulate", "slot-level network simulation");
  add_common_flags(simulate, &args, false, true);
  auto* optimize = app.add_subcommand("optimize", "solve one instance per configured mode");
  add_common_flags(optimize, &args, true, false);
  auto* sweep = app.add_subcommand("sweep", "optimizer grid sweep, CSV output");
  add_common_flags(sweep, &args, true, true);
  auto* verify = app.add_subcommand("verify", "closed-form vs Monte Carlo check");
  add_common_flags(verify, &args, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (eval->parsed()) return cmd_eval(args);
    if (simulate->parsed()) return cmd_simulate(args);
    if (optimize->parsed()) return cmd_optimize(args);
    if (sweep->parsed()) return cmd_sweep(args);
    if (verify->parsed()) return cmd_verify(args);
  } catch (const cra::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return kExitConfigError;  // unreachable with require_subcommand(1)
}
