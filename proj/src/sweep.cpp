#include "cra/sweep.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>

#include "cra/model.hpp"
#include "cra/optimizer.hpp"
#include "cra/oracle.hpp"
#include "cra/rng.hpp"

namespace cra {

std::string format_double(double value) {
  if (value == 0.0) return "0";  // fold -0 into 0
  std::array<char, 32> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

namespace {

// Tag appended to a grid point's seed derivation for its validation run, so
// the optimizer and the simulator never share a stream.
constexpr uint64_t kSimValidationTag = 0x51;

SolveReport solve_point(SolveMode mode, const SystemParams& params,
                        const Constraints& cons, const SweepSpec& spec,
                        double gamma1_fixed, double gamma2_fixed,
                        uint64_t seed) {
  switch (mode) {
    case SolveMode::AdaptivePower:
      return optimize(params, cons, spec.n_starts, seed);
    case SolveMode::FixedPower:
      return optimize_fixed_power(params, cons, gamma1_fixed, gamma2_fixed,
                                  spec.n_starts, seed);
    case SolveMode::Conventional:
      return conventional_baseline(params, cons, gamma1_fixed, spec.n_starts,
                                   seed);
  }
  return {};
}

}  // namespace

int run_sweep(const SweepSpec& spec, const SystemParams& base_params,
              const Constraints& base_cons, double gamma1_fixed,
              double gamma2_fixed, std::ostream& out) {
  out << "lambda_p,ms,e_th_su,mode,a1,a2,gamma1,gamma2,mu_s_analytic,mu_p,"
         "e_su,e_pu,feasible,mu_s_sim,sim_rel_err\n";
  int rows = 0;
  for (size_t il = 0; il < spec.lambda_grid.size(); ++il) {
    for (size_t im = 0; im < spec.ms_list.size(); ++im) {
      for (size_t ie = 0; ie < spec.e_th_su_list.size(); ++ie) {
        for (size_t io = 0; io < spec.modes.size(); ++io) {
          SystemParams params = base_params;
          params.num_su_Ms = spec.ms_list[im];
          Constraints cons = base_cons;
          cons.lambda_p = spec.lambda_grid[il];
          cons.e_th_su = spec.e_th_su_list[ie];
          const SolveMode mode = spec.modes[io];

          const uint64_t point_seed = derive_seed(spec.seed, {il, im, ie, io});
          const SolveReport sol = solve_point(mode, params, cons, spec,
                                              gamma1_fixed, gamma2_fixed,
                                              point_seed);
          const bool solved = sol.status == SolveStatus::Optimal;
          const AccessPolicy& pol = sol.best_policy;  // zeros when infeasible
          const ThroughputReport rep =
              evaluate(pol, params, cons.lambda_p, cons);

          out << format_double(cons.lambda_p) << ',' << params.num_su_Ms << ','
              << format_double(cons.e_th_su) << ',' << to_string(mode) << ','
              << format_double(pol.a1) << ',' << format_double(pol.a2) << ','
              << format_double(pol.gamma1) << ',' << format_double(pol.gamma2)
              << ',' << format_double(rep.mu_s) << ','
              << format_double(rep.mu_p) << ',' << format_double(rep.energy_su)
              << ',' << format_double(rep.energy_pu) << ','
              << (solved && rep.feasible ? '1' : '0') << ',';

          if (spec.sim_validate && solved) {
            SimConfig sim;
            sim.n_slots = spec.sim_slots;
            sim.warmup_slots = spec.sim_slots / 10;
            sim.seed = derive_seed(spec.seed, {il, im, ie, io, kSimValidationTag});
            sim.lambda_p = cons.lambda_p;
            sim.policy = pol;
            sim.params = params;
            const SimResult sr = simulate_network(sim);
            const double rel = std::abs(sr.emp_mu_s - rep.mu_s) /
                               std::max(std::abs(rep.mu_s), 1e-12);
            out << format_double(sr.emp_mu_s) << ',' << format_double(rel);
          } else {
            out << ',';
          }
          out << '\n';
          ++rows;
        }
      }
    }
  }
  return rows;
}

VerifyReport verify_model(const SystemParams& params, uint64_t n_samples,
                          uint64_t seed) {
  // Reference power levels for the grid; scaled up and down to exercise both
  // the noise-limited and the interference-limited regimes.
  constexpr double kBaseGamma1 = 2e-10;
  constexpr double kBaseGamma2 = 1e-10;
  const LinkRates rates = link_rates(params);
  const int interferers[] = {0, 1, 2, 4};
  const double scales[] = {0.5, 1.0, 2.0};

  VerifyReport report;
  for (int kind = 0; kind < 3; ++kind) {
    for (size_t ik = 0; ik < std::size(interferers); ++ik) {
      for (size_t is = 0; is < std::size(scales); ++is) {
        const int k = interferers[ik];
        const double scale = scales[is];
        VerifyPoint pt;
        pt.n_interferers = k;
        pt.power_scale = scale;

        ChannelScenario sc;
        AccessPolicy pol;
        switch (kind) {
          case 0: {
            pt.scenario = "su_idle";
            const double g1 = kBaseGamma1 * scale;
            sc = ChannelScenario::su_idle(k, g1, rates);
            pt.closed_form = p_succ_su_idle(k, g1, params, rates);
            break;
          }
          case 1: {
            pt.scenario = "su_busy";
            pol.gamma2 = kBaseGamma2 * scale;
            sc = ChannelScenario::su_busy(k, pol.gamma2, rates);
            pt.closed_form = p_succ_su_busy(k, pol, params, rates);
            break;
          }
          default: {
            pt.scenario = "pu";
            pol.gamma2 = kBaseGamma2 * scale;
            sc = ChannelScenario::pu(k, pol.gamma2, rates);
            pt.closed_form = p_succ_pu(k, pol, params, rates);
            break;
          }
        }

        const uint64_t pt_seed =
            derive_seed(seed, {uint64_t(kind), uint64_t(ik), uint64_t(is)});
        const McEstimate mc = mc_success_prob(sc, params, n_samples, pt_seed);
        pt.mc_estimate = mc.estimate;
        pt.std_err = mc.std_err;
        pt.pass = std::abs(pt.closed_form - pt.mc_estimate) <=
                  3.0 * pt.std_err + 1e-12;
        if (pt.pass) ++report.n_pass;
        report.points.push_back(pt);
      }
    }
  }
  report.pass = report.n_pass * 20 >= int(report.points.size()) * 19;
  return report;
}

void print_verify_report(const VerifyReport& report, std::ostream& out) {
  for (const auto& pt : report.points) {
    out << (pt.pass ? "pass" : "FAIL") << ' ' << pt.scenario
        << " k=" << pt.n_interferers
        << " scale=" << format_double(pt.power_scale)
        << " closed=" << format_double(pt.closed_form)
        << " mc=" << format_double(pt.mc_estimate)
        << " se=" << format_double(pt.std_err) << '\n';
  }
  out << (report.pass ? "PASS" : "FAIL") << ' ' << report.n_pass << '/'
      << report.points.size() << " points within 3 sigma\n";
}

}  // namespace cra
