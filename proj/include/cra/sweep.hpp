// Experiment orchestration: the optimizer grid sweep with CSV emission, and
// the closed-form-versus-Monte-Carlo verification grid.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cra/config.hpp"
#include "cra/types.hpp"

namespace cra {

// Shortest decimal that round-trips to exactly the same double. Keeps CSV
// output byte-identical across platforms.
std::string format_double(double value);

// Runs the optimizer over the grid in spec and writes a CSV table to out:
// header plus one row per (lambda_p, ms, e_th_su, mode) tuple in that nested
// order. Infeasible points are recorded in-row. Returns the number of rows.
// The pinned powers feed the fixed-power and conventional modes.
int run_sweep(const SweepSpec& spec, const SystemParams& params,
              const Constraints& constraints, double gamma1_fixed,
              double gamma2_fixed, std::ostream& out);

inline int run_sweep(const Config& cfg, std::ostream& out) {
  return run_sweep(cfg.sweep, cfg.params, cfg.constraints, cfg.gamma1_fixed,
                   cfg.gamma2_fixed, out);
}

// One point of the verification grid: a decoding scenario whose closed-form
// success probability is checked against the channel-gain sampler.
struct VerifyPoint {
  std::string scenario;     // "su_idle", "su_busy", "pu"
  int n_interferers = 0;
  double power_scale = 1.0; // multiplier on the reference power level
  double closed_form = 0.0;
  double mc_estimate = 0.0;
  double std_err = 0.0;
  bool pass = false;        // |closed_form - mc_estimate| <= 3 se + 1e-12
};

struct VerifyReport {
  std::vector<VerifyPoint> points;
  int n_pass = 0;
  bool pass = false;  // at least 95% of points pass
};

// Sweeps scenario kind x interferer count x power scale and samples each
// point with n_samples channel draws.
VerifyReport verify_model(const SystemParams& params, uint64_t n_samples,
                          uint64_t seed);

void print_verify_report(const VerifyReport& report, std::ostream& out);

}  // namespace cra
