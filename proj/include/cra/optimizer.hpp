// Multi-start policy optimization: maximize the per-SU service rate over
// (a1, a2, gamma1, gamma2) subject to primary-queue stability and the two
// average-energy caps, plus the fixed-power and conventional baselines.
#pragma once

#include <cstdint>
#include <string>

#include "cra/types.hpp"

namespace cra {

enum class SolveMode { AdaptivePower, FixedPower, Conventional };

const char* to_string(SolveMode mode);

enum class SolveStatus {
  Optimal,              // best feasible local optimum across all starts
  GloballyInfeasible,   // no policy at all satisfies the constraints
};

struct SolveReport {
  AccessPolicy best_policy;
  double best_mu_s = 0.0;
  int n_starts = 0;
  int n_feasible_starts = 0;                // local searches ending feasible
  int starts_within_tolerance_of_best = 0;  // terminal mu_s >= best - 1e-4
  SolveMode mode = SolveMode::AdaptivePower;
  SolveStatus status = SolveStatus::Optimal;
};

// Full four-variable search. Each start runs a Nelder-Mead descent on the
// exact-penalty merit from an independent random point in the box (repaired
// to feasibility first), followed by an analytic fill of gamma1 up to the
// binding energy or box limit. Deterministic in (seed, n_starts).
SolveReport optimize(const SystemParams& params, const Constraints& constraints,
                     int n_starts, uint64_t seed);

// Same problem with both power levels pinned; searches (a1, a2) only.
SolveReport optimize_fixed_power(const SystemParams& params,
                                 const Constraints& constraints,
                                 double gamma1_fixed, double gamma2_fixed,
                                 int n_starts, uint64_t seed);

// Baseline access scheme: SUs stay silent when the primary is busy
// (a2 = gamma2 = 0) and use the given fixed power when it is idle;
// searches a1 only.
SolveReport conventional_baseline(const SystemParams& params,
                                  const Constraints& constraints,
                                  double gamma1_fixed, int n_starts,
                                  uint64_t seed);

}  // namespace cra
