// Monte Carlo oracles, independent of the closed-form engine:
//   - a channel-gain sampler that brute-forces the outage integrals, and
//   - a slot-level network simulator for service rates, queue stability and
//     energy accounting.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cra/types.hpp"

namespace cra {

// One SINR outage experiment: a tagged link, a number of secondary
// interferers, and optionally the primary as an extra interferer.
struct ChannelScenario {
  bool primary_link = false;     // tagged link is PU -> PU destination
  int n_su_interferers = 0;      // active SUs excluding the tagged user
  bool pu_active = false;        // PU interferes (secondary link only)
  double own_power = 0.0;        // [W/Hz]
  double interferer_power = 0.0; // [W/Hz]; PU interference uses params.gamma_p
  double threshold = 0.0;        // linear SINR threshold

  // Tagged SU transmission while the primary is idle / busy, and the tagged
  // primary transmission with k active SUs. Mirror the access protocol's
  // three decoding situations.
  static ChannelScenario su_idle(int k_interferers, double gamma1,
                                 const LinkRates& rates);
  static ChannelScenario su_busy(int k_interferers, double gamma2,
                                 const LinkRates& rates);
  static ChannelScenario pu(int k_active_su, double gamma2,
                            const LinkRates& rates);
};

struct McEstimate {
  double estimate = 0.0;  // success fraction
  double std_err = 0.0;   // binomial standard error
};

// Samples fresh exponential channel gains per trial and counts how often the
// tagged link's SINR clears the threshold.
McEstimate mc_success_prob(const ChannelScenario& scenario,
                           const SystemParams& params, uint64_t n_samples,
                           uint64_t seed);

// Slot simulator configuration. Warmup slots are excluded from every
// statistic. An optional trace stream receives one CSV line per slot.
struct SimConfig {
  uint64_t n_slots = 1000000;
  uint64_t seed = 1;
  double lambda_p = 0.3;    // [packets/slot]
  AccessPolicy policy;
  SystemParams params;
  uint64_t warmup_slots = 100000;
  std::ostream* trace = nullptr;  // not part of the result-determining state
};

struct SimResult {
  double emp_mu_s = 0.0;           // delivered packets per slot per SU
  double emp_mu_p = 0.0;           // PU successes per PU attempt
  double emp_pr_empty = 0.0;       // fraction of slots with an empty queue
  double mean_queue_len = 0.0;     // [packets], sampled at slot start
  uint64_t max_queue_len = 0;      // [packets]
  double emp_energy_su = 0.0;      // [J/slot] per SU
  double emp_energy_pu = 0.0;      // [J/slot]
  uint64_t slots_counted = 0;
  std::vector<double> per_su_mu;   // per-user delivered rate (symmetry check)
  double queue_drift_slope = 0.0;  // LS slope of queue length, final half
};

// Plays the access protocol slot by slot: Bernoulli arrivals (late-arrival
// model, departures before arrivals), unconditional primary transmission
// when backlogged, sensing-keyed random access for the saturated SUs, fresh
// block-fading gains each slot, SINR-threshold decoding at every receiver.
// Identical configs (including seed) produce bit-identical results.
SimResult simulate_network(const SimConfig& config);

// True iff the queue shows no positive drift: least-squares slope of the
// queue length over the final half of the run is at most drift_tol
// (packets/slot). The instrument for corroborating the analytic
// lambda_p <= mu_p frontier; does not require stability to run.
bool stability_probe(const AccessPolicy& policy, const SystemParams& params,
                     double lambda_p, uint64_t n_slots, uint64_t seed,
                     double drift_tol = 1e-3);

}  // namespace cra
