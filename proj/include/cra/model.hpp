// Closed-form engine: success probabilities of the fading links under
// multipacket reception, the resulting service rates of the primary and
// secondary queues, and the average transmit energies.
//
// All functions are pure; safe to call concurrently.
#pragma once

#include "cra/types.hpp"

namespace cra {

// Spectral rates b/((T-tau)W) and b/(TW), with linear thresholds 2^r - 1.
LinkRates link_rates(const SystemParams& params);

// Success probability of a tagged secondary transmission while the primary
// is idle, given k OTHER secondary users transmitting at the same power.
// Each interferer attenuates the success by the same factor 1/(1+rs) because
// interferer and signal powers cancel in the SINR. gamma1 <= 0 (an attempted
// transmission with no power) degenerates to 0.
double p_succ_su_idle(int k_interferers, double gamma1,
                      const SystemParams& params, const LinkRates& rates);

// Same for a transmission while the primary is busy: the primary adds one
// interference factor driven by gamma_p/gamma2, and the k other secondaries
// contribute 1/(1+rs) each.
double p_succ_su_busy(int k_interferers, const AccessPolicy& policy,
                      const SystemParams& params, const LinkRates& rates);

// Success probability of the primary transmission with k active secondary
// users; here k counts ALL active SUs, every one of them interferes.
double p_succ_pu(int k_active_su, const AccessPolicy& policy,
                 const SystemParams& params, const LinkRates& rates);

// Primary service rate: binomial mixture of p_succ_pu over the number of
// SUs that transmit alongside a busy primary (each independently with a2).
double mu_p(const AccessPolicy& policy, const SystemParams& params,
            const LinkRates& rates);

// Pr(primary queue empty) = 1 - lambda_p/mu_p. Only defined for a stable
// queue; throws unstable_queue_error when lambda_p > mu_p.
double pr_pu_empty(double lambda_p, double mu_p);

// Per-SU service rate conditioned on the sensed primary state: the tagged
// user's own access probability times the binomial mixture over the other
// num_su_Ms - 1 users.
double mu_s_idle_branch(const AccessPolicy& policy, const SystemParams& params,
                        const LinkRates& rates);
double mu_s_busy_branch(const AccessPolicy& policy, const SystemParams& params,
                        const LinkRates& rates);

// Per-SU service rate: idle branch weighted by Pr(queue empty), busy branch
// by its complement. Throws unstable_queue_error when lambda_p > mu_p.
double mu_s(const AccessPolicy& policy, const SystemParams& params,
            const LinkRates& rates, double lambda_p);

// Average transmit energy per slot. The W factor converts the per-Hz power
// densities into Watts. Throw unstable_queue_error when lambda_p > mu_p.
double avg_energy_su(const AccessPolicy& policy, const SystemParams& params,
                     double lambda_p, double mu_p);
double avg_energy_pu(const SystemParams& params, double lambda_p, double mu_p);

// One-stop evaluation of a policy against the constraint set. Never throws
// on an unstable policy: the report carries the saturated-queue limit
// (pr_empty = 0, busy-branch throughput, full-duty PU energy) with
// stable = false. Slacks are ordered stability, energy_pu, energy_su.
ThroughputReport evaluate(const AccessPolicy& policy, const SystemParams& params,
                          double lambda_p, const Constraints& constraints);

}  // namespace cra
