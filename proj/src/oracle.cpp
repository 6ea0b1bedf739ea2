#include "cra/oracle.hpp"

#include <cmath>
#include <ostream>

#include "cra/model.hpp"
#include "cra/rng.hpp"

namespace cra {

ChannelScenario ChannelScenario::su_idle(int k_interferers, double gamma1,
                                         const LinkRates& rates) {
  ChannelScenario s;
  s.n_su_interferers = k_interferers;
  s.own_power = gamma1;
  s.interferer_power = gamma1;
  s.threshold = rates.rs_lin;
  return s;
}

ChannelScenario ChannelScenario::su_busy(int k_interferers, double gamma2,
                                         const LinkRates& rates) {
  ChannelScenario s;
  s.n_su_interferers = k_interferers;
  s.pu_active = true;
  s.own_power = gamma2;
  s.interferer_power = gamma2;
  s.threshold = rates.rs_lin;
  return s;
}

ChannelScenario ChannelScenario::pu(int k_active_su, double gamma2,
                                    const LinkRates& rates) {
  ChannelScenario s;
  s.primary_link = true;
  s.n_su_interferers = k_active_su;
  s.own_power = 0.0;  // taken from params.gamma_p at sampling time
  s.interferer_power = gamma2;
  s.threshold = rates.rp_lin;
  return s;
}

McEstimate mc_success_prob(const ChannelScenario& scenario,
                           const SystemParams& params, uint64_t n_samples,
                           uint64_t seed) {
  const double own_rate = scenario.primary_link ? params.delta_pp : params.delta_ss;
  const double int_rate = scenario.primary_link ? params.delta_sp : params.delta_ss;
  const double own_power =
      scenario.primary_link ? params.gamma_p : scenario.own_power;

  const CounterRng own(seed, stream_id(streams::mc_own));
  const CounterRng pu_gain(seed, stream_id(streams::mc_pu_gain));
  std::vector<CounterRng> interferers;
  for (int i = 0; i < scenario.n_su_interferers; ++i)
    interferers.emplace_back(seed, stream_id(streams::mc_interferer, uint64_t(i)));

  uint64_t hits = 0;
  for (uint64_t n = 0; n < n_samples; ++n) {
    const double g = own.exponential(n, own_rate);
    double interference = params.noise_N0;
    if (!scenario.primary_link && scenario.pu_active)
      interference += params.gamma_p * pu_gain.exponential(n, params.delta_ps);
    for (const auto& rng : interferers)
      interference += scenario.interferer_power * rng.exponential(n, int_rate);
    if (own_power * g > scenario.threshold * interference) ++hits;
  }

  McEstimate est;
  est.estimate = double(hits) / double(n_samples);
  est.std_err = std::sqrt(est.estimate * (1.0 - est.estimate) / double(n_samples));
  return est;
}

SimResult simulate_network(const SimConfig& config) {
  const SystemParams& p = config.params;
  const AccessPolicy& pol = config.policy;
  const LinkRates rates = link_rates(p);
  const int ms = p.num_su_Ms;
  const uint64_t seed = config.seed;

  const CounterRng arrival(seed, stream_id(streams::pu_arrival));
  const CounterRng pu_own(seed, stream_id(streams::pu_own_gain));
  std::vector<CounterRng> access, su_own, pu_to_su, su_to_pu;
  for (int j = 0; j < ms; ++j) {
    access.emplace_back(seed, stream_id(streams::su_access, uint64_t(j)));
    su_own.emplace_back(seed, stream_id(streams::su_own_gain, uint64_t(j)));
    pu_to_su.emplace_back(seed, stream_id(streams::pu_to_su_gain, uint64_t(j)));
    su_to_pu.emplace_back(seed, stream_id(streams::su_to_pu_gain, uint64_t(j)));
  }
  // Cross gains are addressed lazily; one stream per ordered (tx, rx) pair.
  std::vector<CounterRng> cross;
  for (int i = 0; i < ms; ++i)
    for (int j = 0; j < ms; ++j)
      cross.emplace_back(seed, stream_id(streams::su_cross_gain, uint64_t(i),
                                         uint64_t(j)));

  const double su_energy_per_tx_idle =
      pol.gamma1 * p.bandwidth_W * (p.slot_T - p.sense_tau);
  const double su_energy_per_tx_busy =
      pol.gamma2 * p.bandwidth_W * (p.slot_T - p.sense_tau);
  const double pu_energy_per_tx = p.gamma_p * p.bandwidth_W * p.slot_T;

  uint64_t queue = 0;
  uint64_t su_success_total = 0, pu_success = 0, pu_attempts = 0;
  uint64_t empty_slots = 0, max_queue = 0;
  double queue_sum = 0.0, su_energy = 0.0, pu_energy = 0.0;
  std::vector<uint64_t> su_success(size_t(ms), 0);
  std::vector<char> tx(size_t(ms), 0);

  // Drift regression over the final half: slope of queue length vs slot.
  const uint64_t drift_from = config.n_slots / 2;
  double d_n = 0.0, d_st = 0.0, d_stt = 0.0, d_sq = 0.0, d_stq = 0.0;

  for (uint64_t t = 0; t < config.n_slots; ++t) {
    const bool pu_busy = queue > 0;
    const bool counted = t >= config.warmup_slots;

    const double a = pu_busy ? pol.a2 : pol.a1;
    const double power = pu_busy ? pol.gamma2 : pol.gamma1;
    int n_tx = 0;
    for (int j = 0; j < ms; ++j) {
      tx[size_t(j)] = access[size_t(j)].bernoulli(t, a) ? 1 : 0;
      n_tx += tx[size_t(j)];
    }

    // Primary decode: own gain against noise plus every active SU.
    bool pu_ok = false;
    if (pu_busy) {
      const double g = pu_own.exponential(t, p.delta_pp);
      double interference = p.noise_N0;
      for (int j = 0; j < ms; ++j)
        if (tx[size_t(j)])
          interference += pol.gamma2 * su_to_pu[size_t(j)].exponential(t, p.delta_sp);
      pu_ok = p.gamma_p * g > rates.rp_lin * interference;
    }

    // Secondary decodes, only for users that transmitted.
    uint64_t su_acks = 0;
    if (n_tx > 0 && power > 0.0) {
      for (int j = 0; j < ms; ++j) {
        if (!tx[size_t(j)]) continue;
        const double g = su_own[size_t(j)].exponential(t, p.delta_ss);
        double interference = p.noise_N0;
        if (pu_busy)
          interference +=
              p.gamma_p * pu_to_su[size_t(j)].exponential(t, p.delta_ps);
        for (int i = 0; i < ms; ++i)
          if (i != j && tx[size_t(i)])
            interference +=
                power * cross[size_t(i * ms + j)].exponential(t, p.delta_ss);
        if (power * g > rates.rs_lin * interference) {
          if (j < 64) su_acks |= uint64_t{1} << j;
          if (counted) {
            ++su_success[size_t(j)];
            ++su_success_total;
          }
        }
      }
    }

    if (counted) {
      queue_sum += double(queue);
      if (queue > max_queue) max_queue = queue;
      if (!pu_busy) ++empty_slots;
      if (pu_busy) {
        ++pu_attempts;
        if (pu_ok) ++pu_success;
        pu_energy += pu_energy_per_tx;
      }
      su_energy += double(n_tx) * (pu_busy ? su_energy_per_tx_busy
                                           : su_energy_per_tx_idle);
    }
    if (t >= drift_from) {
      const double ti = double(t - drift_from);
      const double q = double(queue);
      d_n += 1.0;
      d_st += ti;
      d_stt += ti * ti;
      d_sq += q;
      d_stq += ti * q;
    }

    if (config.trace)
      *config.trace << t << ',' << queue << ',' << int(pu_busy) << ',' << n_tx
                    << ',' << int(pu_ok) << ',' << su_acks << '\n';

    // Departure before arrival: a packet landing in slot t is not servable
    // until t+1.
    if (pu_ok) --queue;
    if (arrival.bernoulli(t, config.lambda_p)) ++queue;
  }

  SimResult r;
  r.slots_counted = config.n_slots - config.warmup_slots;
  const double n = double(r.slots_counted);
  r.emp_mu_s = double(su_success_total) / (n * double(ms));
  r.emp_mu_p = pu_attempts > 0 ? double(pu_success) / double(pu_attempts) : 0.0;
  r.emp_pr_empty = double(empty_slots) / n;
  r.mean_queue_len = queue_sum / n;
  r.max_queue_len = max_queue;
  r.emp_energy_su = su_energy / (n * double(ms));
  r.emp_energy_pu = pu_energy / n;
  for (int j = 0; j < ms; ++j)
    r.per_su_mu.push_back(double(su_success[size_t(j)]) / n);
  const double denom = d_n * d_stt - d_st * d_st;
  r.queue_drift_slope = denom > 0.0 ? (d_n * d_stq - d_st * d_sq) / denom : 0.0;
  return r;
}

bool stability_probe(const AccessPolicy& policy, const SystemParams& params,
                     double lambda_p, uint64_t n_slots, uint64_t seed,
                     double drift_tol) {
  SimConfig cfg;
  cfg.n_slots = n_slots;
  cfg.seed = seed;
  cfg.lambda_p = lambda_p;
  cfg.policy = policy;
  cfg.params = params;
  cfg.warmup_slots = n_slots / 10;
  return simulate_network(cfg).queue_drift_slope <= drift_tol;
}

}  // namespace cra
