#include "cra/model.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace cra {

namespace {

[[noreturn]] void fail_field(const std::string& field, const std::string& why) {
  throw std::invalid_argument(field + ": " + why);
}

// Binomial pmf over k = 0..n with success probability a. Direct recurrence
// up to n = 30; log-space via lgamma above that to keep the terms finite.
std::vector<double> binom_pmf(int n, double a) {
  std::vector<double> pmf(size_t(n) + 1, 0.0);
  if (a <= 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  if (a >= 1.0) {
    pmf[size_t(n)] = 1.0;
    return pmf;
  }
  if (n <= 30) {
    double term = std::pow(1.0 - a, n);
    const double odds = a / (1.0 - a);
    for (int k = 0; k <= n; ++k) {
      pmf[size_t(k)] = term;
      term *= odds * double(n - k) / double(k + 1);
    }
  } else {
    const double la = std::log(a), l1a = std::log1p(-a);
    const double lgn = std::lgamma(double(n) + 1.0);
    for (int k = 0; k <= n; ++k) {
      const double lc = lgn - std::lgamma(double(k) + 1.0) -
                        std::lgamma(double(n - k) + 1.0);
      pmf[size_t(k)] = std::exp(lc + double(k) * la + double(n - k) * l1a);
    }
  }
  return pmf;
}

// Binomial mixture of a geometric sequence base * factor^k, k = 0..n.
double binom_mix_geometric(int n, double a, double base, double factor) {
  const auto pmf = binom_pmf(n, a);
  double total = 0.0;
  double succ = base;
  for (int k = 0; k <= n; ++k) {
    total += pmf[size_t(k)] * succ;
    succ *= factor;
  }
  return total;
}

}  // namespace

void SystemParams::validate() const {
  if (!(slot_T > 0.0)) fail_field("slot_T", "must be strictly positive");
  if (!(sense_tau > 0.0 && sense_tau < slot_T))
    fail_field("sense_tau", "requires 0 < sense_tau < slot_T");
  if (!(packet_bits > 0.0)) fail_field("packet_bits", "must be strictly positive");
  if (!(bandwidth_W > 0.0)) fail_field("bandwidth_W", "must be strictly positive");
  if (!(noise_N0 > 0.0)) fail_field("noise_N0", "must be strictly positive");
  if (!(delta_ss > 0.0)) fail_field("delta_ss", "must be strictly positive");
  if (!(delta_pp > 0.0)) fail_field("delta_pp", "must be strictly positive");
  if (!(delta_ps > 0.0)) fail_field("delta_ps", "must be strictly positive");
  if (!(delta_sp > 0.0)) fail_field("delta_sp", "must be strictly positive");
  if (!(gamma_p > 0.0)) fail_field("gamma_p", "must be strictly positive");
  if (num_su_Ms < 1) fail_field("num_su_Ms", "must be at least 1");
}

void AccessPolicy::validate() const {
  if (!(a1 >= 0.0 && a1 <= 1.0)) fail_field("a1", "must lie in [0, 1]");
  if (!(a2 >= 0.0 && a2 <= 1.0)) fail_field("a2", "must lie in [0, 1]");
  if (a2 > a1) fail_field("a2", "must not exceed a1");
  if (!(gamma1 >= 0.0)) fail_field("gamma1", "must be nonnegative");
  if (!(gamma2 >= 0.0)) fail_field("gamma2", "must be nonnegative");
}

void Constraints::validate() const {
  if (!(lambda_p >= 0.0 && lambda_p <= 1.0))
    fail_field("lambda_p", "must lie in [0, 1]");
  if (!(e_th_su >= 0.0)) fail_field("e_th_su", "must be nonnegative");
  if (!(e_th_pu >= 0.0)) fail_field("e_th_pu", "must be nonnegative");
  if (!(gamma_max > 0.0)) fail_field("gamma_max", "must be strictly positive");
}

LinkRates link_rates(const SystemParams& params) {
  LinkRates r;
  r.rs_spectral =
      params.packet_bits / ((params.slot_T - params.sense_tau) * params.bandwidth_W);
  r.rp_spectral = params.packet_bits / (params.slot_T * params.bandwidth_W);
  r.rs_lin = std::exp2(r.rs_spectral) - 1.0;
  r.rp_lin = std::exp2(r.rp_spectral) - 1.0;
  return r;
}

double p_succ_su_idle(int k_interferers, double gamma1,
                      const SystemParams& params, const LinkRates& rates) {
  if (gamma1 <= 0.0) return 0.0;  // degenerate policy: no power, no packet
  const double solo =
      std::exp(-params.delta_ss * rates.rs_lin * params.noise_N0 / gamma1);
  return solo * std::pow(1.0 / (1.0 + rates.rs_lin), k_interferers);
}

double p_succ_su_busy(int k_interferers, const AccessPolicy& policy,
                      const SystemParams& params, const LinkRates& rates) {
  if (policy.gamma2 <= 0.0) return 0.0;
  const double solo =
      std::exp(-params.delta_ss * rates.rs_lin * params.noise_N0 / policy.gamma2);
  const double pu_factor =
      1.0 / (1.0 + params.delta_ss * rates.rs_lin * params.gamma_p /
                       (policy.gamma2 * params.delta_ps));
  return solo * pu_factor * std::pow(1.0 / (1.0 + rates.rs_lin), k_interferers);
}

namespace {

double pu_solo_succ(const SystemParams& params, const LinkRates& rates) {
  return std::exp(-params.delta_pp * rates.rp_lin * params.noise_N0 /
                  params.gamma_p);
}

double pu_su_interference_factor(const AccessPolicy& policy,
                                 const SystemParams& params,
                                 const LinkRates& rates) {
  return 1.0 / (1.0 + params.delta_pp * rates.rp_lin * policy.gamma2 /
                          (params.delta_sp * params.gamma_p));
}

}  // namespace

double p_succ_pu(int k_active_su, const AccessPolicy& policy,
                 const SystemParams& params, const LinkRates& rates) {
  return pu_solo_succ(params, rates) *
         std::pow(pu_su_interference_factor(policy, params, rates), k_active_su);
}

double mu_p(const AccessPolicy& policy, const SystemParams& params,
            const LinkRates& rates) {
  return binom_mix_geometric(params.num_su_Ms, policy.a2,
                             pu_solo_succ(params, rates),
                             pu_su_interference_factor(policy, params, rates));
}

double pr_pu_empty(double lambda_p, double mu_p) {
  if (!(mu_p > 0.0) || lambda_p > mu_p) {
    std::ostringstream os;
    os << "primary queue unstable: lambda_p=" << lambda_p << " > mu_p=" << mu_p;
    throw unstable_queue_error(os.str());
  }
  return 1.0 - lambda_p / mu_p;
}

double mu_s_idle_branch(const AccessPolicy& policy, const SystemParams& params,
                        const LinkRates& rates) {
  return policy.a1 * binom_mix_geometric(
                         params.num_su_Ms - 1, policy.a1,
                         p_succ_su_idle(0, policy.gamma1, params, rates),
                         1.0 / (1.0 + rates.rs_lin));
}

double mu_s_busy_branch(const AccessPolicy& policy, const SystemParams& params,
                        const LinkRates& rates) {
  return policy.a2 * binom_mix_geometric(
                         params.num_su_Ms - 1, policy.a2,
                         p_succ_su_busy(0, policy, params, rates),
                         1.0 / (1.0 + rates.rs_lin));
}

double mu_s(const AccessPolicy& policy, const SystemParams& params,
            const LinkRates& rates, double lambda_p) {
  const double pr0 = pr_pu_empty(lambda_p, mu_p(policy, params, rates));
  return pr0 * mu_s_idle_branch(policy, params, rates) +
         (1.0 - pr0) * mu_s_busy_branch(policy, params, rates);
}

double avg_energy_su(const AccessPolicy& policy, const SystemParams& params,
                     double lambda_p, double mu_p) {
  const double rho = 1.0 - pr_pu_empty(lambda_p, mu_p);
  return (policy.a1 * policy.gamma1 * (1.0 - rho) +
          policy.a2 * policy.gamma2 * rho) *
         params.bandwidth_W * (params.slot_T - params.sense_tau);
}

double avg_energy_pu(const SystemParams& params, double lambda_p, double mu_p) {
  const double rho = 1.0 - pr_pu_empty(lambda_p, mu_p);
  return params.gamma_p * params.bandwidth_W * params.slot_T * rho;
}

ThroughputReport evaluate(const AccessPolicy& policy, const SystemParams& params,
                          double lambda_p, const Constraints& constraints) {
  const LinkRates rates = link_rates(params);
  ThroughputReport rep;
  rep.mu_p = mu_p(policy, params, rates);
  rep.stable = lambda_p <= rep.mu_p && rep.mu_p > 0.0;

  // rho -> 1 is the saturated-queue limit; used verbatim for unstable inputs.
  const double rho = rep.stable ? lambda_p / rep.mu_p : 1.0;
  rep.pr_empty = 1.0 - rho;
  rep.mu_s = rep.pr_empty * mu_s_idle_branch(policy, params, rates) +
             rho * mu_s_busy_branch(policy, params, rates);
  rep.energy_su = (policy.a1 * policy.gamma1 * rep.pr_empty +
                   policy.a2 * policy.gamma2 * rho) *
                  params.bandwidth_W * (params.slot_T - params.sense_tau);
  rep.energy_pu = params.gamma_p * params.bandwidth_W * params.slot_T * rho;

  rep.slacks = {{"stability", rep.mu_p - lambda_p},
                {"energy_pu", constraints.e_th_pu - rep.energy_pu},
                {"energy_su", constraints.e_th_su - rep.energy_su}};
  rep.feasible = true;
  for (const auto& s : rep.slacks) rep.feasible = rep.feasible && s.value >= 0.0;
  return rep;
}

}  // namespace cra
