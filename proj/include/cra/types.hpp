// Core domain types shared by the analytic model, the simulators and the
// policy optimizer.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cra {

// Physical and protocol constants of one primary link shared with num_su_Ms
// symmetric secondary links. Defaults are the reference operating point used
// throughout the test suite.
struct SystemParams {
  double slot_T = 1e-3;      // slot length [s]
  double sense_tau = 1e-4;   // sensing interval at the start of a slot [s]
  double packet_bits = 1e4;  // packet payload [bit]
  double bandwidth_W = 1e7;  // channel bandwidth [Hz]
  double noise_N0 = 1e-11;   // noise power spectral density [W/Hz]
  double delta_ss = 2.0;     // fading rate, SU -> own SU destination
  double delta_pp = 1.0;     // fading rate, PU -> PU destination
  double delta_ps = 2.0;     // fading rate, PU -> SU destinations
  double delta_sp = 3.0;     // fading rate, SU -> PU destination
  double gamma_p = 1e-10;    // PU transmit power density [W/Hz]
  int num_su_Ms = 3;         // number of secondary users (>= 1)

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// The decision vector: access probabilities and per-Hz power levels keyed to
// the sensed primary state (1 = idle, 2 = busy). a1 >= a2 is an invariant of
// the access protocol.
struct AccessPolicy {
  double a1 = 0.0;
  double a2 = 0.0;
  double gamma1 = 0.0;  // [W/Hz]
  double gamma2 = 0.0;  // [W/Hz]

  void validate() const;
};

// Spectral transmission rates and their linear SINR decoding thresholds.
// The secondary rate pays the sensing time: only slot_T - sense_tau seconds
// remain to push the same packet through.
struct LinkRates {
  double rs_spectral = 0.0;  // secondary rate [bit/s/Hz]
  double rp_spectral = 0.0;  // primary rate [bit/s/Hz]
  double rs_lin = 0.0;       // 2^rs_spectral - 1
  double rp_lin = 0.0;       // 2^rp_spectral - 1
};

// Optimization constraints: primary arrival rate (stability), the two
// average-energy caps, and the search box for the power variables.
struct Constraints {
  double lambda_p = 0.3;    // primary arrival rate [packets/slot]
  double e_th_su = 5e-5;    // SU average transmit energy cap [J/slot]
  double e_th_pu = 1e-3;    // PU average transmit energy cap [J/slot]
  double gamma_max = 1e-8;  // upper bound for gamma1, gamma2 [W/Hz]

  void validate() const;
};

struct Slack {
  std::string name;  // "stability", "energy_pu", "energy_su"
  double value;      // signed; >= 0 means satisfied
};

// Everything the closed-form engine can say about one policy at one arrival
// rate. If the primary queue cannot keep up (lambda_p > mu_p) the rate and
// energy fields hold the saturated-queue limit (queue never empties) and
// stable = false.
struct ThroughputReport {
  double mu_s = 0.0;       // per-SU service rate [packets/slot]
  double mu_p = 0.0;       // PU service rate [packets/slot]
  double pr_empty = 0.0;   // Pr(primary queue empty)
  double energy_su = 0.0;  // per-SU average transmit energy [J/slot]
  double energy_pu = 0.0;  // PU average transmit energy [J/slot]
  bool stable = false;     // lambda_p <= mu_p
  bool feasible = false;   // all slacks >= 0
  std::vector<Slack> slacks;
};

// Signalled where a quantity is only defined for a stable primary queue.
// Callers must treat the policy as infeasible, not clamp.
class unstable_queue_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace cra
