// Flat key-value configuration: one `key = value` per line, '#' comments,
// typed lists in brackets. Unset keys keep the reference defaults baked into
// the domain types.
#pragma once

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cra/optimizer.hpp"
#include "cra/types.hpp"

namespace cra {

// Grid specification for the sweep subcommand: the cross product of arrival
// rates, SU counts, SU energy caps and solver modes, one optimizer run (and
// optional slot-simulator cross-check) per tuple.
struct SweepSpec {
  std::vector<double> lambda_grid;   // packets/slot, each in [0, 1]
  std::vector<int> ms_list;          // SU counts
  std::vector<double> e_th_su_list;  // SU energy caps [J/slot]
  std::vector<SolveMode> modes;
  int n_starts = 1000;
  uint64_t seed = 1;
  bool sim_validate = false;
  uint64_t sim_slots = 1'000'000;

  void validate() const;  // throws std::invalid_argument naming the field
};

// Everything a subcommand can need. parse_config() fills the spec grids from
// the scalar keys when they are not given explicitly.
struct Config {
  SystemParams params;
  Constraints constraints;
  AccessPolicy policy{1.0, 0.0, 2e-10, 1e-10};  // for eval / simulate
  SweepSpec sweep;

  // Pinned power levels used by the fixed-power and conventional baselines.
  double gamma1_fixed = 2e-10;
  double gamma2_fixed = 1e-10;

  // Slot-simulator and verification settings.
  uint64_t n_slots = 1'000'000;
  uint64_t warmup_slots = 100'000;  // defaults to n_slots / 10
  uint64_t mc_samples = 1'000'000;
  bool sim_trace = false;
};

// Configuration rejection: unknown key, type mismatch, or a violated
// invariant. The message names the offending key and its line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Config parse_config(std::istream& in);
Config parse_config(const std::string& text);
Config parse_config_file(const std::string& path);

}  // namespace cra
