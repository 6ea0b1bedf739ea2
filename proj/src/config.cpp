#include "cra/config.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace cra {

void SweepSpec::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw std::invalid_argument(field + ": " + why);
  };
  if (lambda_grid.empty()) fail("lambda_grid", "must not be empty");
  for (double l : lambda_grid)
    if (!(l >= 0.0 && l <= 1.0)) fail("lambda_grid", "values must lie in [0, 1]");
  if (ms_list.empty()) fail("ms_list", "must not be empty");
  for (int m : ms_list)
    if (m < 1) fail("ms_list", "SU counts must be at least 1");
  if (e_th_su_list.empty()) fail("e_th_su_list", "must not be empty");
  for (double e : e_th_su_list)
    if (!(e > 0.0)) fail("e_th_su_list", "energy caps must be strictly positive");
  if (modes.empty()) fail("modes", "must not be empty");
  if (n_starts < 1) fail("n_starts", "must be at least 1");
  if (sim_slots < 1) fail("sim_slots", "must be at least 1");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& key, const std::string& why) {
  std::ostringstream os;
  os << "line " << line << ": key '" << key << "': " << why;
  throw ParseError(os.str());
}

double to_double(const std::string& v, const std::string& key, int line) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0') fail(line, key, "expected a number, got '" + v + "'");
  return x;
}

uint64_t to_u64(const std::string& v, const std::string& key, int line) {
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0' || v.find('-') != std::string::npos)
    fail(line, key, "expected a nonnegative integer, got '" + v + "'");
  return uint64_t(x);
}

int to_int(const std::string& v, const std::string& key, int line) {
  char* end = nullptr;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0') fail(line, key, "expected an integer, got '" + v + "'");
  return int(x);
}

bool to_bool(const std::string& v, const std::string& key, int line) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  fail(line, key, "expected true or false, got '" + v + "'");
}

std::vector<std::string> to_list(const std::string& v, const std::string& key,
                                 int line) {
  if (v.size() < 2 || v.front() != '[' || v.back() != ']')
    fail(line, key, "expected a bracketed list like [a, b, c]");
  std::vector<std::string> items;
  std::string body = v.substr(1, v.size() - 2);
  size_t pos = 0;
  while (pos <= body.size()) {
    const size_t comma = body.find(',', pos);
    const std::string item =
        trim(body.substr(pos, comma == std::string::npos ? comma : comma - pos));
    if (item.empty()) fail(line, key, "empty list element");
    items.push_back(item);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return items;
}

SolveMode to_mode(const std::string& v, const std::string& key, int line) {
  if (v == "adaptive") return SolveMode::AdaptivePower;
  if (v == "fixed") return SolveMode::FixedPower;
  if (v == "conventional") return SolveMode::Conventional;
  fail(line, key, "expected one of adaptive, fixed, conventional; got '" + v + "'");
}

}  // namespace

Config parse_config(std::istream& in) {
  Config cfg;
  cfg.sweep.lambda_grid.clear();
  cfg.sweep.ms_list.clear();
  cfg.sweep.e_th_su_list.clear();
  cfg.sweep.modes.clear();
  bool warmup_set = false;

  std::map<std::string, int> seen;  // key -> line, for invariant attribution
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream os;
      os << "line " << line_no << ": expected 'key = value'";
      throw ParseError(os.str());
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, key, "missing key before '='");
    if (val.empty()) fail(line_no, key, "missing value after '='");

    if (key == "slot_T") cfg.params.slot_T = to_double(val, key, line_no);
    else if (key == "sense_tau") cfg.params.sense_tau = to_double(val, key, line_no);
    else if (key == "packet_bits") cfg.params.packet_bits = to_double(val, key, line_no);
    else if (key == "bandwidth_W") cfg.params.bandwidth_W = to_double(val, key, line_no);
    else if (key == "noise_N0") cfg.params.noise_N0 = to_double(val, key, line_no);
    else if (key == "delta_ss") cfg.params.delta_ss = to_double(val, key, line_no);
    else if (key == "delta_pp") cfg.params.delta_pp = to_double(val, key, line_no);
    else if (key == "delta_ps") cfg.params.delta_ps = to_double(val, key, line_no);
    else if (key == "delta_sp") cfg.params.delta_sp = to_double(val, key, line_no);
    else if (key == "gamma_p") cfg.params.gamma_p = to_double(val, key, line_no);
    else if (key == "num_su_Ms") cfg.params.num_su_Ms = to_int(val, key, line_no);
    else if (key == "lambda_p") cfg.constraints.lambda_p = to_double(val, key, line_no);
    else if (key == "e_th_su") cfg.constraints.e_th_su = to_double(val, key, line_no);
    else if (key == "e_th_pu") cfg.constraints.e_th_pu = to_double(val, key, line_no);
    else if (key == "gamma_max") cfg.constraints.gamma_max = to_double(val, key, line_no);
    else if (key == "a1") cfg.policy.a1 = to_double(val, key, line_no);
    else if (key == "a2") cfg.policy.a2 = to_double(val, key, line_no);
    else if (key == "gamma1") cfg.policy.gamma1 = to_double(val, key, line_no);
    else if (key == "gamma2") cfg.policy.gamma2 = to_double(val, key, line_no);
    else if (key == "gamma1_fixed") cfg.gamma1_fixed = to_double(val, key, line_no);
    else if (key == "gamma2_fixed") cfg.gamma2_fixed = to_double(val, key, line_no);
    else if (key == "lambda_grid") {
      cfg.sweep.lambda_grid.clear();
      for (const auto& item : to_list(val, key, line_no))
        cfg.sweep.lambda_grid.push_back(to_double(item, key, line_no));
    } else if (key == "ms_list") {
      cfg.sweep.ms_list.clear();
      for (const auto& item : to_list(val, key, line_no))
        cfg.sweep.ms_list.push_back(to_int(item, key, line_no));
    } else if (key == "e_th_su_list") {
      cfg.sweep.e_th_su_list.clear();
      for (const auto& item : to_list(val, key, line_no))
        cfg.sweep.e_th_su_list.push_back(to_double(item, key, line_no));
    } else if (key == "modes") {
      cfg.sweep.modes.clear();
      for (const auto& item : to_list(val, key, line_no))
        cfg.sweep.modes.push_back(to_mode(item, key, line_no));
    } else if (key == "n_starts") cfg.sweep.n_starts = to_int(val, key, line_no);
    else if (key == "seed") cfg.sweep.seed = to_u64(val, key, line_no);
    else if (key == "sim_validate") cfg.sweep.sim_validate = to_bool(val, key, line_no);
    else if (key == "sim_slots") cfg.sweep.sim_slots = to_u64(val, key, line_no);
    else if (key == "n_slots") cfg.n_slots = to_u64(val, key, line_no);
    else if (key == "warmup_slots") {
      cfg.warmup_slots = to_u64(val, key, line_no);
      warmup_set = true;
    } else if (key == "mc_samples") cfg.mc_samples = to_u64(val, key, line_no);
    else if (key == "sim_trace") cfg.sim_trace = to_bool(val, key, line_no);
    else fail(line_no, key, "unknown key");

    seen[key] = line_no;
  }

  if (!warmup_set) cfg.warmup_slots = cfg.n_slots / 10;
  if (cfg.sweep.lambda_grid.empty() && !seen.count("lambda_grid"))
    for (int i = 0; i <= 18; ++i)
      cfg.sweep.lambda_grid.push_back(double(5 * i) / 100.0);
  if (cfg.sweep.ms_list.empty() && !seen.count("ms_list"))
    cfg.sweep.ms_list.push_back(cfg.params.num_su_Ms);
  if (cfg.sweep.e_th_su_list.empty() && !seen.count("e_th_su_list"))
    cfg.sweep.e_th_su_list.push_back(cfg.constraints.e_th_su);
  if (cfg.sweep.modes.empty() && !seen.count("modes"))
    cfg.sweep.modes.push_back(SolveMode::AdaptivePower);

  try {
    cfg.params.validate();
    cfg.constraints.validate();
    cfg.policy.validate();
    cfg.sweep.validate();
    if (!(cfg.gamma1_fixed >= 0.0))
      throw std::invalid_argument("gamma1_fixed: must be nonnegative");
    if (!(cfg.gamma2_fixed >= 0.0))
      throw std::invalid_argument("gamma2_fixed: must be nonnegative");
    if (cfg.n_slots < 1)
      throw std::invalid_argument("n_slots: must be at least 1");
    if (cfg.warmup_slots >= cfg.n_slots)
      throw std::invalid_argument("warmup_slots: must be smaller than n_slots");
    if (cfg.mc_samples < 1)
      throw std::invalid_argument("mc_samples: must be at least 1");
  } catch (const std::invalid_argument& e) {
    // Attribute the violated invariant to the earliest key it names that the
    // document actually set; pure-default violations carry no line.
    const std::string msg = e.what();
    std::string blame;
    size_t best_pos = std::string::npos;
    for (const auto& [key, line] : seen) {
      const size_t pos = msg.find(key);
      if (pos < best_pos) {
        best_pos = pos;
        blame = key;
      }
    }
    std::ostringstream os;
    os << "invariant violated: " << msg;
    if (!blame.empty()) os << " (key '" << blame << "' set at line " << seen[blame] << ")";
    throw ParseError(os.str());
  }
  return cfg;
}

Config parse_config(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

Config parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  return parse_config(in);
}

}  // namespace cra
