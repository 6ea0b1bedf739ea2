#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "cra/config.hpp"
#include "cra/model.hpp"
#include "cra/sweep.hpp"
#include "doctest.h"

using namespace cra;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (true) {
    const size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

double col(const std::vector<std::string>& row, size_t i) {
  return std::strtod(row[i].c_str(), nullptr);
}

}  // namespace

TEST_CASE("doubles are formatted as shortest round-trip decimals") {
  for (const double v : {0.0, -0.0, 0.05, 0.15, 1.0 / 3.0, 1e-10, 2e-10,
                         0.1671212061323322, 1e7, -3.25, 5e-324}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
    CHECK(s.find("0x") == std::string::npos);
  }
  CHECK(format_double(0.05) == "0.05");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(1e-10) == "1e-10");
}

TEST_CASE("sweep output is byte-identical across runs") {
  const Config cfg = parse_config(
      "lambda_grid = [0.1, 0.4]\n"
      "ms_list = [2]\n"
      "modes = [adaptive, conventional]\n"
      "n_starts = 25\n"
      "sim_validate = true\n"
      "sim_slots = 50000\n"
      "seed = 3\n");
  std::ostringstream a, b;
  CHECK(run_sweep(cfg, a) == 4);
  CHECK(run_sweep(cfg, b) == 4);
  CHECK(a.str() == b.str());
  CHECK(a.str().substr(0, 9) == "lambda_p,");
}

TEST_CASE("every row can be regenerated from its policy columns") {
  const Config cfg = parse_config(
      "lambda_grid = [0.05, 0.3, 0.6]\n"
      "ms_list = [2, 3]\n"
      "e_th_su_list = [5e-5, 1e-7]\n"
      "modes = [adaptive, fixed]\n"
      "n_starts = 20\n"
      "seed = 2\n");
  std::ostringstream out;
  const int rows = run_sweep(cfg, out);
  CHECK(rows == 3 * 2 * 2 * 2);

  std::istringstream in(out.str());
  std::string line;
  REQUIRE(std::getline(in, line));  // header
  const auto header = split(line, ',');
  REQUIRE(header.size() == 15);
  CHECK(header[8] == "mu_s_analytic");

  int parsed = 0;
  while (std::getline(in, line)) {
    const auto row = split(line, ',');
    REQUIRE(row.size() == 15);
    SystemParams p = cfg.params;
    p.num_su_Ms = int(col(row, 1));
    Constraints c = cfg.constraints;
    c.lambda_p = col(row, 0);
    c.e_th_su = col(row, 2);
    const AccessPolicy pol{col(row, 4), col(row, 5), col(row, 6), col(row, 7)};
    const auto rep = evaluate(pol, p, c.lambda_p, c);
    CHECK(std::abs(rep.mu_s - col(row, 8)) <= 1e-12);
    CHECK(std::abs(rep.mu_p - col(row, 9)) <= 1e-12);
    CHECK(std::abs(rep.energy_su - col(row, 10)) <= 1e-12);
    CHECK(std::abs(rep.energy_pu - col(row, 11)) <= 1e-12);
    CHECK(row[12] == (rep.feasible ? "1" : "0"));
    CHECK(row[13].empty());  // validation off
    CHECK(row[14].empty());
    ++parsed;
  }
  CHECK(parsed == rows);
}

TEST_CASE("sweep rows are feasible wherever a policy exists") {
  const Config cfg = parse_config(
      "lambda_grid = [0.1, 0.89, 0.95]\n"
      "n_starts = 15\n");
  std::ostringstream out;
  run_sweep(cfg, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  CHECK(split(line, ',')[12] == "1");  // lambda 0.1: solvable
  std::getline(in, line);
  CHECK(split(line, ',')[12] == "1");  // lambda 0.89: solvable, tight
  std::getline(in, line);
  const auto row = split(line, ',');
  CHECK(row[12] == "0");  // lambda 0.95 exceeds the silent-SU service rate
  CHECK(col(row, 4) == 0.0);
  CHECK(col(row, 8) == 0.0);
}

TEST_CASE("verification grid passes against the closed forms") {
  const SystemParams params;
  const auto report = verify_model(params, 120000, 1);
  CHECK(report.points.size() == 36);
  CHECK(report.pass);
  CHECK(report.n_pass == 36);
  int exercised_kinds = 0;
  for (const std::string kind : {"su_idle", "su_busy", "pu"})
    for (const auto& pt : report.points)
      if (pt.scenario == kind) {
        ++exercised_kinds;
        break;
      }
  CHECK(exercised_kinds == 3);
}

TEST_CASE("interval width scales as one over root sample count") {
  const SystemParams params;
  const auto small = verify_model(params, 5000, 1);
  const auto big = verify_model(params, 500000, 1);
  REQUIRE(small.points.size() == big.points.size());
  for (size_t i = 0; i < small.points.size(); ++i)
    CHECK(small.points[i].std_err ==
          doctest::Approx(10.0 * big.points[i].std_err).epsilon(0.25));
  CHECK(big.pass);
}

TEST_CASE("verification report prints one line per point plus a verdict") {
  const SystemParams params;
  const auto report = verify_model(params, 5000, 4);
  std::ostringstream out;
  print_verify_report(report, out);
  std::istringstream in(out.str());
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == int(report.points.size()) + 1);
}
