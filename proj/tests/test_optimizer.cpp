#include <cmath>

#include "cra/model.hpp"
#include "cra/optimizer.hpp"
#include "doctest.h"

using namespace cra;
using doctest::Approx;

namespace {

const SystemParams kP{};
const Constraints kC{};

bool strictly_feasible(const AccessPolicy& pol, const SystemParams& p,
                       const Constraints& c) {
  return evaluate(pol, p, c.lambda_p, c).feasible;
}

}  // namespace

TEST_CASE("single user, idle primary: analytic optimum recovered") {
  // With no arrivals and one user the objective is a1 * p(gamma1): push a1
  // to 1 and gamma1 to the energy- or box-binding level.
  SystemParams p = kP;
  p.num_su_Ms = 1;
  Constraints c = kC;
  c.lambda_p = 0.0;
  const auto sol = optimize(p, c, 40, 7);
  REQUIRE(sol.status == SolveStatus::Optimal);

  const double per_hz = p.bandwidth_W * (p.slot_T - p.sense_tau);
  const double gamma_bind = std::min(c.e_th_su / per_hz, c.gamma_max);
  CHECK(sol.best_policy.a1 == Approx(1.0).epsilon(1e-6));
  CHECK(sol.best_policy.gamma1 == Approx(gamma_bind).epsilon(1e-6));

  const LinkRates r = link_rates(p);
  CHECK(sol.best_mu_s ==
        Approx(mu_s(sol.best_policy, p, r, 0.0)).epsilon(1e-12));
  CHECK(sol.best_mu_s ==
        Approx(p_succ_su_idle(0, gamma_bind, p, r)).epsilon(1e-5));
}

TEST_CASE("overloaded primary is globally infeasible") {
  Constraints c = kC;
  c.lambda_p = 0.95;  // above the silent-SU service rate 0.9048
  CHECK(optimize(kP, c, 20, 1).status == SolveStatus::GloballyInfeasible);
  CHECK(optimize_fixed_power(kP, c, 2e-10, 1e-10, 20, 1).status ==
        SolveStatus::GloballyInfeasible);
  CHECK(conventional_baseline(kP, c, 2e-10, 20, 1).status ==
        SolveStatus::GloballyInfeasible);

  // A primary energy cap below the stationary minimum is just as hopeless.
  Constraints tight = kC;
  tight.e_th_pu = 1e-8;
  CHECK(optimize(kP, tight, 20, 1).status == SolveStatus::GloballyInfeasible);
}

TEST_CASE("feasible-set inclusion orders the three modes") {
  const auto adaptive = optimize(kP, kC, 120, 3);
  const auto fixed = optimize_fixed_power(kP, kC, 2e-10, 1e-10, 120, 3);
  const auto conventional = conventional_baseline(kP, kC, 2e-10, 120, 3);
  REQUIRE(adaptive.status == SolveStatus::Optimal);
  REQUIRE(fixed.status == SolveStatus::Optimal);
  REQUIRE(conventional.status == SolveStatus::Optimal);
  CHECK(fixed.best_mu_s <= adaptive.best_mu_s + 1e-6);
  CHECK(conventional.best_mu_s <= adaptive.best_mu_s + 1e-6);
  CHECK(conventional.best_mu_s <= fixed.best_mu_s + 1e-6);
}

TEST_CASE("returned policies satisfy every constraint exactly") {
  // Includes instances whose optimum hugs the stability boundary.
  for (const double lam : {0.0, 0.1, 0.3, 0.6, 0.85}) {
    for (const int ms : {1, 2, 3}) {
      SystemParams p = kP;
      p.num_su_Ms = ms;
      Constraints c = kC;
      c.lambda_p = lam;
      const auto sol = optimize(p, c, 30, 11);
      REQUIRE(sol.status == SolveStatus::Optimal);
      CHECK(strictly_feasible(sol.best_policy, p, c));
      CHECK(sol.best_policy.a1 >= sol.best_policy.a2);
      CHECK(sol.best_policy.gamma1 <= c.gamma_max * (1.0 + 1e-12));
      CHECK(sol.best_policy.gamma2 <= c.gamma_max * (1.0 + 1e-12));
      CHECK(sol.best_mu_s ==
            Approx(evaluate(sol.best_policy, p, lam, c).mu_s).epsilon(1e-12));
    }
  }
}

TEST_CASE("solver is deterministic in (seed, n_starts)") {
  const auto a = optimize(kP, kC, 50, 42);
  const auto b = optimize(kP, kC, 50, 42);
  CHECK(a.best_policy.a1 == b.best_policy.a1);
  CHECK(a.best_policy.a2 == b.best_policy.a2);
  CHECK(a.best_policy.gamma1 == b.best_policy.gamma1);
  CHECK(a.best_policy.gamma2 == b.best_policy.gamma2);
  CHECK(a.best_mu_s == b.best_mu_s);
  CHECK(a.n_feasible_starts == b.n_feasible_starts);
  CHECK(a.starts_within_tolerance_of_best == b.starts_within_tolerance_of_best);

  // Different seeds land on the same optimum value within solver tolerance.
  const auto c = optimize(kP, kC, 50, 43);
  CHECK(std::abs(a.best_mu_s - c.best_mu_s) < 1e-3);
}

TEST_CASE("restart robustness on the reference instance") {
  const auto sol = optimize(kP, kC, 200, 5);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.n_feasible_starts == 200);
  // At least 10% of starts end within 1e-4 of the best objective.
  CHECK(sol.starts_within_tolerance_of_best * 10 >= sol.n_starts);
}

TEST_CASE("loosening the secondary energy cap never hurts") {
  double prev = -1.0;
  for (const double cap : {1e-7, 5e-6, 1e-1}) {
    Constraints c = kC;
    c.e_th_su = cap;
    const auto sol = optimize(kP, c, 60, 17);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.best_mu_s >= prev - 1e-6);
    prev = sol.best_mu_s;
  }
}

TEST_CASE("zero pinned power cannot deliver anything") {
  const auto sol = optimize_fixed_power(kP, kC, 0.0, 0.0, 20, 1);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.best_mu_s == 0.0);
}

TEST_CASE("with no arrivals the baselines coincide") {
  Constraints c = kC;
  c.lambda_p = 0.0;
  const auto conv = conventional_baseline(kP, c, 2e-10, 60, 9);
  const auto fixed_a = optimize_fixed_power(kP, c, 2e-10, 1e-10, 60, 9);
  const auto fixed_b = optimize_fixed_power(kP, c, 2e-10, 7e-9, 60, 9);
  REQUIRE(conv.status == SolveStatus::Optimal);
  CHECK(conv.best_mu_s == Approx(fixed_a.best_mu_s).epsilon(1e-9));
  CHECK(conv.best_mu_s == Approx(fixed_b.best_mu_s).epsilon(1e-9));
  CHECK(conv.best_policy.a1 == Approx(fixed_a.best_policy.a1).epsilon(1e-3));
}

TEST_CASE("silent busy branch reduces stability to the solo service rate") {
  AccessPolicy pol{0.7, 0.0, 2e-10, 0.0};
  const LinkRates r = link_rates(kP);
  CHECK(mu_p(pol, kP, r) == Approx(p_succ_pu(0, pol, kP, r)).epsilon(1e-15));
}
