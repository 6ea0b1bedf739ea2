#include "cra/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <tuple>
#include <vector>

#include "cra/model.hpp"
#include "cra/rng.hpp"

namespace cra {

const char* to_string(SolveMode mode) {
  switch (mode) {
    case SolveMode::AdaptivePower: return "adaptive";
    case SolveMode::FixedPower: return "fixed";
    case SolveMode::Conventional: return "conventional";
  }
  return "?";
}

namespace {

constexpr double kPenaltyWeight = 100.0;  // dominates the unit-scale objective
constexpr double kTieTol = 1e-12;         // objective tie, lexicographic rule
constexpr double kWithinBestTol = 1e-4;   // restart-robustness bucket

// Search space per mode. Coordinates live in [0,1]; power coordinates are
// scaled by gamma_max so the simplex geometry is well conditioned.
struct Problem {
  SolveMode mode;
  const SystemParams& params;
  const Constraints& cons;
  LinkRates rates;
  double gamma1_fixed = 0.0;
  double gamma2_fixed = 0.0;

  int dim() const {
    switch (mode) {
      case SolveMode::AdaptivePower: return 4;
      case SolveMode::FixedPower: return 2;
      case SolveMode::Conventional: return 1;
    }
    return 0;
  }

  AccessPolicy policy_at(const std::vector<double>& u) const {
    auto unit = [](double v) { return std::clamp(v, 0.0, 1.0); };
    AccessPolicy p;
    p.a1 = unit(u[0]);
    switch (mode) {
      case SolveMode::AdaptivePower:
        p.a2 = std::min(unit(u[1]), p.a1);
        p.gamma1 = unit(u[2]) * cons.gamma_max;
        p.gamma2 = unit(u[3]) * cons.gamma_max;
        break;
      case SolveMode::FixedPower:
        p.a2 = std::min(unit(u[1]), p.a1);
        p.gamma1 = gamma1_fixed;
        p.gamma2 = gamma2_fixed;
        break;
      case SolveMode::Conventional:
        p.a2 = 0.0;
        p.gamma1 = gamma1_fixed;
        p.gamma2 = 0.0;
        break;
    }
    return p;
  }

  // Coordinates the repair step may scale toward zero: the powers where they
  // are free, otherwise the access probabilities.
  std::vector<int> scalable() const {
    switch (mode) {
      case SolveMode::AdaptivePower: return {2, 3};
      case SolveMode::FixedPower: return {0, 1};
      case SolveMode::Conventional: return {0};
    }
    return {};
  }

  // Merit to minimize: negated service rate plus an exact penalty on the
  // normalized constraint violations. Extended continuously across the
  // stability frontier by the saturated-queue limit (rho = 1).
  double merit(const AccessPolicy& pol) const {
    const double mp = mu_p(pol, params, rates);
    double violation = 0.0;
    double rho = 1.0;
    if (cons.lambda_p > mp || !(mp > 0.0)) {
      violation += cons.lambda_p - mp;
    } else {
      rho = cons.lambda_p / mp;
    }
    const double obj = (1.0 - rho) * mu_s_idle_branch(pol, params, rates) +
                       rho * mu_s_busy_branch(pol, params, rates);
    const double e_su = (pol.a1 * pol.gamma1 * (1.0 - rho) +
                         pol.a2 * pol.gamma2 * rho) *
                        params.bandwidth_W * (params.slot_T - params.sense_tau);
    const double e_pu =
        params.gamma_p * params.bandwidth_W * params.slot_T * rho;
    if (e_su > cons.e_th_su)
      violation += std::min((e_su - cons.e_th_su) / std::max(cons.e_th_su, 1e-300), 1e6);
    if (e_pu > cons.e_th_pu)
      violation += std::min((e_pu - cons.e_th_pu) / std::max(cons.e_th_pu, 1e-300), 1e6);
    return -obj + kPenaltyWeight * violation;
  }

  bool feasible_at(const std::vector<double>& u) const {
    const auto rep = evaluate(policy_at(u), params, cons.lambda_p, cons);
    return rep.feasible;
  }
};

// No policy can satisfy the constraints when even silent SUs leave the
// primary queue unstable, or when serving lambda_p already costs the primary
// more energy than its cap.
bool globally_feasible(const Problem& P) {
  AccessPolicy silent;
  const double p0 = p_succ_pu(0, silent, P.params, P.rates);
  if (!(p0 > 0.0) || P.cons.lambda_p > p0) return false;
  const double ep_min = P.params.gamma_p * P.params.bandwidth_W *
                        P.params.slot_T * P.cons.lambda_p / p0;
  return ep_min <= P.cons.e_th_pu;
}

// Projects a2 under a1, then bisects a scale on the free coordinates until
// the point is feasible. Wastes fewer starts than rejection sampling.
std::vector<double> repair(const Problem& P, std::vector<double> u) {
  for (auto& v : u) v = std::clamp(v, 0.0, 1.0);
  if (P.dim() >= 2) u[1] = std::min(u[1], u[0]);
  if (P.feasible_at(u)) return u;

  const auto scalable = P.scalable();
  auto scaled = [&](double s) {
    auto v = u;
    for (int i : scalable) v[size_t(i)] *= s;
    return v;
  };
  if (!P.feasible_at(scaled(0.0))) return scaled(0.0);  // globally degenerate
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 50; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (P.feasible_at(scaled(mid)))
      lo = mid;
    else
      hi = mid;
  }
  return scaled(lo);
}

// The objective is strictly increasing in gamma1 and nothing else depends on
// it, so the optimal gamma1 given the rest of the policy is the largest
// value the SU energy cap and the box allow. A 1e-12 relative margin keeps
// the resulting slack nonnegative under rounding.
void fill_gamma1(AccessPolicy& pol, const Problem& P) {
  if (P.mode != SolveMode::AdaptivePower) return;
  const double mp = mu_p(pol, P.params, P.rates);
  if (!(mp > 0.0) || P.cons.lambda_p > mp) return;
  const double rho = P.cons.lambda_p / mp;
  if (pol.a1 <= 0.0 || rho >= 1.0) return;
  const double per_hz =
      P.params.bandwidth_W * (P.params.slot_T - P.params.sense_tau);
  const double budget = P.cons.e_th_su - pol.a2 * pol.gamma2 * rho * per_hz;
  if (budget <= 0.0) return;
  const double cap = (budget / (pol.a1 * (1.0 - rho) * per_hz)) * (1.0 - 1e-12);
  pol.gamma1 = std::clamp(cap, 0.0, P.cons.gamma_max);
}

struct NmOut {
  std::vector<double> x;
  double f = 0.0;
};

// Nelder-Mead with the standard reflect/expand/contract/shrink coefficients.
// Vertices are kept in stable f-order so runs are deterministic.
template <typename F>
NmOut nelder_mead(F&& f, const std::vector<double>& x0, double step,
                  int max_evals, double xtol, double ftol) {
  const size_t d = x0.size();
  std::vector<std::vector<double>> xs(d + 1, x0);
  for (size_t i = 0; i < d; ++i)
    xs[i + 1][i] += (x0[i] + step <= 1.0) ? step : -step;

  std::vector<double> fs(d + 1);
  int evals = 0;
  for (size_t i = 0; i <= d; ++i) fs[i] = (++evals, f(xs[i]));

  std::vector<size_t> order(d + 1);
  auto sort_order = [&] {
    for (size_t i = 0; i <= d; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return fs[a] < fs[b]; });
  };

  while (evals < max_evals) {
    sort_order();
    const size_t best = order[0], worst = order[d];

    double diam = 0.0;
    for (size_t i = 1; i <= d; ++i)
      for (size_t c = 0; c < d; ++c)
        diam = std::max(diam, std::abs(xs[order[i]][c] - xs[best][c]));
    if (diam <= xtol && fs[worst] - fs[best] <= ftol) break;

    std::vector<double> centroid(d, 0.0);
    for (size_t i = 0; i < d; ++i)
      for (size_t c = 0; c < d; ++c) centroid[c] += xs[order[i]][c] / double(d);

    auto along = [&](double t) {
      std::vector<double> x(d);
      for (size_t c = 0; c < d; ++c)
        x[c] = centroid[c] + t * (centroid[c] - xs[worst][c]);
      return x;
    };

    const auto xr = along(1.0);
    const double fr = (++evals, f(xr));
    if (fr < fs[best]) {
      const auto xe = along(2.0);
      const double fe = (++evals, f(xe));
      if (fe < fr) {
        xs[worst] = xe;
        fs[worst] = fe;
      } else {
        xs[worst] = xr;
        fs[worst] = fr;
      }
      continue;
    }
    if (fr < fs[order[d - 1]]) {
      xs[worst] = xr;
      fs[worst] = fr;
      continue;
    }
    if (fr < fs[worst]) {  // outside contraction
      const auto xc = along(0.5);
      const double fc = (++evals, f(xc));
      if (fc <= fr) {
        xs[worst] = xc;
        fs[worst] = fc;
        continue;
      }
    } else {  // inside contraction
      const auto xc = along(-0.5);
      const double fc = (++evals, f(xc));
      if (fc < fs[worst]) {
        xs[worst] = xc;
        fs[worst] = fc;
        continue;
      }
    }
    for (size_t i = 1; i <= d; ++i) {  // shrink toward the best vertex
      const size_t v = order[i];
      for (size_t c = 0; c < d; ++c)
        xs[v][c] = xs[best][c] + 0.5 * (xs[v][c] - xs[best][c]);
      fs[v] = (++evals, f(xs[v]));
    }
  }

  sort_order();
  return {xs[order[0]], fs[order[0]]};
}

bool lex_less(const AccessPolicy& x, const AccessPolicy& y) {
  return std::tie(x.gamma1, x.gamma2, x.a1, x.a2) <
         std::tie(y.gamma1, y.gamma2, y.a1, y.a2);
}

struct Candidate {
  AccessPolicy pol;
  double mu = 0.0;
  bool terminal_feasible = false;
};

// The optimum typically sits ON a constraint boundary, so the descent can
// terminate with slacks of either sign at rounding scale. Accept the
// terminal only when it is strictly feasible after the gamma1 fill;
// otherwise bisect it back toward the feasible start just far enough.
std::optional<AccessPolicy> strictify(const Problem& P,
                                      const std::vector<double>& terminal,
                                      const std::vector<double>& start) {
  auto polished = [&](const std::vector<double>& u) {
    AccessPolicy pol = P.policy_at(u);
    fill_gamma1(pol, P);
    return pol;
  };
  auto feasible = [&](const AccessPolicy& pol) {
    return evaluate(pol, P.params, P.cons.lambda_p, P.cons).feasible;
  };
  AccessPolicy pol = polished(terminal);
  if (feasible(pol)) return pol;

  auto blend = [&](double t) {
    std::vector<double> u(terminal.size());
    for (size_t i = 0; i < u.size(); ++i)
      u[i] = (1.0 - t) * terminal[i] + t * start[i];
    return u;
  };
  if (!feasible(polished(blend(1.0)))) return std::nullopt;
  double bad = 0.0, good = 1.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (bad + good);
    if (feasible(polished(blend(mid))))
      good = mid;
    else
      bad = mid;
  }
  return polished(blend(good));
}

Candidate run_start(const Problem& P, std::vector<double> u0) {
  u0 = repair(P, u0);
  auto f = [&](const std::vector<double>& u) { return P.merit(P.policy_at(u)); };
  const int max_evals = 200 * P.dim() + 100;
  const auto nm = nelder_mead(f, u0, 0.2, max_evals, 1e-8, 1e-12);

  if (const auto pol = strictify(P, nm.x, u0)) {
    const auto rep = evaluate(*pol, P.params, P.cons.lambda_p, P.cons);
    return {*pol, rep.mu_s, true};
  }

  // Even the start became unusable; report it as a degenerate candidate.
  AccessPolicy pol = P.policy_at(u0);
  fill_gamma1(pol, P);
  const auto rep = evaluate(pol, P.params, P.cons.lambda_p, P.cons);
  return {pol, rep.feasible ? rep.mu_s : 0.0, false};
}

SolveReport solve(const Problem& P, int n_starts, uint64_t seed) {
  SolveReport report;
  report.mode = P.mode;
  report.n_starts = n_starts;

  if (!globally_feasible(P)) {
    report.status = SolveStatus::GloballyInfeasible;
    return report;
  }

  // The silent policy is always feasible; it seeds the reduction so a best
  // policy exists even if every start degenerates.
  AccessPolicy best;
  if (P.mode != SolveMode::AdaptivePower) best.gamma1 = P.gamma1_fixed;
  if (P.mode == SolveMode::FixedPower) best.gamma2 = P.gamma2_fixed;
  double best_mu = evaluate(best, P.params, P.cons.lambda_p, P.cons).mu_s;

  std::vector<double> terminal_mu;
  terminal_mu.reserve(size_t(n_starts));
  for (int s = 0; s < n_starts; ++s) {
    const CounterRng init(seed, stream_id(streams::opt_start, uint64_t(s)));
    std::vector<double> u0(size_t(P.dim()));
    for (size_t i = 0; i < u0.size(); ++i) u0[i] = init.uniform(i);

    const Candidate cand = run_start(P, u0);
    if (cand.terminal_feasible) ++report.n_feasible_starts;
    terminal_mu.push_back(cand.mu);
    if (cand.mu > best_mu + kTieTol ||
        (std::abs(cand.mu - best_mu) <= kTieTol && lex_less(cand.pol, best))) {
      best = cand.pol;
      best_mu = cand.mu;
    }
  }

  report.best_policy = best;
  report.best_mu_s = best_mu;
  for (double m : terminal_mu)
    if (m >= best_mu - kWithinBestTol) ++report.starts_within_tolerance_of_best;
  return report;
}

}  // namespace

SolveReport optimize(const SystemParams& params, const Constraints& constraints,
                     int n_starts, uint64_t seed) {
  Problem P{SolveMode::AdaptivePower, params, constraints, link_rates(params),
            0.0, 0.0};
  return solve(P, n_starts, seed);
}

SolveReport optimize_fixed_power(const SystemParams& params,
                                 const Constraints& constraints,
                                 double gamma1_fixed, double gamma2_fixed,
                                 int n_starts, uint64_t seed) {
  Problem P{SolveMode::FixedPower, params, constraints, link_rates(params),
            gamma1_fixed, gamma2_fixed};
  return solve(P, n_starts, seed);
}

SolveReport conventional_baseline(const SystemParams& params,
                                  const Constraints& constraints,
                                  double gamma1_fixed, int n_starts,
                                  uint64_t seed) {
  Problem P{SolveMode::Conventional, params, constraints, link_rates(params),
            gamma1_fixed, 0.0};
  return solve(P, n_starts, seed);
}

}  // namespace cra
