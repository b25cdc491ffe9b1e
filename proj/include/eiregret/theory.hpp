#pragma once

#include "eiregret/types.hpp"

namespace eiregret {

// Parameters of the regret diagnostics. Requires delta in (0,1), alpha in
// (0,1], lipschitz * box_scale * dim >= 1, dim >= 1, sigma > 0.
struct TheoryParams {
  double delta = 0.1;
  double alpha = 1.0;
  double lipschitz = 1.0;
  double box_scale = 1.0;
  int dim = 1;
  double sigma = 0.1;
};

void validate(const TheoryParams& params);

// r_t = f(x_t) - f(x*).
double instantaneous_regret(double f_xt, double f_star);
// r_t^s = y_plus - f(x*); can be negative under observation noise.
double noisy_simple_regret(double y_plus, double f_star);
// E^y(t): r_t^s >= sqrt(beta_t) * sigma_{t-1}(x_t), inclusive.
bool event_ey(double simple_regret, double beta, double sigma_xt);

// Discretization step h_t = 1 / (L t^2).
double discretization_step(const TheoryParams& params, int t);
// |C_t| = (L r d t^2)^d; satisfies |C_t| h_t^d = (r d)^d.
double discretization_cardinality(const TheoryParams& params, int t);
// beta_t = 2 log(8 |C_t| pi_t / delta) with pi_t = pi^2 t^2 / 6.
double beta_t(const TheoryParams& params, int t);

struct LadderValues {
  double alpha_t = 0.0;    // alpha log t
  double zeta_sqrt = 0.0;  // sqrt(2 pi) phi(0) / sqrt(alpha) * t^(alpha/2)
  double eta_sqrt = 0.0;   // zeta_sqrt * sqrt(beta_t)
  double c1 = 0.0;         // eta_sqrt / phi(0)
  double c2 = 0.0;         // (4 + zeta_sqrt) * sqrt(beta_t)
};

// Emits the constants ladder at step t and asserts the guard rail
// eta_sqrt * Phi(-sqrt(alpha_t)) > phi(0) for every emitted tuple.
LadderValues ladder(const TheoryParams& params, int t);

// c_mu(t) = sqrt(log((t - 1 + sigma^2) / (2 pi phi(0)^2 sigma^2))), clamped
// to 0 when the log argument falls below 1.
double c_mu(int t, double sigma);
// c_y(t) = max(c_mu(t), 3).
double c_y(int t, double sigma);

// Posterior-std floor: sigma_t(x) >= sigma sqrt(1 / (t + sigma^2)). Defined
// for t >= 0; at t = 0 the bound equals the prior std 1.
double sigma_lower_bound(int t, double sigma);

// Empirical information gain of the selected points:
// I_T = 1/2 sum log(1 + sigma^-2 sigma_sq_selected[i]).
double info_gain_selected(const Eigen::Ref<const Vector>& sigma_sq_selected,
                          double sigma);

// Checks sum sigma_selected <= sqrt(C T I_T) + tol with C = 2/log(1+sigma^-2).
bool variance_sum_bound_check(const Eigen::Ref<const Vector>& sigma_selected,
                              double sigma, double tol = 1e-9);

// Fraction of steps where |f[i] - mu[i]| <= sqrt(beta_{t0+i}) sigma_sel[i].
// t0 is the overall sample index of the first entry (history size + 1).
double confidence_coverage(const Eigen::Ref<const Vector>& f,
                           const Eigen::Ref<const Vector>& mu,
                           const Eigen::Ref<const Vector>& sigma_selected,
                           const TheoryParams& params, int t0);

}  // namespace eiregret
