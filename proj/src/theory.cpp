#include "eiregret/theory.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "eiregret/acquisition.hpp"

namespace eiregret {

void validate(const TheoryParams& params) {
  if (!(params.delta > 0.0 && params.delta < 1.0))
    throw std::invalid_argument("theory: delta must lie in (0,1)");
  if (!(params.alpha > 0.0 && params.alpha <= 1.0))
    throw std::invalid_argument("theory: alpha must lie in (0,1]");
  if (params.dim < 1) throw std::invalid_argument("theory: dim must be >= 1");
  if (!(params.sigma > 0.0))
    throw std::invalid_argument("theory: sigma must be > 0");
  if (params.lipschitz * params.box_scale * params.dim < 1.0)
    throw std::invalid_argument("theory: requires L * r * d >= 1");
}

double instantaneous_regret(double f_xt, double f_star) {
  if (!std::isfinite(f_xt) || !std::isfinite(f_star))
    throw std::invalid_argument("instantaneous_regret: non-finite input");
  return f_xt - f_star;
}

double noisy_simple_regret(double y_plus, double f_star) {
  if (!std::isfinite(y_plus) || !std::isfinite(f_star))
    throw std::invalid_argument("noisy_simple_regret: non-finite input");
  return y_plus - f_star;
}

bool event_ey(double simple_regret, double beta, double sigma_xt) {
  if (!(beta > 0.0) || !(sigma_xt >= 0.0))
    throw std::invalid_argument("event_ey: beta > 0 and sigma_xt >= 0 required");
  return simple_regret >= std::sqrt(beta) * sigma_xt;
}

namespace {

void check_step(int t) {
  if (t < 1) throw std::invalid_argument("theory: t must be >= 1");
}

}  // namespace

double discretization_step(const TheoryParams& params, int t) {
  validate(params);
  check_step(t);
  const double tt = static_cast<double>(t);
  return 1.0 / (params.lipschitz * tt * tt);
}

double discretization_cardinality(const TheoryParams& params, int t) {
  validate(params);
  check_step(t);
  const double tt = static_cast<double>(t);
  return std::pow(params.lipschitz * params.box_scale * params.dim * tt * tt,
                  params.dim);
}

double beta_t(const TheoryParams& params, int t) {
  validate(params);
  check_step(t);
  const double tt = static_cast<double>(t);
  const double pi_t = std::numbers::pi * std::numbers::pi * tt * tt / 6.0;
  return 2.0 *
         std::log(8.0 * discretization_cardinality(params, t) * pi_t /
                  params.delta);
}

LadderValues ladder(const TheoryParams& params, int t) {
  validate(params);
  check_step(t);
  const double tt = static_cast<double>(t);
  const double pdf0 = std_normal_pdf(0.0);
  LadderValues v;
  v.alpha_t = params.alpha * std::log(tt);
  v.zeta_sqrt = std::sqrt(2.0 * std::numbers::pi) * pdf0 /
                std::sqrt(params.alpha) * std::pow(tt, params.alpha / 2.0);
  const double beta_sqrt = std::sqrt(beta_t(params, t));
  v.eta_sqrt = v.zeta_sqrt * beta_sqrt;
  v.c1 = v.eta_sqrt / pdf0;
  v.c2 = (4.0 + v.zeta_sqrt) * beta_sqrt;
  // Guard rail behind the step-wise regret constants; must hold for every
  // emitted tuple.
  if (!(v.eta_sqrt * std_normal_cdf(-std::sqrt(v.alpha_t)) > pdf0)) {
    std::ostringstream msg;
    msg << "theory: constants ladder guard failed at t=" << t
        << " alpha=" << params.alpha;
    throw std::logic_error(msg.str());
  }
  return v;
}

double c_mu(int t, double sigma) {
  check_step(t);
  if (!(sigma > 0.0)) throw std::invalid_argument("c_mu: sigma must be > 0");
  const double pdf0 = std_normal_pdf(0.0);
  const double arg = (static_cast<double>(t) - 1.0 + sigma * sigma) /
                     (2.0 * std::numbers::pi * pdf0 * pdf0 * sigma * sigma);
  if (arg < 1.0) return 0.0;
  return std::sqrt(std::log(arg));
}

double c_y(int t, double sigma) { return std::max(c_mu(t, sigma), 3.0); }

double sigma_lower_bound(int t, double sigma) {
  if (t < 0) throw std::invalid_argument("sigma_lower_bound: t must be >= 0");
  if (!(sigma > 0.0))
    throw std::invalid_argument("sigma_lower_bound: sigma must be > 0");
  return sigma * std::sqrt(1.0 / (static_cast<double>(t) + sigma * sigma));
}

double info_gain_selected(const Eigen::Ref<const Vector>& sigma_sq_selected,
                          double sigma) {
  if (!(sigma > 0.0))
    throw std::invalid_argument("info_gain_selected: sigma must be > 0");
  if ((sigma_sq_selected.array() < 0.0).any())
    throw std::invalid_argument("info_gain_selected: negative variance");
  const double inv_noise = 1.0 / (sigma * sigma);
  double gain = 0.0;
  for (Eigen::Index i = 0; i < sigma_sq_selected.size(); ++i)
    gain += 0.5 * std::log1p(inv_noise * sigma_sq_selected[i]);
  return gain;
}

bool variance_sum_bound_check(const Eigen::Ref<const Vector>& sigma_selected,
                              double sigma, double tol) {
  if (!(sigma > 0.0))
    throw std::invalid_argument("variance_sum_bound_check: sigma must be > 0");
  const Eigen::Index T = sigma_selected.size();
  if (T == 0) return true;
  const double lhs = sigma_selected.sum();
  const Vector sq = sigma_selected.array().square();
  const double info = info_gain_selected(sq, sigma);
  const double c_gamma = 2.0 / std::log1p(1.0 / (sigma * sigma));
  const double rhs = std::sqrt(c_gamma * static_cast<double>(T) * info);
  return lhs <= rhs + tol;
}

double confidence_coverage(const Eigen::Ref<const Vector>& f,
                           const Eigen::Ref<const Vector>& mu,
                           const Eigen::Ref<const Vector>& sigma_selected,
                           const TheoryParams& params, int t0) {
  validate(params);
  if (f.size() != mu.size() || f.size() != sigma_selected.size())
    throw std::invalid_argument("confidence_coverage: length mismatch");
  if (t0 < 1) throw std::invalid_argument("confidence_coverage: t0 must be >= 1");
  if (f.size() == 0) return 1.0;
  Eigen::Index hits = 0;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const double radius =
        std::sqrt(beta_t(params, t0 + static_cast<int>(i))) * sigma_selected[i];
    if (std::abs(f[i] - mu[i]) <= radius) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(f.size());
}

}  // namespace eiregret
