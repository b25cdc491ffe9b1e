#include "eiregret/acquisition.hpp"

#include <cmath>
#include <numbers>

namespace eiregret {

double std_normal_pdf(double z) {
  if (!std::isfinite(z)) throw std::invalid_argument("pdf: non-finite input");
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double std_normal_cdf(double z) {
  if (!std::isfinite(z)) throw std::invalid_argument("cdf: non-finite input");
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double tau(double z) { return z * std_normal_cdf(z) + std_normal_pdf(z); }

namespace {

// Shared EI core. Clamping to max(a, 0) keeps the exact lower bound
// EI >= max(a, 0): the sum underflows below 0 for very negative a/b and can
// round one ulp below a for very large a/b.
double ei_ab(double a, double b) {
  const double floor = a > 0.0 ? a : 0.0;
  if (b <= kEiSigmaFloor) return floor;
  const double z = a / b;
  return std::max(a * std_normal_cdf(z) + b * std_normal_pdf(z), floor);
}

}  // namespace

double ei_tradeoff(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("ei_tradeoff: non-finite input");
  if (b <= 0.0) throw std::invalid_argument("ei_tradeoff: b must be > 0");
  return ei_ab(a, b);
}

double expected_improvement(double xi_plus, const PosteriorMoment& m) {
  if (!std::isfinite(xi_plus) || !std::isfinite(m.mean) || !std::isfinite(m.std))
    throw std::invalid_argument("expected_improvement: non-finite input");
  if (m.std < 0.0)
    throw std::invalid_argument("expected_improvement: negative std");
  return ei_ab(xi_plus - m.mean, m.std);
}

IncumbentRule parse_incumbent_rule(const std::string& name) {
  if (name == "bpmi") return IncumbentRule::Bpmi;
  if (name == "bspmi") return IncumbentRule::Bspmi;
  if (name == "boi") return IncumbentRule::Boi;
  throw std::invalid_argument("unknown incumbent rule: " + name);
}

std::string to_string(IncumbentRule rule) {
  switch (rule) {
    case IncumbentRule::Bpmi: return "bpmi";
    case IncumbentRule::Bspmi: return "bspmi";
    case IncumbentRule::Boi: return "boi";
  }
  throw std::logic_error("unreachable incumbent rule");
}

std::pair<Vector, double> best_sampled_posterior_mean(const GpModel& model) {
  Vector means, stds;
  model.posterior_batch(model.data().X, means, stds);
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < means.size(); ++i)
    if (means[i] < means[best]) best = i;
  return {model.data().X.row(best).transpose(), means[best]};
}

IncumbentValue compute_incumbent(const GpModel& model, IncumbentRule rule,
                                 const Box& domain, int budget,
                                 RngStream& stream) {
  IncumbentValue inc;
  inc.rule = rule;
  switch (rule) {
    case IncumbentRule::Bpmi: {
      auto [x, value] = minimize_posterior_mean(model, domain, budget, stream);
      inc.arg_point = std::move(x);
      inc.xi_plus = value;
      break;
    }
    case IncumbentRule::Bspmi: {
      auto [x, value] = best_sampled_posterior_mean(model);
      inc.arg_point = std::move(x);
      inc.xi_plus = value;
      break;
    }
    case IncumbentRule::Boi: {
      Eigen::Index best = 0;
      const Vector& y = model.data().y;
      for (Eigen::Index i = 1; i < y.size(); ++i)
        if (y[i] < y[best]) best = i;
      inc.arg_point = model.data().X.row(best).transpose();
      inc.xi_plus = y[best];
      break;
    }
  }
  return inc;
}

AcqChoice maximize_ei(const GpModel& model, const IncumbentValue& incumbent,
                      const Box& domain, int budget, RngStream& stream) {
  if (budget < 0) throw std::invalid_argument("maximize_ei: negative budget");
  if (!std::isfinite(incumbent.xi_plus))
    throw std::invalid_argument("maximize_ei: non-finite incumbent");
  if (incumbent.arg_point.size() != domain.dim() ||
      domain.dim() != model.data().dim())
    throw std::invalid_argument("maximize_ei: dimension mismatch");

  const Matrix pool = halton_pool(domain, budget, stream);
  const Eigen::Index t = model.data().X.rows();
  Matrix candidates(pool.rows() + t + 1, domain.dim());
  candidates.topRows(pool.rows()) = pool;
  candidates.middleRows(pool.rows(), t) = model.data().X;
  candidates.bottomRows(1) = incumbent.arg_point.transpose();

  Vector means, stds;
  model.posterior_batch(candidates, means, stds);
  Eigen::Index best = 0;
  double best_ei = ei_ab(incumbent.xi_plus - means[0], stds[0]);
  for (Eigen::Index i = 1; i < means.size(); ++i) {
    const double ei = ei_ab(incumbent.xi_plus - means[i], stds[i]);
    if (ei > best_ei) {
      best_ei = ei;
      best = i;
    }
  }
  return AcqChoice{candidates.row(best).transpose(), best_ei, means[best],
                   stds[best]};
}

}  // namespace eiregret
