#pragma once

#include <string>
#include <utility>

#include "eiregret/gp.hpp"

namespace eiregret {

// Below this posterior std the EI closed form collapses to its noiseless
// limit max(xi_plus - mean, 0).
inline constexpr double kEiSigmaFloor = 1e-12;

double std_normal_pdf(double z);
// 0.5 * erfc(-z / sqrt(2)); keeps relative accuracy deep into the tails.
double std_normal_cdf(double z);
// tau(z) = z Phi(z) + phi(z): positive, increasing, tau' = Phi.
double tau(double z);

// EI in the trade-off form a Phi(a/b) + b phi(a/b) for b in (0, 1].
// Throws if b <= 0 or inputs are non-finite.
double ei_tradeoff(double a, double b);
// EI of observing at a point with posterior `m` against incumbent xi_plus.
// Bitwise identical to ei_tradeoff(xi_plus - m.mean, m.std) when m.std > 0.
double expected_improvement(double xi_plus, const PosteriorMoment& m);

enum class IncumbentRule { Bpmi, Bspmi, Boi };

// Accepts "bpmi", "bspmi", "boi".
IncumbentRule parse_incumbent_rule(const std::string& name);
std::string to_string(IncumbentRule rule);

struct IncumbentValue {
  IncumbentRule rule = IncumbentRule::Bpmi;
  double xi_plus = 0.0;
  Vector arg_point;  // point attaining the incumbent value
};

// Minimum posterior mean over the sampled points only, with its argmin row.
std::pair<Vector, double> best_sampled_posterior_mean(const GpModel& model);

// BPMI: minimum posterior mean over a Halton pool plus the sampled points.
// BSPMI: minimum posterior mean over the sampled points. BOI: minimum
// observation. `budget` and `stream` are consumed by BPMI only.
IncumbentValue compute_incumbent(const GpModel& model, IncumbentRule rule,
                                 const Box& domain, int budget,
                                 RngStream& stream);

struct AcqChoice {
  Vector x;
  double ei = 0.0;    // EI at x under the incumbent used
  double mean = 0.0;  // posterior mean at x
  double std = 1.0;   // posterior std at x
};

// Argmax of EI over a fresh Halton pool, the sampled points, and the
// incumbent's arg point, in that candidate order; ties resolve to the lowest
// index.
AcqChoice maximize_ei(const GpModel& model, const IncumbentValue& incumbent,
                      const Box& domain, int budget, RngStream& stream);

}  // namespace eiregret
