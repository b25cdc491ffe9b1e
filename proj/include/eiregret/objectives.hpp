#pragma once

#include <functional>
#include <string>
#include <vector>

#include "eiregret/rng.hpp"
#include "eiregret/types.hpp"

namespace eiregret {

enum class FunctionId {
  Branin2,
  Styblinski2,
  Camel2,
  Schwefel2,
  Rosenbrock4,
  Hartmann6,
};

// Accepts "branin2", "styblinski2", "camel2", "schwefel2", "rosenbrock4",
// "hartmann6".
FunctionId parse_function_id(const std::string& name);
std::string to_string(FunctionId id);

// A standardized benchmark objective: roughly zero mean and unit variance
// under the uniform distribution on `box`.
struct TestFunction {
  FunctionId id = FunctionId::Branin2;
  std::string name;
  int dim = 0;
  Box box;
  std::vector<Vector> optima;  // listed global minimizers
  Vector optima_values;        // objective value at each listed minimizer
  double f_star = 0.0;         // min over optima_values; regret ground truth
  double lipschitz = 1.0;      // 1-norm estimate on the unit cube, >= 1/dim
};

// Deterministic: repeated calls build identical instances.
TestFunction make_test_function(FunctionId id);

// Evaluates at native (box) coordinates. Points outside the box by at most
// 1e-9 are clamped; farther outside is an input error.
double eval_objective(const TestFunction& fn, const Eigen::Ref<const Vector>& x);

// Additive Gaussian observation noise drawn from a caller-owned stream. The
// stream has a single consumer: one normal per observation.
struct NoiseModel {
  double sigma = 0.0;
  RngStream* stream = nullptr;
};

double observe(const TestFunction& fn, const Eigen::Ref<const Vector>& x,
               NoiseModel& noise);

// n0 uniform points in the native box; rows are points, coordinates consume
// stream draws in (point, dimension) order.
Matrix initial_design(const TestFunction& fn, int n0, RngStream& stream);

// Max over `sample_pairs` random pairs of |f(u) - f(v)| / ||u - v||_1 with
// u, v uniform in the unit cube, floored at 1/dim. Running max, so the
// estimate is non-decreasing in sample_pairs on a fixed stream prefix.
double estimate_lipschitz(const std::function<double(const Vector&)>& f, int dim,
                          int sample_pairs, RngStream& stream);
// Same, on the unit-cube rescaling of `fn`.
double estimate_lipschitz(const TestFunction& fn, int sample_pairs,
                          RngStream& stream);

}  // namespace eiregret
