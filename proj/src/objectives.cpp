#include "eiregret/objectives.hpp"

#include <cmath>
#include <numbers>

namespace eiregret {

namespace {

constexpr double kPi = std::numbers::pi;

double branin2(const Vector& x) {
  const double x1 = x[0], x2 = x[1];
  const double u = x2 - 5.1 / (4.0 * kPi * kPi) * x1 * x1 + 5.0 / kPi * x1 - 6.0;
  return (u * u + 10.0 * (1.0 - 1.0 / (8.0 * kPi)) * std::cos(x1) - 44.81) /
         51.95;
}

double styblinski2(const Vector& x) {
  double s = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double v = x[i];
    s += v * v * v * v - 16.0 * v * v + 5.0 * v;
  }
  return (0.5 * s + 8.72) / 45.17;
}

double camel2(const Vector& x) {
  const double x1 = x[0], x2 = x[1];
  const double raw = (4.0 - 2.1 * x1 * x1 + x1 * x1 * x1 * x1 / 3.0) * x1 * x1 +
                     x1 * x2 + (-4.0 + 4.0 * x2 * x2) * x2 * x2;
  return (raw - 20.12) / 26.28;
}

double schwefel2(const Vector& x) {
  double s = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double w = 500.0 * x[i];
    s += w * std::sin(std::sqrt(std::abs(w)));
  }
  return (418.9829 * 2.0 - s - 838.57) / 274.3;
}

double rosenbrock4(const Vector& x) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double gap = x[i + 1] - x[i] * x[i];
    s += 100.0 * gap * gap + (x[i] - 1.0) * (x[i] - 1.0);
  }
  return (s - 383434.0) / 372997.0;
}

constexpr double kHartmannA[4][6] = {
    {10.0, 3.0, 17.0, 3.5, 1.7, 8.0},
    {0.05, 10.0, 17.0, 0.1, 8.0, 14.0},
    {3.0, 3.5, 1.7, 10.0, 17.0, 8.0},
    {17.0, 8.0, 0.05, 10.0, 0.1, 14.0},
};
constexpr double kHartmannP[4][6] = {
    {0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
    {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
    {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
    {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381},
};
constexpr double kHartmannAlpha[4] = {1.0, 1.2, 3.0, 3.2};

double hartmann6(const Vector& x) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i) {
    double inner = 0.0;
    for (int j = 0; j < 6; ++j) {
      const double diff = x[j] - kHartmannP[i][j];
      inner += kHartmannA[i][j] * diff * diff;
    }
    s += kHartmannAlpha[i] * std::exp(-inner);
  }
  return (-s + 0.26) / 0.38;
}

struct FunctionDef {
  FunctionId id;
  const char* name;
  int dim;
  double (*eval)(const Vector&);
  std::vector<Vector> lo_hi;   // two rows: box lo, box hi
  std::vector<Vector> optima;
};

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double c : v) out[i++] = c;
  return out;
}

FunctionDef build_def(FunctionId id) {
  switch (id) {
    case FunctionId::Branin2:
      return {id,
              "branin2",
              2,
              branin2,
              {vec({-5.0, 0.0}), vec({10.0, 15.0})},
              {vec({-kPi, 12.275}), vec({kPi, 2.275}), vec({9.42478, 2.475})}};
    case FunctionId::Styblinski2:
      return {id,
              "styblinski2",
              2,
              styblinski2,
              {vec({-5.0, -5.0}), vec({5.0, 5.0})},
              {vec({-2.9034, -2.9035})}};
    case FunctionId::Camel2:
      return {id,
              "camel2",
              2,
              camel2,
              {vec({-3.0, -2.0}), vec({3.0, 2.0})},
              {vec({0.0898, -0.7126}), vec({-0.0898, 0.7126})}};
    case FunctionId::Schwefel2:
      return {id,
              "schwefel2",
              2,
              schwefel2,
              {vec({-1.0, -1.0}), vec({1.0, 1.0})},
              {vec({0.8419, 0.8419})}};
    case FunctionId::Rosenbrock4:
      return {id,
              "rosenbrock4",
              4,
              rosenbrock4,
              {vec({-5.0, -5.0, -5.0, -5.0}), vec({10.0, 10.0, 10.0, 10.0})},
              {vec({1.0, 1.0, 1.0, 1.0})}};
    case FunctionId::Hartmann6:
      return {id,
              "hartmann6",
              6,
              hartmann6,
              {Vector::Zero(6), Vector::Ones(6)},
              {vec({0.20169, 0.150011, 0.476874, 0.275332, 0.311652, 0.6573})}};
  }
  throw std::logic_error("unreachable function id");
}

const FunctionDef& def_for(FunctionId id) {
  static const std::vector<FunctionDef> defs = [] {
    std::vector<FunctionDef> out;
    for (FunctionId fid :
         {FunctionId::Branin2, FunctionId::Styblinski2, FunctionId::Camel2,
          FunctionId::Schwefel2, FunctionId::Rosenbrock4, FunctionId::Hartmann6})
      out.push_back(build_def(fid));
    return out;
  }();
  return defs[static_cast<std::size_t>(id)];
}

// Probe count and seed for the stored Lipschitz estimate; fixed so that
// make_test_function is deterministic.
constexpr int kLipschitzPairs = 2048;
constexpr std::uint64_t kLipschitzSeed = 0x5eed5eed5eed5eedULL;

}  // namespace

FunctionId parse_function_id(const std::string& name) {
  for (FunctionId id :
       {FunctionId::Branin2, FunctionId::Styblinski2, FunctionId::Camel2,
        FunctionId::Schwefel2, FunctionId::Rosenbrock4, FunctionId::Hartmann6})
    if (name == def_for(id).name) return id;
  throw std::invalid_argument("unknown objective: " + name);
}

std::string to_string(FunctionId id) { return def_for(id).name; }

TestFunction make_test_function(FunctionId id) {
  const FunctionDef& def = def_for(id);
  TestFunction fn;
  fn.id = id;
  fn.name = def.name;
  fn.dim = def.dim;
  fn.box = Box{def.lo_hi[0], def.lo_hi[1]};
  fn.optima = def.optima;
  fn.optima_values.resize(static_cast<Eigen::Index>(def.optima.size()));
  for (std::size_t i = 0; i < def.optima.size(); ++i)
    fn.optima_values[static_cast<Eigen::Index>(i)] = def.eval(def.optima[i]);
  fn.f_star = fn.optima_values.minCoeff();
  RngStream stream(kLipschitzSeed ^ static_cast<std::uint64_t>(id));
  fn.lipschitz = estimate_lipschitz(fn, kLipschitzPairs, stream);
  return fn;
}

double eval_objective(const TestFunction& fn, const Eigen::Ref<const Vector>& x) {
  if (x.size() != fn.dim)
    throw std::invalid_argument("eval_objective: dimension mismatch");
  if (!x.allFinite())
    throw std::invalid_argument("eval_objective: non-finite input");
  if (!fn.box.contains(x, 1e-9))
    throw std::invalid_argument("eval_objective: point outside " + fn.name +
                                " box");
  const Vector clamped = fn.box.clamp(x);
  return def_for(fn.id).eval(clamped);
}

double observe(const TestFunction& fn, const Eigen::Ref<const Vector>& x,
               NoiseModel& noise) {
  if (noise.stream == nullptr)
    throw std::invalid_argument("observe: noise model has no stream");
  if (!std::isfinite(noise.sigma) || noise.sigma < 0.0)
    throw std::invalid_argument("observe: sigma must be finite and >= 0");
  return eval_objective(fn, x) + noise.sigma * noise.stream->normal();
}

Matrix initial_design(const TestFunction& fn, int n0, RngStream& stream) {
  if (n0 < 1) throw std::invalid_argument("initial_design: n0 must be >= 1");
  Matrix X(n0, fn.dim);
  for (int i = 0; i < n0; ++i)
    X.row(i) = stream.uniform_point(fn.box).transpose();
  return X;
}

double estimate_lipschitz(const std::function<double(const Vector&)>& f, int dim,
                          int sample_pairs, RngStream& stream) {
  if (dim < 1) throw std::invalid_argument("estimate_lipschitz: dim >= 1");
  if (sample_pairs < 0)
    throw std::invalid_argument("estimate_lipschitz: negative sample count");
  const Box unit = Box::unit(dim);
  double estimate = 1.0 / dim;  // floor: box scale 1 on the unit cube
  for (int i = 0; i < sample_pairs; ++i) {
    const Vector u = stream.uniform_point(unit);
    const Vector v = stream.uniform_point(unit);
    const double dist = (u - v).lpNorm<1>();
    if (dist == 0.0) continue;
    estimate = std::max(estimate, std::abs(f(u) - f(v)) / dist);
  }
  return estimate;
}

double estimate_lipschitz(const TestFunction& fn, int sample_pairs,
                          RngStream& stream) {
  const auto unit_eval = [&fn](const Vector& u) {
    return eval_objective(fn, fn.box.from_unit(u));
  };
  return estimate_lipschitz(unit_eval, fn.dim, sample_pairs, stream);
}

}  // namespace eiregret
