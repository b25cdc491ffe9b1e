#pragma once

#include <utility>

#include "eiregret/kernels.hpp"
#include "eiregret/rng.hpp"

namespace eiregret {

// Observations in unit-cube coordinates. Invariant: X.rows() == y.size() >= 1.
struct Dataset {
  Matrix X;  // t x d, rows are points
  Vector y;  // t noisy observations

  int count() const { return static_cast<int>(X.rows()); }
  int dim() const { return static_cast<int>(X.cols()); }
  void append(const Eigen::Ref<const Vector>& x, double value);
};

struct PosteriorMoment {
  double mean = 0.0;
  double std = 1.0;
};

// Posterior variance floor; keeps std in [1e-6, 1].
inline constexpr double kVarFloor = 1e-12;

// Zero-mean GP with unit prior variance. Holds the Cholesky factor L of
// K + (noise_var + jitter) I and the weights alpha = (K + s I)^-1 y.
class GpModel {
 public:
  GpModel(Dataset data, KernelSpec kernel, double noise_var);

  PosteriorMoment posterior(const Eigen::Ref<const Vector>& x) const;
  // Rows of Xq are query points; fills means/stds of matching length. The
  // mean of row i is bitwise identical to posterior(Xq.row(i)).mean.
  void posterior_batch(const Eigen::Ref<const Matrix>& Xq, Vector& means,
                       Vector& stds) const;

  double log_marginal_likelihood() const;

  const Dataset& data() const { return data_; }
  const KernelSpec& kernel() const { return kernel_; }
  double noise_var() const { return noise_var_; }
  double jitter() const { return jitter_; }
  const Matrix& chol_factor() const { return chol_l_; }
  const Vector& weights() const { return weights_; }

 private:
  Dataset data_;
  KernelSpec kernel_;
  double noise_var_ = 0.0;
  double jitter_ = 0.0;
  Matrix chol_l_;
  Vector weights_;
};

// Full refit: Cholesky of K + noise_var I, escalating jitter from 1e-10 by
// factors of 10 up to 1e-4 if the factorization reports a numerical issue;
// beyond that throws with the smallest eigenvalue in the message.
GpModel fit(const Dataset& data, const KernelSpec& kernel, double noise_var);

double log_marginal_likelihood(const GpModel& model);

struct LengthscaleGrid {
  double lo = 0.05;
  double hi = 2.0;
  int count = 25;  // log-spaced
};

struct MleFit {
  KernelSpec kernel;
  double log_evidence = 0.0;
  // Set when y is constant; the fit then returns the grid midpoint.
  bool degenerate = false;
};

// Maximizes the log evidence over the log-spaced grid, then refines with one
// golden-section pass inside the bracket around the best grid point. Ties
// resolve to the smaller lengthscale.
MleFit mle_fit_lengthscale(const Dataset& data, KernelFamily family,
                           double noise_var, const LengthscaleGrid& grid);

// Minimum posterior mean over a Halton pool of `budget` points in `domain`
// plus all sampled points. Returns the minimizing point and value; ties
// resolve to the lowest candidate index (pool first, then sampled points).
std::pair<Vector, double> minimize_posterior_mean(const GpModel& model,
                                                  const Box& domain, int budget,
                                                  RngStream& stream);

}  // namespace eiregret
