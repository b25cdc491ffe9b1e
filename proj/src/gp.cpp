#include "eiregret/gp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace eiregret {

void Dataset::append(const Eigen::Ref<const Vector>& x, double value) {
  if (X.rows() > 0 && x.size() != X.cols())
    throw std::invalid_argument("Dataset::append: dimension mismatch");
  if (!x.allFinite() || !std::isfinite(value))
    throw std::invalid_argument("Dataset::append: non-finite input");
  X.conservativeResize(X.rows() + 1, x.size());
  X.row(X.rows() - 1) = x.transpose();
  y.conservativeResize(y.size() + 1);
  y[y.size() - 1] = value;
}

namespace {

void validate_dataset(const Dataset& data) {
  if (data.X.rows() < 1 || data.X.cols() < 1)
    throw std::invalid_argument("gp: dataset must hold at least one point");
  if (data.X.rows() != data.y.size())
    throw std::invalid_argument("gp: X rows and y length differ");
  if (!data.X.allFinite() || !data.y.allFinite())
    throw std::invalid_argument("gp: non-finite dataset");
}

}  // namespace

GpModel::GpModel(Dataset data, KernelSpec kernel, double noise_var)
    : data_(std::move(data)), kernel_(kernel), noise_var_(noise_var) {
  validate_dataset(data_);
  if (!std::isfinite(noise_var_) || noise_var_ < 0.0)
    throw std::invalid_argument("gp: noise variance must be finite and >= 0");

  const Matrix K = gram_matrix(kernel_, data_.X);
  const Eigen::Index t = K.rows();
  Matrix A = K;
  A.diagonal().array() += noise_var_;

  Eigen::LLT<Matrix> llt(A);
  double jitter = 0.0;
  while (llt.info() != Eigen::Success && jitter < 1e-4) {
    jitter = (jitter == 0.0) ? 1e-10 : jitter * 10.0;
    Matrix Aj = A;
    Aj.diagonal().array() += jitter;
    llt.compute(Aj);
  }
  if (llt.info() != Eigen::Success) {
    const double min_eig =
        Eigen::SelfAdjointEigenSolver<Matrix>(A).eigenvalues().minCoeff();
    std::ostringstream msg;
    msg << "gp: Cholesky failed for t=" << t
        << " even with jitter 1e-4; smallest eigenvalue " << min_eig;
    throw std::runtime_error(msg.str());
  }
  jitter_ = jitter;
  chol_l_ = llt.matrixL();
  weights_ = llt.solve(data_.y);
}

PosteriorMoment GpModel::posterior(const Eigen::Ref<const Vector>& x) const {
  const Vector k = cross_covariance(kernel_, data_.X, x);
  PosteriorMoment m;
  m.mean = k.dot(weights_);
  const Vector v =
      chol_l_.triangularView<Eigen::Lower>().solve(k);
  const double var = std::max(1.0 - v.squaredNorm(), kVarFloor);
  m.std = std::sqrt(var);
  return m;
}

void GpModel::posterior_batch(const Eigen::Ref<const Matrix>& Xq, Vector& means,
                              Vector& stds) const {
  const Eigen::Index m = Xq.rows();
  const Eigen::Index t = data_.X.rows();
  Matrix Kt(t, m);  // column j holds k(X, Xq.row(j))
  for (Eigen::Index j = 0; j < m; ++j)
    Kt.col(j) = cross_covariance(kernel_, data_.X, Xq.row(j).transpose());
  means.resize(m);
  for (Eigen::Index j = 0; j < m; ++j) means[j] = Kt.col(j).dot(weights_);
  chol_l_.triangularView<Eigen::Lower>().solveInPlace(Kt);
  stds.resize(m);
  for (Eigen::Index j = 0; j < m; ++j)
    stds[j] = std::sqrt(std::max(1.0 - Kt.col(j).squaredNorm(), kVarFloor));
}

double GpModel::log_marginal_likelihood() const {
  const Eigen::Index t = data_.y.size();
  const double quad = data_.y.dot(weights_);
  const double log_det = chol_l_.diagonal().array().log().sum();
  return -0.5 * quad - log_det -
         0.5 * static_cast<double>(t) * std::log(2.0 * std::numbers::pi);
}

GpModel fit(const Dataset& data, const KernelSpec& kernel, double noise_var) {
  return GpModel(data, kernel, noise_var);
}

double log_marginal_likelihood(const GpModel& model) {
  return model.log_marginal_likelihood();
}

MleFit mle_fit_lengthscale(const Dataset& data, KernelFamily family,
                           double noise_var, const LengthscaleGrid& grid) {
  validate_dataset(data);
  if (grid.count < 1 || grid.lo <= 0.0 || grid.hi < grid.lo ||
      (grid.count >= 2 && grid.hi == grid.lo))
    throw std::invalid_argument("mle: grid must satisfy 0 < lo <= hi, count >= 1");

  const double log_lo = std::log(grid.lo);
  const double log_hi = std::log(grid.hi);
  auto grid_point = [&](int i) {
    if (grid.count == 1) return grid.lo;
    return std::exp(log_lo + (log_hi - log_lo) * i / (grid.count - 1));
  };

  if (data.y.maxCoeff() == data.y.minCoeff()) {
    // Constant observations leave the evidence flat in practice; report the
    // grid midpoint rather than an arbitrary endpoint.
    MleFit out;
    out.kernel = make_kernel_spec(family, grid_point((grid.count - 1) / 2));
    out.log_evidence =
        fit(data, out.kernel, noise_var).log_marginal_likelihood();
    out.degenerate = true;
    return out;
  }

  auto evidence = [&](double lengthscale) {
    try {
      return fit(data, make_kernel_spec(family, lengthscale), noise_var)
          .log_marginal_likelihood();
    } catch (const std::runtime_error&) {
      return -std::numeric_limits<double>::infinity();
    }
  };

  double best_l = grid_point(0);
  double best_e = evidence(best_l);
  int best_i = 0;
  for (int i = 1; i < grid.count; ++i) {
    const double l = grid_point(i);
    const double e = evidence(l);
    if (e > best_e) {  // ties keep the earlier, smaller lengthscale
      best_e = e;
      best_l = l;
      best_i = i;
    }
  }

  // One golden-section pass on log-lengthscale inside the bracket around the
  // best grid point.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::log(grid_point(std::max(0, best_i - 1)));
  double b = std::log(grid_point(std::min(grid.count - 1, best_i + 1)));
  if (b <= a) {  // single-candidate grid: nothing to refine
    MleFit out;
    out.kernel = make_kernel_spec(family, best_l);
    out.log_evidence = best_e;
    return out;
  }
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double e1 = evidence(std::exp(x1));
  double e2 = evidence(std::exp(x2));
  for (int iter = 0; iter < 20; ++iter) {
    if (e1 >= e2) {  // keep the lower-lengthscale side on ties
      b = x2;
      x2 = x1;
      e2 = e1;
      x1 = b - inv_phi * (b - a);
      e1 = evidence(std::exp(x1));
    } else {
      a = x1;
      x1 = x2;
      e1 = e2;
      x2 = a + inv_phi * (b - a);
      e2 = evidence(std::exp(x2));
    }
  }
  const double refined_l = std::exp(e1 >= e2 ? x1 : x2);
  const double refined_e = std::max(e1, e2);
  if (refined_e > best_e || (refined_e == best_e && refined_l < best_l)) {
    best_e = refined_e;
    best_l = refined_l;
  }

  MleFit out;
  out.kernel = make_kernel_spec(family, best_l);
  out.log_evidence = best_e;
  return out;
}

std::pair<Vector, double> minimize_posterior_mean(const GpModel& model,
                                                  const Box& domain, int budget,
                                                  RngStream& stream) {
  if (budget < 0)
    throw std::invalid_argument("minimize_posterior_mean: negative budget");
  if (domain.dim() != model.data().dim())
    throw std::invalid_argument("minimize_posterior_mean: domain dim mismatch");
  const Matrix pool = halton_pool(domain, budget, stream);
  const Eigen::Index t = model.data().X.rows();
  Matrix candidates(pool.rows() + t, domain.dim());
  candidates.topRows(pool.rows()) = pool;
  candidates.bottomRows(t) = model.data().X;

  Vector means, stds;
  model.posterior_batch(candidates, means, stds);
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < means.size(); ++i)
    if (means[i] < means[best]) best = i;
  return {candidates.row(best).transpose(), means[best]};
}

}  // namespace eiregret
