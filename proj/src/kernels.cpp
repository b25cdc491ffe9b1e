#include "eiregret/kernels.hpp"

#include <cmath>

namespace eiregret {

KernelFamily parse_kernel_family(const std::string& name) {
  if (name == "se") return KernelFamily::SquaredExponential;
  if (name == "matern32") return KernelFamily::Matern32;
  if (name == "matern52") return KernelFamily::Matern52;
  throw std::invalid_argument("unknown kernel family: " + name);
}

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::SquaredExponential: return "se";
    case KernelFamily::Matern32: return "matern32";
    case KernelFamily::Matern52: return "matern52";
  }
  throw std::logic_error("unreachable kernel family");
}

KernelSpec make_kernel_spec(KernelFamily family, double lengthscale) {
  if (!std::isfinite(lengthscale) || lengthscale <= 0.0)
    throw std::invalid_argument("kernel lengthscale must be finite and > 0");
  return KernelSpec{family, lengthscale};
}

double kernel_profile(const KernelSpec& spec, double r) {
  if (!std::isfinite(r) || r < 0.0)
    throw std::invalid_argument("kernel distance must be finite and >= 0");
  const double s = r / spec.lengthscale;
  switch (spec.family) {
    case KernelFamily::SquaredExponential:
      return std::exp(-0.5 * s * s);
    case KernelFamily::Matern32: {
      const double q = std::sqrt(3.0) * s;
      return (1.0 + q) * std::exp(-q);
    }
    case KernelFamily::Matern52: {
      const double q = std::sqrt(5.0) * s;
      return (1.0 + q + q * q / 3.0) * std::exp(-q);
    }
  }
  throw std::logic_error("unreachable kernel family");
}

namespace {

void check_finite(const Eigen::Ref<const Matrix>& X, const char* what) {
  if (!X.allFinite())
    throw std::invalid_argument(std::string(what) + ": non-finite input");
}

}  // namespace

double eval_kernel(const KernelSpec& spec, const Eigen::Ref<const Vector>& a,
                   const Eigen::Ref<const Vector>& b) {
  if (a.size() != b.size() || a.size() == 0)
    throw std::invalid_argument("eval_kernel: mismatched or empty inputs");
  check_finite(a, "eval_kernel");
  check_finite(b, "eval_kernel");
  return kernel_profile(spec, (a - b).norm());
}

Matrix gram_matrix(const KernelSpec& spec, const Eigen::Ref<const Matrix>& X) {
  if (X.rows() == 0 || X.cols() == 0)
    throw std::invalid_argument("gram_matrix: empty input");
  check_finite(X, "gram_matrix");
  const Eigen::Index t = X.rows();
  Matrix K(t, t);
  for (Eigen::Index i = 0; i < t; ++i) {
    K(i, i) = 1.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double k = kernel_profile(spec, (X.row(i) - X.row(j)).norm());
      K(i, j) = k;
      K(j, i) = k;
    }
  }
  return K;
}

Vector cross_covariance(const KernelSpec& spec, const Eigen::Ref<const Matrix>& X,
                        const Eigen::Ref<const Vector>& q) {
  if (X.cols() != q.size() || X.cols() == 0)
    throw std::invalid_argument("cross_covariance: mismatched dimensions");
  check_finite(X, "cross_covariance");
  check_finite(q, "cross_covariance");
  Vector k(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    k[i] = kernel_profile(spec, (X.row(i).transpose() - q).norm());
  return k;
}

}  // namespace eiregret
