#pragma once

#include <string>

#include "eiregret/types.hpp"

namespace eiregret {

enum class KernelFamily { SquaredExponential, Matern32, Matern52 };

// Accepts "se", "matern32", "matern52".
KernelFamily parse_kernel_family(const std::string& name);
std::string to_string(KernelFamily family);

// Isotropic stationary kernel with unit signal variance: k(x, x) = 1 and
// 0 < k <= 1 everywhere. The lengthscale is interpreted on unit-cube inputs;
// callers rescale their domain before fitting.
struct KernelSpec {
  KernelFamily family = KernelFamily::Matern32;
  double lengthscale = 0.5;
};

// Validates lengthscale > 0 and finite.
KernelSpec make_kernel_spec(KernelFamily family, double lengthscale);

double eval_kernel(const KernelSpec& spec, const Eigen::Ref<const Vector>& a,
                   const Eigen::Ref<const Vector>& b);

// Kernel profile as a function of Euclidean distance r >= 0.
double kernel_profile(const KernelSpec& spec, double r);

// Gram matrix of the rows of X: symmetric, unit diagonal.
Matrix gram_matrix(const KernelSpec& spec, const Eigen::Ref<const Matrix>& X);

// k(X_i, q) for every row i of X.
Vector cross_covariance(const KernelSpec& spec, const Eigen::Ref<const Matrix>& X,
                        const Eigen::Ref<const Vector>& q);

}  // namespace eiregret
