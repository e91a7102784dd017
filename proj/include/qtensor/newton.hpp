#pragma once

#include <functional>

#include <Eigen/Core>

namespace qtensor {

/// Residual and Jacobian of a (possibly non-square) system at x.
using SystemFunction = std::function<void(
    const Eigen::VectorXd& x, Eigen::VectorXd& f, Eigen::MatrixXd& jac)>;

struct NewtonOptions {
  int max_iter = 100;
  double step_tol = 1e-12;
  double residual_tol = 1e-12;
  /// Line search gives up below this step fraction.
  double min_damping = 0x1.0p-30;
};

struct NewtonResult {
  Eigen::VectorXd x;
  double residual_norm = 0.0;  // infinity norm of f(x)
  int iterations = 0;
  bool converged = false;
};

/// Damped Newton with a halving line search on ||f||^2. The step is the
/// minimum-norm least-squares solution of J d = -f, so singular and
/// overdetermined systems take Gauss-Newton steps.
NewtonResult damped_newton(const SystemFunction& system, Eigen::VectorXd x0,
                           const NewtonOptions& options = {});

}  // namespace qtensor
