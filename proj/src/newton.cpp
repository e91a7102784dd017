#include "qtensor/newton.hpp"

#include <cmath>

#include <Eigen/QR>

namespace qtensor {

NewtonResult damped_newton(const SystemFunction& system, Eigen::VectorXd x0,
                           const NewtonOptions& options) {
  NewtonResult result;
  result.x = std::move(x0);
  Eigen::VectorXd f;
  Eigen::MatrixXd jac;
  system(result.x, f, jac);
  double merit = f.squaredNorm();
  result.residual_norm = f.lpNorm<Eigen::Infinity>();

  Eigen::VectorXd f_trial;
  Eigen::MatrixXd jac_trial;
  for (int iter = 0; iter < options.max_iter; ++iter) {
    if (!std::isfinite(merit)) break;
    if (result.residual_norm < options.residual_tol) {
      result.converged = true;
      break;
    }
    result.iterations = iter + 1;
    const Eigen::VectorXd step =
        jac.completeOrthogonalDecomposition().solve(-f);
    if (!step.allFinite()) break;

    double damping = 1.0;
    bool accepted = false;
    Eigen::VectorXd trial;
    while (damping >= options.min_damping) {
      trial = result.x + damping * step;
      system(trial, f_trial, jac_trial);
      const double trial_merit = f_trial.squaredNorm();
      if (std::isfinite(trial_merit) && trial_merit < merit) {
        accepted = true;
        break;
      }
      damping *= 0.5;
    }
    if (!accepted) break;

    const double moved = (damping * step).lpNorm<Eigen::Infinity>();
    result.x = trial;
    f.swap(f_trial);
    jac.swap(jac_trial);
    merit = f.squaredNorm();
    result.residual_norm = f.lpNorm<Eigen::Infinity>();
    if (moved < options.step_tol || result.residual_norm < options.residual_tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace qtensor
