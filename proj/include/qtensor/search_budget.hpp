#pragma once

#include <cstdint>
#include <stdexcept>

namespace qtensor {

/// Seeds, counts and tolerances for every randomized search in the library.
/// Runs are reproducible given the same budget.
struct SearchBudget {
  std::uint64_t seed = 42;
  /// Newton starts per support in the solver, and local refinements per
  /// region in the class searches.
  int multistarts = 8;
  int newton_max_iter = 100;
  /// Random samples per search region (checkers) and random q vectors
  /// (empirical Q test).
  int samples = 64;

  double feas_tol = 1e-9;
  double accept_tol = 1e-8;
  double support_tol = 1e-7;
  double falsify_tol = 1e-7;
  /// Threshold for "x_i != y_i" in pair searches.
  double pair_tol = 1e-9;

  /// Throws std::invalid_argument unless counts are >= 1 and tolerances > 0.
  void validate() const {
    if (multistarts < 1 || newton_max_iter < 1 || samples < 1) {
      throw std::invalid_argument("search budget counts must be >= 1");
    }
    if (!(feas_tol > 0 && accept_tol > 0 && support_tol > 0 &&
          falsify_tol > 0 && pair_tol > 0)) {
      throw std::invalid_argument("search budget tolerances must be > 0");
    }
  }
};

}  // namespace qtensor
