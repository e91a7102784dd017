#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtensor/search_budget.hpp"
#include "qtensor/tensor.hpp"

namespace qtensor {

/// TCP(q, A): find x >= 0 with w = A x^{m-1} + q >= 0 and x^T w = 0.
struct TcpInstance {
  Tensor tensor;
  Vector q;

  TcpInstance(Tensor a, Vector q_in);
  int dim() const { return tensor.dim(); }
};

/// Raised when a sub-problem required by a construction has no solution
/// under the given budget.
class SolveFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ResidualReport {
  double value = 0.0;  // || min(x, A x^{m-1} + q) ||_inf
  int worst_index = -1;
};

ResidualReport residual(const TcpInstance& inst, const Vector& x);

struct Solution {
  Vector x;
  IndexSet support;  // {i : x_i > support_tol}
  Vector slack;      // A x^{m-1} + q
  double residual = 0.0;
};

/// Measures slack, support and residual for a candidate point as given.
Solution make_solution(const TcpInstance& inst, Vector x, double support_tol);

enum class SolveStatus { kSolved, kCertifiedNoSolution, kNoSolutionFound };

const char* to_string(SolveStatus status);

struct SolveStats {
  int supports_explored = 0;
  int supports_refuted = 0;
  long newton_iterations = 0;
  double wall_seconds = 0.0;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::kNoSolutionFound;
  std::vector<Solution> solutions;  // nonempty iff status == kSolved
  std::string note;                 // proof note or effort summary
  SolveStats stats;
};

/// Exact refutation of the support-J subsystem by coefficient signs. Returns
/// a proof note when no solution with positive part J can exist, with a
/// margin larger than the budget's tolerances; nullopt otherwise.
std::optional<std::string> refute_support(const TcpInstance& inst,
                                          const PolynomialMap& map,
                                          const IndexSet& j,
                                          const SearchBudget& budget);

/// Roots of (A x^{m-1} + q)_J = 0 with x zero off J, found by multistart
/// damped Newton and filtered for feasibility. Near-duplicates are merged.
/// `newton_iterations`, when given, accumulates the iteration count.
std::vector<Solution> solve_support(const TcpInstance& inst, const IndexSet& j,
                                    const SearchBudget& budget,
                                    long* newton_iterations = nullptr);

/// All supports in ascending cardinality, lexicographic within a size.
std::vector<IndexSet> supports_in_order(int dim);

/// Enumerates every support. With `stop_at_first` the enumeration ends at
/// the first solution. Throws std::invalid_argument for dim > 20.
SolveOutcome solve(const TcpInstance& inst, const SearchBudget& budget,
                   bool stop_at_first = false);

/// Closed form for diagonal tensors with positive diagonal d:
/// x_i = (max(0, -q_i) / d_i)^{1/(m-1)}. Throws TensorError otherwise.
Solution solve_diagonal(const Tensor& a, const Vector& q);

/// Builds a solution of TCP(q, A) for a tensor whose first two rows agree
/// (a_{1 i2..im} = a_{2 i2..im}). When q_2 <= q_1 the sub-problem on indices
/// {2..n} is solved and y = (0, y_hat); otherwise the sub-problem on
/// {1, 3..n} is solved and 0 is placed in slot 2. Throws TensorError when the
/// rows differ and SolveFailure when the sub-problem is not solved.
Solution compose_from_equal_rows(const Tensor& a, const Vector& q,
                                 const SearchBudget& budget);

/// Index (0-based) that compose_from_equal_rows pins to zero for this q.
int equal_rows_excluded_index(const Vector& q);

}  // namespace qtensor
