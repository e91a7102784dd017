#include "qtensor/tcp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "qtensor/newton.hpp"
#include "qtensor/random.hpp"

namespace qtensor {
namespace {

constexpr double kMergeRadius = 1e-6;

std::uint64_t support_mask(const IndexSet& j) {
  std::uint64_t mask = 0;
  for (int i : j.members()) mask |= std::uint64_t{1} << i;
  return mask;
}

// Keeps the representative with the smaller residual; order of first
// discovery is preserved.
void merge_into(std::vector<Solution>& pool, Solution candidate) {
  for (Solution& s : pool) {
    if ((s.x - candidate.x).lpNorm<Eigen::Infinity>() < kMergeRadius) {
      if (candidate.residual < s.residual) s = std::move(candidate);
      return;
    }
  }
  pool.push_back(std::move(candidate));
}

bool coefficients_share_sign(const MonomialForm& p, double sign) {
  for (const auto& [exps, c] : p.terms()) {
    if (c * sign < 0) return false;
  }
  return true;
}

}  // namespace

TcpInstance::TcpInstance(Tensor a, Vector q_in)
    : tensor(std::move(a)), q(std::move(q_in)) {
  if (q.size() != tensor.dim()) {
    throw TensorError("q has length " + std::to_string(q.size()) +
                      " but the tensor dimension is " +
                      std::to_string(tensor.dim()));
  }
}

ResidualReport residual(const TcpInstance& inst, const Vector& x) {
  const Vector w = apply(inst.tensor, x) + inst.q;
  ResidualReport report;
  for (int i = 0; i < x.size(); ++i) {
    const double v = std::abs(std::min(x[i], w[i]));
    if (report.worst_index < 0 || v > report.value) {
      report.value = v;
      report.worst_index = i;
    }
  }
  return report;
}

Solution make_solution(const TcpInstance& inst, Vector x, double support_tol) {
  Solution s;
  s.slack = apply(inst.tensor, x) + inst.q;
  std::vector<int> support;
  for (int i = 0; i < x.size(); ++i) {
    if (x[i] > support_tol) support.push_back(i);
  }
  s.support = IndexSet(std::move(support), inst.dim());
  s.residual = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    s.residual = std::max(s.residual, std::abs(std::min(x[i], s.slack[i])));
  }
  s.x = std::move(x);
  return s;
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kSolved:
      return "SOLVED";
    case SolveStatus::kCertifiedNoSolution:
      return "NO-SOLUTION-CERTIFIED";
    case SolveStatus::kNoSolutionFound:
      return "NO-SOLUTION-FOUND";
  }
  return "?";
}

std::optional<std::string> refute_support(const TcpInstance& inst,
                                          const PolynomialMap& map,
                                          const IndexSet& j,
                                          const SearchBudget& budget) {
  const int n = inst.dim();
  std::ostringstream note;
  note << "support " << j.to_string() << ": ";
  if (j.empty()) {
    for (int i = 0; i < n; ++i) {
      if (inst.q[i] < -budget.feas_tol) {
        note << "x = 0 leaves slack q_" << i + 1 << " < 0";
        return note.str();
      }
    }
    return std::nullopt;
  }
  // On J, (A x^{m-1})_i + q_i = 0 is impossible on the nonnegative orthant
  // when every restricted coefficient has the sign of q_i.
  for (int i : j.members()) {
    const double qi = inst.q[i];
    if (std::abs(qi) <= budget.accept_tol) continue;
    const MonomialForm p = map.component(i).restricted_to(j);
    if (coefficients_share_sign(p, qi > 0 ? 1.0 : -1.0)) {
      note << "equation " << i + 1 << " is " << p.to_string()
           << " = " << -qi << " with no nonnegative root";
      return note.str();
    }
  }
  // Off J, a slack whose coefficients are all nonpositive stays below q_i.
  for (int i = 0; i < n; ++i) {
    if (j.contains(i) || inst.q[i] >= -budget.feas_tol) continue;
    const MonomialForm p = map.component(i).restricted_to(j);
    if (coefficients_share_sign(p, -1.0)) {
      note << "slack " << i + 1 << " is at most q_" << i + 1 << " < 0";
      return note.str();
    }
  }
  return std::nullopt;
}

std::vector<Solution> solve_support(const TcpInstance& inst, const IndexSet& j,
                                    const SearchBudget& budget,
                                    long* newton_iterations) {
  const int n = inst.dim();
  std::vector<Solution> found;

  auto accept = [&](Vector x) {
    for (int i = 0; i < n; ++i) {
      if (x[i] < 0) {
        if (x[i] < -budget.feas_tol) return;
        x[i] = 0.0;
      }
    }
    Solution s = make_solution(inst, std::move(x), budget.support_tol);
    for (int i = 0; i < n; ++i) {
      if (!j.contains(i) && s.slack[i] < -budget.feas_tol) return;
    }
    if (s.residual > budget.accept_tol) return;
    merge_into(found, std::move(s));
  };

  if (j.empty()) {
    accept(Vector::Zero(n));
    return found;
  }

  const PolynomialMap map(inst.tensor);
  const int k = j.size();
  const SystemFunction system = [&](const Vector& xj, Vector& f,
                                    Eigen::MatrixXd& jac) {
    const Vector x = embed(xj, j, n);
    f.resize(k);
    jac.resize(k, k);
    for (int r = 0; r < k; ++r) {
      const MonomialForm& form = map.component(j.members()[r]);
      f[r] = form.evaluate(x) + inst.q[j.members()[r]];
      const Vector g = form.gradient(x);
      for (int c = 0; c < k; ++c) jac(r, c) = g[j.members()[c]];
    }
  };

  NewtonOptions options;
  options.max_iter = budget.newton_max_iter;
  Rng rng(budget.seed, support_mask(j));
  for (int start = 0; start <= budget.multistarts; ++start) {
    Vector x0(k);
    for (int c = 0; c < k; ++c) {
      x0[c] = start == 0 ? 1.0 : rng.log_uniform(1e-2, 1e2);
    }
    const NewtonResult r = damped_newton(system, x0, options);
    if (newton_iterations != nullptr) *newton_iterations += r.iterations;
    if (!r.x.allFinite()) continue;
    accept(embed(r.x, j, n));
  }
  return found;
}

std::vector<IndexSet> supports_in_order(int dim) {
  std::vector<IndexSet> out;
  for (int size = 0; size <= dim; ++size) {
    // Lexicographic combinations of `size` indices out of `dim`.
    std::vector<int> comb(size);
    for (int c = 0; c < size; ++c) comb[c] = c;
    while (true) {
      out.emplace_back(comb, dim);
      int pos = size - 1;
      while (pos >= 0 && comb[pos] == dim - size + pos) --pos;
      if (pos < 0) break;
      ++comb[pos];
      for (int c = pos + 1; c < size; ++c) comb[c] = comb[c - 1] + 1;
    }
  }
  return out;
}

SolveOutcome solve(const TcpInstance& inst, const SearchBudget& budget,
                   bool stop_at_first) {
  budget.validate();
  if (inst.dim() > 20) {
    throw std::invalid_argument(
        "support enumeration is limited to dimension <= 20");
  }
  const auto t0 = std::chrono::steady_clock::now();
  const PolynomialMap map(inst.tensor);
  SolveOutcome outcome;
  std::vector<std::string> proofs;
  bool all_refuted = true;

  for (const IndexSet& j : supports_in_order(inst.dim())) {
    ++outcome.stats.supports_explored;
    if (auto proof = refute_support(inst, map, j, budget)) {
      ++outcome.stats.supports_refuted;
      proofs.push_back(std::move(*proof));
      continue;
    }
    all_refuted = false;
    for (Solution& s :
         solve_support(inst, j, budget, &outcome.stats.newton_iterations)) {
      merge_into(outcome.solutions, std::move(s));
    }
    if (stop_at_first && !outcome.solutions.empty()) break;
  }

  if (!outcome.solutions.empty()) {
    outcome.status = SolveStatus::kSolved;
  } else if (all_refuted) {
    outcome.status = SolveStatus::kCertifiedNoSolution;
    std::ostringstream note;
    note << "every support refuted";
    for (const std::string& p : proofs) note << "; " << p;
    outcome.note = note.str();
  } else {
    outcome.status = SolveStatus::kNoSolutionFound;
    std::ostringstream note;
    note << outcome.stats.supports_explored - outcome.stats.supports_refuted
         << " supports searched without a root, "
         << outcome.stats.supports_refuted << " refuted";
    outcome.note = note.str();
  }
  outcome.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return outcome;
}

Solution solve_diagonal(const Tensor& a, const Vector& q) {
  const int n = a.dim();
  const int m = a.order();
  if (q.size() != n) throw TensorError("q length does not match dimension");
  std::vector<int> index(m, 1);
  for (double c : a.coeffs()) {
    const bool on_diagonal =
        std::all_of(index.begin(), index.end(),
                    [&](int v) { return v == index[0]; });
    if (on_diagonal && !(c > 0)) {
      throw TensorError("diagonal solver needs a positive diagonal");
    }
    if (!on_diagonal && c != 0.0) {
      throw TensorError("diagonal solver got a nonzero off-diagonal entry");
    }
    for (int k = m - 1; k >= 0; --k) {
      if (++index[k] <= n) break;
      index[k] = 1;
    }
  }
  Vector x(n);
  for (int i = 0; i < n; ++i) {
    x[i] = std::pow(std::max(0.0, -q[i]) / a.diagonal(i), 1.0 / (m - 1));
  }
  return make_solution(TcpInstance(a, q), std::move(x), 0.0);
}

int equal_rows_excluded_index(const Vector& q) { return q[1] <= q[0] ? 0 : 1; }

Solution compose_from_equal_rows(const Tensor& a, const Vector& q,
                                 const SearchBudget& budget) {
  const int n = a.dim();
  if (n < 2) throw TensorError("equal-rows composition needs n >= 2");
  if (q.size() != n) throw TensorError("q length does not match dimension");
  const std::size_t row = a.coeffs().size() / n;
  for (std::size_t k = 0; k < row; ++k) {
    if (a.coeffs()[k] != a.coeffs()[row + k]) {
      throw TensorError(
          "equal-rows composition needs a_{1 i2..im} = a_{2 i2..im}");
    }
  }

  const int excluded = equal_rows_excluded_index(q);
  std::vector<int> kept;
  for (int i = 0; i < n; ++i) {
    if (i != excluded) kept.push_back(i);
  }
  const IndexSet keep(kept, n);
  Vector sub_q(keep.size());
  for (int k = 0; k < keep.size(); ++k) sub_q[k] = q[keep.members()[k]];

  const TcpInstance sub(principal_sub_tensor(a, keep), sub_q);
  const SolveOutcome outcome = solve(sub, budget, /*stop_at_first=*/true);
  if (outcome.status != SolveStatus::kSolved) {
    throw SolveFailure(std::string("sub-problem on ") + keep.to_string() +
                       " not solved: " + to_string(outcome.status));
  }
  Vector y = embed(outcome.solutions.front().x, keep, n);
  Solution s = make_solution(TcpInstance(a, q), std::move(y),
                             budget.support_tol);
  if (s.residual > budget.accept_tol) {
    throw SolveFailure("composed point has residual " +
                       std::to_string(s.residual));
  }
  return s;
}

}  // namespace qtensor
