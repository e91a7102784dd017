#pragma once

#include <optional>
#include <vector>

#include "qtensor/search_budget.hpp"
#include "qtensor/tensor.hpp"
#include "qtensor/verdict.hpp"

namespace qtensor {

// Class membership checks.
//
// The universally quantified classes cannot be decided numerically, so every
// check is a semi-decision: CertifiedHolds only through an exact coefficient
// argument, Falsified only with a witness that passes verify_witness, and
// Unfalsified otherwise. Searches are seeded from the budget and
// deterministic. Hints are candidate witnesses tried before any search.

/// Exact scan; the witness names a negative coefficient.
Verdict is_nonnegative(const Tensor& a);

bool has_positive_diagonal(const Tensor& a);

/// For nonnegative tensors Q membership is equivalent to a positive
/// diagonal. Throws std::invalid_argument for tensors with a negative
/// coefficient.
Verdict check_q_nonnegative(const Tensor& a);

Verdict check_r0(const Tensor& a, const SearchBudget& budget,
                 const std::vector<Witness>& hints = {});
Verdict check_r(const Tensor& a, const SearchBudget& budget,
                const std::vector<Witness>& hints = {});
Verdict check_er(const Tensor& a, const SearchBudget& budget,
                 const std::vector<Witness>& hints = {});
Verdict check_semipositive(const Tensor& a, const SearchBudget& budget,
                           const std::vector<Witness>& hints = {});
Verdict check_p0(const Tensor& a, const SearchBudget& budget,
                 const std::vector<Witness>& hints = {});
/// Even orders reduce to check_p0.
Verdict check_p0_prime(const Tensor& a, const SearchBudget& budget,
                       const std::vector<Witness>& hints = {});
/// Never certifies.
Verdict check_sp0(const Tensor& a, const SearchBudget& budget,
                  const std::vector<Witness>& hints = {});
Verdict check_copositive(const Tensor& a, const SearchBudget& budget,
                         const std::vector<Witness>& hints = {});
/// Nonnegative tensors use check_q_nonnegative. Otherwise TCP(q, A) is
/// solved over a sign/magnitude grid of q plus `budget.samples` random q.
/// Falsified only when the solver certifies some q unsolvable.
Verdict check_q_empirical(const Tensor& a, const SearchBudget& budget,
                          const std::vector<Witness>& hints = {});

/// Odd-order necessary condition for the strong P0 class, decided on
/// coefficients: each component must vanish identically or not involve its
/// own variable. Throws std::invalid_argument for even order.
Verdict sp0_odd_necessary(const Tensor& a);

/// Dispatch by class.
Verdict check_class(TensorClass cls, const Tensor& a,
                    const SearchBudget& budget,
                    const std::vector<Witness>& hints = {});

/// Independently replays a witness against the defining condition of `cls`
/// using apply/apply_scalar. Returns the violation magnitude when it exceeds
/// budget.falsify_tol, nullopt when the witness does not refute membership.
///
/// Violation magnitudes: the negated maximum active product (P0, P0prime,
/// SP0, semipositive), -A x^m (copositive), the smallest support coordinate
/// of the simplex-normalized point (R0, R, ER), -a (nonnegative), and the
/// largest |q_i| for certified-unsolvable q (Q).
std::optional<double> verify_witness(const Tensor& a, TensorClass cls,
                                     const Witness& w,
                                     const SearchBudget& budget);

}  // namespace qtensor
