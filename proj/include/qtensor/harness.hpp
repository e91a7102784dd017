#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qtensor/search_budget.hpp"

namespace qtensor {

enum class CaseOutcome { kPass, kFail, kDisputed };

const char* to_string(CaseOutcome outcome);

struct CaseRecord {
  std::string tensor_id;
  std::string check;
  std::string expected;
  std::string got;
  std::string detail;
  CaseOutcome outcome = CaseOutcome::kPass;
  /// Seed that reproduces this case.
  std::uint64_t seed = 0;
};

struct RunReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CaseRecord> cases;
  double wall_seconds = 0.0;

  int count(CaseOutcome outcome) const;
  int passed() const { return count(CaseOutcome::kPass); }
  int failed() const { return count(CaseOutcome::kFail); }
  int disputed() const { return count(CaseOutcome::kDisputed); }
  /// No non-disputed mismatch.
  bool ok() const { return failed() == 0; }

  /// Human-readable report, disputed and failed cases flagged.
  std::string to_text() const;
  /// One key=value line per case plus a summary line. Contains no timing, so
  /// it is identical across runs with the same seed.
  std::string to_records() const;
};

struct NonnegativeSuiteOptions {
  int trials = 500;
  std::vector<int> orders = {3, 4};
  std::vector<int> dims = {2, 3, 4};
  /// Trials alternate between a positive diagonal and a random number (>= 1)
  /// of zero diagonal entries. Set to force a fixed zero count instead.
  int forced_zero_count = -1;
};

/// Random nonnegative tensors: the diagonal test, the R0/R/ER searches and
/// the empirical Q test must agree. Positive diagonal demands CertifiedHolds
/// everywhere; a zero diagonal demands verified witnesses from R0, R and ER
/// both unaided and with e_j offered as a hint.
RunReport run_nonnegative_suite(const NonnegativeSuiteOptions& options,
                                const SearchBudget& budget);

/// Strong P0 corpus tensors: R0, R, ER and Q verdicts must be jointly
/// falsified or jointly unfalsified. Q-without-R0 patterns outside the class
/// are recorded.
RunReport run_sp0_consistency_suite(const SearchBudget& budget);

/// Tensor counterexamples to three matrix facts: a single-component
/// solution of TCP(0, A) for a semi-positive Q tensor, a positive root of
/// A x^{m-1} = 0 for a semi-positive Q family, and copositive Q tensors that
/// are not R0.
RunReport run_counterexample_suite(const SearchBudget& budget);

/// Every corpus expectation against the checkers, stored witnesses replayed,
/// known solutions replayed and rediscovered by solve within 1e-6.
RunReport run_corpus_suite(const SearchBudget& budget);

/// Principal sub-tensors of strong P0 corpus tensors stay unfalsified;
/// for falsified tensors, sub-tensor falsifications are recorded.
RunReport run_subtensor_suite(const SearchBudget& budget);

}  // namespace qtensor
