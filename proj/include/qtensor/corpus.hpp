#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qtensor/tensor.hpp"
#include "qtensor/verdict.hpp"

namespace qtensor {

/// Disputed marks a published classification that the checkers contradict;
/// the checker verdict is reported instead of failing.
enum class Expectation { kHolds, kFails, kDisputed };

const char* to_string(Expectation e);

struct ExpectedVerdict {
  TensorClass cls;
  Expectation expected;
  std::string citation;
  /// Stored evidence for Fails and Disputed entries.
  std::optional<Witness> witness;
};

struct KnownSolution {
  Vector q;
  Vector x;
  std::string citation;
};

struct CorpusEntry {
  std::string name;
  Tensor tensor;
  std::vector<ExpectedVerdict> expected;
  std::vector<KnownSolution> known_solutions;
  std::string notes;

  const ExpectedVerdict* expectation(TensorClass cls) const;
};

/// The nine published example tensors. Every known solution is checked
/// against residual <= 1e-8 at construction.
std::vector<CorpusEntry> corpus();

/// Entry by name, e.g. "example-3.2". Throws std::out_of_range.
CorpusEntry corpus_entry(const std::string& name);

/// A x^{m-1} = ((x1 - x2)^{m-1}, (x1 - x2)^{m-1}) in dimension 2. Throws
/// TensorError unless m is odd and >= 3.
Tensor example51_family(int m);

/// Single coefficient a_{1 2...2} = 1, so A x^{m-1} = (x2^{m-1}, 0, ..., 0).
Tensor example33_family(int m, int n);

/// Coefficients uniform in [0, 1]. Exactly `zero_diagonal_count` diagonal
/// entries, chosen at random, are 0; the others are uniform in [0.1, 1].
Tensor random_nonnegative(int m, int n, int zero_diagonal_count,
                          std::uint64_t seed);

/// Nonnegative tensor with a positive diagonal and a_{2 1...1} >= 0.1 whose
/// first row (all a_{1 i2...im}) is then overwritten by the second, so rows 1
/// and 2 agree and every principal sub-tensor has a positive diagonal.
Tensor random_equal_rows(int m, int n, std::uint64_t seed);

/// Writes <dir>/<name>.tensor per entry and <dir>/expected.tsv with columns
/// name, class, expected, citation. Creates `dir` if needed.
void export_corpus(const std::string& dir);

}  // namespace qtensor
