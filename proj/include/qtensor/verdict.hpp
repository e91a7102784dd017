#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qtensor/tensor.hpp"

namespace qtensor {

enum class TensorClass {
  kNonnegative,
  kQ,
  kR0,
  kR,
  kER,
  kP0,
  kP0Prime,
  kSP0,
  kSemiPositive,
  kCopositive,
};

inline constexpr TensorClass kAllClasses[] = {
    TensorClass::kNonnegative, TensorClass::kQ,     TensorClass::kR0,
    TensorClass::kR,           TensorClass::kER,    TensorClass::kP0,
    TensorClass::kP0Prime,     TensorClass::kSP0,   TensorClass::kSemiPositive,
    TensorClass::kCopositive,
};

/// Canonical names: nonnegative Q R0 R ER P0 P0prime SP0 semipositive
/// copositive.
const char* class_name(TensorClass cls);
/// Accepts the canonical names case-sensitively plus the aliases P0' and
/// semi-positive.
std::optional<TensorClass> parse_class(std::string_view name);

enum class VerdictStatus { kCertifiedHolds, kFalsified, kUnfalsified };

/// CERTIFIED, FALSIFIED or UNFALSIFIED.
const char* to_string(VerdictStatus status);

enum class WitnessKind { kPoint, kPair, kPointScalar, kIndex, kQVector };

const char* to_string(WitnessKind kind);

/// Evidence against class membership. Which fields are meaningful depends on
/// `kind`:
///   kPoint        x
///   kPair         x, y
///   kPointScalar  x, t (t >= 0)
///   kIndex        index (0-based); `coefficient` holds a 1-based tuple for
///                 coefficient-level witnesses, and `x` may carry a point
///                 that demonstrates the failure
///   kQVector      q
struct Witness {
  WitnessKind kind = WitnessKind::kPoint;
  Vector x;
  Vector y;
  double t = 0.0;
  int index = -1;
  std::vector<int> coefficient;
  Vector q;
  double violation = 0.0;

  static Witness point(Vector x);
  static Witness pair(Vector x, Vector y);
  static Witness point_scalar(Vector x, double t);
  static Witness index_of(int i);
  static Witness q_vector(Vector q);

  /// Compact rendering, e.g. "x=(1,0)" or "x=(1,1) y=(1,-2)".
  std::string summary() const;
};

struct Effort {
  long samples = 0;   // objective evaluations / q vectors tried
  long searches = 0;  // local refinements or solver runs
  std::uint64_t seed = 0;
  /// Solver runs that ended in NoSolutionFound (empirical Q test only).
  int inconclusive = 0;
  std::string note;
};

struct Verdict {
  TensorClass cls = TensorClass::kNonnegative;
  VerdictStatus status = VerdictStatus::kUnfalsified;
  std::string certificate;
  std::optional<Witness> witness;
  Effort effort;

  bool certified() const { return status == VerdictStatus::kCertifiedHolds; }
  bool falsified() const { return status == VerdictStatus::kFalsified; }
  /// Not falsified.
  bool consistent_with_membership() const { return !falsified(); }
};

/// One classify line: "<class> <STATUS> [witness] [certificate]".
std::string to_text(const Verdict& v);

/// Line of space-separated key=value fields.
std::string to_record(const Verdict& v);

/// Formats a vector as "(a,b,...)" with round-trip precision.
std::string format_vector(const Vector& v);

}  // namespace qtensor
