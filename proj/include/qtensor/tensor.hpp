#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace qtensor {

using Vector = Eigen::VectorXd;

/// Raised for malformed tensors, indices, or dimension mismatches.
class TensorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One sparse construction entry. The index tuple is 1-based, matching the
/// text format: every component lies in [1, dim].
struct Entry {
  std::vector<int> index;
  double value = 0.0;
};

/// Sorted, duplicate-free set of 0-based indices.
class IndexSet {
 public:
  IndexSet() = default;
  /// Sorts and deduplicates. Throws if any member is outside [0, dim).
  IndexSet(std::vector<int> members, int dim);

  static IndexSet full(int dim);
  /// The subset encoded by the low `dim` bits of `mask`.
  static IndexSet from_mask(std::uint64_t mask, int dim);

  const std::vector<int>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  bool contains(int i) const;
  /// [0, dim) minus this set.
  IndexSet complement(int dim) const;
  /// 1-based rendering, e.g. "{1,3}".
  std::string to_string() const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<int> members_;
};

/// Dense m-order n-dimensional real tensor. Coefficients are stored
/// row-major, so the first index varies slowest. The entry list used to build
/// the tensor is kept alongside.
class Tensor {
 public:
  /// Largest accepted dim^order.
  static constexpr std::int64_t kMaxCoefficients = 10'000'000;

  /// Builds a tensor that is zero except at the listed entries. Duplicate
  /// tuples resolve last-write-wins; each duplicate appends a message to
  /// `warnings` (or is printed to stderr when `warnings` is null).
  static Tensor from_entries(int order, int dim, std::vector<Entry> entries,
                             std::vector<std::string>* warnings = nullptr);

  /// Builds from a full row-major coefficient array; entries are the nonzeros.
  static Tensor from_dense(int order, int dim, std::vector<double> coeffs);

  int order() const { return order_; }
  int dim() const { return dim_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  const std::vector<Entry>& entries() const { return entries_; }

  /// Coefficient at a 0-based index tuple.
  double at(const std::vector<int>& index0) const;
  /// Coefficient a_{i...i} for 0-based i.
  double diagonal(int i) const;
  /// Nonzero coefficients as 1-based entries, in storage order.
  std::vector<Entry> nonzero_entries() const;

  /// Row-major offset of a 0-based index tuple.
  std::int64_t offset(const std::vector<int>& index0) const;

 private:
  Tensor(int order, int dim, std::vector<double> coeffs,
         std::vector<Entry> entries);

  int order_ = 0;
  int dim_ = 0;
  std::vector<double> coeffs_;
  std::vector<Entry> entries_;
};

/// The vector A x^{m-1}: component i sums a_{i i2...im} x_{i2}...x_{im}.
Vector apply(const Tensor& a, const Vector& x);

/// The scalar A x^m = x^T (A x^{m-1}).
double apply_scalar(const Tensor& a, const Vector& x);

/// Restriction of every index to `j`, relabeled to [0, |j|) in J's order.
Tensor principal_sub_tensor(const Tensor& a, const IndexSet& j);

/// Writes x_J into a length-`dim` vector that is zero outside J.
Vector embed(const Vector& x_j, const IndexSet& j, int dim);

/// Component i of A x^{m-1} aggregated by monomial. Keys are exponent
/// vectors of length n summing to m-1; zero coefficients are dropped.
class MonomialForm {
 public:
  using Exponents = std::vector<int>;

  MonomialForm() = default;
  MonomialForm(int component, int dim, std::map<Exponents, double> terms);

  int component() const { return component_; }
  int dim() const { return dim_; }
  const std::map<Exponents, double>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  double evaluate(const Vector& x) const;
  /// Gradient with respect to all n variables.
  Vector gradient(const Vector& x) const;

  /// True iff some nonzero term has a positive exponent on variable j.
  bool depends_on(int j) const;
  /// Variables carrying a positive exponent in some term.
  std::vector<int> variables() const;

  /// Drops every term that involves a variable outside `j`. The result is
  /// the polynomial seen when x vanishes off J.
  MonomialForm restricted_to(const IndexSet& j) const;

  /// Human-readable polynomial with 1-based variable names, e.g.
  /// "-x1^2*x2 + x2^3" (lex order, x1 first). The zero form renders as "0".
  std::string to_string() const;

 private:
  int component_ = 0;
  int dim_ = 0;
  std::map<Exponents, double> terms_;
};

MonomialForm monomial_form(const Tensor& a, int i);

/// All n monomial forms of a tensor; the searches evaluate through this.
class PolynomialMap {
 public:
  explicit PolynomialMap(const Tensor& a);

  int dim() const { return static_cast<int>(forms_.size()); }
  const MonomialForm& component(int i) const { return forms_[i]; }

  Vector evaluate(const Vector& x) const;
  /// Full n-by-n Jacobian.
  Eigen::MatrixXd jacobian(const Vector& x) const;

 private:
  std::vector<MonomialForm> forms_;
};

/// Exact coefficient-level test of whether component i involves x_j.
bool component_depends_on(const Tensor& a, int i, int j);

}  // namespace qtensor
