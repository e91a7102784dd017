#include "qtensor/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

namespace qtensor {
namespace {

std::string tuple_to_string(const std::vector<int>& index) {
  std::ostringstream out;
  out << "(";
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (k > 0) out << ",";
    out << index[k];
  }
  out << ")";
  return out.str();
}

std::int64_t checked_size(int order, int dim) {
  if (order < 2) {
    throw TensorError("tensor order must be at least 2, got " +
                      std::to_string(order));
  }
  if (dim < 1) {
    throw TensorError("tensor dimension must be at least 1, got " +
                      std::to_string(dim));
  }
  std::int64_t size = 1;
  for (int k = 0; k < order; ++k) {
    size *= dim;
    if (size > Tensor::kMaxCoefficients) {
      throw TensorError("tensor with dim^order = " + std::to_string(dim) +
                        "^" + std::to_string(order) +
                        " exceeds the dense storage limit of 1e7");
    }
  }
  return size;
}

double int_pow(double base, int exponent) {
  double result = 1.0;
  for (int k = 0; k < exponent; ++k) result *= base;
  return result;
}

std::string format_coefficient(double value) {
  std::ostringstream out;
  out.precision(12);
  out << value;
  return out.str();
}

}  // namespace

// IndexSet ------------------------------------------------------------------

IndexSet::IndexSet(std::vector<int> members, int dim)
    : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
  for (int i : members_) {
    if (i < 0 || i >= dim) {
      throw TensorError("index " + std::to_string(i + 1) +
                        " outside [1, " + std::to_string(dim) + "]");
    }
  }
}

IndexSet IndexSet::full(int dim) {
  std::vector<int> all(dim);
  for (int i = 0; i < dim; ++i) all[i] = i;
  return IndexSet(std::move(all), dim);
}

IndexSet IndexSet::from_mask(std::uint64_t mask, int dim) {
  std::vector<int> members;
  for (int i = 0; i < dim; ++i) {
    if (mask & (std::uint64_t{1} << i)) members.push_back(i);
  }
  return IndexSet(std::move(members), dim);
}

bool IndexSet::contains(int i) const {
  return std::binary_search(members_.begin(), members_.end(), i);
}

IndexSet IndexSet::complement(int dim) const {
  std::vector<int> rest;
  for (int i = 0; i < dim; ++i) {
    if (!contains(i)) rest.push_back(i);
  }
  return IndexSet(std::move(rest), dim);
}

std::string IndexSet::to_string() const {
  std::ostringstream out;
  out << "{";
  for (std::size_t k = 0; k < members_.size(); ++k) {
    if (k > 0) out << ",";
    out << members_[k] + 1;
  }
  out << "}";
  return out.str();
}

// Tensor --------------------------------------------------------------------

Tensor::Tensor(int order, int dim, std::vector<double> coeffs,
               std::vector<Entry> entries)
    : order_(order),
      dim_(dim),
      coeffs_(std::move(coeffs)),
      entries_(std::move(entries)) {}

Tensor Tensor::from_entries(int order, int dim, std::vector<Entry> entries,
                            std::vector<std::string>* warnings) {
  const std::int64_t size = checked_size(order, dim);
  std::vector<double> coeffs(static_cast<std::size_t>(size), 0.0);
  std::vector<char> written(static_cast<std::size_t>(size), 0);
  Tensor shell(order, dim, {}, {});
  for (const Entry& e : entries) {
    if (static_cast<int>(e.index.size()) != order) {
      throw TensorError("entry " + tuple_to_string(e.index) + " has " +
                        std::to_string(e.index.size()) +
                        " indices, expected " + std::to_string(order));
    }
    std::vector<int> index0(order);
    for (int k = 0; k < order; ++k) {
      if (e.index[k] < 1 || e.index[k] > dim) {
        throw TensorError("entry " + tuple_to_string(e.index) +
                          " has an index outside [1, " + std::to_string(dim) +
                          "]");
      }
      index0[k] = e.index[k] - 1;
    }
    const auto off = static_cast<std::size_t>(shell.offset(index0));
    if (written[off]) {
      const std::string msg = "duplicate entry " + tuple_to_string(e.index) +
                              "; keeping the last value";
      if (warnings != nullptr) {
        warnings->push_back(msg);
      } else {
        std::cerr << "warning: " << msg << "\n";
      }
    }
    written[off] = 1;
    coeffs[off] = e.value;
  }
  return Tensor(order, dim, std::move(coeffs), std::move(entries));
}

Tensor Tensor::from_dense(int order, int dim, std::vector<double> coeffs) {
  const std::int64_t size = checked_size(order, dim);
  if (static_cast<std::int64_t>(coeffs.size()) != size) {
    throw TensorError("dense coefficient array has length " +
                      std::to_string(coeffs.size()) + ", expected " +
                      std::to_string(size));
  }
  Tensor t(order, dim, std::move(coeffs), {});
  t.entries_ = t.nonzero_entries();
  return t;
}

std::int64_t Tensor::offset(const std::vector<int>& index0) const {
  std::int64_t off = 0;
  for (int k = 0; k < order_; ++k) off = off * dim_ + index0[k];
  return off;
}

double Tensor::at(const std::vector<int>& index0) const {
  if (static_cast<int>(index0.size()) != order_) {
    throw TensorError("index tuple length does not match tensor order");
  }
  for (int i : index0) {
    if (i < 0 || i >= dim_) throw TensorError("index out of range");
  }
  return coeffs_[static_cast<std::size_t>(offset(index0))];
}

double Tensor::diagonal(int i) const {
  if (i < 0 || i >= dim_) throw TensorError("diagonal index out of range");
  return at(std::vector<int>(order_, i));
}

std::vector<Entry> Tensor::nonzero_entries() const {
  std::vector<Entry> out;
  std::vector<int> index(order_, 1);
  for (double c : coeffs_) {
    if (c != 0.0) out.push_back({index, c});
    for (int k = order_ - 1; k >= 0; --k) {
      if (++index[k] <= dim_) break;
      index[k] = 1;
    }
  }
  return out;
}

// Multilinear map -----------------------------------------------------------

Vector apply(const Tensor& a, const Vector& x) {
  const int n = a.dim();
  if (x.size() != n) {
    throw TensorError("vector length " + std::to_string(x.size()) +
                      " does not match tensor dimension " + std::to_string(n));
  }
  // Contract the trailing axis m-1 times.
  std::vector<double> current = a.coeffs();
  std::vector<double> next;
  for (int k = 0; k < a.order() - 1; ++k) {
    const std::size_t rows = current.size() / n;
    next.assign(rows, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
      const double* row = current.data() + r * n;
      double sum = 0.0;
      for (int j = 0; j < n; ++j) sum += row[j] * x[j];
      next[r] = sum;
    }
    current.swap(next);
  }
  return Eigen::Map<const Vector>(current.data(), n);
}

double apply_scalar(const Tensor& a, const Vector& x) {
  return x.dot(apply(a, x));
}

Tensor principal_sub_tensor(const Tensor& a, const IndexSet& j) {
  if (j.empty()) throw TensorError("principal sub-tensor needs a nonempty J");
  for (int i : j.members()) {
    if (i >= a.dim()) throw TensorError("sub-tensor index out of range");
  }
  const int m = a.order();
  const int r = j.size();
  std::int64_t size = 1;
  for (int k = 0; k < m; ++k) size *= r;
  std::vector<double> coeffs(static_cast<std::size_t>(size));
  std::vector<int> local(m, 0);
  std::vector<int> global(m);
  for (std::int64_t off = 0; off < size; ++off) {
    for (int k = 0; k < m; ++k) global[k] = j.members()[local[k]];
    coeffs[static_cast<std::size_t>(off)] = a.at(global);
    for (int k = m - 1; k >= 0; --k) {
      if (++local[k] < r) break;
      local[k] = 0;
    }
  }
  return Tensor::from_dense(m, r, std::move(coeffs));
}

Vector embed(const Vector& x_j, const IndexSet& j, int dim) {
  if (x_j.size() != j.size()) {
    throw TensorError("embed: vector length does not match index set size");
  }
  Vector x = Vector::Zero(dim);
  for (int k = 0; k < j.size(); ++k) x[j.members()[k]] = x_j[k];
  return x;
}

// Monomial forms -------------------------------------------------------------

MonomialForm::MonomialForm(int component, int dim,
                           std::map<Exponents, double> terms)
    : component_(component), dim_(dim), terms_(std::move(terms)) {
  std::erase_if(terms_, [](const auto& kv) { return kv.second == 0.0; });
}

double MonomialForm::evaluate(const Vector& x) const {
  double sum = 0.0;
  for (const auto& [exps, c] : terms_) {
    double term = c;
    for (int j = 0; j < dim_; ++j) {
      if (exps[j] > 0) term *= int_pow(x[j], exps[j]);
    }
    sum += term;
  }
  return sum;
}

Vector MonomialForm::gradient(const Vector& x) const {
  Vector g = Vector::Zero(dim_);
  for (const auto& [exps, c] : terms_) {
    for (int j = 0; j < dim_; ++j) {
      if (exps[j] == 0) continue;
      double term = c * exps[j] * int_pow(x[j], exps[j] - 1);
      for (int k = 0; k < dim_; ++k) {
        if (k != j && exps[k] > 0) term *= int_pow(x[k], exps[k]);
      }
      g[j] += term;
    }
  }
  return g;
}

bool MonomialForm::depends_on(int j) const {
  for (const auto& [exps, c] : terms_) {
    if (exps[j] > 0) return true;
  }
  return false;
}

std::vector<int> MonomialForm::variables() const {
  std::vector<int> vars;
  for (int j = 0; j < dim_; ++j) {
    if (depends_on(j)) vars.push_back(j);
  }
  return vars;
}

MonomialForm MonomialForm::restricted_to(const IndexSet& j) const {
  std::map<Exponents, double> kept;
  for (const auto& [exps, c] : terms_) {
    bool inside = true;
    for (int v = 0; v < dim_; ++v) {
      if (exps[v] > 0 && !j.contains(v)) {
        inside = false;
        break;
      }
    }
    if (inside) kept.emplace(exps, c);
  }
  return MonomialForm(component_, dim_, std::move(kept));
}

std::string MonomialForm::to_string() const {
  if (terms_.empty()) return "0";
  // Higher powers of earlier variables first reads closest to hand-written
  // polynomials, so walk the map in reverse.
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [exps, c] = *it;
    const double mag = std::abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1.0) {
      out << format_coefficient(mag);
      wrote = true;
    }
    for (int j = 0; j < dim_; ++j) {
      if (exps[j] == 0) continue;
      if (wrote) out << "*";
      out << "x" << j + 1;
      if (exps[j] > 1) out << "^" << exps[j];
      wrote = true;
    }
    if (!wrote) out << "1";
  }
  return out.str();
}

MonomialForm monomial_form(const Tensor& a, int i) {
  const int n = a.dim();
  const int m = a.order();
  if (i < 0 || i >= n) throw TensorError("component index out of range");
  std::map<MonomialForm::Exponents, double> terms;
  const std::size_t tail = a.coeffs().size() / n;
  const double* block = a.coeffs().data() + i * tail;
  std::vector<int> idx(m - 1, 0);
  MonomialForm::Exponents exps(n);
  for (std::size_t off = 0; off < tail; ++off) {
    if (block[off] != 0.0) {
      std::fill(exps.begin(), exps.end(), 0);
      for (int v : idx) ++exps[v];
      terms[exps] += block[off];
    }
    for (int k = m - 2; k >= 0; --k) {
      if (++idx[k] < n) break;
      idx[k] = 0;
    }
  }
  return MonomialForm(i, n, std::move(terms));
}

PolynomialMap::PolynomialMap(const Tensor& a) {
  forms_.reserve(a.dim());
  for (int i = 0; i < a.dim(); ++i) forms_.push_back(monomial_form(a, i));
}

Vector PolynomialMap::evaluate(const Vector& x) const {
  Vector out(dim());
  for (int i = 0; i < dim(); ++i) out[i] = forms_[i].evaluate(x);
  return out;
}

Eigen::MatrixXd PolynomialMap::jacobian(const Vector& x) const {
  Eigen::MatrixXd jac(dim(), dim());
  for (int i = 0; i < dim(); ++i) jac.row(i) = forms_[i].gradient(x).transpose();
  return jac;
}

bool component_depends_on(const Tensor& a, int i, int j) {
  if (j < 0 || j >= a.dim()) throw TensorError("variable index out of range");
  return monomial_form(a, i).depends_on(j);
}

}  // namespace qtensor
