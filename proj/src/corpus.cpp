#include "qtensor/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "qtensor/io.hpp"
#include "qtensor/random.hpp"
#include "qtensor/tcp.hpp"

namespace qtensor {
namespace {

constexpr double kSolutionTol = 1e-8;

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<int>(v.size()));
  int i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

ExpectedVerdict holds(TensorClass cls, std::string citation) {
  return {cls, Expectation::kHolds, std::move(citation), std::nullopt};
}

ExpectedVerdict fails(TensorClass cls, std::string citation, Witness w) {
  return {cls, Expectation::kFails, std::move(citation), std::move(w)};
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

CorpusEntry example_3_1() {
  CorpusEntry e{"example-3.1",
                Tensor::from_entries(4, 2,
                                     {{{1, 1, 2, 2}, 1.0},
                                      {{2, 2, 2, 2}, 1.0},
                                      {{2, 1, 1, 2}, -1.0}}),
                {},
                {},
                "A x^3 = (x1 x2^2, x2^3 - x1^2 x2)"};
  e.expected = {
      holds(TensorClass::kP0, "x1 (A x^3)_1 = x1^2 x2^2 >= 0"),
      holds(TensorClass::kQ, "cases C1-C3 cover every q"),
      fails(TensorClass::kR0, "(1,0) solves TCP(0, A)",
            Witness::point(vec({1, 0}))),
      holds(TensorClass::kCopositive, "A x^4 = x2^4"),
  };
  const double x2 = std::cbrt((1.0 + std::sqrt(5.0)) / 2.0);
  e.known_solutions = {
      {vec({1, 1}), vec({0, 0}), "case C1, a = b = 1"},
      {vec({1, -1}), vec({0, 1}), "case C2, a = b = 1"},
      {vec({-1, -1}), vec({1.0 / (x2 * x2), x2}), "case C3, a = b = 1"},
      {vec({0, 0}), vec({1, 0}), "homogeneous problem"},
  };
  return e;
}

CorpusEntry example_3_2() {
  CorpusEntry e{"example-3.2",
                Tensor::from_entries(3, 2,
                                     {{{1, 2, 2}, 1.0},
                                      {{2, 2, 2}, 1.0},
                                      {{2, 1, 2}, -1.0}}),
                {},
                {},
                "A x^2 = (x2^2, x2^2 - x1 x2)"};
  e.expected = {
      holds(TensorClass::kP0Prime, "x1^2 (A x^2)_1 = x1^2 x2^2 >= 0"),
      holds(TensorClass::kQ, "cases C1-C5 cover every q"),
      fails(TensorClass::kR0, "(1,0) solves TCP(0, A)",
            Witness::point(vec({1, 0}))),
      holds(TensorClass::kSemiPositive, "implied by P0prime"),
      holds(TensorClass::kCopositive, "A x^3 = x2^3"),
  };
  e.known_solutions = {
      {vec({1, 1}), vec({0, 0}), "case C1, a = b = 1"},
      {vec({-1, 1}), vec({2, 1}), "case C2, a = b = 1"},
      {vec({-4, 1}), vec({2.5, 2}), "case C2, a = 2, b = 1"},
      {vec({4, -1}), vec({0, 1}), "case C3, a = 2, b = 1"},
      {vec({-1, -4}), vec({0, 2}), "case C4, a = 1, b = 2"},
      {vec({-4, -1}), vec({1.5, 2}), "case C5, a = 2, b = 1"},
      {vec({0, 0}), vec({1, 0}), "homogeneous problem"},
  };
  return e;
}

CorpusEntry example_3_3() {
  CorpusEntry e{"example-3.3", example33_family(3, 3), {}, {},
                "instantiated at m = 3, n = 3; A x^2 = (x2^2, 0, 0)"};
  e.expected = {
      holds(TensorClass::kSP0, "only component 1 is nonzero and it ignores x1"),
      holds(TensorClass::kP0, "implied by SP0"),
      holds(TensorClass::kP0Prime, "x1^2 x2^2 >= 0"),
  };
  return e;
}

CorpusEntry example_3_4() {
  CorpusEntry e{"example-3.4",
                Tensor::from_entries(4, 2,
                                     {{{1, 1, 2, 2}, 1.0}, {{2, 1, 2, 2}, 1.0}}),
                {},
                {},
                "A x^3 = (x1 x2^2, x1 x2^2)"};
  e.expected = {
      holds(TensorClass::kP0, "x1 (A x^3)_1 = x1^2 x2^2 >= 0"),
      fails(TensorClass::kSP0, "pair (1,1), (1,-2): index-2 product -9",
            Witness::pair(vec({1, 1}), vec({1, -2}))),
  };
  return e;
}

CorpusEntry example_3_5() {
  CorpusEntry e{"example-3.5",
                Tensor::from_entries(3, 2,
                                     {{{1, 2, 1}, 1.0}, {{2, 1, 1}, -1.0}}),
                {},
                {},
                "A x^2 = (x1 x2, -x1^2)"};
  e.expected = {
      holds(TensorClass::kP0, "products x1^2 x2 and -x1^2 x2 never both < 0"),
      fails(TensorClass::kP0Prime, "x = (1,-1): both products -1",
            Witness::point(vec({1, -1}))),
  };
  return e;
}

CorpusEntry example_3_6() {
  CorpusEntry e{"example-3.6",
                Tensor::from_entries(3, 2,
                                     {{{1, 2, 2}, 1.0}, {{2, 1, 1}, -1.0}}),
                {},
                {},
                "A x^2 = (x2^2, -x1^2)"};
  e.expected = {
      holds(TensorClass::kP0Prime, "x1^2 x2^2 >= 0"),
      fails(TensorClass::kP0, "x = (-1,1): both products -1",
            Witness::point(vec({-1, 1}))),
  };
  return e;
}

CorpusEntry example_4_1() {
  CorpusEntry e{"example-4.1",
                Tensor::from_entries(3, 2, {{{1, 1, 1}, 1.0}, {{2, 2, 2}, 1.0}}),
                {},
                {},
                "A x^2 = (x1^2, x2^2). At the stored pair the products are -9 "
                "and -25; the published second value is -12, only signs are "
                "relied on"};
  e.expected = {
      holds(TensorClass::kNonnegative, "coefficients 0 or 1"),
      fails(TensorClass::kSP0, "pair (-2,-3), (1,2): both products negative",
            Witness::pair(vec({-2, -3}), vec({1, 2}))),
  };
  return e;
}

CorpusEntry example_4_2() {
  CorpusEntry e{"example-4.2",
                Tensor::from_entries(4, 2,
                                     {{{1, 1, 2, 2}, -1.0}, {{2, 2, 2, 2}, 1.0}}),
                {},
                {},
                "A x^3 = (-x1 x2^2, x2^3). Published as SP0, but the pair "
                "(1,1), (2,1) has index 1 as the only differing coordinate "
                "and its product is -1"};
  Witness negative = Witness::index_of(0);
  negative.coefficient = {1, 1, 2, 2};
  e.expected = {
      fails(TensorClass::kNonnegative, "a_{1122} = -1", negative),
      {TensorClass::kSP0, Expectation::kDisputed,
       "published as SP0; contradicted by the pair (1,1), (2,1)",
       Witness::pair(vec({1, 1}), vec({2, 1}))},
  };
  return e;
}

CorpusEntry example_5_1() {
  CorpusEntry e{"example-5.1", example51_family(3), {}, {},
                "instantiated at m = 3; A x^2 = ((x1 - x2)^2, (x1 - x2)^2)"};
  e.expected = {
      holds(TensorClass::kSemiPositive, "both components are squares"),
      holds(TensorClass::kQ, "cases C1-C5 cover every q"),
  };
  e.known_solutions = {
      {vec({1, 1}), vec({0, 0}), "case C1, a = b = 1"},
      {vec({-1, 1}), vec({1, 0}), "case C2, a = b = 1"},
      {vec({1, -1}), vec({0, 1}), "case C3, a = b = 1"},
      {vec({-1, -4}), vec({0, 2}), "case C4, a = 1, b = 2"},
      {vec({-4, -1}), vec({2, 0}), "case C5, a = 2, b = 1"},
      {vec({0, 0}), vec({1, 1}), "positive root of A x^2 = 0"},
  };
  return e;
}

}  // namespace

const char* to_string(Expectation e) {
  switch (e) {
    case Expectation::kHolds:
      return "Holds";
    case Expectation::kFails:
      return "Fails";
    case Expectation::kDisputed:
      return "Disputed";
  }
  return "?";
}

const ExpectedVerdict* CorpusEntry::expectation(TensorClass cls) const {
  for (const ExpectedVerdict& v : expected) {
    if (v.cls == cls) return &v;
  }
  return nullptr;
}

std::vector<CorpusEntry> corpus() {
  std::vector<CorpusEntry> entries = {
      example_3_1(), example_3_2(), example_3_3(), example_3_4(), example_3_5(),
      example_3_6(), example_4_1(), example_4_2(), example_5_1(),
  };
  for (const CorpusEntry& e : entries) {
    for (const KnownSolution& s : e.known_solutions) {
      const double r = residual(TcpInstance(e.tensor, s.q), s.x).value;
      if (!(r <= kSolutionTol)) {
        throw std::logic_error(e.name + ": stored solution (" + s.citation +
                               ") has residual " + std::to_string(r));
      }
    }
  }
  return entries;
}

CorpusEntry corpus_entry(const std::string& name) {
  for (CorpusEntry& e : corpus()) {
    if (e.name == name) return std::move(e);
  }
  throw std::out_of_range("no corpus entry named " + name);
}

Tensor example51_family(int m) {
  if (m < 3 || m % 2 == 0) {
    throw TensorError("example51_family needs an odd order >= 3");
  }
  std::vector<Entry> entries;
  for (int row = 1; row <= 2; ++row) {
    for (int k = 0; k <= m - 1; ++k) {
      // Tail 1...1 2...2 with k twos carries the binomial term of x2^k.
      Entry e;
      e.index.push_back(row);
      for (int p = 0; p < m - 1 - k; ++p) e.index.push_back(1);
      for (int p = 0; p < k; ++p) e.index.push_back(2);
      e.value = (k % 2 == 0 ? 1.0 : -1.0) * binomial(m - 1, k);
      entries.push_back(std::move(e));
    }
  }
  return Tensor::from_entries(m, 2, std::move(entries));
}

Tensor example33_family(int m, int n) {
  if (n < 2) throw TensorError("example33_family needs n >= 2");
  std::vector<int> index(m, 2);
  index[0] = 1;
  return Tensor::from_entries(m, n, {{index, 1.0}});
}

Tensor random_nonnegative(int m, int n, int zero_diagonal_count,
                          std::uint64_t seed) {
  if (zero_diagonal_count < 0 || zero_diagonal_count > n) {
    throw TensorError("zero_diagonal_count must lie in [0, n]");
  }
  Rng rng(seed);
  std::vector<double> coeffs(static_cast<std::size_t>(std::pow(n, m)));
  for (double& c : coeffs) c = rng.uniform();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.integer(0, i)]);
  std::size_t stride = 0;
  for (int k = 0; k < m; ++k) stride = stride * n + 1;
  for (int r = 0; r < n; ++r) {
    const int i = order[r];
    coeffs[i * stride] = r < zero_diagonal_count ? 0.0 : rng.uniform(0.1, 1.0);
  }
  return Tensor::from_dense(m, n, std::move(coeffs));
}

Tensor random_equal_rows(int m, int n, std::uint64_t seed) {
  if (n < 2) throw TensorError("random_equal_rows needs n >= 2");
  const Tensor base = random_nonnegative(m, n, 0, seed);
  std::vector<double> coeffs = base.coeffs();
  const std::size_t row = coeffs.size() / n;
  coeffs[row] = std::max(coeffs[row], 0.1);  // a_{2 1...1}
  std::copy(coeffs.begin() + row, coeffs.begin() + 2 * row, coeffs.begin());
  return Tensor::from_dense(m, n, std::move(coeffs));
}

void export_corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::ofstream table(fs::path(dir) / "expected.tsv");
  if (!table) throw std::runtime_error("cannot write to " + dir);
  table << "name\tclass\texpected\tcitation\n";
  for (const CorpusEntry& e : corpus()) {
    std::ofstream out(fs::path(dir) / (e.name + ".tensor"));
    out << "# " << e.name << "\n";
    write_tensor(out, e.tensor);
    for (const ExpectedVerdict& v : e.expected) {
      table << e.name << "\t" << class_name(v.cls) << "\t"
            << to_string(v.expected) << "\t" << v.citation << "\n";
    }
  }
}

}  // namespace qtensor
