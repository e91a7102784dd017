#include "qtensor/tensor.hpp"

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "qtensor/corpus.hpp"
#include "qtensor/io.hpp"
#include "qtensor/random.hpp"

namespace qtensor {
namespace {

Tensor ex31() {
  return Tensor::from_entries(
      4, 2, {{{1, 1, 2, 2}, 1.0}, {{2, 2, 2, 2}, 1.0}, {{2, 1, 1, 2}, -1.0}});
}

Tensor ex32() {
  return Tensor::from_entries(
      3, 2, {{{1, 2, 2}, 1.0}, {{2, 2, 2}, 1.0}, {{2, 1, 2}, -1.0}});
}

Tensor random_tensor(Rng& rng, int m, int n) {
  std::vector<double> c(static_cast<std::size_t>(std::pow(n, m)));
  for (double& v : c) v = rng.uniform(-1.0, 1.0);
  return Tensor::from_dense(m, n, std::move(c));
}

Vector random_vector(Rng& rng, int n, double lo = -2.0, double hi = 2.0) {
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = rng.uniform(lo, hi);
  return x;
}

TEST(FromEntries, BuildsExampleTensor) {
  const Tensor a = ex31();
  EXPECT_EQ(a.order(), 4);
  EXPECT_EQ(a.dim(), 2);
  EXPECT_EQ(a.coeffs().size(), 16u);
  EXPECT_EQ(a.at({0, 0, 1, 1}), 1.0);
  EXPECT_EQ(a.at({1, 1, 1, 1}), 1.0);
  EXPECT_EQ(a.at({1, 0, 0, 1}), -1.0);
  EXPECT_EQ(a.at({0, 0, 0, 0}), 0.0);
  EXPECT_EQ(a.entries().size(), 3u);
}

TEST(FromEntries, EmptyListIsZeroTensor) {
  const Tensor a = Tensor::from_entries(3, 2, {});
  for (double c : a.coeffs()) EXPECT_EQ(c, 0.0);
  EXPECT_TRUE(apply(a, Vector::Constant(2, 3.0)).isZero(0.0));
}

TEST(FromEntries, SecondExample) {
  const Tensor a = ex32();
  EXPECT_EQ(a.at({0, 1, 1}), 1.0);
  EXPECT_EQ(a.at({1, 1, 1}), 1.0);
  EXPECT_EQ(a.at({1, 0, 1}), -1.0);
}

TEST(FromEntries, RejectsOutOfRangeIndexNamingTuple) {
  try {
    Tensor::from_entries(3, 2, {{{1, 3, 1}, 1.0}});
    FAIL() << "expected TensorError";
  } catch (const TensorError& e) {
    EXPECT_NE(std::string(e.what()).find("(1,3,1)"), std::string::npos)
        << e.what();
  }
  EXPECT_THROW(Tensor::from_entries(3, 2, {{{0, 1, 1}, 1.0}}), TensorError);
  EXPECT_THROW(Tensor::from_entries(3, 2, {{{1, 1}, 1.0}}), TensorError);
}

TEST(FromEntries, RejectsBadShape) {
  EXPECT_THROW(Tensor::from_entries(1, 2, {}), TensorError);
  EXPECT_THROW(Tensor::from_entries(3, 0, {}), TensorError);
  EXPECT_THROW(Tensor::from_entries(8, 10, {}), TensorError);  // 10^8 > 10^7
}

TEST(FromEntries, DuplicatesLastWriteWinsWithWarning) {
  std::vector<std::string> warnings;
  const Tensor a = Tensor::from_entries(
      3, 2, {{{1, 1, 1}, 2.0}, {{1, 1, 1}, 5.0}}, &warnings);
  EXPECT_EQ(a.diagonal(0), 5.0);
  ASSERT_EQ(warnings.size(), 1u);
}

TEST(Apply, ExampleValues) {
  EXPECT_TRUE(apply(ex31(), Vector::Zero(2)).isZero(0.0));
  const Vector v = apply(ex31(), (Vector(2) << 1, 2).finished());
  EXPECT_EQ(v[0], 4.0);
  EXPECT_EQ(v[1], 6.0);
  const double b = 1.5;
  const Vector w = apply(ex32(), (Vector(2) << 0, b).finished());
  EXPECT_DOUBLE_EQ(w[0], b * b);
  EXPECT_DOUBLE_EQ(w[1], b * b);
}

TEST(Apply, RejectsLengthMismatch) {
  EXPECT_THROW(apply(ex31(), Vector::Zero(3)), TensorError);
  EXPECT_THROW(apply_scalar(ex31(), Vector::Zero(1)), TensorError);
}

TEST(ApplyScalar, ClosedForms) {
  Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    const Vector x = random_vector(rng, 2, 0.0, 2.0);
    EXPECT_NEAR(apply_scalar(ex32(), x), std::pow(x[1], 3), 1e-12);
    const Vector y = random_vector(rng, 2);
    EXPECT_NEAR(apply_scalar(ex31(), y), std::pow(y[1], 4), 1e-12);
  }
  EXPECT_EQ(apply_scalar(ex31(), Vector::Zero(2)), 0.0);
}

TEST(PrincipalSubTensor, Examples) {
  const Tensor s = principal_sub_tensor(ex31(), IndexSet({1}, 2));
  EXPECT_EQ(s.order(), 4);
  EXPECT_EQ(s.dim(), 1);
  ASSERT_EQ(s.coeffs().size(), 1u);
  EXPECT_EQ(s.coeffs()[0], 1.0);

  const Tensor full = principal_sub_tensor(ex31(), IndexSet::full(2));
  EXPECT_EQ(full.coeffs(), ex31().coeffs());

  const Tensor z = principal_sub_tensor(example33_family(3, 3), IndexSet({0}, 3));
  EXPECT_EQ(z.coeffs()[0], 0.0);

  EXPECT_THROW(principal_sub_tensor(ex31(), IndexSet()), TensorError);
}

TEST(IndexSet, SortsDeduplicatesAndValidates) {
  const IndexSet j({2, 0, 2}, 3);
  EXPECT_EQ(j.members(), (std::vector<int>{0, 2}));
  EXPECT_EQ(j.to_string(), "{1,3}");
  EXPECT_EQ(j.complement(3).members(), std::vector<int>{1});
  EXPECT_THROW(IndexSet({3}, 3), TensorError);
}

TEST(MonomialForm, Examples) {
  const MonomialForm f = monomial_form(ex31(), 1);
  ASSERT_EQ(f.terms().size(), 2u);
  EXPECT_EQ(f.terms().at({0, 3}), 1.0);
  EXPECT_EQ(f.terms().at({2, 1}), -1.0);
  EXPECT_EQ(f.to_string(), "-x1^2*x2 + x2^3");

  const Tensor zero = Tensor::from_entries(3, 2, {});
  EXPECT_TRUE(monomial_form(zero, 0).is_zero());
  EXPECT_EQ(monomial_form(zero, 0).to_string(), "0");

  for (int m : {3, 4, 5}) {
    const MonomialForm g = monomial_form(example33_family(m, 3), 0);
    ASSERT_EQ(g.terms().size(), 1u);
    EXPECT_EQ(g.terms().at({0, m - 1, 0}), 1.0);
  }
  EXPECT_THROW(monomial_form(ex31(), 2), TensorError);
}

TEST(ComponentDependsOn, Examples) {
  EXPECT_FALSE(component_depends_on(example33_family(3, 3), 0, 0));
  EXPECT_TRUE(component_depends_on(example33_family(3, 3), 0, 1));
  EXPECT_TRUE(component_depends_on(ex31(), 1, 1));
  const Tensor zero = Tensor::from_entries(3, 2, {});
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) EXPECT_FALSE(component_depends_on(zero, i, j));
  }
}

TEST(MonomialForm, CancellingTuplesAggregateToZero) {
  // a_{112} and a_{121} cancel in the aggregated form.
  const Tensor a =
      Tensor::from_entries(3, 2, {{{1, 1, 2}, 1.0}, {{1, 2, 1}, -1.0}});
  EXPECT_TRUE(monomial_form(a, 0).is_zero());
  EXPECT_FALSE(component_depends_on(a, 0, 0));
}

TEST(Properties, Homogeneity) {
  Rng rng(11);
  for (int k = 0; k < 100; ++k) {
    const int m = rng.integer(2, 5);
    const int n = rng.integer(1, 4);
    const Tensor a = random_tensor(rng, m, n);
    const Vector x = random_vector(rng, n);
    const double lambda = rng.log_uniform(1e-2, 1e2);
    const Vector ax = apply(a, x);
    const Vector scaled = apply(a, lambda * x);
    const double err =
        (scaled - std::pow(lambda, m - 1) * ax).lpNorm<Eigen::Infinity>();
    EXPECT_LE(err, 1e-9 * (1 + std::pow(lambda, m - 1)) *
                       (1 + ax.lpNorm<Eigen::Infinity>()))
        << "trial " << k;
  }
}

TEST(Properties, MonomialFormMatchesApply) {
  Rng rng(12);
  for (int k = 0; k < 20; ++k) {
    const int m = rng.integer(2, 5);
    const int n = rng.integer(1, 4);
    const Tensor a = random_tensor(rng, m, n);
    const PolynomialMap map(a);
    for (int p = 0; p < 100; ++p) {
      const Vector x = random_vector(rng, n);
      const Vector ax = apply(a, x);
      for (int i = 0; i < n; ++i) {
        EXPECT_NEAR(map.component(i).evaluate(x), ax[i],
                    1e-12 * (1 + std::abs(ax[i])));
      }
    }
  }
}

TEST(Properties, JacobianMatchesFiniteDifferences) {
  Rng rng(13);
  const Tensor a = random_tensor(rng, 4, 3);
  const PolynomialMap map(a);
  const Vector x = random_vector(rng, 3);
  const Eigen::MatrixXd jac = map.jacobian(x);
  const double h = 1e-6;
  for (int j = 0; j < 3; ++j) {
    Vector xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    const Vector fd = (map.evaluate(xp) - map.evaluate(xm)) / (2 * h);
    EXPECT_LE((fd - jac.col(j)).lpNorm<Eigen::Infinity>(), 1e-6);
  }
}

TEST(Properties, SubTensorRestrictionIdentity) {
  Rng rng(14);
  for (int k = 0; k < 100; ++k) {
    const int m = rng.integer(2, 5);
    const int n = rng.integer(2, 4);
    const Tensor a = random_tensor(rng, m, n);
    std::uint64_t mask = 0;
    while (mask == 0) mask = rng.integer(1, (1 << n) - 1);
    const IndexSet j = IndexSet::from_mask(mask, n);
    const Vector xj = random_vector(rng, j.size());
    const Vector sub = apply(principal_sub_tensor(a, j), xj);
    const Vector full = apply(a, embed(xj, j, n));
    for (int r = 0; r < j.size(); ++r) {
      EXPECT_NEAR(sub[r], full[j.members()[r]], 1e-12 * (1 + std::abs(sub[r])));
    }
  }
}

TEST(Properties, EntriesRoundTripIsLossless) {
  Rng rng(15);
  for (int k = 0; k < 50; ++k) {
    const int m = rng.integer(2, 4);
    const int n = rng.integer(1, 3);
    std::vector<Entry> entries;
    for (int e = 0; e < 6; ++e) {
      Entry en;
      for (int p = 0; p < m; ++p) en.index.push_back(rng.integer(1, n));
      en.value = rng.integer(-64, 64) / 8.0;  // binary representable
      entries.push_back(en);
    }
    std::vector<std::string> warnings;
    const Tensor a = Tensor::from_entries(m, n, entries, &warnings);
    const Tensor b = Tensor::from_entries(m, n, a.nonzero_entries());
    EXPECT_EQ(a.coeffs(), b.coeffs());
    std::stringstream text;
    write_tensor(text, a);
    EXPECT_EQ(parse_tensor(text).coeffs(), a.coeffs());
  }
}

}  // namespace
}  // namespace qtensor
