#include "qtensor/checkers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qtensor/newton.hpp"
#include "qtensor/random.hpp"
#include "qtensor/tcp.hpp"

namespace qtensor {
namespace {

using Objective = std::function<double(const Vector&)>;
using Projection = std::function<void(Vector&)>;
using WitnessBuilder = std::function<std::optional<Witness>(const Vector&)>;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMinStep = 1e-10;
constexpr long kMaxCompassEvals = 4000;
// Lower bound on coordinates that must stay strictly positive (simplex and
// sphere searches) or strictly nonzero (pair offsets).
constexpr double kSimplexFloor = 1e-6;
constexpr double kPairOffsetFloor = 0.02;

std::uint64_t region_seed(const SearchBudget& budget, TensorClass cls,
                          std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0) {
  std::uint64_t s = mix_seed(budget.seed, static_cast<std::uint64_t>(cls));
  s = mix_seed(s, a);
  s = mix_seed(s, b);
  return mix_seed(s, c);
}

std::uint64_t mask_of(const IndexSet& j) {
  std::uint64_t mask = 0;
  for (int i : j.members()) mask |= std::uint64_t{1} << i;
  return mask;
}

double int_pow(double base, int exponent) {
  double r = 1.0;
  for (int k = 0; k < exponent; ++k) r *= base;
  return r;
}

Verdict make_verdict(TensorClass cls, const SearchBudget& budget) {
  Verdict v;
  v.cls = cls;
  v.effort.seed = budget.seed;
  return v;
}

Verdict falsified(Verdict v, Witness w) {
  v.status = VerdictStatus::kFalsified;
  v.witness = std::move(w);
  return v;
}

Verdict certified(Verdict v, std::string certificate) {
  v.status = VerdictStatus::kCertifiedHolds;
  v.certificate = std::move(certificate);
  return v;
}

// Coordinate (compass) search for nonsmooth max-type objectives.
struct CompassResult {
  Vector x;
  double value = kInf;
  long evals = 0;
};

CompassResult compass_minimize(const Objective& f, const Projection& project,
                               Vector x, double step) {
  CompassResult r;
  project(x);
  r.x = x;
  r.value = f(x);
  r.evals = 1;
  const int dim = static_cast<int>(x.size());
  while (step > kMinStep && r.evals < kMaxCompassEvals) {
    bool improved = false;
    for (int d = 0; d < dim && !improved; ++d) {
      for (double dir : {1.0, -1.0}) {
        Vector trial = r.x;
        trial[d] += dir * step;
        project(trial);
        const double value = f(trial);
        ++r.evals;
        if (value < r.value) {
          r.x = std::move(trial);
          r.value = value;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return r;
}

void project_simplex(Vector& u) {
  for (int i = 0; i < u.size(); ++i) u[i] = std::max(u[i], kSimplexFloor);
  u /= u.sum();
}

void project_sphere(Vector& u) {
  for (int i = 0; i < u.size(); ++i) u[i] = std::max(u[i], kSimplexFloor);
  u /= u.norm();
}

// Samples a region, checks raw samples, then refines the best
// `budget.multistarts` of them. A region whose only point is fixed is
// evaluated once.
struct Region {
  std::function<Vector(Rng&)> sample;
  std::vector<Vector> fixed_starts;
  Projection project;
  Objective objective;
  WitnessBuilder build;
  double step = 0.25;
  bool single_point = false;
};

std::optional<Witness> search_region(const Region& region,
                                     const SearchBudget& budget, Rng& rng,
                                     Effort& effort) {
  std::vector<std::pair<double, Vector>> pool;
  auto consider = [&](Vector v) -> std::optional<Witness> {
    region.project(v);
    const double value = region.objective(v);
    ++effort.samples;
    if (value < -budget.falsify_tol) {
      if (auto w = region.build(v)) return w;
    }
    pool.emplace_back(value, std::move(v));
    return std::nullopt;
  };
  for (const Vector& s : region.fixed_starts) {
    if (auto w = consider(s)) return w;
  }
  if (region.single_point) return std::nullopt;
  for (int k = 0; k < budget.samples; ++k) {
    if (auto w = consider(region.sample(rng))) return w;
  }
  std::stable_sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) {
    return a.first < b.first;
  });
  const int refine =
      std::min<int>(budget.multistarts, static_cast<int>(pool.size()));
  for (int k = 0; k < refine; ++k) {
    ++effort.searches;
    const CompassResult r = compass_minimize(region.objective, region.project,
                                             pool[k].second, region.step);
    effort.samples += r.evals;
    if (r.value < -budget.falsify_tol) {
      if (auto w = region.build(r.x)) return w;
    }
  }
  return std::nullopt;
}

std::optional<Witness> with_violation(Witness w, const Tensor& a,
                                      TensorClass cls,
                                      const SearchBudget& budget) {
  if (auto v = verify_witness(a, cls, w, budget)) {
    w.violation = *v;
    return w;
  }
  return std::nullopt;
}

std::optional<Witness> try_hints(const Tensor& a, TensorClass cls,
                                 const std::vector<Witness>& hints,
                                 const SearchBudget& budget) {
  for (const Witness& h : hints) {
    if (auto w = with_violation(h, a, cls, budget)) return w;
  }
  return std::nullopt;
}

// Raw (unthresholded) replay helpers -----------------------------------------

// Largest product over the active set, or +inf when nothing is active.
double max_active_product(const Tensor& a, TensorClass cls, const Vector& x) {
  const Vector ax = apply(a, x);
  double worst = -kInf;
  bool any = false;
  for (int i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) continue;
    any = true;
    const double factor =
        cls == TensorClass::kP0Prime ? int_pow(x[i], a.order() - 1) : x[i];
    worst = std::max(worst, factor * ax[i]);
  }
  return any ? worst : kInf;
}

std::optional<double> verify_r_family(const Tensor& a, TensorClass cls,
                                      const Witness& w,
                                      const SearchBudget& budget) {
  if (w.kind != WitnessKind::kPoint && w.kind != WitnessKind::kPointScalar) {
    return std::nullopt;
  }
  const int n = a.dim();
  if (w.x.size() != n) return std::nullopt;
  const double t = w.kind == WitnessKind::kPointScalar ? w.t : 0.0;
  if (t < 0 || !std::isfinite(t)) return std::nullopt;
  if (cls == TensorClass::kR0 && t != 0.0) return std::nullopt;
  if ((w.x.array() < 0).any() || !w.x.allFinite()) return std::nullopt;
  const double s = w.x.sum();
  if (!(s > 0)) return std::nullopt;
  const Vector xn = w.x / s;
  const int m = a.order();
  double tn = 0.0;
  if (cls == TensorClass::kR) tn = t / std::pow(s, m - 1);
  if (cls == TensorClass::kER) tn = t / std::pow(s, m - 2);
  const Vector ax = apply(a, xn);
  double margin = kInf;
  for (int i = 0; i < n; ++i) {
    if (xn[i] > 0) {
      margin = std::min(margin, xn[i]);
      double eq = ax[i];
      if (cls == TensorClass::kR) eq += tn;
      if (cls == TensorClass::kER) eq += tn * xn[i];
      if (std::abs(eq) > budget.feas_tol) return std::nullopt;
    } else {
      const double off = ax[i] + (cls == TensorClass::kR ? tn : 0.0);
      if (off < -budget.feas_tol) return std::nullopt;
    }
  }
  if (!(margin > budget.falsify_tol)) return std::nullopt;
  return margin;
}

std::optional<double> above_tol(double violation, const SearchBudget& budget) {
  if (violation > budget.falsify_tol && std::isfinite(violation)) {
    return violation;
  }
  return std::nullopt;
}

// R0 / R / ER searches ----------------------------------------------------------

// Unknowns are x_J on the simplex, plus t for R and ER.
struct RSystem {
  const PolynomialMap& map;
  TensorClass cls;
  IndexSet j;
  int n;

  bool has_t() const { return cls != TensorClass::kR0; }
  int k() const { return j.size(); }

  double initial_t(const Vector& xj) const {
    if (!has_t()) return 0.0;
    const Vector ax = map.evaluate(embed(xj, j, n));
    if (cls == TensorClass::kR) {
      double mean = 0.0;
      for (int r = 0; r < k(); ++r) mean += ax[j.members()[r]];
      return std::max(0.0, -mean / k());
    }
    double num = 0.0;
    for (int r = 0; r < k(); ++r) num += xj[r] * ax[j.members()[r]];
    return std::max(0.0, -num / xj.squaredNorm());
  }

  Vector pack(const Vector& xj) const {
    if (!has_t()) return xj;
    Vector z(k() + 1);
    z.head(k()) = xj;
    z[k()] = initial_t(xj);
    return z;
  }

  void operator()(const Vector& z, Vector& f, Eigen::MatrixXd& jac) const {
    const int kk = k();
    const Vector xj = z.head(kk);
    const double t = has_t() ? z[kk] : 0.0;
    const Vector x = embed(xj, j, n);
    f.resize(kk + 1);
    jac.setZero(kk + 1, z.size());
    for (int r = 0; r < kk; ++r) {
      const MonomialForm& form = map.component(j.members()[r]);
      const Vector g = form.gradient(x);
      f[r] = form.evaluate(x);
      for (int c = 0; c < kk; ++c) jac(r, c) = g[j.members()[c]];
      if (cls == TensorClass::kR) {
        f[r] += t;
        jac(r, kk) = 1.0;
      } else if (cls == TensorClass::kER) {
        f[r] += t * xj[r];
        jac(r, r) += t;
        jac(r, kk) = xj[r];
      }
    }
    f[kk] = xj.sum() - 1.0;
    for (int c = 0; c < kk; ++c) jac(kk, c) = 1.0;
  }
};

std::optional<Witness> r_candidate(const Tensor& a, TensorClass cls,
                                   const RSystem& sys, const Vector& z,
                                   const SearchBudget& budget) {
  Vector xj = z.head(sys.k());
  for (int r = 0; r < xj.size(); ++r) {
    if (xj[r] < budget.support_tol) {
      if (xj[r] < -budget.feas_tol) return std::nullopt;
      xj[r] = 0.0;
    }
  }
  double t = sys.has_t() ? z[sys.k()] : 0.0;
  if (t < 0) {
    if (t < -budget.feas_tol) return std::nullopt;
    t = 0.0;
  }
  Vector x = embed(xj, sys.j, sys.n);
  Witness w = cls == TensorClass::kR0 ? Witness::point(std::move(x))
                                      : Witness::point_scalar(std::move(x), t);
  return with_violation(std::move(w), a, cls, budget);
}

std::optional<Witness> search_r_support(const Tensor& a, TensorClass cls,
                                        const PolynomialMap& map,
                                        const IndexSet& j,
                                        const SearchBudget& budget,
                                        Effort& effort,
                                        const std::vector<Vector>& seeds) {
  const RSystem sys{map, cls, j, a.dim()};
  const int k = j.size();
  const SystemFunction fn = [&sys](const Vector& z, Vector& f,
                                   Eigen::MatrixXd& jac) { sys(z, f, jac); };
  NewtonOptions options;
  options.max_iter = budget.newton_max_iter;

  std::vector<std::pair<double, Vector>> pool;
  auto consider = [&](const Vector& xj) -> std::optional<Witness> {
    Vector z = sys.pack(xj);
    Vector f;
    Eigen::MatrixXd jac;
    sys(z, f, jac);
    ++effort.samples;
    if (auto w = r_candidate(a, cls, sys, z, budget)) return w;
    pool.emplace_back(f.lpNorm<Eigen::Infinity>(), std::move(z));
    return std::nullopt;
  };

  for (const Vector& s : seeds) {
    if (auto w = consider(s)) return w;
  }
  if (k > 1) {
    if (auto w = consider(Vector::Constant(k, 1.0 / k))) return w;
    Rng rng(region_seed(budget, cls, mask_of(j)));
    for (int s = 0; s < budget.samples; ++s) {
      if (auto w = consider(rng.simplex(k))) return w;
    }
  }
  std::stable_sort(pool.begin(), pool.end(), [](const auto& l, const auto& r) {
    return l.first < r.first;
  });
  const int refine = std::min<int>(budget.multistarts, static_cast<int>(pool.size()));
  for (int s = 0; s < refine; ++s) {
    ++effort.searches;
    const NewtonResult r = damped_newton(fn, pool[s].second, options);
    if (!r.x.allFinite()) continue;
    if (auto w = r_candidate(a, cls, sys, r.x, budget)) return w;
  }
  return std::nullopt;
}

Verdict check_r_family(TensorClass cls, const Tensor& a,
                       const SearchBudget& budget,
                       const std::vector<Witness>& hints) {
  budget.validate();
  Verdict v = make_verdict(cls, budget);
  if (is_nonnegative(a).certified() && has_positive_diagonal(a)) {
    return certified(std::move(v), "nonnegative-positive-diagonal");
  }
  if (auto w = try_hints(a, cls, hints, budget)) {
    v.effort.note = "hint accepted";
    return falsified(std::move(v), std::move(*w));
  }
  const PolynomialMap map(a);
  const int n = a.dim();
  // Point hints that did not verify as given are polished on their support.
  std::vector<std::pair<IndexSet, Vector>> polish;
  for (const Witness& h : hints) {
    if (h.x.size() != n || (h.x.array() < 0).any() || !(h.x.sum() > 0)) {
      continue;
    }
    std::vector<int> supp;
    for (int i = 0; i < n; ++i) {
      if (h.x[i] > 0) supp.push_back(i);
    }
    IndexSet j(supp, n);
    Vector xj(j.size());
    for (int r = 0; r < j.size(); ++r) xj[r] = h.x[j.members()[r]];
    polish.emplace_back(j, xj / xj.sum());
  }
  for (const auto& [j, xj] : polish) {
    if (auto w = search_r_support(a, cls, map, j, budget, v.effort, {xj})) {
      v.effort.note = "hint polished";
      return falsified(std::move(v), std::move(*w));
    }
  }
  for (const IndexSet& j : supports_in_order(n)) {
    if (j.empty()) continue;
    std::vector<Vector> seeds;
    if (j.size() == 1) seeds.push_back(Vector::Ones(1));
    if (auto w = search_r_support(a, cls, map, j, budget, v.effort, seeds)) {
      return falsified(std::move(v), std::move(*w));
    }
  }
  return v;
}

// Simplex searches (semipositive, copositive) -------------------------------

Verdict simplex_search(TensorClass cls, const Tensor& a,
                       const SearchBudget& budget,
                       const std::function<double(const Vector& x,
                                                  const Vector& ax,
                                                  const IndexSet& j)>& score) {
  Verdict v = make_verdict(cls, budget);
  const PolynomialMap map(a);
  const int n = a.dim();
  for (const IndexSet& j : supports_in_order(n)) {
    if (j.empty()) continue;
    const int k = j.size();
    Region region;
    region.single_point = k == 1;
    region.fixed_starts.push_back(Vector::Constant(k, 1.0 / k));
    region.sample = [k](Rng& rng) { return rng.simplex(k); };
    region.project = project_simplex;
    region.objective = [&](const Vector& u) {
      const Vector x = embed(u, j, n);
      return score(x, map.evaluate(x), j);
    };
    region.build = [&](const Vector& u) {
      return with_violation(Witness::point(embed(u, j, n)), a, cls, budget);
    };
    Rng rng(region_seed(budget, cls, mask_of(j)));
    if (auto w = search_region(region, budget, rng, v.effort)) {
      return falsified(std::move(v), std::move(*w));
    }
  }
  return v;
}

// Sign-pattern searches (P0, P0prime) -------------------------------------------

Verdict orthant_search(TensorClass cls, const Tensor& a,
                       const SearchBudget& budget) {
  Verdict v = make_verdict(cls, budget);
  const PolynomialMap map(a);
  const int n = a.dim();
  const int m = a.order();
  for (const IndexSet& j : supports_in_order(n)) {
    if (j.empty()) continue;
    const int k = j.size();
    for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << k); ++signs) {
      Vector s(k);
      for (int r = 0; r < k; ++r) s[r] = (signs >> r) & 1 ? -1.0 : 1.0;
      auto to_point = [&, s](const Vector& u) {
        return embed(s.cwiseProduct(u), j, n);
      };
      Region region;
      region.single_point = k == 1;
      region.fixed_starts.push_back(Vector::Constant(k, 1.0));
      region.sample = [k](Rng& rng) {
        Vector u(k);
        for (int r = 0; r < k; ++r) u[r] = rng.uniform(0.01, 1.0);
        return u;
      };
      region.project = project_sphere;
      region.objective = [&, to_point](const Vector& u) {
        const Vector x = to_point(u);
        const Vector ax = map.evaluate(x);
        double worst = -kInf;
        for (int i : j.members()) {
          const double factor =
              cls == TensorClass::kP0Prime ? int_pow(x[i], m - 1) : x[i];
          worst = std::max(worst, factor * ax[i]);
        }
        return worst;
      };
      region.build = [&, to_point](const Vector& u) {
        return with_violation(Witness::point(to_point(u)), a, cls, budget);
      };
      Rng rng(region_seed(budget, cls, mask_of(j), signs));
      if (auto w = search_region(region, budget, rng, v.effort)) {
        return falsified(std::move(v), std::move(*w));
      }
    }
  }
  return v;
}

// Strong P0 pair search ---------------------------------------------------------

std::optional<Witness> sp0_pair_from_dependence(const Tensor& a, int i,
                                                const SearchBudget& budget,
                                                Effort& effort) {
  const int n = a.dim();
  Rng rng(region_seed(budget, TensorClass::kSP0, 0xdeadULL, i));
  for (int s = 0; s < budget.samples; ++s) {
    Vector x(n);
    for (int r = 0; r < n; ++r) x[r] = rng.uniform(-1.0, 1.0);
    Vector y = x;
    y[i] += rng.coin() ? rng.uniform(0.5, 1.0) : -rng.uniform(0.5, 1.0);
    ++effort.samples;
    const double diff = apply(a, x)[i] - apply(a, y)[i];
    const double product = (x[i] - y[i]) * diff;
    // Odd order makes the map even, so (-x, -y) flips the sign of the
    // single active product.
    Witness w = product < 0 ? Witness::pair(x, y) : Witness::pair(-x, -y);
    if (auto verified = with_violation(std::move(w), a, TensorClass::kSP0, budget)) {
      return verified;
    }
  }
  return std::nullopt;
}

std::optional<Witness> sp0_search_sub_tensor(const Tensor& a,
                                             const IndexSet& sub,
                                             const SearchBudget& budget,
                                             Effort& effort) {
  const int n = a.dim();
  const Tensor local = sub.size() == n ? a : principal_sub_tensor(a, sub);
  const PolynomialMap map(local);
  const int r = sub.size();
  for (const IndexSet& k_set : supports_in_order(r)) {
    if (k_set.empty()) continue;
    const int k = k_set.size();
    for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << k); ++signs) {
      Vector s(k);
      for (int c = 0; c < k; ++c) s[c] = (signs >> c) & 1 ? -1.0 : 1.0;
      // Variables: base point x (r entries) then offset magnitudes u on K.
      auto split = [r, k, s, &k_set](const Vector& v) {
        Vector x = v.head(r);
        Vector y = x;
        for (int c = 0; c < k; ++c) y[k_set.members()[c]] += s[c] * v[r + c];
        return std::make_pair(x, y);
      };
      Region region;
      region.sample = [r, k](Rng& rng) {
        Vector v(r + k);
        for (int c = 0; c < r; ++c) v[c] = rng.uniform(-1.0, 1.0);
        for (int c = 0; c < k; ++c) v[r + c] = rng.uniform(kPairOffsetFloor, 1.0);
        return v;
      };
      region.project = [r, k](Vector& v) {
        for (int c = 0; c < r; ++c) v[c] = std::clamp(v[c], -1.0, 1.0);
        for (int c = 0; c < k; ++c) {
          v[r + c] = std::clamp(v[r + c], kPairOffsetFloor, 1.0);
        }
      };
      region.objective = [&, split](const Vector& v) {
        const auto [x, y] = split(v);
        const Vector fx = map.evaluate(x);
        const Vector fy = map.evaluate(y);
        double worst = -kInf;
        for (int i : k_set.members()) {
          worst = std::max(worst, (x[i] - y[i]) * (fx[i] - fy[i]));
        }
        return worst;
      };
      region.build = [&, split](const Vector& v) {
        const auto [x, y] = split(v);
        return with_violation(Witness::pair(embed(x, sub, n), embed(y, sub, n)),
                              a, TensorClass::kSP0, budget);
      };
      Rng rng(region_seed(budget, TensorClass::kSP0, mask_of(sub),
                          mask_of(k_set), signs));
      if (auto w = search_region(region, budget, rng, effort)) return w;
    }
  }
  return std::nullopt;
}

std::vector<Vector> q_grid(int n) {
  static constexpr double kLevels[] = {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0};
  constexpr long kMaxGrid = 4096;
  std::vector<Vector> grid;
  long full = 1;
  for (int i = 0; i < n && full <= kMaxGrid; ++i) full *= 6;
  if (full <= kMaxGrid) {
    std::vector<int> digit(n, 0);
    for (long g = 0; g < full; ++g) {
      Vector q(n);
      for (int i = 0; i < n; ++i) q[i] = kLevels[digit[i]];
      grid.push_back(q);
      for (int i = n - 1; i >= 0; --i) {
        if (++digit[i] < 6) break;
        digit[i] = 0;
      }
    }
    return grid;
  }
  // Large n: every sign pattern at three common magnitudes.
  for (double mag : {0.5, 1.0, 2.0}) {
    for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << n); ++signs) {
      Vector q(n);
      for (int i = 0; i < n; ++i) q[i] = (signs >> i) & 1 ? -mag : mag;
      grid.push_back(q);
    }
  }
  return grid;
}

}  // namespace

// Exact checks ------------------------------------------------------------------

Verdict is_nonnegative(const Tensor& a) {
  Verdict v;
  v.cls = TensorClass::kNonnegative;
  std::vector<int> index(a.order(), 1);
  for (double c : a.coeffs()) {
    if (c < 0) {
      Witness w = Witness::index_of(index[0] - 1);
      w.coefficient = index;
      w.violation = -c;
      return falsified(std::move(v), std::move(w));
    }
    for (int k = a.order() - 1; k >= 0; --k) {
      if (++index[k] <= a.dim()) break;
      index[k] = 1;
    }
  }
  return certified(std::move(v), "coefficient-scan");
}

bool has_positive_diagonal(const Tensor& a) {
  for (int i = 0; i < a.dim(); ++i) {
    if (!(a.diagonal(i) > 0)) return false;
  }
  return true;
}

Verdict check_q_nonnegative(const Tensor& a) {
  if (!is_nonnegative(a).certified()) {
    throw std::invalid_argument(
        "check_q_nonnegative needs a nonnegative tensor; use check_q_empirical");
  }
  Verdict v;
  v.cls = TensorClass::kQ;
  for (int j = 0; j < a.dim(); ++j) {
    if (a.diagonal(j) == 0.0) {
      // e_j solves TCP(0, A): its own slack is a_{j..j} = 0 and the others
      // are a_{i j..j} >= 0.
      Witness w = Witness::index_of(j);
      w.x = Vector::Unit(a.dim(), j);
      w.violation = 1.0;
      return falsified(std::move(v), std::move(w));
    }
  }
  return certified(std::move(v), "nonnegative-diagonal");
}

Verdict check_r0(const Tensor& a, const SearchBudget& budget,
                 const std::vector<Witness>& hints) {
  return check_r_family(TensorClass::kR0, a, budget, hints);
}

Verdict check_r(const Tensor& a, const SearchBudget& budget,
                const std::vector<Witness>& hints) {
  return check_r_family(TensorClass::kR, a, budget, hints);
}

Verdict check_er(const Tensor& a, const SearchBudget& budget,
                 const std::vector<Witness>& hints) {
  return check_r_family(TensorClass::kER, a, budget, hints);
}

Verdict check_semipositive(const Tensor& a, const SearchBudget& budget,
                           const std::vector<Witness>& hints) {
  budget.validate();
  Verdict v = make_verdict(TensorClass::kSemiPositive, budget);
  if (is_nonnegative(a).certified()) {
    return certified(std::move(v), "nonnegative-coefficients");
  }
  if (auto w = try_hints(a, TensorClass::kSemiPositive, hints, budget)) {
    v.effort.note = "hint accepted";
    return falsified(std::move(v), std::move(*w));
  }
  return simplex_search(
      TensorClass::kSemiPositive, a, budget,
      [](const Vector&, const Vector& ax, const IndexSet& j) {
        double worst = -kInf;
        for (int i : j.members()) worst = std::max(worst, ax[i]);
        return worst;
      });
}

Verdict check_copositive(const Tensor& a, const SearchBudget& budget,
                         const std::vector<Witness>& hints) {
  budget.validate();
  Verdict v = make_verdict(TensorClass::kCopositive, budget);
  if (is_nonnegative(a).certified()) {
    return certified(std::move(v), "nonnegative-coefficients");
  }
  if (auto w = try_hints(a, TensorClass::kCopositive, hints, budget)) {
    v.effort.note = "hint accepted";
    return falsified(std::move(v), std::move(*w));
  }
  return simplex_search(
      TensorClass::kCopositive, a, budget,
      [](const Vector& x, const Vector& ax, const IndexSet&) {
        return x.dot(ax);
      });
}

Verdict check_p0(const Tensor& a, const SearchBudget& budget,
                 const std::vector<Witness>& hints) {
  budget.validate();
  if (auto w = try_hints(a, TensorClass::kP0, hints, budget)) {
    Verdict v = make_verdict(TensorClass::kP0, budget);
    v.effort.note = "hint accepted";
    return falsified(std::move(v), std::move(*w));
  }
  return orthant_search(TensorClass::kP0, a, budget);
}

Verdict check_p0_prime(const Tensor& a, const SearchBudget& budget,
                       const std::vector<Witness>& hints) {
  budget.validate();
  if (auto w = try_hints(a, TensorClass::kP0Prime, hints, budget)) {
    Verdict v = make_verdict(TensorClass::kP0Prime, budget);
    v.effort.note = "hint accepted";
    return falsified(std::move(v), std::move(*w));
  }
  if (a.order() % 2 != 0) return orthant_search(TensorClass::kP0Prime, a, budget);

  // Even order: x_i^{m-1} = x_i^{m-2} x_i with x_i^{m-2} > 0, so the two
  // classes coincide and P0 witnesses carry over after rescaling.
  Verdict v = check_p0(a, budget, hints);
  v.cls = TensorClass::kP0Prime;
  v.effort.note = "even order: decided through P0";
  if (v.falsified()) {
    Witness w = *v.witness;
    const double raw = -max_active_product(a, TensorClass::kP0Prime, w.x);
    if (raw > 0 && std::isfinite(raw)) {
      // Products are homogeneous of degree 2m-2; scale to unit violation.
      w.x *= std::pow(raw, -1.0 / (2 * a.order() - 2));
    }
    if (auto verified = with_violation(std::move(w), a, TensorClass::kP0Prime,
                                       budget)) {
      v.witness = std::move(*verified);
    } else {
      v.status = VerdictStatus::kUnfalsified;
      v.witness.reset();
    }
  }
  return v;
}

Verdict sp0_odd_necessary(const Tensor& a) {
  if (a.order() % 2 == 0) {
    throw std::invalid_argument("sp0_odd_necessary needs an odd order");
  }
  Verdict v;
  v.cls = TensorClass::kSP0;
  v.effort.note = "coefficient-level necessary condition";
  for (int i = 0; i < a.dim(); ++i) {
    const MonomialForm form = monomial_form(a, i);
    if (form.is_zero() || !form.depends_on(i)) continue;
    Witness w = Witness::index_of(i);
    for (const auto& [exps, c] : form.terms()) {
      if (exps[i] > 0) w.violation = std::max(w.violation, std::abs(c));
    }
    return falsified(std::move(v), std::move(w));
  }
  return v;
}

Verdict check_sp0(const Tensor& a, const SearchBudget& budget,
                  const std::vector<Witness>& hints) {
  budget.validate();
  Verdict v = make_verdict(TensorClass::kSP0, budget);
  if (auto w = try_hints(a, TensorClass::kSP0, hints, budget)) {
    v.effort.note = "hint accepted";
    return falsified(std::move(v), std::move(*w));
  }
  if (a.order() % 2 != 0) {
    const Verdict necessary = sp0_odd_necessary(a);
    if (necessary.falsified()) {
      if (auto w = sp0_pair_from_dependence(a, necessary.witness->index,
                                            budget, v.effort)) {
        v.effort.note = "odd order: component depends on its own variable";
        return falsified(std::move(v), std::move(*w));
      }
    }
  }
  // Witnesses on a principal sub-tensor extend by zeros to the full tensor,
  // so smaller index sets are searched first.
  for (const IndexSet& sub : supports_in_order(a.dim())) {
    if (sub.empty()) continue;
    if (auto w = sp0_search_sub_tensor(a, sub, budget, v.effort)) {
      if (sub.size() < a.dim()) {
        v.effort.note = "found on principal sub-tensor " + sub.to_string();
      }
      return falsified(std::move(v), std::move(*w));
    }
  }
  return v;
}

Verdict check_q_empirical(const Tensor& a, const SearchBudget& budget,
                          const std::vector<Witness>& hints) {
  budget.validate();
  Verdict v = make_verdict(TensorClass::kQ, budget);
  if (auto w = try_hints(a, TensorClass::kQ, hints, budget)) {
    v.effort.note = "hint accepted";
    return falsified(std::move(v), std::move(*w));
  }
  const int n = a.dim();
  if (is_nonnegative(a).certified()) {
    Verdict exact = check_q_nonnegative(a);
    exact.effort = v.effort;
    if (exact.falsified()) {
      // Prefer an explicit unsolvable q when the solver can certify one.
      const int j = exact.witness->index;
      Vector minus_ej = -Vector::Unit(n, j);
      Vector pushed = Vector::Ones(n);
      pushed[j] = -1.0;
      for (const Vector& q : {minus_ej, pushed}) {
        ++exact.effort.searches;
        if (auto w = with_violation(Witness::q_vector(q), a, TensorClass::kQ,
                                    budget)) {
          exact.witness = std::move(*w);
          break;
        }
      }
    }
    return exact;
  }

  // Unit probes -e_j first, then the grid.
  std::vector<Vector> qs;
  for (int j = 0; j < n; ++j) qs.push_back(-Vector::Unit(n, j));
  for (Vector& q : q_grid(n)) qs.push_back(std::move(q));
  const std::size_t grid_size = qs.size();
  Rng rng(region_seed(budget, TensorClass::kQ, 0));
  for (int s = 0; s < budget.samples; ++s) {
    Vector q(n);
    for (int i = 0; i < n; ++i) q[i] = rng.uniform(-2.0, 2.0);
    qs.push_back(q);
  }
  for (const Vector& q : qs) {
    ++v.effort.samples;
    ++v.effort.searches;
    const SolveOutcome outcome =
        solve(TcpInstance(a, q), budget, /*stop_at_first=*/true);
    if (outcome.status == SolveStatus::kCertifiedNoSolution) {
      Witness w = Witness::q_vector(q);
      w.violation = q.lpNorm<Eigen::Infinity>();
      v.effort.note = outcome.note;
      return falsified(std::move(v), std::move(w));
    }
    if (outcome.status == SolveStatus::kNoSolutionFound) ++v.effort.inconclusive;
  }
  std::ostringstream note;
  if (v.effort.inconclusive == 0) {
    note << "all " << qs.size() << " sampled q solved (" << grid_size
         << " grid, " << qs.size() - grid_size << " random)";
  } else {
    note << "solver-incomplete: " << v.effort.inconclusive << " of "
         << qs.size() << " sampled q without a solution found";
  }
  v.effort.note = note.str();
  return v;
}

Verdict check_class(TensorClass cls, const Tensor& a,
                    const SearchBudget& budget,
                    const std::vector<Witness>& hints) {
  switch (cls) {
    case TensorClass::kNonnegative:
      return is_nonnegative(a);
    case TensorClass::kQ:
      return check_q_empirical(a, budget, hints);
    case TensorClass::kR0:
      return check_r0(a, budget, hints);
    case TensorClass::kR:
      return check_r(a, budget, hints);
    case TensorClass::kER:
      return check_er(a, budget, hints);
    case TensorClass::kP0:
      return check_p0(a, budget, hints);
    case TensorClass::kP0Prime:
      return check_p0_prime(a, budget, hints);
    case TensorClass::kSP0:
      return check_sp0(a, budget, hints);
    case TensorClass::kSemiPositive:
      return check_semipositive(a, budget, hints);
    case TensorClass::kCopositive:
      return check_copositive(a, budget, hints);
  }
  throw std::invalid_argument("unknown tensor class");
}

// Witness replay ------------------------------------------------------------------

std::optional<double> verify_witness(const Tensor& a, TensorClass cls,
                                     const Witness& w,
                                     const SearchBudget& budget) {
  const int n = a.dim();
  switch (cls) {
    case TensorClass::kNonnegative: {
      if (w.kind != WitnessKind::kIndex ||
          static_cast<int>(w.coefficient.size()) != a.order()) {
        return std::nullopt;
      }
      std::vector<int> index0(a.order());
      for (int k = 0; k < a.order(); ++k) {
        if (w.coefficient[k] < 1 || w.coefficient[k] > n) return std::nullopt;
        index0[k] = w.coefficient[k] - 1;
      }
      return above_tol(-a.at(index0), budget);
    }
    case TensorClass::kQ: {
      if (w.kind == WitnessKind::kIndex) {
        if (w.index < 0 || w.index >= n) return std::nullopt;
        if (!is_nonnegative(a).certified() || a.diagonal(w.index) != 0.0) {
          return std::nullopt;
        }
        return verify_r_family(a, TensorClass::kR0,
                               Witness::point(Vector::Unit(n, w.index)),
                               budget);
      }
      if (w.kind != WitnessKind::kQVector || w.q.size() != n) {
        return std::nullopt;
      }
      const SolveOutcome outcome = solve(TcpInstance(a, w.q), budget);
      if (outcome.status != SolveStatus::kCertifiedNoSolution) {
        return std::nullopt;
      }
      return above_tol(w.q.lpNorm<Eigen::Infinity>(), budget);
    }
    case TensorClass::kR0:
    case TensorClass::kR:
    case TensorClass::kER:
      return verify_r_family(a, cls, w, budget);
    case TensorClass::kP0:
    case TensorClass::kP0Prime: {
      if (w.kind != WitnessKind::kPoint || w.x.size() != n) return std::nullopt;
      return above_tol(-max_active_product(a, cls, w.x), budget);
    }
    case TensorClass::kSemiPositive: {
      if (w.kind != WitnessKind::kPoint || w.x.size() != n) return std::nullopt;
      if ((w.x.array() < 0).any()) return std::nullopt;
      const Vector ax = apply(a, w.x);
      double worst = -kInf;
      for (int i = 0; i < n; ++i) {
        if (w.x[i] > 0) worst = std::max(worst, ax[i]);
      }
      return above_tol(-worst, budget);
    }
    case TensorClass::kCopositive: {
      if (w.kind != WitnessKind::kPoint || w.x.size() != n) return std::nullopt;
      if ((w.x.array() < 0).any()) return std::nullopt;
      return above_tol(-apply_scalar(a, w.x), budget);
    }
    case TensorClass::kSP0: {
      if (w.kind == WitnessKind::kIndex) {
        if (a.order() % 2 == 0 || w.index < 0 || w.index >= n) {
          return std::nullopt;
        }
        const MonomialForm form = monomial_form(a, w.index);
        double strength = 0.0;
        for (const auto& [exps, c] : form.terms()) {
          if (exps[w.index] > 0) strength = std::max(strength, std::abs(c));
        }
        return above_tol(strength, budget);
      }
      if (w.kind != WitnessKind::kPair || w.x.size() != n || w.y.size() != n) {
        return std::nullopt;
      }
      const Vector fx = apply(a, w.x);
      const Vector fy = apply(a, w.y);
      double worst = -kInf;
      for (int i = 0; i < n; ++i) {
        if (std::abs(w.x[i] - w.y[i]) > budget.pair_tol) {
          worst = std::max(worst, (w.x[i] - w.y[i]) * (fx[i] - fy[i]));
        }
      }
      return above_tol(-worst, budget);
    }
  }
  return std::nullopt;
}

}  // namespace qtensor
