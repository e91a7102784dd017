// Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qtensor/checkers.hpp"
#include "qtensor/corpus.hpp"
#include "qtensor/harness.hpp"
#include "qtensor/random.hpp"
#include "qtensor/tcp.hpp"

namespace {

using namespace qtensor;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Vector v2(double a, double b) { return (Vector(2) << a, b).finished(); }

double nearest(const std::vector<Solution>& sols, const Vector& x) {
  double best = INFINITY;
  for (const Solution& s : sols) {
    best = std::min(best, (s.x - x).lpNorm<Eigen::Infinity>());
  }
  return best;
}

void closed_form_recovery(Outcome& o) {
  const Tensor a = corpus_entry("example-3.1").tensor;
  const double x2 = std::cbrt((1 + std::sqrt(5.0)) / 2);
  const auto t0 = Clock::now();
  const TcpInstance inst(a, v2(-1, -1));
  const SolveOutcome out = solve(inst, SearchBudget());
  const double wall = seconds_since(t0);
  bool found = false;
  for (const Solution& s : out.solutions) {
    if (std::abs(s.x[1] - x2) <= 1e-6 && residual(inst, s.x).value <= 1e-8) {
      found = true;
      o.detail << " x=" << format_vector(s.x);
    }
  }
  o.detail << " wall=" << wall << "s";
  o.require(found, "no solution with x2 within 1e-6 of the closed form");
  o.require(wall < 1.0, "runtime >= 1 s");
}

void case_table(Outcome& o) {
  const Tensor a = corpus_entry("example-3.2").tensor;
  struct Case {
    std::string name;
    std::function<bool(double, double)> applies;
    std::function<Vector(double, double)> q;
    std::function<Vector(double, double)> z;
  };
  const std::vector<Case> cases = {
      {"C1", [](double, double) { return true; },
       [](double x, double y) { return v2(x * x, y * y); },
       [](double, double) { return v2(0, 0); }},
      {"C2", [](double x, double) { return x != 0; },
       [](double x, double y) { return v2(-x * x, y * y); },
       [](double x, double y) { return v2((x * x + y * y) / x, x); }},
      {"C3", [](double, double) { return true; },
       [](double x, double y) { return v2(x * x, -y * y); },
       [](double, double y) { return v2(0, y); }},
      {"C4", [](double x, double y) { return x <= y; },
       [](double x, double y) { return v2(-x * x, -y * y); },
       [](double, double y) { return v2(0, y); }},
      {"C5", [](double x, double y) { return x != 0 && x >= y; },
       [](double x, double y) { return v2(-x * x, -y * y); },
       [](double x, double y) { return v2((x * x - y * y) / x, x); }},
  };
  const auto t0 = Clock::now();
  int checked = 0;
  for (const Case& c : cases) {
    for (const auto& [pa, pb] : {std::pair{1.0, 1.0}, {2.0, 1.0}, {1.0, 2.0}}) {
      if (!c.applies(pa, pb)) continue;
      const SolveOutcome out = solve(TcpInstance(a, c.q(pa, pb)), SearchBudget());
      ++checked;
      std::ostringstream what;
      what << c.name << " (a,b)=(" << pa << "," << pb << ")";
      o.require(nearest(out.solutions, c.z(pa, pb)) <= 1e-6, what.str());
    }
  }
  const double wall = seconds_since(t0);
  o.detail << " " << checked << " instances wall=" << wall << "s";
  o.require(wall < 5.0, "runtime >= 5 s");
}

void nonnegative_consistency(Outcome& o) {
  NonnegativeSuiteOptions options;
  options.trials = 500;
  options.orders = {3, 4};
  options.dims = {2, 3, 4};
  const auto t0 = Clock::now();
  const RunReport r = run_nonnegative_suite(options, SearchBudget());
  const double wall = seconds_since(t0);
  int zero = 0;
  for (const CaseRecord& c : r.cases) zero += c.check == "zero-diagonal";
  o.detail << " " << r.passed() << "/" << r.cases.size() << " consistent, "
           << zero << " with a zero diagonal, wall=" << wall << "s";
  o.require(r.cases.size() == 500 && r.ok(), "disagreement");
  o.require(zero == 250, "zero-diagonal share is not half");
  o.require(wall < 300.0, "runtime >= 5 min");
}

void corpus_matrix(Outcome& o) {
  const SearchBudget budget;
  const RunReport r = run_corpus_suite(budget);
  o.detail << " cases=" << r.cases.size() << " failed=" << r.failed()
           << " disputed=" << r.disputed();
  o.require(r.failed() == 0, "mismatch against expected classification");
  o.require(r.disputed() == 1, "disputed count is not 1");
  for (const CaseRecord& c : r.cases) {
    if (c.outcome == CaseOutcome::kDisputed) {
      o.require(c.tensor_id == "example-4.2" && c.check == "SP0",
                "unexpected disputed case " + c.tensor_id);
    }
  }
  double smallest = INFINITY;
  for (const CorpusEntry& e : corpus()) {
    for (const ExpectedVerdict& v : e.expected) {
      if (!v.witness) continue;
      const auto violation = verify_witness(e.tensor, v.cls, *v.witness, budget);
      o.require(violation && *violation > 1e-7, e.name + " stored witness");
      if (violation) smallest = std::min(smallest, *violation);
    }
  }
  o.detail << " smallest stored violation=" << smallest;
}

void counterexamples(Outcome& o) {
  const SearchBudget budget;
  const Tensor a32 = corpus_entry("example-3.2").tensor;
  const double r = residual(TcpInstance(a32, v2(0, 0)), v2(1, 0)).value;
  o.require(r == 0.0, "(a) residual is not exactly 0");
  for (int m : {3, 5, 7}) {
    const Vector ax = apply(example51_family(m), Vector::Ones(2));
    o.require(ax[0] == 0.0 && ax[1] == 0.0,
              "(b) A(1,1) != 0 for m=" + std::to_string(m));
  }
  for (const std::string name : {"example-3.1", "example-3.2"}) {
    const Tensor a = corpus_entry(name).tensor;
    const Verdict cop = check_copositive(a, budget);
    const Verdict q = check_q_empirical(a, budget);
    const Verdict r0 = check_r0(a, budget);
    o.require(!cop.falsified(), "(c) " + name + " copositive falsified");
    o.require(q.status == VerdictStatus::kUnfalsified && q.effort.inconclusive == 0,
              "(c) " + name + " not Q-grid-positive");
    o.require(r0.falsified() && verify_witness(a, TensorClass::kR0, *r0.witness, budget),
              "(c) " + name + " R0 not falsified");
  }
  o.detail << " (a) residual=" << r << " (b) m=3,5,7 exact zeros (c) 3.1, 3.2";
}

void equal_rows_composer(Outcome& o) {
  const SearchBudget budget;
  Rng rng(2024);
  int ok = 0;
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const int m = 3 + k % 2;
    const int n = 2 + (k / 2) % 2;
    const Tensor a = random_equal_rows(m, n, mix_seed(2024, k));
    Vector q(n);
    for (int i = 0; i < n; ++i) q[i] = rng.uniform(-2, 2);
    try {
      const Solution s = compose_from_equal_rows(a, q, budget);
      const double r = residual(TcpInstance(a, q), s.x).value;
      worst = std::max(worst, r);
      if (r <= 1e-8 && s.x[equal_rows_excluded_index(q)] == 0.0) ++ok;
    } catch (const std::exception& e) {
      o.detail << " instance " << k << ": " << e.what();
    }
  }
  o.detail << " " << ok << "/50 composed, worst residual=" << worst;
  o.require(ok == 50, "composed point rejected");
}

void odd_order_necessary_condition(Outcome& o) {
  const Verdict v33 = sp0_odd_necessary(corpus_entry("example-3.3").tensor);
  const Verdict v41 = sp0_odd_necessary(corpus_entry("example-4.1").tensor);
  o.require(v33.status == VerdictStatus::kUnfalsified, "example-3.3 not Unfalsified");
  o.require(v41.falsified(), "example-4.1 not Falsified");
  o.require(v33.effort.samples == 0 && v41.effort.samples == 0, "sampling used");
  o.detail << " 3.3: " << to_string(v33.status) << ", 4.1: " << to_text(v41);
}

Tensor random_tensor(Rng& rng, int m, int n) {
  std::vector<double> c(static_cast<std::size_t>(std::pow(n, m)));
  for (double& v : c) v = rng.uniform(-1, 1);
  return Tensor::from_dense(m, n, std::move(c));
}

Vector random_vector(Rng& rng, int n) {
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = rng.uniform(-2, 2);
  return x;
}

void property_suites(Outcome& o) {
  Rng rng(8);
  int homogeneity = 0, forms = 0, restriction = 0;
  for (int k = 0; k < 100; ++k) {
    const int m = rng.integer(2, 5);
    const int n = rng.integer(1, 4);
    const Tensor a = random_tensor(rng, m, n);
    const Vector x = random_vector(rng, n);
    const double lambda = rng.log_uniform(0.1, 10);
    const Vector ax = apply(a, x);
    const double err =
        (apply(a, lambda * x) - std::pow(lambda, m - 1) * ax).lpNorm<Eigen::Infinity>();
    homogeneity += err <= 1e-9 * (1 + std::pow(lambda, m - 1)) *
                              (1 + ax.lpNorm<Eigen::Infinity>());

    const PolynomialMap map(a);
    bool forms_ok = true;
    for (int i = 0; i < n; ++i) {
      forms_ok = forms_ok &&
                 std::abs(map.component(i).evaluate(x) - ax[i]) <=
                     1e-12 * (1 + std::abs(ax[i]));
    }
    forms += forms_ok;

    const IndexSet j = IndexSet::from_mask(rng.integer(1, (1 << n) - 1), n);
    const Vector xj = random_vector(rng, j.size());
    const Vector sub = apply(principal_sub_tensor(a, j), xj);
    const Vector full = apply(a, embed(xj, j, n));
    bool restriction_ok = true;
    for (int r = 0; r < j.size(); ++r) {
      restriction_ok = restriction_ok && std::abs(sub[r] - full[j.members()[r]]) <=
                                             1e-12 * (1 + std::abs(sub[r]));
    }
    restriction += restriction_ok;
  }
  o.require(homogeneity == 100, "homogeneity");
  o.require(forms == 100, "monomial form equivalence");
  o.require(restriction == 100, "sub-tensor restriction identity");

  const SearchBudget budget;
  int replayed = 0, falsified = 0;
  for (const CorpusEntry& e : corpus()) {
    for (TensorClass cls : kAllClasses) {
      const Verdict v = check_class(cls, e.tensor, budget);
      if (!v.falsified()) continue;
      ++falsified;
      const auto violation = verify_witness(e.tensor, cls, *v.witness, budget);
      replayed += violation && *violation > budget.falsify_tol;
    }
  }
  o.require(falsified > 0 && replayed == falsified, "witness replay");

  bool deterministic = true;
  for (const CorpusEntry& e : corpus()) {
    for (TensorClass cls : kAllClasses) {
      deterministic = deterministic && to_record(check_class(cls, e.tensor, budget)) ==
                                           to_record(check_class(cls, e.tensor, budget));
    }
    for (const KnownSolution& s : e.known_solutions) {
      const SolveOutcome a = solve(TcpInstance(e.tensor, s.q), budget);
      const SolveOutcome b = solve(TcpInstance(e.tensor, s.q), budget);
      deterministic = deterministic && a.solutions.size() == b.solutions.size() &&
                      a.stats.newton_iterations == b.stats.newton_iterations;
      for (std::size_t k = 0; deterministic && k < a.solutions.size(); ++k) {
        deterministic = a.solutions[k].x == b.solutions[k].x;
      }
    }
  }
  o.require(deterministic, "seed determinism");
  o.detail << " homogeneity " << homogeneity << "/100, forms " << forms
           << "/100, restriction " << restriction << "/100, witnesses "
           << replayed << "/" << falsified << ", determinism "
           << (deterministic ? "ok" : "broken");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"closed-form solution recovery", closed_form_recovery},
      {"case-table reproduction", case_table},
      {"nonnegative-tensor consistency suite", nonnegative_consistency},
      {"corpus verdict matrix", corpus_matrix},
      {"tensor counterexamples to matrix facts", counterexamples},
      {"equal-rows composer", equal_rows_composer},
      {"odd-order necessary condition", odd_order_necessary_condition},
      {"property suites", property_suites},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      criteria[k].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << k + 1 << " "
              << criteria[k].first << ":" << o.detail.str() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
