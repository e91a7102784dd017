#include "qtensor/harness.hpp"

#include <chrono>
#include <limits>
#include <sstream>

#include "qtensor/checkers.hpp"
#include "qtensor/corpus.hpp"
#include "qtensor/random.hpp"
#include "qtensor/tcp.hpp"

namespace qtensor {
namespace {

using Clock = std::chrono::steady_clock;

class Timer {
 public:
  Timer() : start_(Clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  Clock::time_point start_;
};

std::string verdict_word(const Verdict& v) {
  std::string s = to_string(v.status);
  if (v.witness) s += " " + v.witness->summary();
  return s;
}

// "Q-grid-positive": the empirical test solved every sampled q.
bool q_grid_positive(const Verdict& v) {
  return v.cls == TensorClass::kQ &&
         (v.certified() ||
          (v.status == VerdictStatus::kUnfalsified && v.effort.inconclusive == 0));
}

std::string q_word(const Verdict& v) {
  if (v.falsified()) return verdict_word(v);
  if (v.certified()) return "CERTIFIED";
  return q_grid_positive(v) ? "Q-grid-positive" : "UNFALSIFIED solver-incomplete";
}

CaseRecord make_case(std::string tensor_id, std::string check,
                     std::string expected, std::string got, bool pass,
                     std::uint64_t seed, std::string detail = {}) {
  CaseRecord c;
  c.tensor_id = std::move(tensor_id);
  c.check = std::move(check);
  c.expected = std::move(expected);
  c.got = std::move(got);
  c.detail = std::move(detail);
  c.outcome = pass ? CaseOutcome::kPass : CaseOutcome::kFail;
  c.seed = seed;
  return c;
}

bool witness_replays(const Tensor& a, const Verdict& v,
                     const SearchBudget& budget) {
  return v.falsified() && v.witness &&
         verify_witness(a, v.cls, *v.witness, budget).has_value();
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

const char* to_string(CaseOutcome outcome) {
  switch (outcome) {
    case CaseOutcome::kPass:
      return "PASS";
    case CaseOutcome::kFail:
      return "FAIL";
    case CaseOutcome::kDisputed:
      return "DISPUTED";
  }
  return "?";
}

int RunReport::count(CaseOutcome outcome) const {
  int n = 0;
  for (const CaseRecord& c : cases) n += c.outcome == outcome;
  return n;
}

std::string RunReport::to_text() const {
  std::ostringstream out;
  out << "suite " << suite << " (seed " << seed << ")\n";
  for (const CaseRecord& c : cases) {
    out << "  " << to_string(c.outcome) << "  " << c.tensor_id << "  "
        << c.check << "  expected: " << c.expected << "  got: " << c.got;
    if (!c.detail.empty()) out << "  [" << c.detail << "]";
    if (c.outcome == CaseOutcome::kFail) out << "  (reproduce with seed " << c.seed << ")";
    out << "\n";
  }
  out << "cases=" << cases.size() << " passed=" << passed()
      << " failed=" << failed() << " disputed=" << disputed() << " wall="
      << wall_seconds << "s\n";
  return out.str();
}

std::string RunReport::to_records() const {
  std::ostringstream out;
  int id = 0;
  for (const CaseRecord& c : cases) {
    out << "suite=" << suite << " case=" << id++ << " tensor=" << c.tensor_id
        << " check=" << c.check << " outcome=" << to_string(c.outcome)
        << " seed=" << c.seed << " expected=\"" << escape(c.expected)
        << "\" got=\"" << escape(c.got) << "\"";
    if (!c.detail.empty()) out << " detail=\"" << escape(c.detail) << "\"";
    out << "\n";
  }
  out << "suite=" << suite << " summary cases=" << cases.size()
      << " passed=" << passed() << " failed=" << failed()
      << " disputed=" << disputed() << " seed=" << seed << "\n";
  return out.str();
}

RunReport run_nonnegative_suite(const NonnegativeSuiteOptions& options,
                                const SearchBudget& budget) {
  const Timer timer;
  RunReport report;
  report.suite = "nonnegative";
  report.seed = budget.seed;
  for (int t = 0; t < options.trials; ++t) {
    SearchBudget b = budget;
    b.seed = mix_seed(budget.seed, t);
    Rng rng(b.seed);
    const int m = options.orders[rng.integer(0, options.orders.size() - 1)];
    const int n = options.dims[rng.integer(0, options.dims.size() - 1)];
    int zeros = options.forced_zero_count;
    if (zeros < 0) zeros = t % 2 == 0 ? 0 : rng.integer(1, n);
    zeros = std::min(zeros, n);
    const Tensor a = random_nonnegative(m, n, zeros, b.seed);

    std::ostringstream id;
    id << "trial-" << t << "(m=" << m << ",n=" << n << ",zeros=" << zeros << ")";
    const Verdict q = check_q_nonnegative(a);

    if (has_positive_diagonal(a)) {
      const Verdict r0 = check_r0(a, b);
      const Verdict r = check_r(a, b);
      const Verdict er = check_er(a, b);
      const Verdict qe = check_q_empirical(a, b);
      const bool pass = zeros == 0 && q.certified() && r0.certified() &&
                        r.certified() && er.certified() && qe.certified();
      std::ostringstream got;
      got << "Q:" << to_string(q.status) << " R0:" << to_string(r0.status)
          << " R:" << to_string(r.status) << " ER:" << to_string(er.status)
          << " Qemp:" << to_string(qe.status);
      report.cases.push_back(make_case(id.str(), "positive-diagonal",
                                       "all CERTIFIED", got.str(), pass, b.seed));
      continue;
    }

    int j = 0;
    while (a.diagonal(j) != 0.0) ++j;
    const std::vector<Witness> hint = {Witness::point(Vector::Unit(n, j))};
    bool pass = zeros > 0 && q.falsified();
    std::ostringstream got;
    got << "Q:" << to_string(q.status);
    for (TensorClass cls : {TensorClass::kR0, TensorClass::kR, TensorClass::kER}) {
      const Verdict unaided = check_class(cls, a, b);
      const Verdict hinted = check_class(cls, a, b, hint);
      pass = pass && witness_replays(a, unaided, b) && witness_replays(a, hinted, b);
      got << " " << class_name(cls) << ":" << to_string(unaided.status) << "/"
          << to_string(hinted.status);
    }
    report.cases.push_back(make_case(id.str(), "zero-diagonal",
                                     "all FALSIFIED with verified witnesses",
                                     got.str(), pass, b.seed,
                                     "hint e_" + std::to_string(j + 1)));
  }
  report.wall_seconds = timer.seconds();
  return report;
}

RunReport run_sp0_consistency_suite(const SearchBudget& budget) {
  const Timer timer;
  RunReport report;
  report.suite = "sp0-consistency";
  report.seed = budget.seed;
  for (const CorpusEntry& e : corpus()) {
    const ExpectedVerdict* sp0 = e.expectation(TensorClass::kSP0);
    const bool in_class = sp0 && sp0->expected == Expectation::kHolds;
    const bool q_without_r0_example =
        e.name == "example-3.1" || e.name == "example-3.2";
    if (!in_class && !q_without_r0_example) continue;

    const Verdict r0 = check_r0(e.tensor, budget);
    const Verdict r = check_r(e.tensor, budget);
    const Verdict er = check_er(e.tensor, budget);
    const Verdict q = check_q_empirical(e.tensor, budget);
    std::ostringstream got;
    got << "R0:" << to_string(r0.status) << " R:" << to_string(r.status)
        << " ER:" << to_string(er.status) << " Q:" << q_word(q);
    if (in_class) {
      const int falsified =
          r0.falsified() + r.falsified() + er.falsified() + q.falsified();
      report.cases.push_back(make_case(
          e.name, "joint-verdict", "R0, R, ER, Q all falsified or none",
          got.str(), falsified == 0 || falsified == 4, budget.seed));
    } else {
      const bool divergent = !q.falsified() && r0.falsified();
      report.cases.push_back(make_case(
          e.name, "outside-class", "Q without R0 permitted", got.str(), true,
          budget.seed,
          divergent ? "recorded: Q unfalsified while R0 falsified"
                    : "no divergence observed"));
    }
  }
  report.wall_seconds = timer.seconds();
  return report;
}

RunReport run_counterexample_suite(const SearchBudget& budget) {
  const Timer timer;
  RunReport report;
  report.suite = "counterexamples";
  report.seed = budget.seed;

  const CorpusEntry e32 = corpus_entry("example-3.2");
  const CorpusEntry e31 = corpus_entry("example-3.1");
  {
    const Verdict sp = check_semipositive(e32.tensor, budget);
    const Verdict q = check_q_empirical(e32.tensor, budget);
    const double r = residual(TcpInstance(e32.tensor, Vector::Zero(2)),
                              (Vector(2) << 1, 0).finished())
                         .value;
    std::ostringstream got;
    got << "semipositive:" << to_string(sp.status) << " Q:" << q_word(q)
        << " residual(q=0,x=(1,0))=" << r;
    report.cases.push_back(make_case(
        e32.name, "single-component-solution",
        "semipositive unfalsified, Q-grid-positive, residual 0", got.str(),
        !sp.falsified() && q_grid_positive(q) && r == 0.0, budget.seed));
  }
  for (int m : {3, 5, 7}) {
    const Tensor a = example51_family(m);
    const Vector ax = apply(a, Vector::Ones(2));
    const Verdict sp = check_semipositive(a, budget);
    const Verdict q = check_q_empirical(a, budget);
    std::ostringstream got;
    got << "A(1,1)=" << format_vector(ax) << " semipositive:"
        << to_string(sp.status) << " Q:" << q_word(q);
    report.cases.push_back(make_case(
        "example-5.1(m=" + std::to_string(m) + ")", "positive-homogeneous-root",
        "A(1,1) = 0 exactly, semipositive unfalsified, Q-grid-positive",
        got.str(),
        ax.isZero(0.0) && !sp.falsified() && q_grid_positive(q), budget.seed));
  }
  for (const CorpusEntry* e : {&e31, &e32}) {
    const Verdict cop = check_copositive(e->tensor, budget);
    const Verdict q = check_q_empirical(e->tensor, budget);
    const Verdict r0 = check_r0(e->tensor, budget);
    std::ostringstream got;
    got << "copositive:" << to_string(cop.status) << " Q:" << q_word(q)
        << " R0:" << verdict_word(r0);
    report.cases.push_back(make_case(
        e->name, "copositive-Q-not-R0",
        "copositive unfalsified, Q-grid-positive, R0 falsified", got.str(),
        !cop.falsified() && q_grid_positive(q) &&
            witness_replays(e->tensor, r0, budget),
        budget.seed));
  }
  report.wall_seconds = timer.seconds();
  return report;
}

RunReport run_corpus_suite(const SearchBudget& budget) {
  const Timer timer;
  RunReport report;
  report.suite = "corpus";
  report.seed = budget.seed;
  constexpr double kRediscoverRadius = 1e-6;
  constexpr double kSolutionTol = 1e-8;

  for (const CorpusEntry& e : corpus()) {
    for (const ExpectedVerdict& ex : e.expected) {
      const Verdict v = check_class(ex.cls, e.tensor, budget);
      CaseRecord c = make_case(e.name, class_name(ex.cls), to_string(ex.expected),
                               verdict_word(v), true, budget.seed, ex.citation);
      switch (ex.expected) {
        case Expectation::kHolds:
          c.outcome = v.falsified() ? CaseOutcome::kFail : CaseOutcome::kPass;
          break;
        case Expectation::kFails:
          c.outcome = witness_replays(e.tensor, v, budget) ? CaseOutcome::kPass
                                                           : CaseOutcome::kFail;
          if (c.outcome == CaseOutcome::kFail && !v.falsified()) {
            c.detail += "; no witness found, budget may be insufficient";
          }
          break;
        case Expectation::kDisputed:
          c.outcome = CaseOutcome::kDisputed;
          c.detail += v.falsified() ? "; checker falsifies the published claim"
                                    : "; checker does not falsify";
          break;
      }
      report.cases.push_back(std::move(c));

      if (ex.witness) {
        const auto violation = verify_witness(e.tensor, ex.cls, *ex.witness, budget);
        std::ostringstream got;
        if (violation) {
          got << "violation=" << *violation;
        } else {
          got << "does not replay";
        }
        report.cases.push_back(make_case(
            e.name, std::string("stored-witness:") + class_name(ex.cls),
            "violation > falsify_tol", got.str(), violation.has_value(),
            budget.seed, ex.witness->summary()));
      }
    }
    for (const KnownSolution& s : e.known_solutions) {
      const TcpInstance inst(e.tensor, s.q);
      const double r = residual(inst, s.x).value;
      const SolveOutcome out = solve(inst, budget);
      double nearest = std::numeric_limits<double>::infinity();
      for (const Solution& sol : out.solutions) {
        nearest = std::min(nearest, (sol.x - s.x).lpNorm<Eigen::Infinity>());
      }
      std::ostringstream got;
      got << "residual=" << r << " " << to_string(out.status)
          << " nearest=" << nearest;
      report.cases.push_back(make_case(
          e.name, "known-solution q=" + format_vector(s.q),
          "residual <= 1e-8 and rediscovered within 1e-6", got.str(),
          r <= kSolutionTol && nearest < kRediscoverRadius, budget.seed,
          s.citation + " x=" + format_vector(s.x)));
    }
  }
  report.wall_seconds = timer.seconds();
  return report;
}

RunReport run_subtensor_suite(const SearchBudget& budget) {
  const Timer timer;
  RunReport report;
  report.suite = "subtensor";
  report.seed = budget.seed;
  for (const CorpusEntry& e : corpus()) {
    const ExpectedVerdict* sp0 = e.expectation(TensorClass::kSP0);
    if (!sp0) continue;
    const int n = e.tensor.dim();
    const Verdict full = check_sp0(e.tensor, budget);
    for (const IndexSet& j : supports_in_order(n)) {
      if (j.empty()) continue;
      const Tensor sub = principal_sub_tensor(e.tensor, j);
      const Verdict v = check_sp0(sub, budget);
      const std::string id = e.name + j.to_string();
      if (sp0->expected == Expectation::kHolds) {
        report.cases.push_back(make_case(id, "SP0", "not falsified",
                                         verdict_word(v), !v.falsified(),
                                         budget.seed));
      } else if (j.size() == n) {
        report.cases.push_back(make_case(
            id, "SP0-full", std::string("same as full check: ") + to_string(full.status),
            to_string(v.status), v.status == full.status, budget.seed));
      } else {
        report.cases.push_back(make_case(
            id, "SP0-sub", "recorded", verdict_word(v), true, budget.seed,
            v.falsified() ? "sub-tensor already falsified"
                          : "sub-tensor not falsified"));
      }
    }
  }
  report.wall_seconds = timer.seconds();
  return report;
}

}  // namespace qtensor
