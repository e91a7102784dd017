#include "qtensor/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "qtensor/checkers.hpp"
#include "qtensor/corpus.hpp"
#include "qtensor/harness.hpp"
#include "qtensor/io.hpp"
#include "qtensor/tcp.hpp"

namespace qtensor {
namespace {

struct Options {
  SearchBudget budget;
  bool machine = false;
  std::string path;
  std::vector<std::string> classes;
  std::string suite;
  std::string export_dir;
  int trials = 500;
};

void add_budget_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.budget.seed, "Random seed")->capture_default_str();
  cmd->add_option("--multistarts", o.budget.multistarts,
                  "Newton starts per support / refinements per region")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--samples", o.budget.samples, "Random samples per search region")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--tol-feas", o.budget.feas_tol, "Feasibility tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--tol-accept", o.budget.accept_tol, "Residual acceptance tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--machine", o.machine, "Emit key=value records");
}

int cmd_solve(const Options& o, std::ostream& out) {
  const TcpInstance inst = read_instance_file(o.path);
  const SolveOutcome outcome = solve(inst, o.budget);
  const SolveStats& st = outcome.stats;
  if (o.machine) {
    out << std::setprecision(17);
    out << "status=" << to_string(outcome.status)
        << " solutions=" << outcome.solutions.size()
        << " supports_explored=" << st.supports_explored
        << " supports_refuted=" << st.supports_refuted
        << " newton_iterations=" << st.newton_iterations
        << " seed=" << o.budget.seed << "\n";
    int k = 1;
    for (const Solution& s : outcome.solutions) {
      out << "solution=" << k++ << " x=" << format_vector(s.x)
          << " support=" << s.support.to_string()
          << " slack=" << format_vector(s.slack) << " residual=" << s.residual
          << "\n";
    }
    if (!outcome.note.empty()) out << "note=\"" << outcome.note << "\"\n";
  } else {
    int k = 1;
    for (const Solution& s : outcome.solutions) {
      out << "solution " << k++ << "\n"
          << "  x        " << format_vector(s.x) << "\n"
          << "  support  " << s.support.to_string() << "\n"
          << "  slack    " << format_vector(s.slack) << "\n"
          << "  residual " << s.residual << "\n";
    }
    if (!outcome.note.empty()) out << outcome.note << "\n";
    out << "supports explored " << st.supports_explored << ", refuted "
        << st.supports_refuted << ", Newton iterations " << st.newton_iterations
        << ", " << st.wall_seconds << " s\n";
    out << to_string(outcome.status) << "\n";
  }
  switch (outcome.status) {
    case SolveStatus::kSolved:
      return kExitOk;
    case SolveStatus::kCertifiedNoSolution:
      return kExitCertifiedNoSolution;
    case SolveStatus::kNoSolutionFound:
      return kExitNoSolutionFound;
  }
  return kExitNoSolutionFound;
}

int cmd_classify(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<TensorClass> classes;
  if (o.classes.empty()) {
    classes.assign(std::begin(kAllClasses), std::end(kAllClasses));
  }
  for (const std::string& name : o.classes) {
    const auto cls = parse_class(name);
    if (!cls) {
      err << "unknown class `" << name << "`; known classes:";
      for (TensorClass c : kAllClasses) err << " " << class_name(c);
      err << "\n";
      return kExitInputError;
    }
    classes.push_back(*cls);
  }
  const Tensor a = read_tensor_file(o.path);
  for (TensorClass cls : classes) {
    const Verdict v = check_class(cls, a, o.budget);
    out << (o.machine ? to_record(v) : to_text(v)) << "\n";
  }
  return kExitOk;
}

int cmd_info(const Options& o, std::ostream& out) {
  const Tensor a = read_tensor_file(o.path);
  out << "order " << a.order() << "\n"
      << "dim " << a.dim() << "\n"
      << "entries " << a.entries().size() << " (" << a.nonzero_entries().size()
      << " nonzero)\n";
  out << "diagonal";
  for (int i = 0; i < a.dim(); ++i) out << " " << a.diagonal(i);
  out << "\n";
  out << "nonnegative " << (is_nonnegative(a).certified() ? "yes" : "no") << "\n";
  for (int i = 0; i < a.dim(); ++i) {
    out << "component " << i + 1 << ": " << monomial_form(a, i).to_string()
        << "\n";
  }
  return kExitOk;
}

int report_exit(const RunReport& r, bool machine, std::ostream& out) {
  out << (machine ? r.to_records() : r.to_text());
  return r.ok() ? kExitOk : kExitMismatch;
}

int cmd_harness(const Options& o, std::ostream& out, std::ostream& err) {
  const std::string& s = o.suite;
  if (s == "theorem41" || s == "nonnegative") {
    NonnegativeSuiteOptions opts;
    opts.trials = o.trials;
    return report_exit(run_nonnegative_suite(opts, o.budget), o.machine, out);
  }
  if (s == "theorem31" || s == "sp0-consistency") {
    return report_exit(run_sp0_consistency_suite(o.budget), o.machine, out);
  }
  if (s == "theorem32" || s == "subtensor") {
    return report_exit(run_subtensor_suite(o.budget), o.machine, out);
  }
  if (s == "section5" || s == "counterexamples") {
    return report_exit(run_counterexample_suite(o.budget), o.machine, out);
  }
  if (s == "corpus") {
    return report_exit(run_corpus_suite(o.budget), o.machine, out);
  }
  err << "unknown suite `" << s
      << "`; valid: theorem31 theorem32 theorem41 section5 corpus\n";
  return kExitInputError;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Tensor complementarity problems and tensor classes", "qtensor"};
  app.require_subcommand(1, 1);
  Options o;

  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve TCP(q, A) from an instance file");
  solve_cmd->add_option("instance", o.path, "Instance file")->required();
  add_budget_flags(solve_cmd, o);

  CLI::App* classify_cmd =
      app.add_subcommand("classify", "Test tensor class membership");
  classify_cmd->add_option("tensor", o.path, "Tensor file")->required();
  classify_cmd->add_option("--classes", o.classes, "Comma-separated class names")
      ->delimiter(',');
  add_budget_flags(classify_cmd, o);

  CLI::App* corpus_cmd =
      app.add_subcommand("corpus-verify", "Check the example corpus");
  corpus_cmd->add_option("--export", o.export_dir,
                         "Also write tensor files and expected.tsv here");
  add_budget_flags(corpus_cmd, o);

  CLI::App* harness_cmd = app.add_subcommand("harness", "Run a verification suite");
  harness_cmd
      ->add_option("suite", o.suite,
                   "theorem31 theorem32 theorem41 section5 corpus")
      ->required();
  harness_cmd->add_option("--trials", o.trials, "Trials for theorem41")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_budget_flags(harness_cmd, o);

  CLI::App* info_cmd = app.add_subcommand("info", "Describe a tensor file");
  info_cmd->add_option("tensor", o.path, "Tensor file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    CLI::App* active = &app;
    for (CLI::App* sub : app.get_subcommands()) active = sub;
    err << active->help();
    return kExitInputError;
  }

  try {
    o.budget.validate();
    if (solve_cmd->parsed()) return cmd_solve(o, out);
    if (classify_cmd->parsed()) return cmd_classify(o, out, err);
    if (info_cmd->parsed()) return cmd_info(o, out);
    if (harness_cmd->parsed()) return cmd_harness(o, out, err);
    if (corpus_cmd->parsed()) {
      if (!o.export_dir.empty()) {
        export_corpus(o.export_dir);
        out << "exported corpus to " << o.export_dir << "\n";
      }
      return report_exit(run_corpus_suite(o.budget), o.machine, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace qtensor
