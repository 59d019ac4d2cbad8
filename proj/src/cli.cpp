// Command line driver.

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "realsing/cli.hpp"

namespace realsing {

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw InputError("cannot read '" + path + "'");
  return ss.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Real singularities of implicit polynomial ODE systems", "realsing"};
  std::string input;
  std::optional<unsigned> prolong_to;
  std::string reduce_flag, backend = "internal", solver, format = "text", rows = "top";
  bool timings = false;
  app.add_option("input", input, "system file")->required();
  app.add_option("--prolong", prolong_to, "prolong the system to this order");
  app.add_option("--reduce", reduce_flag, "reduce modulo the equations (default on)")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option("--backend", backend, "satisfiability backend")->check(CLI::IsMember({"internal", "external"}));
  app.add_option("--solver", solver, "SMT-LIB solver command (default $REALSING_SMT_SOLVER)");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--rows", rows, "Vessiot rows: top order equations or all")->check(CLI::IsMember({"top", "all"}));
  app.add_flag("--timings", timings, "report the elapsed time");
  app.set_version_flag("--version", tool_version());

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    auto start = std::chrono::steady_clock::now();
    SystemFile file;
    try {
      file = parse_system(read_file(input));
      file.system.validate();
    } catch (const ParseError& e) {
      err << input << (e.line() ? ":" : ": ") << e.what() << "\n";
      return 1;
    } catch (const std::invalid_argument& e) {
      err << input << ": " << e.what() << "\n";
      return 1;
    }

    bool reduce = reduce_flag.empty() ? file.reduce.value_or(true) : reduce_flag == "on";
    unsigned target = prolong_to ? *prolong_to : file.prolong.value_or(file.system.order);
    if (target < file.system.order) {
      err << "realsing: cannot prolong to order " << target << " below the system order " << file.system.order
          << "\n";
      return 1;
    }
    DifferentialSystem sys = target > file.system.order ? prolong(file.system, target, reduce) : file.system;

    SingularOptions options;
    options.rows = rows == "all" ? RowSelection::All : RowSelection::TopOrder;
    options.reduce = reduce;
    if (!solver.empty()) {
      options.decide.solver = SolverConfig{solver};
    } else {
      options.decide.solver = solver_from_environment();
    }
    if (backend == "external") {
      if (!options.decide.solver) {
        err << "realsing: the external backend needs --solver or REALSING_SMT_SOLVER\n";
        return 1;
      }
      options.decide.backend = Backend::External;
    }

    SingularAnalysis analysis = analyze(sys, options);
    ReportDocument doc = make_report(sys, analysis);
    doc.backend = backend;
    doc.reduce = reduce;
    doc.rows = rows;
    if (timings)
      doc.elapsed_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out << serialize_report(doc, format == "json" ? ReportFormat::Json : ReportFormat::Text);
    return 0;
  } catch (const InputError& e) {
    err << "realsing: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "realsing: internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace realsing
