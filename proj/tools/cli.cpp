#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "CLI11.hpp"
#include "katu/approx.hpp"
#include "katu/exact.hpp"
#include "katu/oracle.hpp"
#include "katu/solver.hpp"

namespace katu::cli {

namespace {

constexpr int kUsageError = 2;

/// Bad input files, specs or configs. Carries a ready-to-print message.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string optional_number(const std::optional<double>& value) {
  return value ? format_number(*value) : std::string();
}

Side parse_side(const std::string& side) {
  if (side == "left") return Side::left;
  if (side == "right") return Side::right;
  throw InputError("side: expected 'left' or 'right', got '" + side + "'");
}

double parse_double(std::string_view text, const std::string& what) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw InputError(what + ": '" + std::string(text) + "' is not a number");
  }
  return value;
}

// ---------------------------------------------------------------------------
// Function specs: power:<v>, testfn, cos, zero, csv:<path>
// ---------------------------------------------------------------------------

struct FunctionSpec {
  enum class Kind { power, testfn, cos, zero, csv } kind = Kind::testfn;
  double v = 0.0;
  std::string path;
};

FunctionSpec parse_function_spec(const std::string& text) {
  FunctionSpec spec;
  if (text == "testfn") {
    spec.kind = FunctionSpec::Kind::testfn;
  } else if (text == "cos") {
    spec.kind = FunctionSpec::Kind::cos;
  } else if (text == "zero") {
    spec.kind = FunctionSpec::Kind::zero;
  } else if (text.rfind("power:", 0) == 0) {
    spec.kind = FunctionSpec::Kind::power;
    spec.v = parse_double(std::string_view(text).substr(6), "fn power exponent");
  } else if (text.rfind("csv:", 0) == 0 && text.size() > 4) {
    spec.kind = FunctionSpec::Kind::csv;
    spec.path = text.substr(4);
  } else {
    throw InputError("fn: unknown function spec '" + text +
                     "' (expected power:<v>, testfn, cos, zero or csv:<path>)");
  }
  return spec;
}

/// Reads a `t,x` CSV whose rows must coincide with the grid points.
SampledFunction read_samples(const std::string& path, const Grid& grid) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("fn: cannot open '" + path + "'");
  }
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> values;
  const double tol = 1e-9 * (std::abs(grid.back()) + std::abs(grid.front()) + grid.spacing());
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    if (line_no == 1 && line.rfind("t,", 0) == 0) continue;  // header
    const auto comma = line.find(',');
    const std::string where = path + ":" + std::to_string(line_no);
    if (comma == std::string::npos) {
      throw InputError(where + ": expected 't,x'");
    }
    const double t = parse_double(std::string_view(line).substr(0, comma), where + " t");
    const double x = parse_double(std::string_view(line).substr(comma + 1), where + " x");
    if (values.size() >= grid.size() || std::abs(t - grid[values.size()]) > tol) {
      throw InputError(where + ": t = " + format_number(t) + " does not match the grid");
    }
    values.push_back(x);
  }
  if (values.size() != grid.size()) {
    throw InputError(path + ": " + std::to_string(values.size()) + " rows, grid has " +
                     std::to_string(grid.size()) + " points");
  }
  return SampledFunction(grid, std::move(values));
}

struct Integrand {
  SampledFunction samples;
  std::optional<RealFunction> callable;  // absent for csv data
  // Closed form of the integral on the requested side, when one exists.
  std::function<std::optional<double>(double)> closed_form;
};

Integrand build_integrand(const FunctionSpec& spec, const OperatorParams& params, Side side,
                          const Grid& grid) {
  const double a = params.a();
  const double b = params.b();
  const double rho = params.rho();
  RealFunction x;
  std::function<std::optional<double>(double)> closed = [](double) { return std::nullopt; };
  switch (spec.kind) {
    case FunctionSpec::Kind::power: {
      const double v = spec.v;
      if (!(v > -1.0)) {
        throw DomainError("v", "power exponent must be > -1");
      }
      if (side == Side::left) {
        x = [=](double t) { return std::pow(power_gap(t, a, rho), v); };
        closed = [=](double t) { return std::optional(exact_left_power(params, v, t)); };
      } else {
        x = [=](double t) { return std::pow(power_gap(b, t, rho), v); };
        closed = [=](double t) { return std::optional(exact_right_power(params, v, t)); };
      }
      break;
    }
    case FunctionSpec::Kind::testfn:
      x = [=](double t) { return std::pow(t, 2.0 * rho); };
      if (side == Side::left && a == 0.0) {
        closed = [=](double t) { return std::optional(exact_testfn_integral(params, t)); };
      }
      break;
    case FunctionSpec::Kind::cos:
      x = [](double t) { return std::cos(t); };
      break;
    case FunctionSpec::Kind::zero:
      x = [](double) { return 0.0; };
      closed = [](double) { return std::optional(0.0); };
      break;
    case FunctionSpec::Kind::csv:
      return {read_samples(spec.path, grid), std::nullopt, closed};
  }
  SampledFunction samples = sample(grid, x);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i])) {
      throw DomainError("fn", "sample at t = " + format_number(grid[i]) + " is not finite");
    }
  }
  return {std::move(samples), x, closed};
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

struct OperatorFlags {
  double alpha = 0.0;
  double rho = 0.0;
  double a = 0.0;
  double b = 0.0;
};

struct SeriesFlags {
  OperatorFlags op;
  int N = 0;
  std::size_t points = 501;
  std::string fn = "testfn";
  std::string side = "left";
  std::optional<double> M;
  bool oracle = false;
};

struct ComparisonRow {
  double t;
  std::optional<double> exact;
  double approx;
  std::optional<double> envelope;
};

std::vector<ComparisonRow> run_comparison(const SeriesFlags& f, bool want_reference) {
  const OperatorParams params = make_params(f.op.alpha, f.op.rho, f.op.a, f.op.b);
  const Side side = parse_side(f.side);
  const FunctionSpec spec = parse_function_spec(f.fn);
  const Grid grid = make_uniform_grid(params.a(), params.b(), f.points);
  const Integrand x = build_integrand(spec, params, side, grid);

  const ApproxResult r = side == Side::left ? approx_left(params, x.samples, f.N, f.M)
                                            : approx_right(params, x.samples, f.N, f.M);
  std::vector<ComparisonRow> rows;
  rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    ComparisonRow row{t, std::nullopt, r.values[i], std::nullopt};
    if (r.error_envelope) {
      row.envelope = (*r.error_envelope)[i];
    }
    if (want_reference) {
      if (f.oracle) {
        if (x.callable) {
          row.exact = side == Side::left ? oracle_left(params, *x.callable, t)
                                         : oracle_right(params, *x.callable, t);
        } else {
          row.exact = side == Side::left ? oracle_left(params, x.samples, t)
                                         : oracle_right(params, x.samples, t);
        }
      } else {
        row.exact = x.closed_form(t);
      }
    }
    rows.push_back(row);
  }
  return rows;
}

void add_operator_flags(CLI::App& cmd, OperatorFlags& op, bool with_a) {
  cmd.add_option("--alpha", op.alpha, "fractional order alpha > 0")->required();
  cmd.add_option("--rho", op.rho, "deformation parameter rho > 0")->required();
  if (with_a) {
    cmd.add_option("--a", op.a, "left endpoint a >= 0")->capture_default_str();
  }
  cmd.add_option("--b", op.b, "right endpoint b > a")->required();
}

void add_series_flags(CLI::App& cmd, SeriesFlags& f) {
  add_operator_flags(cmd, f.op, true);
  cmd.add_option("--N", f.N, "truncation order N >= 1")->required();
  cmd.add_option("--points", f.points, "uniform grid points")->capture_default_str();
  cmd.add_option("--fn", f.fn, "power:<v> | testfn | cos | zero | csv:<path>")->capture_default_str();
  cmd.add_option("--side", f.side, "left | right")->capture_default_str();
  cmd.add_option("--M", f.M, "bound on |x'|; adds the error envelope");
}

std::string render_exact(const OperatorFlags& op, double v, const std::string& side_text,
                         const std::vector<double>& ts) {
  const OperatorParams params = make_params(op.alpha, op.rho, op.a, op.b);
  const Side side = parse_side(side_text);
  std::string csv = "t,value\n";
  for (double t : ts) {
    const double value = side == Side::left ? exact_left_power(params, v, t)
                                            : exact_right_power(params, v, t);
    csv += format_number(t) + "," + format_number(value) + "\n";
  }
  return csv;
}

std::string render_approx(const SeriesFlags& f) {
  const auto rows = run_comparison(f, false);
  std::string csv = f.M ? "t,approx,envelope\n" : "t,approx\n";
  for (const auto& row : rows) {
    csv += format_number(row.t) + "," + format_number(row.approx);
    if (f.M) csv += "," + optional_number(row.envelope);
    csv += "\n";
  }
  return csv;
}

std::string render_compare(const SeriesFlags& f) {
  const auto rows = run_comparison(f, true);
  std::string csv = "t,exact,approx,abs_err,envelope\n";
  for (const auto& row : rows) {
    std::optional<double> err;
    if (row.exact) err = std::abs(row.approx - *row.exact);
    csv += format_number(row.t) + "," + optional_number(row.exact) + "," +
           format_number(row.approx) + "," + optional_number(err) + "," +
           optional_number(row.envelope) + "\n";
  }
  return csv;
}

struct SolveFlags {
  OperatorFlags op;
  int N = 0;
  std::size_t points = 501;
  std::string rhs = "paper";
  double x0 = 0.0;
};

std::string render_solve(const SolveFlags& f) {
  const OperatorParams params = make_params(f.op.alpha, f.op.rho, 0.0, f.op.b);
  RealFunction rhs;
  RealFunction solution;
  if (f.rhs == "zero") {
    rhs = [](double) { return 0.0; };
    solution = [](double) { return 0.0; };
  } else {
    double m = 2.0;
    if (f.rhs.rfind("manufactured:", 0) == 0) {
      m = parse_double(std::string_view(f.rhs).substr(13), "rhs exponent");
      if (!(m > -1.0)) {
        throw DomainError("rhs", "manufactured exponent must be > -1");
      }
    } else if (f.rhs != "paper") {
      throw InputError("rhs: unknown spec '" + f.rhs + "' (expected paper, zero or manufactured:<m>)");
    }
    const double rho = params.rho();
    solution = [=](double t) { return std::pow(t, rho * m); };
    rhs = [=](double t) { return std::pow(t, rho * m) + exact_left_power(params, m, t); };
  }
  const IntegralEquationProblem problem(params, rhs, f.x0);
  const SolverSolution s = solve_integral_equation(problem, make_uniform_grid(0.0, params.b(), f.points), f.N);
  std::string csv = "t,x,exact\n";
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    csv += format_number(s.grid[i]) + "," + format_number(s.x[i]) + "," +
           format_number(solution(s.grid[i])) + "\n";
  }
  return csv;
}

// ---------------------------------------------------------------------------
// Sweep configs: blank-line separated stanzas of key=value, '#' comments.
// ---------------------------------------------------------------------------

struct SweepCase {
  std::string id;
  std::size_t line = 0;
  SeriesFlags flags;
  std::vector<int> orders;
};

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int parse_int(const std::string& text, const std::string& what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw InputError(what + ": '" + text + "' is not an integer");
  }
  return value;
}

std::vector<SweepCase> parse_sweep_config(std::istream& in) {
  std::vector<SweepCase> cases;
  std::optional<SweepCase> current;
  bool has_alpha = false;
  bool has_rho = false;

  auto finish = [&]() {
    if (!current) return;
    SweepCase& c = *current;
    const std::string where = "stanza '" + c.id + "' (line " + std::to_string(c.line) + ")";
    if (!has_alpha || !has_rho || c.orders.empty()) {
      throw InputError(where + ": alpha, rho and N are required");
    }
    try {
      make_params(c.flags.op.alpha, c.flags.op.rho, c.flags.op.a, c.flags.op.b);
      parse_side(c.flags.side);
      parse_function_spec(c.flags.fn);
      if (c.flags.points < 2) throw DomainError("points", "a grid needs at least 2 points");
      for (int N : c.orders) {
        if (N < 1) throw DomainError("N", "truncation order must be >= 1");
      }
    } catch (const std::exception& e) {
      throw InputError(where + ": " + e.what());
    }
    cases.push_back(std::move(c));
    current.reset();
  };

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) {
      if (trim(raw).empty()) finish();
      continue;
    }
    const std::string where = "line " + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InputError(where + ": expected key=value");
    }
    if (!current) {
      current.emplace();
      current->id = "case" + std::to_string(cases.size() + 1);
      current->line = line_no;
      current->flags.op.b = 0.5;
      has_alpha = has_rho = false;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    SeriesFlags& f = current->flags;
    if (key == "case") {
      current->id = value;
    } else if (key == "alpha") {
      f.op.alpha = parse_double(value, where + " alpha");
      has_alpha = true;
    } else if (key == "rho") {
      f.op.rho = parse_double(value, where + " rho");
      has_rho = true;
    } else if (key == "a") {
      f.op.a = parse_double(value, where + " a");
    } else if (key == "b") {
      f.op.b = parse_double(value, where + " b");
    } else if (key == "N") {
      std::stringstream list(value);
      std::string item;
      while (std::getline(list, item, ',')) {
        current->orders.push_back(parse_int(trim(item), where + " N"));
      }
    } else if (key == "points") {
      const int points = parse_int(value, where + " points");
      if (points < 2) throw InputError(where + ": points must be >= 2");
      f.points = static_cast<std::size_t>(points);
    } else if (key == "fn") {
      f.fn = value;
    } else if (key == "side") {
      f.side = value;
    } else if (key == "M") {
      f.M = parse_double(value, where + " M");
    } else if (key == "oracle") {
      if (value != "true" && value != "false") throw InputError(where + ": oracle must be true or false");
      f.oracle = value == "true";
    } else {
      throw InputError(where + ": unknown key '" + key + "'");
    }
  }
  finish();
  return cases;
}

struct CaseOutput {
  std::string rows;
  std::string summary;
};

CaseOutput run_sweep_case(const SweepCase& c) {
  CaseOutput out;
  for (int N : c.orders) {
    SeriesFlags f = c.flags;
    f.N = N;
    const auto rows = run_comparison(f, true);
    std::optional<double> worst;
    const std::string prefix = c.id + "," + format_number(f.op.alpha) + "," +
                               format_number(f.op.rho) + "," + std::to_string(N) + ",";
    for (const auto& row : rows) {
      std::optional<double> err;
      if (row.exact) {
        err = std::abs(row.approx - *row.exact);
        worst = std::max(worst.value_or(0.0), *err);
      }
      out.rows += prefix + format_number(row.t) + "," + optional_number(row.exact) + "," +
                  format_number(row.approx) + "," + optional_number(err) + "," +
                  optional_number(row.envelope) + "\n";
    }
    out.summary += "summary," + c.id + "," + std::to_string(N) + ",max_abs_err=" +
                   (worst ? format_number(*worst) : std::string("n/a")) + "\n";
  }
  return out;
}

std::pair<std::string, std::string> render_sweep(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("sweep: cannot open '" + path + "'");
  }
  const std::vector<SweepCase> cases = parse_sweep_config(in);
  std::vector<std::future<CaseOutput>> jobs;
  jobs.reserve(cases.size());
  for (const auto& c : cases) {
    jobs.push_back(std::async(std::launch::async, run_sweep_case, std::cref(c)));
  }
  std::string csv = "case_id,alpha,rho,N,t,exact,approx,abs_err,envelope\n";
  std::string summary;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    try {
      CaseOutput o = jobs[i].get();
      csv += o.rows;
      summary += o.summary;
    } catch (const std::exception& e) {
      // drain the remaining jobs before reporting
      for (std::size_t j = i + 1; j < jobs.size(); ++j) {
        try { jobs[j].get(); } catch (...) {}
      }
      throw InputError("sweep: case '" + cases[i].id + "': " + e.what());
    }
  }
  return {csv, summary};
}

void emit(const std::string& data, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << data;
    out.flush();
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    throw InputError("out: cannot write '" + out_path + "'");
  }
  file << data;
  if (!file.flush()) {
    throw InputError("out: write to '" + out_path + "' failed");
  }
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, result.ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Katugampola fractional integrals: closed forms, series approximation, solver"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "write CSV to this file instead of standard output");

  OperatorFlags exact_op;
  double exact_v = 0.0;
  std::string exact_side = "left";
  std::vector<double> exact_ts;
  auto* exact = app.add_subcommand("exact", "closed-form integrals of power functions");
  add_operator_flags(*exact, exact_op, true);
  exact->add_option("--v", exact_v, "exponent v > -1")->required();
  exact->add_option("--side", exact_side, "left | right")->capture_default_str();
  exact->add_option("--t", exact_ts, "evaluation points (repeat or comma-separated)")
      ->required()
      ->delimiter(',');

  SeriesFlags approx_flags;
  auto* approx = app.add_subcommand("approx", "truncated-series approximation on a uniform grid");
  add_series_flags(*approx, approx_flags);

  SeriesFlags compare_flags;
  auto* compare = app.add_subcommand("compare", "approximation against closed form or oracle");
  add_series_flags(*compare, compare_flags);
  compare->add_flag("--oracle", compare_flags.oracle, "reference by direct quadrature");

  SolveFlags solve_flags;
  auto* solve = app.add_subcommand("solve", "solve I x + x = f, x(0) = x0, from 0 to b");
  add_operator_flags(*solve, solve_flags.op, false);
  solve->add_option("--N", solve_flags.N, "truncation order N >= 1")->required();
  solve->add_option("--points", solve_flags.points, "uniform grid points")->capture_default_str();
  solve->add_option("--rhs", solve_flags.rhs, "paper | zero | manufactured:<m>")->capture_default_str();
  solve->add_option("--x0", solve_flags.x0, "initial value")->capture_default_str();

  std::string config_path;
  auto* sweep = app.add_subcommand("sweep", "run a convergence sweep from a config file");
  sweep->add_option("config", config_path, "config file")->required();

  for (auto* cmd : {exact, approx, compare, solve, sweep}) {
    cmd->add_option("--out", out_path, "write CSV to this file instead of standard output");
  }

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    std::string data;
    if (exact->parsed()) {
      data = render_exact(exact_op, exact_v, exact_side, exact_ts);
    } else if (approx->parsed()) {
      data = render_approx(approx_flags);
    } else if (compare->parsed()) {
      data = render_compare(compare_flags);
    } else if (solve->parsed()) {
      data = render_solve(solve_flags);
    } else {
      auto [csv, summary] = render_sweep(config_path);
      emit(csv, out_path, out);
      err << summary;
      return 0;
    }
    emit(data, out_path, out);
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace katu::cli
