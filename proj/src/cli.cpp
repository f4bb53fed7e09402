#include "lmm/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lmm/report_io.hpp"
#include "lmm/rgre.hpp"

namespace lmm::cli {

namespace {

struct Options {
  std::string method = "ab2";
  int ell = 0;
  std::string problem = "dahlquist";
  std::vector<long> n;
  std::string output;
  std::string format = "csv";
  int p = 2;
  double angular_tol = 1e-4;
  RegionGrid grid;
  std::string locus_output;
  int n_theta = 2048;
  std::string error_measure = "all";
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Writes through `emit` to the --output file, or to `out` when none is given.
template <class Emit>
void write_output(const Options& opt, std::ostream& out, Emit&& emit) {
  if (opt.output.empty()) {
    emit(out);
    return;
  }
  std::ofstream file(opt.output, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + opt.output + "'");
  emit(file);
  if (!file) throw UsageError("failed writing '" + opt.output + "'");
}

long single_n(const Options& opt) {
  if (opt.n.size() != 1) throw UsageError("--n takes exactly one grid count here");
  return opt.n.front();
}

bool json_format(const Options& opt) { return opt.format == "json"; }

void cmd_solve(const Options& opt, std::ostream& out) {
  const MethodSpec method = method_from_name(opt.method);
  const Ivp problem = find_problem(opt.problem);
  const Trajectory traj = integrate(method, problem, single_n(opt));
  write_output(opt, out, [&](std::ostream& os) {
    if (json_format(opt)) {
      write_trajectory_json(os, traj, {method.name(), 0, problem.name});
    } else {
      write_trajectory_csv(os, traj);
    }
  });
}

void cmd_rgre(const Options& opt, std::ostream& out) {
  const MethodSpec method = method_from_name(opt.method);
  const Ivp problem = find_problem(opt.problem);
  if (opt.ell < 1) throw UsageError("rgre needs --ell >= 1");
  const RgreResult result = run_rgre(method, problem, single_n(opt), opt.ell);
  write_output(opt, out, [&](std::ostream& os) {
    if (json_format(opt)) {
      write_trajectory_json(os, result.combined, {method.name(), opt.ell, problem.name});
    } else {
      write_trajectory_csv(os, result.combined);
    }
  });
}

void cmd_converge(const Options& opt, std::ostream& out) {
  const MethodSpec method = method_from_name(opt.method);
  const Ivp problem = find_problem(opt.problem);
  if (opt.n.empty()) throw UsageError("converge needs --n with at least one grid count");
  for (std::size_t i = 1; i < opt.n.size(); ++i) {
    if (opt.n[i] != 2 * opt.n[i - 1]) throw UsageError("--n grid counts must double");
  }
  const ConvergenceReport report = convergence_study(method, opt.ell, problem, opt.n, {}, nullptr,
                                                     error_measure_from_name(opt.error_measure));
  write_output(opt, out, [&](std::ostream& os) {
    if (json_format(opt)) {
      write_convergence_json(os, report);
    } else {
      write_convergence_csv(os, report);
    }
  });
}

void cmd_gamma(const Options& opt, std::ostream& out) {
  const ExtrapolationScheme scheme = gamma_coefficients(opt.p, opt.ell);
  write_output(opt, out, [&](std::ostream& os) { os << format_gamma(scheme) << '\n'; });
}

void cmd_stability_region(const Options& opt, std::ostream& out) {
  const LmmCoefficients coeffs = method_from_name(opt.method).coeffs;
  if (opt.grid.nx < 1 || opt.grid.ny < 1) throw UsageError("--nx/--ny must be >= 1");
  const auto samples = sample_region(coeffs, opt.ell, opt.grid);
  const ReportMetadata meta{coeffs.name(), opt.ell, ""};
  write_output(opt, out, [&](std::ostream& os) {
    if (json_format(opt)) {
      write_region_json(os, samples, meta);
    } else {
      write_region_csv(os, samples);
    }
  });
  if (!opt.locus_output.empty()) {
    const BoundaryLocus locus = boundary_locus(coeffs, opt.n_theta);
    Options locus_opt = opt;
    locus_opt.output = opt.locus_output;
    write_output(locus_opt, out, [&](std::ostream& os) {
      if (json_format(opt)) {
        write_locus_json(os, locus, meta);
      } else {
        write_locus_csv(os, locus);
      }
    });
  }
}

void cmd_stability_angle(const Options& opt, std::ostream& out) {
  const LmmCoefficients coeffs = method_from_name(opt.method).coeffs;
  const auto angle = alpha_angle(coeffs, opt.ell, opt.angular_tol);
  write_output(opt, out, [&](std::ostream& os) {
    if (angle) {
      os << std::fixed << std::setprecision(4) << *angle << '\n';
    } else {
      os << "none\n";
    }
  });
}

void cmd_root_condition(const Options& opt, std::ostream& out) {
  const LmmCoefficients coeffs = method_from_name(opt.method).coeffs;
  const RootConditionReport report = check_root_condition(coeffs);
  write_output(opt, out, [&](std::ostream& os) {
    os << (report.satisfied ? "true" : "false");
    if (!report.satisfied) os << " (" << report.diagnostic << ")";
    os << '\n';
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear multistep methods with repeated global Richardson extrapolation",
               args.empty() ? "lmmrgre" : args.front()};
  app.require_subcommand(1);
  Options opt;

  auto add_method = [&](CLI::App* sub) {
    sub->add_option("--method", opt.method, "family + order, e.g. ab2, am3, bdf5");
  };
  auto add_ell = [&](CLI::App* sub, int min_ell) {
    sub->add_option("--ell", opt.ell, "number of Richardson extrapolations")
        ->check(CLI::Range(min_ell, 8));
  };
  auto add_problem = [&](CLI::App* sub) {
    sub->add_option("--problem", opt.problem, "dahlquist | lotka-volterra | van-der-pol");
  };
  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--output,-o", opt.output, "output file (stdout when omitted)");
    sub->add_option("--format", opt.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_n = [&](CLI::App* sub, bool list) {
    sub->add_option("--n", opt.n, list ? "comma-separated doubling grid counts" : "step count")
        ->delimiter(',')
        ->required()
        ->check(CLI::PositiveNumber);
  };

  auto* solve = app.add_subcommand("solve", "integrate one problem with a base method");
  add_method(solve);
  add_problem(solve);
  add_n(solve, false);
  add_io(solve);

  auto* rgre = app.add_subcommand("rgre", "RGRE-combined trajectory on the coarse grid");
  add_method(rgre);
  add_ell(rgre, 1);
  add_problem(rgre);
  add_n(rgre, false);
  add_io(rgre);

  auto* converge = app.add_subcommand("converge", "error/order table over doubling grids");
  add_method(converge);
  add_ell(converge, 0);
  add_problem(converge);
  add_n(converge, true);
  add_io(converge);
  converge->add_option("--error", opt.error_measure, "all grid points | final time")
      ->check(CLI::IsMember({"all", "final"}));

  auto* gamma = app.add_subcommand("gamma", "print the extrapolation weights");
  gamma->add_option("--p", opt.p, "base order")->check(CLI::Range(1, 64));
  gamma->add_option("--ell", opt.ell, "number of extrapolations")
      ->required()
      ->check(CLI::Range(1, 8));
  gamma->add_option("--output,-o", opt.output, "output file (stdout when omitted)");

  auto* region = app.add_subcommand("stability-region", "sample the stability region");
  add_method(region);
  add_ell(region, 0);
  add_io(region);
  region->add_option("--re-min", opt.grid.re_min);
  region->add_option("--re-max", opt.grid.re_max);
  region->add_option("--im-min", opt.grid.im_min);
  region->add_option("--im-max", opt.grid.im_max);
  region->add_option("--nx", opt.grid.nx);
  region->add_option("--ny", opt.grid.ny);
  region->add_option("--locus-output", opt.locus_output, "also write the boundary locus");
  region->add_option("--n-theta", opt.n_theta, "boundary locus samples")
      ->check(CLI::Range(16, 1 << 22));

  auto* angle = app.add_subcommand("stability-angle", "A(alpha) angle in degrees");
  add_method(angle);
  add_ell(angle, 0);
  angle->add_option("--tol", opt.angular_tol, "bisection tolerance in degrees")
      ->check(CLI::PositiveNumber);
  angle->add_option("--output,-o", opt.output, "output file (stdout when omitted)");

  auto* root = app.add_subcommand("root-condition", "check zero-stability");
  add_method(root);
  root->add_option("--output,-o", opt.output, "output file (stdout when omitted)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    // Reject unknown names before any computation.
    if (!gamma->parsed()) method_from_name(opt.method);
    if (solve->parsed() || rgre->parsed() || converge->parsed()) find_problem(opt.problem);

    if (solve->parsed()) cmd_solve(opt, out);
    if (rgre->parsed()) cmd_rgre(opt, out);
    if (converge->parsed()) cmd_converge(opt, out);
    if (gamma->parsed()) cmd_gamma(opt, out);
    if (region->parsed()) cmd_stability_region(opt, out);
    if (angle->parsed()) cmd_stability_angle(opt, out);
    if (root->parsed()) cmd_root_condition(opt, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace lmm::cli
