#include "subguard_cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "subguard/degree.hpp"
#include "subguard/error.hpp"
#include "subguard/io.hpp"
#include "subguard/kind.hpp"
#include "subguard/simulate.hpp"
#include "subguard/verify.hpp"

namespace subguard::cli {

namespace {

struct Flags {
  std::string scenario;
  std::string out;
  std::string format = "json";
  double dt = 1e-3;
  double tmax = 100.0;
  std::optional<int> grid_points;
  std::optional<double> tol;
};

void add_flags(CLI::App& sub, Flags& f) {
  sub.add_option("--scenario", f.scenario, "Scenario JSON file")->required();
  sub.add_option("--out", f.out, "Write the artifact here instead of stdout");
  sub.add_option("--format", f.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub.add_option("--dt", f.dt, "Simulation time step")->check(CLI::PositiveNumber);
  sub.add_option("--tmax", f.tmax, "Simulation horizon")->check(CLI::PositiveNumber);
  sub.add_option("--grid-points", f.grid_points,
                 "Nodes per axis for barrier sampling and oracle grids")
      ->check(CLI::Range(1, 100000));
  sub.add_option("--tol", f.tol,
                 "Barrier band scale (classify, solve, barrier, simulate) or oracle "
                 "margin (verify)")
      ->check(CLI::NonNegativeNumber);
}

Tolerances tolerances(const Flags& f) {
  Tolerances tol;
  if (f.tol) tol.barrier_scale = *f.tol;
  return tol;
}

void json_only(const Flags& f, const std::string& command) {
  if (f.format != "json") {
    throw Error(ErrorCode::InvalidArgument, command + " only supports --format json");
  }
}

BarrierGrid default_grid(const Scenario& s, int points) {
  const Vec l1 = lateral(s.defender1);
  const Vec l2 = lateral(s.defender2);
  const Vec center = 0.5 * (l1 + l2);
  const Vec half = 0.5 * (l1 - l2).cwiseAbs();
  double widest = half.maxCoeff();
  if (widest <= 0.0) widest = 1.0;
  BarrierGrid grid;
  grid.lower.resize(center.size());
  grid.upper.resize(center.size());
  for (Eigen::Index k = 0; k < center.size(); ++k) {
    const double h = 3.0 * (half(k) > 0.0 ? half(k) : widest);
    grid.lower(k) = center(k) - h;
    grid.upper(k) = center(k) + h;
  }
  grid.resolution.assign(static_cast<std::size_t>(center.size()), points);
  return grid;
}

std::string classify(const Flags& f) {
  json_only(f, "classify");
  const Tolerances tol = tolerances(f);
  const Scenario s = canonicalize(load_scenario(f.scenario, tol), tol).scenario;
  return kind_to_json(evaluate_kind(s, {tol})) + "\n";
}

std::string solve(const Flags& f) {
  json_only(f, "solve");
  const Tolerances tol = tolerances(f);
  const CanonicalScenario c = canonicalize(load_scenario(f.scenario, tol), tol);
  const KindOutcome kind = evaluate_kind(c.scenario, {tol});
  switch (kind.verdict) {
    case KindVerdict::DefendersWin:
      return solution_to_json(solve_dws(c.scenario, tol), c.transform) + "\n";
    case KindVerdict::OnBarrier:
      return barrier_otp_to_json(otp_on_barrier(c.scenario, tol), c.transform) + "\n";
    case KindVerdict::AttackerWins:
      break;
  }
  throw Error(ErrorCode::NotInDWS,
              "attacker wins from this start; no capture point exists");
}

std::string barrier(const Flags& f) {
  const Tolerances tol = tolerances(f);
  const Scenario s = canonicalize(load_scenario(f.scenario, tol), tol).scenario;
  const Barrier b(s.defender1, s.defender2, s.alpha, tol);
  const auto points = sample_barrier(b, default_grid(s, f.grid_points.value_or(101)));
  return f.format == "csv" ? barrier_to_csv(points, s.dim()) : barrier_to_json(points) + "\n";
}

std::string simulate_cmd(const Flags& f) {
  const Tolerances tol = tolerances(f);
  const Scenario s = canonicalize(load_scenario(f.scenario, tol), tol).scenario;
  const OptimalPlay play = optimal_policies(s, tol);
  SimulationOptions opts;
  opts.dt = f.dt;
  opts.t_max = f.tmax;
  opts.tol = tol;
  const Trajectory traj = simulate(s, play.policies, opts);
  return f.format == "csv" ? trajectory_to_csv(traj, s.dim()) : trajectory_to_json(traj) + "\n";
}

std::string verify(const Flags& f) {
  json_only(f, "verify");
  const Scenario s = canonicalize(load_scenario(f.scenario)).scenario;
  OracleOptions options;
  if (f.grid_points) options.points_per_axis = *f.grid_points;
  if (f.tol) options.margin = *f.tol;
  return verification_to_json(verify_scenario(s, options)) + "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-defender subspace guarding: barriers, capture points, simulation"};
  app.name("subguard");
  app.require_subcommand(1, 1);

  Flags flags;
  struct Command {
    const char* name;
    const char* help;
    std::string (*action)(const Flags&);
  };
  const Command commands[] = {
      {"classify", "Decide which team wins from the initial positions", classify},
      {"solve", "Capture point and optimal headings", solve},
      {"barrier", "Sample the barrier surface", barrier},
      {"simulate", "Simulate optimal play", simulate_cmd},
      {"verify", "Compare closed forms with brute-force oracles", verify},
  };
  std::vector<CLI::App*> subs;
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_flags(*sub, flags);
    subs.push_back(sub);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << error_to_json("UsageError", e.what()) << "\n";
    return kExitInvalidInput;
  }

  try {
    std::string artifact;
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (subs[i]->parsed()) artifact = commands[i].action(flags);
    }
    if (flags.out.empty()) {
      out << artifact;
    } else {
      std::ofstream file(flags.out, std::ios::binary);
      if (!(file << artifact)) {
        throw Error(ErrorCode::InvalidArgument, "cannot write " + flags.out);
      }
    }
    return kExitOk;
  } catch (const Error& e) {
    err << error_to_json(to_string(e.code()), e.what()) << "\n";
    const bool input_problem =
        is_validation_error(e.code()) || e.code() == ErrorCode::InvalidArgument;
    return input_problem ? kExitInvalidInput : kExitNumericFailure;
  } catch (const std::exception& e) {
    err << error_to_json("InternalError", e.what()) << "\n";
    return kExitNumericFailure;
  }
}

}  // namespace subguard::cli
