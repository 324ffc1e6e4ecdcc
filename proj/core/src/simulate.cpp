#include "subguard/simulate.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "subguard/degree.hpp"
#include "subguard/error.hpp"
#include "subguard/kind.hpp"
#include "subguard/oracle.hpp"

namespace subguard {

Policy to_point_policy(Player who, const Vec& target, double tolerance) {
  const auto slot = static_cast<std::size_t>(who);
  return Policy{
      [slot, target, tolerance](double, const GameState& s) -> Vec {
        const Vec diff = target - s.position[slot];
        const double len = diff.norm();
        if (len > tolerance) return diff / len;
        const Vec chord = target - s.start[slot];
        const double chord_len = chord.norm();
        if (chord_len > tolerance) return chord / chord_len;
        return -unit_vector(target.size(), target.size() - 1);
      },
      "to_point"};
}

Policy fixed_heading_policy(const Vec& h) {
  const double len = h.norm();
  if (len == 0.0) {
    throw Error(ErrorCode::InvalidPolicy, "fixed heading must be nonzero");
  }
  const Vec unit = h / len;
  return Policy{[unit](double, const GameState&) { return unit; }, "fixed_heading"};
}

namespace {

// Smallest s in [0, 1] with |r0 + s (r1 - r0)| <= eps, if any.
std::optional<double> capture_fraction(const Vec& r0, const Vec& r1, double eps) {
  if (r0.norm() <= eps) return 0.0;
  const Vec delta = r1 - r0;
  const double a = delta.squaredNorm();
  if (a == 0.0) return std::nullopt;
  const double b = r0.dot(delta);
  const double c = r0.squaredNorm() - eps * eps;
  const double disc = b * b - a * c;
  if (disc < 0.0) return std::nullopt;
  const double s = (-b - std::sqrt(disc)) / a;
  if (s < 0.0 || s > 1.0) return std::nullopt;
  return s;
}

Vec checked_heading(const Policy& policy, double t, const GameState& state,
                    Eigen::Index n, const Tolerances& tol, const char* who) {
  Vec h = policy(t, state);
  if (h.size() != n || !h.allFinite() ||
      std::abs(h.norm() - 1.0) > tol.unit_heading) {
    throw Error(ErrorCode::InvalidPolicy,
                std::string(who) + " policy returned a non-unit heading");
  }
  return h;
}

}  // namespace

Trajectory simulate(const Scenario& scenario, const PolicySet& policies,
                    const SimulationOptions& options) {
  if (!(options.dt > 0.0) || !(options.t_max > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "dt and t_max must be positive");
  }
  validate(scenario, options.tol);
  if (!scenario.is_canonical(options.tol)) {
    throw Error(ErrorCode::NotCanonical, "simulate expects a canonical scenario");
  }
  const double dt = options.dt;
  const double v_d = scenario.defender_speed();
  const double v_a = scenario.attacker_speed();
  const double eps_capture = options.eps_capture.value_or(v_d * dt);
  const double eps_geometry = options.eps_geometry.value_or(v_a * dt);
  if (eps_capture < 0.0 || eps_geometry < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "event tolerances must be nonnegative");
  }
  const Eigen::Index n = scenario.dim();

  GameState state;
  state.position = {scenario.defender1, scenario.defender2, scenario.attacker};
  state.start = state.position;

  Trajectory traj;
  traj.dt = dt;
  auto record = [&] {
    if (options.record_samples) traj.samples.push_back({state.t, state.position});
  };
  record();

  auto finish_capture = [&](int by, double t, const Vec& point) {
    traj.outcome.kind = EventKind::Captured;
    traj.outcome.time = t;
    traj.outcome.point = point;
    traj.outcome.captured_by = by;
    traj.outcome.arrival_coincident = height(point) <= eps_geometry;
    return traj;
  };

  for (int i = 0; i < 2; ++i) {
    if ((state.position[i] - state.position[2]).norm() <= eps_capture) {
      return finish_capture(i + 1, 0.0, state.position[2]);
    }
  }

  const auto steps = static_cast<long long>(std::ceil(options.t_max / dt - 1e-9));
  for (long long k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const Vec h1 = checked_heading(policies.defender1, t, state, n, options.tol, "defender 1");
    const Vec h2 = checked_heading(policies.defender2, t, state, n, options.tol, "defender 2");
    const Vec ha = checked_heading(policies.attacker, t, state, n, options.tol, "attacker");

    const std::array<Vec, 3> before = state.position;
    std::array<Vec, 3> after = {before[0] + v_d * dt * h1, before[1] + v_d * dt * h2,
                                before[2] + v_a * dt * ha};

    double s_capture = std::numeric_limits<double>::infinity();
    int by = 0;
    for (int i = 0; i < 2; ++i) {
      if (auto s = capture_fraction(before[i] - before[2], after[i] - after[2], eps_capture)) {
        if (*s < s_capture) {
          s_capture = *s;
          by = i + 1;
        }
      }
    }
    double s_arrive = std::numeric_limits<double>::infinity();
    if (height(after[2]) <= 0.0) {
      const double h0 = height(before[2]);
      s_arrive = h0 / (h0 - height(after[2]));
    }

    state.position = after;
    state.t = static_cast<double>(k + 1) * dt;
    record();

    if (by != 0 && s_capture <= s_arrive) {
      return finish_capture(by, t + s_capture * dt,
                            before[2] + s_capture * (after[2] - before[2]));
    }
    if (std::isfinite(s_arrive)) {
      traj.outcome.kind = EventKind::Arrived;
      traj.outcome.time = t + s_arrive * dt;
      traj.outcome.point = before[2] + s_arrive * (after[2] - before[2]);
      return traj;
    }
  }

  traj.outcome.kind = EventKind::Timeout;
  traj.outcome.time = state.t;
  traj.outcome.point = state.position[2];
  return traj;
}

OptimalPlay optimal_policies(const Scenario& scenario, const Tolerances& tol) {
  const KindOutcome kind = evaluate_kind(scenario, {tol});
  OptimalPlay play;
  switch (kind.verdict) {
    case KindVerdict::DefendersWin:
      play.target = solve_dws(scenario, tol).otp;
      break;
    case KindVerdict::OnBarrier:
      play.target = otp_on_barrier(scenario, tol).point;
      break;
    case KindVerdict::AttackerWins:
      play.target = oracle_aws_target(scenario);
      play.closed_form = false;
      break;
  }
  play.policies.defender1 = to_point_policy(Player::Defender1, play.target);
  play.policies.defender2 = to_point_policy(Player::Defender2, play.target);
  play.policies.attacker = to_point_policy(Player::Attacker, play.target);
  if (!play.closed_form) {
    play.policies.defender1.label = "to_point (numerical, attacker-winning start)";
    play.policies.defender2.label = play.policies.defender1.label;
    play.policies.attacker.label = "to_point (numerical best response)";
  }
  return play;
}

}  // namespace subguard
