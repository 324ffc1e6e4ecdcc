#pragma once

// Discrete-time simple-motion simulation with capture and arrival detection.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "subguard/geometry.hpp"

namespace subguard {

enum class Player { Defender1 = 0, Defender2 = 1, Attacker = 2 };

struct GameState {
  double t = 0.0;
  std::array<Vec, 3> position;
  std::array<Vec, 3> start;

  const Vec& operator[](Player p) const {
    return position[static_cast<std::size_t>(p)];
  }
};

/// Heading rule (time, state) -> unit vector. Rules must be pure functions of
/// their arguments.
struct Policy {
  std::function<Vec(double, const GameState&)> rule;
  std::string label;

  Vec operator()(double t, const GameState& s) const { return rule(t, s); }
};

struct PolicySet {
  Policy defender1;
  Policy defender2;
  Policy attacker;
};

/// Heads straight at `target`. Within `tolerance` of the target the player
/// keeps the heading of its chord from the start position.
Policy to_point_policy(Player who, const Vec& target, double tolerance = 1e-12);

Policy fixed_heading_policy(const Vec& heading);

enum class EventKind { Captured, Arrived, Timeout };

struct Outcome {
  EventKind kind = EventKind::Timeout;
  double time = 0.0;
  Vec point;             // attacker position at the event
  int captured_by = 0;   // 1 or 2 when Captured
  /// Captured within eps_geometry of the target hyperplane.
  bool arrival_coincident = false;
};

struct Sample {
  double t = 0.0;
  std::array<Vec, 3> position;
};

struct Trajectory {
  double dt = 0.0;
  std::vector<Sample> samples;
  Outcome outcome;
};

struct SimulationOptions {
  double dt = 1e-3;
  double t_max = 100.0;
  /// Defaults to one defender step, v_D * dt.
  std::optional<double> eps_capture;
  /// Defaults to one attacker step, v_A * dt.
  std::optional<double> eps_geometry;
  bool record_samples = true;
  Tolerances tol = kDefaultTolerances;
};

/// Forward-Euler integration. After each step the chord of every player is
/// checked for capture first and then for arrival; the earlier event within
/// the step wins, ties go to capture.
Trajectory simulate(const Scenario& scenario, const PolicySet& policies,
                    const SimulationOptions& options = {});

struct OptimalPlay {
  PolicySet policies;
  Vec target;
  /// False for attacker-winning starts, where the policies come from the
  /// numerical best response rather than a closed-form equilibrium.
  bool closed_form = true;
};

/// Straight-line play toward the capture point (defender-winning start), the
/// barrier target point (barrier start), or the numerical safest arrival
/// point (attacker-winning start).
OptimalPlay optimal_policies(const Scenario& scenario,
                             const Tolerances& tol = kDefaultTolerances);

}  // namespace subguard
