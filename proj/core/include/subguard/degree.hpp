#pragma once

// Game of degree in the defender-winning subspace: effective defenders, the
// capture point, saddle-point headings, and the optimal target point on the
// barrier.

#include <optional>
#include <string_view>
#include <vector>

#include "subguard/kind.hpp"

namespace subguard {

/// Unit vector pointing from `from` to `to`.
Vec heading(const Vec& from, const Vec& to);

enum class EffectiveCase { OneEffective, TwoEffectiveM12Nonzero, TwoEffectiveM12Zero };

std::string_view to_string(EffectiveCase c);

struct Effectiveness {
  EffectiveCase kind = EffectiveCase::OneEffective;
  std::vector<int> effective;  // 1-based defender indices
};

/// Requires the scenario to be in the defender-winning subspace.
Effectiveness effective_defenders(const Scenario& scenario,
                                  const Tolerances& tol = kDefaultTolerances);

struct DegreeSolution {
  EffectiveCase kind = EffectiveCase::OneEffective;
  std::vector<int> effective;
  Vec otp;  // capture point, canonical frame
  /// Heading of each defender; empty for an ineffective defender, whose
  /// heading does not affect the payoff.
  std::optional<Vec> defender1_heading;
  std::optional<Vec> defender2_heading;
  Vec attacker_heading;
  double value = 0.0;  // height of the capture point

  const std::optional<Vec>& defender_heading(int index) const {
    return index == 1 ? defender1_heading : defender2_heading;
  }
};

DegreeSolution solve_dws(const Scenario& scenario,
                         const Tolerances& tol = kDefaultTolerances);

/// Optimal target point on the target hyperplane for an attacker that starts
/// on the barrier, with residuals of the equal-arrival and first-order
/// conditions it must satisfy.
struct BarrierOtp {
  Vec point;
  BarrierPiece piece = BarrierPiece::Single;
  std::vector<int> active;
  double arrival_residual = 0.0;
  double stationarity_residual = 0.0;
};

BarrierOtp otp_on_barrier(const Scenario& scenario,
                          const Tolerances& tol = kDefaultTolerances);

/// Distance of the capture point from the target hyperplane.
double payoff_target_distance(const Vec& capture_point);

/// Distance from the attacker to the closer defender at arrival.
double payoff_safe_distance(const Vec& defender1, const Vec& defender2,
                            const Vec& attacker,
                            const Tolerances& tol = kDefaultTolerances);

}  // namespace subguard
