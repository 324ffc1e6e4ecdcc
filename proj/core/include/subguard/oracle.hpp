#pragma once

// Brute-force verifiers. Nothing here uses the barrier quadrics or the
// closed-form capture points; every answer comes from direct search over the
// definitions (who reaches a point first).

#include <cstddef>
#include <functional>
#include <vector>

#include "subguard/geometry.hpp"

namespace subguard {

inline constexpr std::size_t kDefaultOracleBudget = 194481;  // 21^4
inline constexpr Eigen::Index kOracleMaxDim = 6;

/// Cube [center - half_width, center + half_width]^d sampled with
/// points_per_axis nodes per axis. Each refinement round shrinks the cube
/// around the incumbent by `shrink`.
struct GridSpec {
  Vec center;
  double half_width = 1.0;
  int points_per_axis = 21;
  int refinement_rounds = 5;
};

struct SearchOptions {
  std::size_t budget = kDefaultOracleBudget;
  double shrink = 0.2;
  /// Separate incumbents refined from the initial grid.
  int starts = 4;
  /// Cap on nodes per axis in refinement rounds.
  int refine_points_per_axis = 21;
  int polish_iterations = 200;
};

struct SearchResult {
  Vec argmax;
  double value = 0.0;
  /// Best value after the initial grid and after each refinement round.
  std::vector<double> round_values;
  std::size_t evaluations = 0;
};

using Objective = std::function<double(const Vec&)>;

/// Largest odd node count per axis whose d-dimensional grid fits the budget.
int points_for_budget(Eigen::Index dim, std::size_t budget, int cap = 1001);

/// Grid search with refinement followed by a derivative-free polish.
SearchResult grid_maximize(const Objective& f, const GridSpec& spec,
                           const SearchOptions& options = {});

/// Nelder-Mead maximization from `start` with initial simplex edge `step`.
SearchResult nelder_mead_maximize(const Objective& f, const Vec& start,
                                  double step, int max_iterations);

/// Separation at arrival for a target point p on the canonical hyperplane:
/// |p - x_D| - |p - x_A| / alpha. Positive when the attacker arrives first.
double f_value(const Vec& p, const Vec& attacker, const Vec& defender,
               double alpha, const Tolerances& tol = kDefaultTolerances);

struct OracleOptions {
  /// 0 selects the largest count that fits the budget.
  int points_per_axis = 0;
  int refinement_rounds = 5;
  SearchOptions search;
  /// Half-width of the Inconclusive band for oracle_kind.
  double margin = 1e-9;
};

/// Maximizer over the target hyperplane of f_value for one defender.
Vec oracle_otp_1v1(const Vec& attacker, const Vec& defender, double alpha,
                   const OracleOptions& options = {});

enum class OracleVerdict { DefendersWin, AttackerWins, Inconclusive };

struct OracleKindResult {
  OracleVerdict verdict = OracleVerdict::Inconclusive;
  /// max over the hyperplane of min_i (alpha |p - x_Di| - |p - x_A|).
  double best_margin = 0.0;
  Vec best_point;
};

OracleKindResult oracle_kind(const Scenario& scenario,
                             const OracleOptions& options = {});

struct OracleDwsResult {
  Vec point;
  double height = 0.0;
};

/// Lowest point of the intersection of the two Apollonius spheres, found by
/// sampling the intersection (an (n-2)-sphere) directly.
OracleDwsResult oracle_otp_dws(const Scenario& scenario,
                               const OracleOptions& options = {});

/// Point on the target hyperplane maximizing the smaller separation at
/// arrival. Numerical stand-in for the attacker's play when it wins.
Vec oracle_aws_target(const Scenario& scenario,
                      const OracleOptions& options = {});

struct AttackerResponse {
  Vec direction;       // unit heading of the attacker
  Vec target;          // where the straight line ends (capture or arrival)
  double capture_height = 0.0;  // 0 when the attacker reaches the hyperplane
  bool captured = false;
};

/// Best constant heading for an attacker facing defenders that intercept it
/// on the boundary of their Apollonius balls. Defenders not listed do not
/// react to the attacker.
AttackerResponse oracle_attacker_response(
    const Vec& attacker, const std::vector<Vec>& intercepting_defenders,
    double alpha, const OracleOptions& options = {});

}  // namespace subguard
