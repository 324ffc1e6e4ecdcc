#pragma once

// Scenario files and export formats. Every real number is written with 17
// significant digits so output is round-trip exact and byte-stable.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "subguard/degree.hpp"
#include "subguard/kind.hpp"
#include "subguard/simulate.hpp"

namespace subguard {

/// Formats a double as printf("%.17g").
std::string format_real(double value);

/// Parses and validates a scenario document:
///   {"n": int, "alpha": real?, "v_D": real?, "v_A": real?,
///    "hyperplane": {"K": [...], "b": real},
///    "defenders": [[...], [...]], "attacker": [...]}
Scenario parse_scenario(std::string_view json_text,
                        const Tolerances& tol = kDefaultTolerances);
Scenario load_scenario(const std::filesystem::path& path,
                       const Tolerances& tol = kDefaultTolerances);

std::string scenario_to_json(const Scenario& scenario);

std::string kind_to_json(const KindOutcome& outcome);

/// Canonical-frame solution plus the same vectors under "world".
std::string solution_to_json(const DegreeSolution& solution,
                             const CanonicalTransform& transform);
std::string barrier_otp_to_json(const BarrierOtp& otp,
                                const CanonicalTransform& transform);

std::string barrier_to_csv(const std::vector<BarrierPoint>& points,
                           Eigen::Index n);
std::string barrier_to_json(const std::vector<BarrierPoint>& points);

std::string trajectory_to_csv(const Trajectory& trajectory, Eigen::Index n);
std::string trajectory_to_json(const Trajectory& trajectory);

std::string error_to_json(std::string_view code, std::string_view message);

}  // namespace subguard
