#pragma once

namespace subguard {

/// Single floating-point policy shared by every module.
struct Tolerances {
  double relative = 1e-9;
  double absolute = 1e-12;
  /// OnBarrier iff |Z^T Xi Z| <= barrier_scale * (1 + |x_A|^2).
  double barrier_scale = 1e-9;
  /// Negative square-root arguments down to -sqrt_clamp * scale are treated as 0.
  double sqrt_clamp = 1e-12;
  /// Reciprocal condition estimate below which an SPD solve is rejected.
  double min_rcond = 1e-12;
  /// Allowed deviation of a policy heading from unit norm.
  double unit_heading = 1e-12;
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace subguard
