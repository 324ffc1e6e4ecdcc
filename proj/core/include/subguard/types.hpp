#pragma once

#include <Eigen/Dense>

namespace subguard {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// First n-1 coordinates (the part parallel to the canonical target hyperplane).
inline Vec lateral(const Vec& z) { return z.head(z.size() - 1); }

/// Last coordinate (signed height above the canonical target hyperplane).
inline double height(const Vec& z) { return z(z.size() - 1); }

/// Reassembles a point from its lateral part and height.
inline Vec compose(const Vec& lateral_part, double z_n) {
  Vec z(lateral_part.size() + 1);
  z << lateral_part, z_n;
  return z;
}

inline Vec unit_vector(Eigen::Index n, Eigen::Index i) {
  Vec e = Vec::Zero(n);
  e(i) = 1.0;
  return e;
}

}  // namespace subguard
