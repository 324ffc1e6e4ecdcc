#pragma once

// Scenario description, canonical coordinates and the pairwise quantities
// from which barriers and capture points are built.
//
// Conventions: the canonical target hyperplane is {z_n = 0} and the play
// subspace is {z_n > 0}. "Lateral" refers to the first n-1 coordinates.

#include <optional>

#include "subguard/tolerance.hpp"
#include "subguard/types.hpp"

namespace subguard {

/// Target hyperplane {z : K^T z = b}; the play subspace is {K^T z > b}.
struct Hyperplane {
  Vec normal;
  double offset = 0.0;

  static Hyperplane canonical(Eigen::Index n);
  /// Signed distance of z from the hyperplane, positive on the play side.
  double signed_distance(const Vec& z) const;
};

struct Scenario {
  Hyperplane hyperplane;
  double alpha = 0.5;
  Vec defender1;
  Vec defender2;
  Vec attacker;
  std::optional<double> defender_speed_value;
  std::optional<double> attacker_speed_value;

  Eigen::Index dim() const { return attacker.size(); }
  /// Defender position by 1-based index.
  const Vec& defender(int index) const;
  double defender_speed() const;
  double attacker_speed() const;
  bool is_canonical(const Tolerances& tol = kDefaultTolerances) const;

  /// Scenario already expressed in the canonical frame.
  static Scenario canonical(Vec defender1, Vec defender2, Vec attacker,
                            double alpha);
};

/// Checks dimensions and the three admissibility assumptions. Throws Error
/// with a message that names the violated assumption.
void validate(const Scenario& scenario,
              const Tolerances& tol = kDefaultTolerances);

/// Rigid map z -> Q (z - t) into the canonical frame.
struct CanonicalTransform {
  Mat rotation;
  Vec translation;

  Vec to_canonical(const Vec& z) const;
  Vec to_world(const Vec& z) const;
  /// Directions transform with the orthogonal part only.
  Vec direction_to_world(const Vec& d) const;
  Vec direction_to_canonical(const Vec& d) const;
};

struct CanonicalScenario {
  Scenario scenario;
  CanonicalTransform transform;
};

/// Householder reflection taking K/|K| to e_n plus the translation
/// t = (b/|K|^2) K. Identity rotation when K is already aligned with e_n.
CanonicalScenario canonicalize(const Scenario& scenario,
                               const Tolerances& tol = kDefaultTolerances);

/// Quantities shared by an ordered defender pair (i, j).
struct PairGeometry {
  Vec A;   // x_i,-n - x_j,-n
  Vec B;   // (x_i,-n + x_j,-n) / 2
  Mat C;   // |A|^2 I - A A^T
  double m = 0.0;  // x_i,n - x_j,n
  double w = 0.0;  // (|x_i|^2 - |x_j|^2) / 2
  double zeta1 = 0.0;
  Mat zeta2;
  Vec zeta3;
  double zeta4 = 0.0;
  /// (n+1)x(n+1) barrier matrix of the jointly active piece.
  Mat xi;
};

PairGeometry pair_geometry(const Vec& defender_i, const Vec& defender_j,
                           double alpha);

/// (n+1)x(n+1) barrier matrix of a single defender.
Mat single_matrix(const Vec& defender, double alpha);

/// Ball of points the attacker reaches strictly before the defender.
struct ApolloniusBall {
  Vec center;
  double radius = 0.0;

  bool contains(const Vec& z) const { return (z - center).norm() < radius; }
  /// Lowest point of the ball (smallest last coordinate).
  Vec bottom() const;
};

ApolloniusBall apollonius(const Vec& attacker, const Vec& defender,
                          double alpha);

/// Distance s > 0 at which the ray origin + s*direction leaves the ball.
/// Requires the origin to lie inside the ball and |direction| = 1.
std::optional<double> ray_exit_distance(const ApolloniusBall& ball,
                                        const Vec& origin,
                                        const Vec& direction);

/// Z^T Xi Z with Z = [z; 1].
double quadratic_form(const Mat& xi, const Vec& z);

}  // namespace subguard
