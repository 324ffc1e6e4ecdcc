#include "subguard/geometry.hpp"

#include <cmath>
#include <string>

#include "subguard/error.hpp"

namespace subguard {

Hyperplane Hyperplane::canonical(Eigen::Index n) {
  return Hyperplane{unit_vector(n, n - 1), 0.0};
}

double Hyperplane::signed_distance(const Vec& z) const {
  return (normal.dot(z) - offset) / normal.norm();
}

const Vec& Scenario::defender(int index) const {
  return index == 1 ? defender1 : defender2;
}

double Scenario::defender_speed() const {
  return defender_speed_value.value_or(1.0);
}

double Scenario::attacker_speed() const {
  return attacker_speed_value.value_or(alpha * defender_speed());
}

bool Scenario::is_canonical(const Tolerances& tol) const {
  const Eigen::Index n = dim();
  if (hyperplane.normal.size() != n) return false;
  return (hyperplane.normal - unit_vector(n, n - 1)).norm() <= tol.absolute &&
         std::abs(hyperplane.offset) <= tol.absolute;
}

Scenario Scenario::canonical(Vec defender1, Vec defender2, Vec attacker,
                             double alpha) {
  Scenario s;
  s.hyperplane = Hyperplane::canonical(attacker.size());
  s.alpha = alpha;
  s.defender1 = std::move(defender1);
  s.defender2 = std::move(defender2);
  s.attacker = std::move(attacker);
  return s;
}

void validate(const Scenario& s, const Tolerances& tol) {
  const Eigen::Index n = s.dim();
  if (n < 2) {
    throw Error(ErrorCode::DimensionMismatch,
                "dimension must be at least 2, got " + std::to_string(n));
  }
  if (s.defender1.size() != n || s.defender2.size() != n ||
      s.hyperplane.normal.size() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "all positions and the hyperplane normal must have length " +
                    std::to_string(n));
  }
  if (!s.defender1.allFinite() || !s.defender2.allFinite() ||
      !s.attacker.allFinite() || !s.hyperplane.normal.allFinite() ||
      !std::isfinite(s.hyperplane.offset) || !std::isfinite(s.alpha)) {
    throw Error(ErrorCode::ParseError, "scenario contains non-finite values");
  }
  if (s.hyperplane.normal.norm() == 0.0) {
    throw Error(ErrorCode::ZeroNormal, "hyperplane normal K must be nonzero");
  }

  if (s.defender_speed_value && *s.defender_speed_value <= 0.0) {
    throw Error(ErrorCode::Assumption3Violated,
                "Assumption 3 violated: v_D must be positive");
  }
  if (s.attacker_speed_value && *s.attacker_speed_value <= 0.0) {
    throw Error(ErrorCode::Assumption3Violated,
                "Assumption 3 violated: v_A must be positive");
  }
  if (s.alpha <= 0.0) {
    throw Error(ErrorCode::Assumption3Violated,
                "Assumption 3 violated: alpha <= 0");
  }
  if (s.alpha >= 1.0) {
    throw Error(ErrorCode::Assumption3Violated,
                "Assumption 3 violated: alpha >= 1");
  }
  if (s.defender_speed_value && s.attacker_speed_value) {
    const double ratio = *s.attacker_speed_value / *s.defender_speed_value;
    if (std::abs(ratio - s.alpha) > tol.absolute) {
      throw Error(ErrorCode::Assumption3Violated,
                  "Assumption 3 violated: alpha differs from v_A/v_D");
    }
  }

  if ((s.defender1 - s.defender2).norm() == 0.0) {
    throw Error(ErrorCode::Assumption1Violated,
                "Assumption 1 violated: defenders share a position");
  }
  for (int i = 1; i <= 2; ++i) {
    if ((s.defender(i) - s.attacker).norm() == 0.0) {
      throw Error(ErrorCode::Assumption1Violated,
                  "Assumption 1 violated: defender " + std::to_string(i) +
                      " starts on the attacker");
    }
  }

  if (!(s.hyperplane.normal.dot(s.attacker) > s.hyperplane.offset)) {
    throw Error(ErrorCode::Assumption2Violated,
                "Assumption 2 violated: attacker is not in the play subspace");
  }
}

Vec CanonicalTransform::to_canonical(const Vec& z) const {
  return rotation * (z - translation);
}

Vec CanonicalTransform::to_world(const Vec& z) const {
  return rotation.transpose() * z + translation;
}

Vec CanonicalTransform::direction_to_world(const Vec& d) const {
  return rotation.transpose() * d;
}

Vec CanonicalTransform::direction_to_canonical(const Vec& d) const {
  return rotation * d;
}

CanonicalScenario canonicalize(const Scenario& scenario, const Tolerances& tol) {
  const Vec& K = scenario.hyperplane.normal;
  const double norm_k = K.norm();
  if (norm_k == 0.0) {
    throw Error(ErrorCode::ZeroNormal, "hyperplane normal K must be nonzero");
  }
  const Eigen::Index n = K.size();
  if (scenario.dim() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "hyperplane normal and positions differ in length");
  }

  CanonicalTransform transform;
  const Vec k = K / norm_k;
  const Vec v = k - unit_vector(n, n - 1);
  const double v_sq = v.squaredNorm();
  if (std::sqrt(v_sq) <= tol.absolute) {
    transform.rotation = Mat::Identity(n, n);
  } else {
    transform.rotation = Mat::Identity(n, n) - (2.0 / v_sq) * v * v.transpose();
  }
  transform.translation = (scenario.hyperplane.offset / (norm_k * norm_k)) * K;

  CanonicalScenario out{scenario, transform};
  out.scenario.hyperplane = Hyperplane::canonical(n);
  out.scenario.defender1 = transform.to_canonical(scenario.defender1);
  out.scenario.defender2 = transform.to_canonical(scenario.defender2);
  out.scenario.attacker = transform.to_canonical(scenario.attacker);
  return out;
}

PairGeometry pair_geometry(const Vec& xi, const Vec& xj, double alpha) {
  const Eigen::Index n = xi.size();
  if (xj.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "defender positions differ in length");
  }
  const Vec li = lateral(xi);
  const Vec lj = lateral(xj);
  const double a2 = alpha * alpha;
  const double one_minus = 1.0 - a2;
  const double ni = xi.squaredNorm();
  const double nj = xj.squaredNorm();
  const Mat I = Mat::Identity(n - 1, n - 1);

  PairGeometry g;
  g.A = li - lj;
  g.B = 0.5 * (li + lj);
  const double a_sq = g.A.squaredNorm();
  g.C = a_sq * I - g.A * g.A.transpose();
  g.m = height(xi) - height(xj);
  g.w = 0.5 * (ni - nj);

  g.zeta1 = one_minus * a_sq;
  g.zeta2 = g.C - one_minus * a_sq * I;
  g.zeta3 = one_minus * g.w * g.A - a2 * (g.C * g.B);
  g.zeta4 = one_minus * a2 * g.A.dot(nj * li - ni * lj) +
            a2 * a2 * g.B.dot(g.C * g.B) - one_minus * one_minus * g.w * g.w;

  g.xi = Mat::Zero(n + 1, n + 1);
  g.xi.topLeftCorner(n - 1, n - 1) = -g.zeta2;
  g.xi(n - 1, n - 1) = g.zeta1;
  g.xi.block(0, n, n - 1, 1) = -g.zeta3;
  g.xi.block(n, 0, 1, n - 1) = -g.zeta3.transpose();
  g.xi(n, n) = -g.zeta4;
  return g;
}

Mat single_matrix(const Vec& defender, double alpha) {
  const Eigen::Index n = defender.size();
  const double a2 = alpha * alpha;
  const double xn = height(defender);

  Mat xi = Mat::Zero(n + 1, n + 1);
  xi.topLeftCorner(n - 1, n - 1) = -Mat::Identity(n - 1, n - 1);
  xi(n - 1, n - 1) = 1.0 / a2 - 1.0;
  xi.block(0, n, n - 1, 1) = lateral(defender);
  xi.block(n, 0, 1, n - 1) = lateral(defender).transpose();
  xi(n, n) = a2 * xn * xn - defender.squaredNorm();
  return xi;
}

Vec ApolloniusBall::bottom() const {
  Vec b = center;
  b(b.size() - 1) -= radius;
  return b;
}

ApolloniusBall apollonius(const Vec& attacker, const Vec& defender, double alpha) {
  if (attacker.size() != defender.size()) {
    throw Error(ErrorCode::DimensionMismatch, "positions differ in length");
  }
  const double separation = (attacker - defender).norm();
  if (separation == 0.0) {
    throw Error(ErrorCode::CoincidentPlayers,
                "attacker and defender share a position");
  }
  const double a2 = alpha * alpha;
  return ApolloniusBall{(attacker - a2 * defender) / (1.0 - a2),
                        alpha * separation / (1.0 - a2)};
}

std::optional<double> ray_exit_distance(const ApolloniusBall& ball,
                                        const Vec& origin, const Vec& direction) {
  // |o + s u - c|^2 = r^2  ->  s^2 + 2 s u.(o - c) + |o - c|^2 - r^2 = 0
  const Vec oc = origin - ball.center;
  const double b = direction.dot(oc);
  const double c = oc.squaredNorm() - ball.radius * ball.radius;
  const double disc = b * b - c;
  if (disc < 0.0) return std::nullopt;
  const double s = -b + std::sqrt(disc);
  if (s < 0.0) return std::nullopt;
  return s;
}

double quadratic_form(const Mat& xi, const Vec& z) {
  const Eigen::Index n = z.size();
  if (xi.rows() != n + 1 || xi.cols() != n + 1) {
    throw Error(ErrorCode::DimensionMismatch,
                "quadratic form needs an (n+1)x(n+1) matrix for a length-n point");
  }
  Vec Z(n + 1);
  Z << z, 1.0;
  return Z.dot(xi * Z);
}

}  // namespace subguard
