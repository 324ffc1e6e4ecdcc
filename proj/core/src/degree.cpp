#include "subguard/degree.hpp"

#include <algorithm>
#include <cmath>

#include "subguard/error.hpp"

namespace subguard {

Vec heading(const Vec& from, const Vec& to) {
  const Vec diff = to - from;
  const double len = diff.norm();
  if (len == 0.0) {
    throw Error(ErrorCode::CoincidentPoints, "heading between coincident points");
  }
  return diff / len;
}

std::string_view to_string(EffectiveCase c) {
  switch (c) {
    case EffectiveCase::OneEffective: return "one_effective";
    case EffectiveCase::TwoEffectiveM12Nonzero: return "two_effective_m12_nonzero";
    case EffectiveCase::TwoEffectiveM12Zero: return "two_effective_m12_zero";
  }
  return "one_effective";
}

namespace {

void require_dws(const Scenario& scenario, const Tolerances& tol) {
  const KindOutcome kind = evaluate_kind(scenario, {tol});
  if (kind.verdict != KindVerdict::DefendersWin) {
    throw Error(ErrorCode::NotInDWS,
                "attacker does not start in the defender-winning subspace (" +
                    std::string(to_string(kind.verdict)) + ")");
  }
}

// m12 counts as zero once R1 = A A^T + m^2 I would fail the conditioning check.
bool m_is_zero(double m, double a_sq, const Tolerances& tol) {
  return m * m <= tol.min_rcond * (a_sq + m * m);
}

double clamped_sqrt(double arg, double scale, const Tolerances& tol,
                    const char* what) {
  if (arg >= 0.0) return std::sqrt(arg);
  if (arg >= -tol.sqrt_clamp * scale) return 0.0;
  throw Error(ErrorCode::NumericalDegeneracy,
              std::string("negative square-root argument in ") + what);
}

Effectiveness classify_effective(const ApolloniusBall& b1, const ApolloniusBall& b2,
                                 const Scenario& scenario, const Tolerances& tol) {
  const Vec p1 = b1.bottom();
  const Vec p2 = b2.bottom();
  const bool one_in_two = (p1 - b2.center).norm() < b2.radius * (1.0 - tol.relative);
  const bool two_in_one = (p2 - b1.center).norm() < b1.radius * (1.0 - tol.relative);
  if (one_in_two) return {EffectiveCase::OneEffective, {1}};
  if (two_in_one) return {EffectiveCase::OneEffective, {2}};

  const PairGeometry g =
      pair_geometry(scenario.defender1, scenario.defender2, scenario.alpha);
  const EffectiveCase c = m_is_zero(g.m, g.A.squaredNorm(), tol)
                              ? EffectiveCase::TwoEffectiveM12Zero
                              : EffectiveCase::TwoEffectiveM12Nonzero;
  return {c, {1, 2}};
}

}  // namespace

Effectiveness effective_defenders(const Scenario& scenario, const Tolerances& tol) {
  require_dws(scenario, tol);
  const double alpha = scenario.alpha;
  return classify_effective(apollonius(scenario.attacker, scenario.defender1, alpha),
                            apollonius(scenario.attacker, scenario.defender2, alpha),
                            scenario, tol);
}

DegreeSolution solve_dws(const Scenario& scenario, const Tolerances& tol) {
  require_dws(scenario, tol);
  const double alpha = scenario.alpha;
  const Vec& xa = scenario.attacker;
  const ApolloniusBall ball1 = apollonius(xa, scenario.defender1, alpha);
  const ApolloniusBall ball2 = apollonius(xa, scenario.defender2, alpha);
  const Effectiveness eff = classify_effective(ball1, ball2, scenario, tol);

  DegreeSolution sol;
  sol.kind = eff.kind;
  sol.effective = eff.effective;

  if (eff.kind == EffectiveCase::OneEffective) {
    sol.otp = (eff.effective.front() == 1 ? ball1 : ball2).bottom();
  } else {
    // The closed form is stated for m12 > 0; relabel so that holds.
    const PairGeometry g12 = pair_geometry(scenario.defender1, scenario.defender2, alpha);
    const bool swap = g12.m < 0.0;
    const PairGeometry g =
        swap ? pair_geometry(scenario.defender2, scenario.defender1, alpha) : g12;
    const ApolloniusBall& b1 = swap ? ball2 : ball1;
    const Vec theta_lat = lateral(b1.center);
    const double theta_n = height(b1.center);
    const double a_sq = g.A.squaredNorm();
    const double scale = 1.0 + b1.center.squaredNorm() + b1.radius * b1.radius;

    if (a_sq <= tol.absolute * scale) {
      // Defenders stacked vertically: the balls are coaxial and the lowest
      // point of their intersection is the shared bottom point.
      sol.otp = ball1.bottom();
      if (ball2.bottom()(xa.size() - 1) > height(sol.otp)) sol.otp = ball2.bottom();
    } else if (eff.kind == EffectiveCase::TwoEffectiveM12Zero) {
      const Vec p_lat = (g.A * g.w + g.C * theta_lat) / a_sq;
      const double r = b1.radius * b1.radius - (p_lat - theta_lat).squaredNorm();
      sol.otp = compose(p_lat, theta_n - clamped_sqrt(r, scale, tol, "the m12 = 0 branch"));
    } else {
      const Eigen::Index d = g.A.size();
      const double m = g.m;
      const Mat R1 = g.A * g.A.transpose() + m * m * Mat::Identity(d, d);
      const Vec R2 = (theta_n * m - g.w) * g.A - m * m * theta_lat;
      const double r3 = g.w * g.w - 2.0 * theta_n * g.w * m +
                        m * m * (b1.center.squaredNorm() - b1.radius * b1.radius);
      const Eigen::LLT<Mat> llt(R1);
      if (llt.info() != Eigen::Success || llt.rcond() < tol.min_rcond) {
        throw Error(ErrorCode::NumericalDegeneracy, "R1 is not safely positive definite");
      }
      const Vec u = llt.solve(g.A);
      const Vec v = llt.solve(R2);
      const double num = R2.dot(v) - r3;
      const double den = g.A.dot(u);
      const double root =
          clamped_sqrt(num / den, scale, tol, "the m12 != 0 branch");
      const Vec p_lat = root * u - v;
      sol.otp = compose(p_lat, (g.w - g.A.dot(p_lat)) / m);
    }
  }

  for (int i : eff.effective) {
    (i == 1 ? sol.defender1_heading : sol.defender2_heading) =
        heading(scenario.defender(i), sol.otp);
  }
  sol.attacker_heading = heading(xa, sol.otp);
  sol.value = height(sol.otp);
  return sol;
}

BarrierOtp otp_on_barrier(const Scenario& scenario, const Tolerances& tol) {
  const KindOutcome kind = evaluate_kind(scenario, {tol});
  if (kind.verdict != KindVerdict::OnBarrier) {
    throw Error(ErrorCode::NotOnBarrier,
                "attacker does not start on the barrier (" +
                    std::string(to_string(kind.verdict)) + ")");
  }
  const double alpha = scenario.alpha;
  const Vec& xa = scenario.attacker;
  BarrierOtp out;
  out.piece = kind.piece;
  Vec p_lat;
  if (kind.piece == BarrierPiece::B3) {
    out.active = {1, 2};
    const PairGeometry g = pair_geometry(scenario.defender1, scenario.defender2, alpha);
    const Vec theta_lat = lateral(apollonius(xa, scenario.defender1, alpha).center);
    p_lat = (g.C * theta_lat + g.A * g.w) / g.A.squaredNorm();
  } else {
    const int i = kind.deciding_defender == 0 ? 1 : kind.deciding_defender;
    out.active = kind.deciding_defender == 0 ? std::vector<int>{1, 2}
                                             : std::vector<int>{i};
    p_lat = lateral(apollonius(xa, scenario.defender(i), alpha).center);
  }
  out.point = compose(p_lat, 0.0);

  // Equal arrival against every active defender.
  for (int i : out.active) {
    const double gap = (out.point - xa).norm() -
                       alpha * (out.point - scenario.defender(i)).norm();
    out.arrival_residual = std::max(out.arrival_residual, std::abs(gap));
  }

  // Lateral gradient of |p - x_D| - |p - x_A| / alpha; for B3 only the part
  // along the bisector {A^T p = w} must vanish.
  const Vec& xd = scenario.defender(out.active.front());
  const Vec to_d = out.point - xd;
  const Vec to_a = out.point - xa;
  Vec grad = lateral(to_d) / to_d.norm() - lateral(to_a) / (alpha * to_a.norm());
  if (kind.piece == BarrierPiece::B3) {
    const PairGeometry g = pair_geometry(scenario.defender1, scenario.defender2, alpha);
    grad -= g.A * (g.A.dot(grad) / g.A.squaredNorm());
  }
  out.stationarity_residual = grad.norm();
  return out;
}

double payoff_target_distance(const Vec& capture_point) {
  return std::max(height(capture_point), 0.0);
}

double payoff_safe_distance(const Vec& defender1, const Vec& defender2,
                            const Vec& attacker,
                            [[maybe_unused]] const Tolerances& tol) {
  return std::min((defender1 - attacker).norm(), (defender2 - attacker).norm());
}

}  // namespace subguard
