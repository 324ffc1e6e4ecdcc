// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "subguard/degree.hpp"
#include "subguard/error.hpp"
#include "subguard/kind.hpp"
#include "subguard/oracle.hpp"
#include "subguard/simulate.hpp"
#include "support/generators.hpp"
#include "support/reference.hpp"

namespace sg = subguard;
namespace t = subguard::testing;
using sg::Vec;

namespace {

// Pinned tolerances and limits.
constexpr double kBarrierTol = 1e-9;
constexpr double kSeamOffset = 1e-12;
constexpr double kGoldenTol = 1e-12;
constexpr double kKindMargin = 0.05;
constexpr double kDegreeTol = 1e-6;
constexpr double kIdentityTol = 1e-9;
constexpr double kSimPointTol = 1e-3;
constexpr double kSaddleTol = 1e-6;
constexpr double kSaddleEps = 1e-9;

struct Verdict {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool report(int id, const char* name, double limit_s, const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed = seconds_since(start);
  if (elapsed > limit_s) {
    v.pass = false;
    v.detail += " (over the " + std::to_string(limit_s) + " s limit)";
  }
  std::printf("AC%d %s %s [%.2f s] %s\n", id, v.pass ? "PASS" : "FAIL", name, elapsed,
              v.detail.c_str());
  std::fflush(stdout);
  return v.pass;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Verdict barrier_reproduction() {
  const sg::Barrier b(t::ref_d1(), t::ref_d2(), t::kRefAlpha);
  double worst = 0.0;
  int count = 0;
  for (int i = 0; i < 40; ++i) {
    for (int j = 0; j < 25; ++j) {
      const double z1 = -3.0 + 6.0 * i / 39.0;
      const double z2 = -2.0 + 4.0 * j / 24.0;
      const auto p = sg::barrier_height(t::v2(z1, z2), b);
      if (!p) return {false, fmt("no barrier point at z1 = %g", z1)};
      worst = std::max(worst, std::abs(sg::height(p->point) - std::sqrt(t::ref_barrier_sq(z1, z2))));
      ++count;
    }
  }
  return {count == 1000 && worst <= kBarrierTol,
          std::to_string(count) + " points, max error " + fmt("%.3g", worst)};
}

Verdict region_breakpoints() {
  const sg::PairGeometry g12 = sg::pair_geometry(t::ref_d1(), t::ref_d2(), t::kRefAlpha);
  const sg::PairGeometry g21 = sg::pair_geometry(t::ref_d2(), t::ref_d1(), t::kRefAlpha);
  auto at = [&](double z1) { return sg::region_label(t::v3(z1, 0.3, 1.0), g12, g21, t::kRefAlpha); };
  const double lo = -7.0 / 32.0;
  const double hi = 17.0 / 32.0;
  const bool ok = at(lo - kSeamOffset) == sg::RegionLabel::A1 &&
                  at(lo + kSeamOffset) == sg::RegionLabel::A12 &&
                  at(hi - kSeamOffset) == sg::RegionLabel::A12 &&
                  at(hi + kSeamOffset) == sg::RegionLabel::A2;
  return {ok, "labels at -7/32 and 17/32 +- 1e-12"};
}

Verdict degree_golden() {
  const sg::DegreeSolution sol = sg::solve_dws(t::ref_scenario(2.0));
  const double v = t::ref_value();
  const double err = (sol.otp - t::v3(-0.5, 0.0, v)).cwiseAbs().maxCoeff();
  const bool ok = sol.effective == std::vector<int>{2} && err <= kGoldenTol &&
                  std::abs(sol.value - v) <= kGoldenTol;
  return {ok, "otp error " + fmt("%.3g", err) + ", value error " +
                  fmt("%.3g", std::abs(sol.value - v))};
}

Verdict kind_oracle() {
  t::Rng rng(1001);
  int checked = 0;
  int agree = 0;
  while (checked < 500) {
    const sg::Scenario s = t::random_scenario(rng, rng.integer(2, 4));
    const sg::KindOutcome k = sg::evaluate_kind(s);
    if (std::abs(k.normalized_form) <= kKindMargin) continue;
    const sg::OracleKindResult o = sg::oracle_kind(s);
    const bool dws = k.verdict == sg::KindVerdict::DefendersWin;
    agree += (dws && o.verdict == sg::OracleVerdict::DefendersWin) ||
             (!dws && o.verdict == sg::OracleVerdict::AttackerWins);
    ++checked;
  }
  return {agree == checked, std::to_string(agree) + "/" + std::to_string(checked) + " agree"};
}

Verdict degree_oracle() {
  t::Rng rng(1002);
  double worst = 0.0;
  int zero = 0;
  int nonzero = 0;
  for (int k = 0; k < 200; ++k) {
    const bool equal = k % 2 == 0;
    const sg::Scenario s = t::random_two_effective(rng, rng.integer(2, 4), equal);
    const sg::DegreeSolution sol = sg::solve_dws(s);
    (sol.kind == sg::EffectiveCase::TwoEffectiveM12Zero ? zero : nonzero) += 1;
    worst = std::max(worst, std::abs(sol.value - sg::oracle_otp_dws(s).height));
  }
  return {worst <= kDegreeTol && zero >= 50 && nonzero >= 50,
          std::to_string(nonzero) + " with m12 != 0, " + std::to_string(zero) +
              " with m12 = 0, max error " + fmt("%.3g", worst)};
}

Verdict pair_identities() {
  t::Rng rng(1003);
  int bad = 0;
  for (int k = 0; k < 1000; ++k) {
    const Eigen::Index n = rng.integer(2, 8);
    const Vec di = rng.vec(n, -5, 5);
    const Vec dj = rng.vec(n, -5, 5);
    const double alpha = rng.uniform(0.05, 0.95);
    const sg::PairGeometry g = sg::pair_geometry(di, dj, alpha);
    const sg::PairGeometry h = sg::pair_geometry(dj, di, alpha);
    const double a = g.A.norm();
    const Eigen::SelfAdjointEigenSolver<sg::Mat> eig(g.C);
    const bool ok = (g.C * g.A).norm() <= kIdentityTol * a * a * a &&
                    (g.C * g.C - a * a * g.C).norm() <= kIdentityTol * a * a * a * a &&
                    eig.eigenvalues().minCoeff() >= -kIdentityTol &&
                    (g.xi - h.xi).norm() <= kIdentityTol * g.xi.norm();
    bad += !ok;
  }
  return {bad == 0, std::to_string(1000 - bad) + "/1000 pairs satisfy every identity"};
}

Verdict mirror_property() {
  t::Rng rng(1004);
  int checked = 0;
  int same = 0;
  while (checked < 1000) {
    sg::Scenario s = t::random_scenario(rng, rng.integer(2, 5));
    const Eigen::Index n = s.dim();
    sg::Vec& d = rng.coin() ? s.defender1 : s.defender2;
    if (d(n - 1) >= 0.0) d(n - 1) = -d(n - 1) - 0.01;
    sg::Scenario m = s;
    (&d == &s.defender1 ? m.defender1 : m.defender2) = sg::mirror_defender(d);
    if ((m.defender1 - m.defender2).norm() == 0.0) continue;
    const sg::KindOutcome a = sg::evaluate_kind(s);
    const sg::KindOutcome b = sg::evaluate_kind(m);
    same += a.verdict == b.verdict && a.piece == b.piece;
    ++checked;
  }
  return {same == checked, std::to_string(same) + "/" + std::to_string(checked) + " unchanged"};
}

Verdict end_to_end() {
  sg::SimulationOptions opt;
  opt.dt = 1e-4;
  opt.record_samples = false;

  const sg::Scenario dws = t::ref_scenario(2.0);
  const sg::Trajectory a = sg::simulate(dws, sg::optimal_policies(dws).policies, opt);
  const double dws_err = (a.outcome.point - sg::solve_dws(dws).otp).norm();
  const bool dws_ok = a.outcome.kind == sg::EventKind::Captured && dws_err <= kSimPointTol;

  const sg::Scenario edge = t::ref_scenario(t::ref_barrier_mid());
  const sg::Trajectory b = sg::simulate(edge, sg::optimal_policies(edge).policies, opt);
  const double edge_h = sg::height(b.outcome.point);
  const bool edge_ok = b.outcome.kind != sg::EventKind::Timeout && edge_h <= kSimPointTol;

  const sg::Scenario aws = t::ref_scenario(0.5);
  const sg::Trajectory c = sg::simulate(aws, sg::optimal_policies(aws).policies, opt);
  const bool aws_ok = c.outcome.kind == sg::EventKind::Arrived;

  return {dws_ok && edge_ok && aws_ok,
          "capture point error " + fmt("%.3g", dws_err) + ", barrier-start height " +
              fmt("%.3g", edge_h) + ", attacker-winning start " +
              (aws_ok ? "arrived" : "did not arrive")};
}

// Straight-line play ends exactly where the chords meet, so the step size only
// affects runtime.
sg::SimulationOptions saddle_options() {
  sg::SimulationOptions opt;
  opt.dt = 1e-2;
  opt.t_max = 1e4;
  opt.eps_capture = kSaddleEps;
  opt.eps_geometry = kSaddleEps;
  opt.record_samples = false;
  return opt;
}

// Point where the attacker's ray leaves defender i's Apollonius ball, or the
// hyperplane crossing when that comes first.
Vec interception_point(const sg::Scenario& s, int i, const Vec& u) {
  const sg::ApolloniusBall ball = sg::apollonius(s.attacker, s.defender(i), s.alpha);
  const auto exit = sg::ray_exit_distance(ball, s.attacker, u);
  return s.attacker + *exit * u;
}

sg::Policy toward(sg::Player who, const Vec& from, const Vec& target) {
  if ((target - from).norm() == 0.0) return sg::fixed_heading_policy(sg::unit_vector(from.size(), 0));
  return sg::to_point_policy(who, target);
}

struct SaddleTally {
  int attacker_runs = 0;
  int defender_runs = 0;
  double worst_low = -HUGE_VAL;   // largest value - height under attacker deviation
  double worst_high = -HUGE_VAL;  // largest height - value under defender deviation
};

void saddle_instance(const sg::Scenario& s, t::Rng& rng, SaddleTally& tally) {
  const sg::DegreeSolution sol = sg::solve_dws(s);
  const sg::SimulationOptions opt = saddle_options();
  const Eigen::Index n = s.dim();

  // The first run follows the equilibrium heading itself.
  for (int k = 0; k < 20; ++k) {
    const Vec u = k == 0 ? sol.attacker_heading : rng.unit(n);
    const sg::PolicySet p{toward(sg::Player::Defender1, s.defender1, interception_point(s, 1, u)),
                          toward(sg::Player::Defender2, s.defender2, interception_point(s, 2, u)),
                          sg::fixed_heading_policy(u)};
    const sg::Trajectory tr = sg::simulate(s, p, opt);
    const double h = tr.outcome.kind == sg::EventKind::Captured ? sg::height(tr.outcome.point) : 0.0;
    tally.worst_low = std::max(tally.worst_low, sol.value - h);
    ++tally.attacker_runs;
  }

  for (int deviator : sol.effective) {
    const int other = 3 - deviator;
    const sg::AttackerResponse r =
        sg::oracle_attacker_response(s.attacker, {s.defender(other)}, s.alpha);
    for (int k = 0; k < 5; ++k) {
      const sg::Policy wander = sg::fixed_heading_policy(rng.unit(n));
      const sg::Player other_player = other == 1 ? sg::Player::Defender1 : sg::Player::Defender2;
      const sg::Policy intercept = toward(other_player, s.defender(other), r.target);
      const sg::PolicySet p{deviator == 1 ? wander : intercept, deviator == 2 ? wander : intercept,
                            sg::fixed_heading_policy(r.direction)};
      const sg::Trajectory tr = sg::simulate(s, p, opt);
      const double h = tr.outcome.kind == sg::EventKind::Captured ? sg::height(tr.outcome.point) : 0.0;
      tally.worst_high = std::max(tally.worst_high, h - sol.value);
      ++tally.defender_runs;
    }
  }
}

Verdict saddle_point() {
  t::Rng rng(1005);
  SaddleTally tally;
  saddle_instance(t::ref_scenario(2.0), rng, tally);
  for (int k = 0; k < 50; ++k) saddle_instance(t::random_dws(rng, rng.integer(2, 4)), rng, tally);
  return {tally.worst_low <= kSaddleTol && tally.worst_high <= kSaddleTol,
          std::to_string(tally.attacker_runs) + " attacker and " +
              std::to_string(tally.defender_runs) + " defender deviations, worst drop " +
              fmt("%.3g", tally.worst_low) + ", worst rise " + fmt("%.3g", tally.worst_high)};
}

}  // namespace

int main() {
  bool ok = true;
  ok &= report(1, "barrier reproduction", 1.0, barrier_reproduction);
  ok &= report(2, "region breakpoints", 1.0, region_breakpoints);
  ok &= report(3, "degree solution golden values", 1.0, degree_golden);
  ok &= report(4, "kind vs oracle", 600.0, kind_oracle);
  ok &= report(5, "degree vs oracle", 600.0, degree_oracle);
  ok &= report(6, "pair matrix identities", 30.0, pair_identities);
  ok &= report(7, "mirror property", 30.0, mirror_property);
  ok &= report(8, "end-to-end simulation", 60.0, end_to_end);
  ok &= report(9, "saddle-point deviations", 900.0, saddle_point);
  return ok ? 0 : 1;
}
