#include "subguard/kind.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "subguard/error.hpp"

namespace subguard {

std::string_view to_string(RegionLabel label) {
  switch (label) {
    case RegionLabel::A1: return "A1";
    case RegionLabel::A2: return "A2";
    case RegionLabel::A12: return "A12";
  }
  return "A12";
}

std::string_view to_string(KindVerdict verdict) {
  switch (verdict) {
    case KindVerdict::DefendersWin: return "defenders_win";
    case KindVerdict::AttackerWins: return "attacker_wins";
    case KindVerdict::OnBarrier: return "on_barrier";
  }
  return "on_barrier";
}

std::string_view to_string(BarrierPiece piece) {
  switch (piece) {
    case BarrierPiece::B1: return "B1";
    case BarrierPiece::B2: return "B2";
    case BarrierPiece::B3: return "B3";
    case BarrierPiece::Single: return "Single";
  }
  return "Single";
}

Vec mirror_defender(const Vec& defender) {
  Vec out = defender;
  out(out.size() - 1) = -out(out.size() - 1);
  return out;
}

namespace {

double lateral_scale(const Vec& a, const Vec& b) {
  return 1.0 + std::max(lateral(a).norm(), lateral(b).norm());
}

bool same_lateral(const Vec& d1, const Vec& d2, const Tolerances& tol) {
  return (lateral(d1) - lateral(d2)).norm() <= tol.absolute * lateral_scale(d1, d2);
}

Vec mirrored_into_play(const Vec& d) {
  return height(d) < 0.0 ? mirror_defender(d) : d;
}

}  // namespace

ActiveSet classify_active(const Vec& d1, const Vec& d2, const Tolerances& tol) {
  if (d1.size() != d2.size()) {
    throw Error(ErrorCode::DimensionMismatch, "defender positions differ in length");
  }
  if ((d1 - d2).norm() == 0.0) {
    throw Error(ErrorCode::CoincidentDefenders, "defenders share a position");
  }
  if (!same_lateral(d1, d2, tol)) return {};
  const double h1 = height(d1);
  const double h2 = height(d2);
  if (std::abs(h1 + h2) <= tol.absolute * (1.0 + std::abs(h1) + std::abs(h2))) {
    return {};
  }
  return {ActiveSet::Kind::OneActive, std::abs(h1) < std::abs(h2) ? 1 : 2};
}

RegionLabel region_label(const Vec& z, const PairGeometry& pair12,
                         const PairGeometry& pair21, double alpha,
                         const Tolerances& tol) {
  if (pair12.A.norm() <= tol.absolute) {
    throw Error(ErrorCode::DegeneratePair,
                "region labels need defenders with distinct lateral positions");
  }
  const double a2 = alpha * alpha;
  const Vec z_lat = z.size() == pair12.A.size() ? z : lateral(z);
  auto inside = [&](const PairGeometry& g) {
    const Vec x_i = g.B + 0.5 * g.A;
    return g.A.dot(z_lat) - a2 * g.A.dot(x_i) > (1.0 - a2) * g.w;
  };
  if (inside(pair12)) return RegionLabel::A1;
  if (inside(pair21)) return RegionLabel::A2;
  return RegionLabel::A12;
}

Barrier::Barrier(const Vec& defender1, const Vec& defender2, double alpha,
                 const Tolerances& tol)
    : dim_(defender1.size()), alpha_(alpha), tol_(tol) {
  active_ = classify_active(defender1, defender2, tol);
  const Vec m1 = mirrored_into_play(defender1);
  const Vec m2 = mirrored_into_play(defender2);
  xi1_ = single_matrix(m1, alpha);
  xi2_ = single_matrix(m2, alpha);
  if (active_.two_active()) {
    symmetric_pair_ = same_lateral(defender1, defender2, tol);
    if (!symmetric_pair_) {
      pair12_ = pair_geometry(m1, m2, alpha);
      pair21_ = pair_geometry(m2, m1, alpha);
    }
  }
}

ActiveQuadric Barrier::quadric_at(const Vec& z_lateral) const {
  if (z_lateral.size() != dim_ - 1) {
    throw Error(ErrorCode::DimensionMismatch, "lateral point has the wrong length");
  }
  if (!active_.two_active()) {
    return {active_.index == 1 ? xi1_ : xi2_, BarrierPiece::Single, active_.index};
  }
  if (symmetric_pair_) return {xi1_, BarrierPiece::Single, 0};
  switch (region_label(z_lateral, *pair12_, *pair21_, alpha_, tol_)) {
    case RegionLabel::A1: return {xi1_, BarrierPiece::B1, 1};
    case RegionLabel::A2: return {xi2_, BarrierPiece::B2, 2};
    case RegionLabel::A12: break;
  }
  return {pair12_->xi, BarrierPiece::B3, 0};
}

KindOutcome evaluate_kind(const Scenario& scenario, const KindOptions& options) {
  const Tolerances& tol = options.tol;
  const Vec& xa = scenario.attacker;
  if (scenario.dim() >= 2 && scenario.is_canonical(tol) && !(height(xa) > 0.0)) {
    throw Error(ErrorCode::AttackerNotInPlay, "attacker is not in the play subspace");
  }
  validate(scenario, tol);
  if (!scenario.is_canonical(tol)) {
    throw Error(ErrorCode::NotCanonical,
                "evaluate_kind expects a scenario in the canonical frame");
  }

  const Barrier barrier(scenario.defender1, scenario.defender2, scenario.alpha, tol);
  const ActiveQuadric q = barrier.quadric_at(lateral(xa));
  const Eigen::Index n = scenario.dim();

  KindOutcome out;
  out.piece = q.piece;
  out.active = barrier.active();
  out.deciding_defender = q.deciding_defender;
  out.form_value = quadratic_form(q.xi, xa);
  out.normalized_form = out.form_value / q.xi(n - 1, n - 1);

  const double band = tol.barrier_scale * (1.0 + xa.squaredNorm());
  if (out.form_value > band) {
    out.verdict = KindVerdict::DefendersWin;
  } else if (out.form_value < -band) {
    out.verdict = KindVerdict::AttackerWins;
  } else {
    out.verdict = KindVerdict::OnBarrier;
  }
  return out;
}

std::optional<BarrierPoint> barrier_height(const Vec& z_lateral,
                                           const Barrier& barrier) {
  const ActiveQuadric q = barrier.quadric_at(z_lateral);
  const Eigen::Index n = barrier.dim();
  const Vec base = compose(z_lateral, 0.0);
  const double rhs = -quadratic_form(q.xi, base) / q.xi(n - 1, n - 1);
  if (!(rhs > 0.0)) return std::nullopt;
  return BarrierPoint{compose(z_lateral, std::sqrt(rhs)), q.piece};
}

std::optional<BarrierPoint> barrier_height(const Vec& z_lateral,
                                           const Vec& defender1,
                                           const Vec& defender2, double alpha) {
  return barrier_height(z_lateral, Barrier(defender1, defender2, alpha));
}

std::vector<BarrierPoint> sample_barrier(const Barrier& barrier,
                                         const BarrierGrid& grid) {
  const Eigen::Index d = barrier.dim() - 1;
  if (grid.lower.size() != d || grid.upper.size() != d ||
      static_cast<Eigen::Index>(grid.resolution.size()) != d) {
    throw Error(ErrorCode::DimensionMismatch,
                "barrier grid must have " + std::to_string(d) + " axes");
  }
  for (int r : grid.resolution) {
    if (r < 1) throw Error(ErrorCode::EmptyGrid, "every grid axis needs at least one node");
  }

  std::vector<BarrierPoint> points;
  std::vector<int> index(static_cast<std::size_t>(d), 0);
  Vec z(d);
  for (;;) {
    for (Eigen::Index k = 0; k < d; ++k) {
      const int r = grid.resolution[static_cast<std::size_t>(k)];
      const double step = r > 1 ? (grid.upper(k) - grid.lower(k)) / (r - 1) : 0.0;
      z(k) = grid.lower(k) + step * index[static_cast<std::size_t>(k)];
    }
    if (auto p = barrier_height(z, barrier)) points.push_back(std::move(*p));

    // Last axis varies fastest.
    Eigen::Index k = d - 1;
    for (; k >= 0; --k) {
      auto& i = index[static_cast<std::size_t>(k)];
      if (++i < grid.resolution[static_cast<std::size_t>(k)]) break;
      i = 0;
    }
    if (k < 0) break;
  }
  return points;
}

}  // namespace subguard
