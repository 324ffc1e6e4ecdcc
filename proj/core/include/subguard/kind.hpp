#pragma once

// Game of kind: which team wins from a given initial configuration, the
// barrier separating the two winning subspaces, and barrier sampling.

#include <optional>
#include <string_view>
#include <vector>

#include "subguard/geometry.hpp"

namespace subguard {

struct ActiveSet {
  enum class Kind { TwoActive, OneActive };
  Kind kind = Kind::TwoActive;
  int index = 0;  // 1 or 2 when OneActive

  bool two_active() const { return kind == Kind::TwoActive; }
  friend bool operator==(const ActiveSet&, const ActiveSet&) = default;
};

enum class RegionLabel { A1, A2, A12 };

enum class KindVerdict { DefendersWin, AttackerWins, OnBarrier };

/// Which quadric decided the outcome: one of the three barrier pieces of a
/// two-active pair, or a single defender's quadric.
enum class BarrierPiece { B1, B2, B3, Single };

std::string_view to_string(RegionLabel label);
std::string_view to_string(KindVerdict verdict);
std::string_view to_string(BarrierPiece piece);

struct KindOutcome {
  KindVerdict verdict = KindVerdict::OnBarrier;
  BarrierPiece piece = BarrierPiece::Single;
  /// Z^T Xi Z of the deciding quadric; positive is deeper in the play subspace.
  double form_value = 0.0;
  /// form_value divided by its z_n^2 coefficient: z_n^2 - (barrier height)^2.
  double normalized_form = 0.0;
  ActiveSet active;
  /// Defender whose quadric decided the outcome (0 for B3 and for the
  /// mirror-symmetric pair, where both defenders contribute).
  int deciding_defender = 0;
};

struct KindOptions {
  Tolerances tol = kDefaultTolerances;
};

/// Reflection of a defender across the target hyperplane.
Vec mirror_defender(const Vec& defender);

ActiveSet classify_active(const Vec& defender1, const Vec& defender2,
                          const Tolerances& tol = kDefaultTolerances);

/// Lateral half-space label of z. pair12 and pair21 are the geometries of
/// the ordered pairs (1,2) and (2,1). Points on a seam are labeled A12.
RegionLabel region_label(const Vec& z, const PairGeometry& pair12,
                         const PairGeometry& pair21, double alpha,
                         const Tolerances& tol = kDefaultTolerances);

/// The quadric that governs the barrier above a lateral base point.
struct ActiveQuadric {
  Mat xi;
  BarrierPiece piece = BarrierPiece::Single;
  int deciding_defender = 0;
};

/// Barrier structure for a fixed defender pair and speed ratio. Defenders in
/// the target subspace are reflected internally; the stored positions are
/// never modified.
class Barrier {
 public:
  Barrier(const Vec& defender1, const Vec& defender2, double alpha,
          const Tolerances& tol = kDefaultTolerances);

  const ActiveSet& active() const { return active_; }
  Eigen::Index dim() const { return dim_; }

  /// Quadric for a point whose first n-1 coordinates are z_lateral.
  ActiveQuadric quadric_at(const Vec& z_lateral) const;

 private:
  Eigen::Index dim_;
  double alpha_;
  Tolerances tol_;
  ActiveSet active_;
  bool symmetric_pair_ = false;
  Mat xi1_;
  Mat xi2_;
  std::optional<PairGeometry> pair12_;
  std::optional<PairGeometry> pair21_;
};

KindOutcome evaluate_kind(const Scenario& scenario,
                          const KindOptions& options = {});

struct BarrierPoint {
  Vec point;  // length n, last coordinate > 0
  BarrierPiece piece = BarrierPiece::Single;
};

/// Barrier height above a lateral base point, or nothing when the active
/// quadric has no root with z_n > 0 there.
std::optional<BarrierPoint> barrier_height(const Vec& z_lateral,
                                           const Barrier& barrier);
std::optional<BarrierPoint> barrier_height(const Vec& z_lateral,
                                           const Vec& defender1,
                                           const Vec& defender2,
                                           double alpha);

/// Axis-aligned box in R^{n-1} with per-axis node counts. An axis with a
/// single node uses its lower bound.
struct BarrierGrid {
  Vec lower;
  Vec upper;
  std::vector<int> resolution;
};

std::vector<BarrierPoint> sample_barrier(const Barrier& barrier,
                                         const BarrierGrid& grid);

}  // namespace subguard
