#include <gtest/gtest.h>

#include "subguard/error.hpp"
#include "subguard/kind.hpp"
#include "subguard/oracle.hpp"
#include "support/generators.hpp"
#include "support/reference.hpp"

namespace subguard {
namespace {

using testing::Rng;
using testing::v2;
using testing::v3;

TEST(Mirror, Examples) {
  EXPECT_EQ(mirror_defender(v3(-1.5, 0, -1)), v3(-1.5, 0, 1));
  EXPECT_EQ(mirror_defender(v3(0, 0, 0)), v3(0, 0, 0));
  const Vec x = v3(0.3, -2, 7);
  EXPECT_EQ(mirror_defender(mirror_defender(x)), x);
}

TEST(ClassifyActive, Examples) {
  EXPECT_TRUE(classify_active(testing::ref_d1(), testing::ref_d2()).two_active());
  EXPECT_EQ(classify_active(v3(0, 0, 1), v3(0, 0, 2)), (ActiveSet{ActiveSet::Kind::OneActive, 1}));
  EXPECT_EQ(classify_active(v3(0, 0, 3), v3(0, 0, -2)), (ActiveSet{ActiveSet::Kind::OneActive, 2}));
  EXPECT_TRUE(classify_active(v3(0, 0, -2), v3(0, 0, 2)).two_active());
}

TEST(ClassifyActive, CoincidentDefendersRejected) {
  try {
    classify_active(v3(1, 1, 1), v3(1, 1, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CoincidentDefenders);
  }
}

class RegionTest : public ::testing::Test {
 protected:
  PairGeometry g12 = pair_geometry(testing::ref_d1(), testing::ref_d2(), 0.5);
  PairGeometry g21 = pair_geometry(testing::ref_d2(), testing::ref_d1(), 0.5);
  RegionLabel at(double z1) { return region_label(v3(z1, 0.4, 1.0), g12, g21, 0.5); }
};

TEST_F(RegionTest, WorkedExampleLabels) {
  EXPECT_EQ(at(0.0), RegionLabel::A12);
  EXPECT_EQ(at(-1.0), RegionLabel::A1);
  EXPECT_EQ(at(1.0), RegionLabel::A2);
}

TEST_F(RegionTest, SeamsBelongToMiddleRegion) {
  EXPECT_EQ(at(-7.0 / 32.0), RegionLabel::A12);
  EXPECT_EQ(at(17.0 / 32.0), RegionLabel::A12);
}

TEST(Region, DegeneratePairRejected) {
  const PairGeometry g = pair_geometry(v3(0, 0, 1), v3(0, 0, 2), 0.5);
  try {
    region_label(v3(0, 0, 1), g, g, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegeneratePair);
  }
}

TEST(RegionProperty, LabelsPartitionSpace) {
  Rng rng(29);
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Index n = rng.integer(2, 6);
    const Vec d1 = rng.vec(n, -3, 3);
    const Vec d2 = rng.vec(n, -3, 3);
    const double alpha = rng.uniform(0.05, 0.95);
    const PairGeometry g12 = pair_geometry(d1, d2, alpha);
    const PairGeometry g21 = pair_geometry(d2, d1, alpha);
    const Vec z = rng.vec(n, -6, 6);
    const double a2 = alpha * alpha;
    const bool in1 = g12.A.dot(lateral(z)) - a2 * g12.A.dot(lateral(d1)) > (1 - a2) * g12.w;
    const bool in2 = g21.A.dot(lateral(z)) - a2 * g21.A.dot(lateral(d2)) > (1 - a2) * g21.w;
    EXPECT_FALSE(in1 && in2);
    const RegionLabel label = region_label(z, g12, g21, alpha);
    EXPECT_EQ(label == RegionLabel::A1, in1);
    EXPECT_EQ(label == RegionLabel::A2, in2);
  }
}

TEST(EvaluateKind, WorkedExampleOutcomes) {
  const KindOutcome dws = evaluate_kind(testing::ref_scenario(2.0));
  EXPECT_EQ(dws.verdict, KindVerdict::DefendersWin);

  const KindOutcome on = evaluate_kind(testing::ref_scenario(testing::ref_barrier_mid()));
  EXPECT_EQ(on.verdict, KindVerdict::OnBarrier);
  EXPECT_EQ(on.piece, BarrierPiece::B3);

  const Scenario low = testing::ref_scenario(0.5);
  EXPECT_EQ(evaluate_kind(low).verdict, KindVerdict::AttackerWins);
  EXPECT_EQ(oracle_kind(low).verdict, OracleVerdict::AttackerWins);
}

TEST(EvaluateKind, NormalizedFormIsHeightGap) {
  const KindOutcome k = evaluate_kind(testing::ref_scenario(2.0, -1.0, 0.5));
  EXPECT_EQ(k.piece, BarrierPiece::B1);
  EXPECT_NEAR(k.normalized_form, 4.0 - testing::ref_piece1_sq(-1.0, 0.5), 1e-14);
}

TEST(EvaluateKind, Errors) {
  Scenario below = testing::ref_scenario(1.0);
  below.attacker(2) = -0.5;
  try {
    evaluate_kind(below);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AttackerNotInPlay);
  }
  Scenario tilted = testing::ref_scenario(1.0);
  tilted.hyperplane.normal = v3(0, 1, 1);
  try {
    evaluate_kind(tilted);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotCanonical);
  }
}

TEST(BarrierHeight, WorkedExamplePieces) {
  const Vec& d1 = testing::ref_d1();
  const Vec& d2 = testing::ref_d2();
  auto mid = barrier_height(v2(0, 0), d1, d2, 0.5);
  ASSERT_TRUE(mid);
  EXPECT_NEAR(height(mid->point), std::sqrt(719.0 / 768.0), 1e-15);
  EXPECT_EQ(mid->piece, BarrierPiece::B3);

  auto left = barrier_height(v2(-2, 0), d1, d2, 0.5);
  ASSERT_TRUE(left);
  EXPECT_NEAR(height(left->point), std::sqrt(1.0 / 3.0), 1e-15);
  EXPECT_EQ(left->piece, BarrierPiece::B1);

  auto right = barrier_height(v2(2, 0), d1, d2, 0.5);
  ASSERT_TRUE(right);
  EXPECT_NEAR(height(right->point), std::sqrt(31.0 / 48.0), 1e-15);
  EXPECT_EQ(right->piece, BarrierPiece::B2);
}

TEST(SampleBarrier, SingleNodeGrid) {
  const Barrier b(testing::ref_d1(), testing::ref_d2(), 0.5);
  const auto points = sample_barrier(b, {v2(0, 0), v2(0, 0), {1, 1}});
  ASSERT_EQ(points.size(), 1u);
  EXPECT_NEAR((points[0].point - v3(0, 0, testing::ref_barrier_mid())).norm(), 0.0, 1e-15);
  EXPECT_EQ(points[0].piece, BarrierPiece::B3);
}

TEST(SampleBarrier, ContinuousAcrossSeam) {
  const Barrier b(testing::ref_d1(), testing::ref_d2(), 0.5);
  const double seam = -7.0 / 32.0;
  const auto points = sample_barrier(b, {v2(seam - 1e-9, 0.3), v2(seam + 1e-9, 0.3), {2, 1}});
  ASSERT_EQ(points.size(), 2u);
  EXPECT_EQ(points[0].piece, BarrierPiece::B1);
  EXPECT_EQ(points[1].piece, BarrierPiece::B3);
  EXPECT_NEAR(height(points[0].point), height(points[1].point), 1e-6);
  EXPECT_NEAR(testing::ref_piece1_sq(seam, 0.3), testing::ref_piece3_sq(seam, 0.3), 1e-12);
}

TEST(SampleBarrier, AbsentWhereNoPositiveRoot) {
  // A defender on the hyperplane has a zero-height barrier directly above it.
  const Barrier b(v2(0, 0), v2(5, 0), 0.5);
  EXPECT_TRUE(sample_barrier(b, {Vec::Zero(1), Vec::Zero(1), {1}}).empty());
}

TEST(SampleBarrier, EmptyGridRejected) {
  const Barrier b(testing::ref_d1(), testing::ref_d2(), 0.5);
  try {
    sample_barrier(b, {v2(0, 0), v2(1, 1), {0, 3}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyGrid);
  }
}

TEST(KindProperty, MirroringADefenderKeepsOutcome) {
  Rng rng(31);
  int checked = 0;
  while (checked < 1000) {
    Scenario s = testing::random_scenario(rng, rng.integer(2, 5));
    const Eigen::Index n = s.dim();
    if (height(s.defender1) >= 0) s.defender1(n - 1) = -s.defender1(n - 1) - 0.01;
    Scenario m = s;
    m.defender1 = mirror_defender(s.defender1);
    if ((m.defender1 - m.defender2).norm() == 0.0 || (m.defender1 - m.attacker).norm() == 0.0) {
      continue;
    }
    const KindOutcome a = evaluate_kind(s);
    const KindOutcome b = evaluate_kind(m);
    EXPECT_EQ(a.verdict, b.verdict);
    EXPECT_EQ(a.piece, b.piece);
    ++checked;
  }
}

TEST(KindProperty, AgreesWithOracleAwayFromBarrier) {
  // The full 500-scenario sweep runs in the acceptance suite.
  Rng rng(37);
  int checked = 0;
  while (checked < 60) {
    const Scenario s = testing::random_scenario(rng, rng.integer(2, 3));
    const KindOutcome k = evaluate_kind(s);
    if (std::abs(k.normalized_form) <= 0.05) continue;
    const OracleKindResult o = oracle_kind(s);
    const bool closed_dws = k.verdict == KindVerdict::DefendersWin;
    EXPECT_NE(o.verdict, OracleVerdict::Inconclusive);
    EXPECT_EQ(closed_dws, o.verdict == OracleVerdict::DefendersWin)
        << "normalized form " << k.normalized_form << ", oracle margin " << o.best_margin;
    ++checked;
  }
}

TEST(KindProperty, SampledBarrierPointsAreOnBarrier) {
  Rng rng(41);
  Tolerances loose;
  loose.barrier_scale = 1e-6;
  for (int trial = 0; trial < 40; ++trial) {
    const Scenario s = testing::random_scenario(rng, rng.integer(2, 4));
    const Barrier b(s.defender1, s.defender2, s.alpha);
    const Eigen::Index d = s.dim() - 1;
    BarrierGrid grid{Vec::Constant(d, -4.0), Vec::Constant(d, 4.0),
                     std::vector<int>(static_cast<std::size_t>(d), d == 1 ? 41 : 9)};
    for (const BarrierPoint& p : sample_barrier(b, grid)) {
      if ((p.point - s.defender1).norm() == 0.0 || (p.point - s.defender2).norm() == 0.0) continue;
      const Scenario on = Scenario::canonical(s.defender1, s.defender2, p.point, s.alpha);
      const KindOutcome k = evaluate_kind(on, {loose});
      EXPECT_EQ(k.verdict, KindVerdict::OnBarrier) << "form " << k.form_value;
      EXPECT_EQ(k.piece, p.piece);
    }
  }
}

TEST(KindProperty, OneActiveUsesThatDefenderAlone) {
  Rng rng(43);
  const Vec lat = v2(0.5, -1.0);
  const Vec d1 = v3(lat(0), lat(1), -0.8);
  const Vec d2 = v3(lat(0), lat(1), 2.5);
  ASSERT_EQ(classify_active(d1, d2), (ActiveSet{ActiveSet::Kind::OneActive, 1}));
  const Mat xi = single_matrix(mirror_defender(d1), 0.6);
  for (int i = 0; i < 1000; ++i) {
    Vec a = rng.vec(3, -3, 3);
    a(2) = rng.uniform(0.01, 3);
    const KindOutcome k = evaluate_kind(Scenario::canonical(d1, d2, a, 0.6));
    const double form = quadratic_form(xi, a);
    EXPECT_EQ(k.piece, BarrierPiece::Single);
    EXPECT_EQ(k.form_value, form);
    EXPECT_EQ(k.verdict == KindVerdict::DefendersWin, form > 1e-9 * (1 + a.squaredNorm()));
  }
}

}  // namespace
}  // namespace subguard
