#include "s3e/estimator.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "s3e/sim.hpp"

using namespace s3e;

namespace {

Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }

EstimatorConfig two_dim_config(PruneStrategy pruning = PruneStrategy::kMergeIntersecting) {
  EstimatorConfig cfg;
  cfg.num_sensors = 4;
  cfg.max_attacked = 2;
  cfg.agreement_size = 2;
  cfg.pruning = pruning;
  return cfg;
}

// Minimal driver around estimate_step for the 2D plant; attacks are supplied
// per step by the caller.
struct MiniSim {
  PlantModel plant = build_two_dim_model();
  EstimatorConfig cfg = two_dim_config();
  EstimateState state;
  Vec x = Vec::Zero(2);
  Rng noise{99};

  explicit MiniSim(PruneStrategy pruning = PruneStrategy::kMergeIntersecting) {
    cfg.pruning = pruning;
    state = init_estimate_state(Zonotope(Vec::Zero(2), Mat::Identity(2, 2)), cfg);
  }

  StepResult step(const std::vector<Vec>& attacks) {
    const Vec u = Vec::Zero(1);
    x = plant.a * x + sample_zonotope(plant.w, noise);
    std::vector<Vec> y;
    for (int i = 0; i < 4; ++i) {
      y.push_back(plant.sensors[static_cast<size_t>(i)].c * x +
                  sample_zonotope(plant.sensors[static_cast<size_t>(i)].v, noise) +
                  attacks[static_cast<size_t>(i)]);
    }
    auto result = estimate_step(state, plant.a, plant.b, u, plant.w, y, plant.output_maps(),
                                plant.noise_sets(), cfg);
    state = result.state;
    return result;
  }

  std::vector<Vec> no_attacks() const {
    return std::vector<Vec>(4, Vec::Zero(2));
  }
};

}  // namespace

// --- time_update --------------------------------------------------------------

TEST(TimeUpdate, IdentityDynamicsNoNoiseKeepsCollection) {
  SetCollection prev;
  prev.members.push_back(ConstrainedZonotope(v2(1, 2), Mat::Identity(2, 2)));
  const auto out = time_update(prev, Mat::Identity(2, 2), Mat::Zero(2, 1), Vec::Zero(1),
                               Zonotope::singleton(Vec::Zero(2)));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(out.members[0].center.isApprox(v2(1, 2)));
  EXPECT_TRUE(out.members[0].generators.leftCols(2).isApprox(Mat::Identity(2, 2)));
}

TEST(TimeUpdate, SingletonPropagatesThroughDynamics) {
  // sigma_w = 0.02 process noise on a singleton maps to <A x, 0.02 I>.
  Mat a(2, 2);
  a << 1, 0, 1, 1;
  const Zonotope w(Vec::Zero(2), 0.02 * Mat::Identity(2, 2));
  SetCollection prev;
  prev.members.push_back(ConstrainedZonotope::singleton(v2(0.3, -0.4)));
  const auto out = time_update(prev, a, Mat::Zero(2, 1), Vec::Zero(1), w);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(out.members[0].center.isApprox(Vec(a * v2(0.3, -0.4))));
  const auto norm = normalized(out.members[0]);
  EXPECT_TRUE(norm.generators.isApprox(0.02 * Mat::Identity(2, 2)));
}

TEST(TimeUpdate, SampledPointsStayInside) {
  oracle::InstanceRng rng(5);
  Rng zrng(17);
  Mat a(2, 2);
  a << 1, 0.3, -0.2, 1.1;
  Mat b(2, 1);
  b << 0.5, 1.0;
  const Vec u = (Vec(1) << 0.7).finished();
  const Zonotope w(v2(0.01, -0.02), 0.05 * Mat::Identity(2, 2));
  const auto inst = oracle::random_nonempty_cz(rng, 2, 4, 1);
  SetCollection prev;
  prev.members.push_back(inst.set);
  const auto out = time_update(prev, a, b, u, w);
  for (int s = 0; s < 500; ++s) {
    const Vec x = oracle::sample_member(inst, rng);
    const Vec wk = sample_zonotope(w, zrng);
    ASSERT_TRUE(contains_point(out.members[0], Vec(a * x + b * u + wk)));
  }
}

TEST(TimeUpdate, MemberCountPreserved) {
  oracle::InstanceRng rng(7);
  SetCollection prev;
  for (int i = 0; i < 3; ++i) prev.members.push_back(oracle::random_nonempty_cz(rng, 2, 3, 1).set);
  const auto out = time_update(prev, Mat::Identity(2, 2), Mat::Zero(2, 1), Vec::Zero(1),
                               Zonotope(Vec::Zero(2), 0.1 * Mat::Identity(2, 2)));
  EXPECT_EQ(out.size(), 3u);
}

// --- output_set -----------------------------------------------------------------

TEST(OutputSet, CenteredNoiseShiftsToMeasurement) {
  const Zonotope v(Vec::Zero(2), 0.5 * Mat::Identity(2, 2));
  const auto y = output_set(v2(3, -1), v);
  EXPECT_EQ(y.center, v2(3, -1));
  EXPECT_EQ(y.generators, v.generators);
}

TEST(OutputSet, RadiusMatchesNoiseRadius) {
  oracle::InstanceRng rng(11);
  for (int t = 0; t < 10; ++t) {
    Mat g(2, 3);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j) g(i, j) = rng.uniform(-1.0, 1.0);
    const Zonotope v(v2(rng.uniform(-1, 1), rng.uniform(-1, 1)), g);
    const auto y = output_set(v2(rng.uniform(-5, 5), rng.uniform(-5, 5)), v);
    EXPECT_DOUBLE_EQ(radius(y), radius(v));
  }
}

TEST(OutputSet, OffsetNoiseCenterSubtracted) {
  const Zonotope v(v2(1, 0), Mat::Identity(2, 2));
  const auto y = output_set(v2(3, -1), v);
  EXPECT_EQ(y.center, v2(2, -1));
}

// --- measurement_update -----------------------------------------------------------

TEST(MeasurementUpdate, GenerousOutputSetKeepsPrediction) {
  const ConstrainedZonotope x_pred(v2(0.5, -0.5), (Mat(2, 3) << 1, 0, 0.5, 0, 1, 0.5).finished());
  const Zonotope y(v2(0.5, -0.5), 20.0 * Mat::Identity(2, 2));
  const auto out = measurement_update(x_pred, Mat::Identity(2, 2), y);
  oracle::InstanceRng rng(13);
  for (int s = 0; s < 200; ++s) {
    const Vec pt = v2(rng.uniform(-3, 3), rng.uniform(-3, 3));
    EXPECT_EQ(contains_point(out, pt), contains_point(x_pred, pt));
  }
}

TEST(MeasurementUpdate, LargeAttackEmptiesUpdate) {
  const ConstrainedZonotope x_pred(Zonotope(Vec::Zero(2), Mat::Identity(2, 2)));
  const Zonotope v(Vec::Zero(2), Mat::Identity(2, 2));
  // Attack shifts the measurement far beyond rad(C X) + rad(V).
  const auto y = output_set(v2(10, 0), v);
  EXPECT_TRUE(is_empty(measurement_update(x_pred, Mat::Identity(2, 2), y)));
}

TEST(MeasurementUpdate, NoiselessConsistentMeasurementKeepsTrueState) {
  oracle::InstanceRng rng(17);
  for (int t = 0; t < 20; ++t) {
    const auto inst = oracle::random_nonempty_cz(rng, 2, 4, 1);
    Mat c(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) c(i, j) = rng.uniform(-1.0, 1.0);
    const Vec x_true = oracle::sample_member(inst, rng);
    const Zonotope v(Vec::Zero(2), 0.5 * Mat::Identity(2, 2));
    const auto out = measurement_update(inst.set, c, output_set(Vec(c * x_true), v));
    EXPECT_FALSE(is_empty(out));
    EXPECT_TRUE(contains_point(out, x_true));
  }
}

// --- agreement_sets -----------------------------------------------------------------

TEST(AgreementSets, SingletonCombosEqualMeasurementUpdates) {
  oracle::InstanceRng rng(19);
  std::vector<MeasurementUpdate> meas;
  for (int i = 0; i < 3; ++i) {
    meas.push_back({oracle::random_nonempty_cz(rng, 2, 3, 1).set, false});
  }
  const auto out = agreement_sets(meas, combinations(3, 1));
  ASSERT_EQ(out.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_FALSE(out[static_cast<size_t>(i)].empty);
    EXPECT_EQ(out[static_cast<size_t>(i)].set.center, meas[static_cast<size_t>(i)].set.center);
    EXPECT_EQ(out[static_cast<size_t>(i)].set.generators,
              meas[static_cast<size_t>(i)].set.generators);
  }
}

TEST(AgreementSets, LexicographicComboLayout) {
  const auto combos = combinations(4, 2);
  const std::vector<std::vector<int>> expected = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  EXPECT_EQ(combos, expected);
}

TEST(AgreementSets, EmptyParticipantShortCircuits) {
  oracle::InstanceRng rng(23);
  std::vector<MeasurementUpdate> meas;
  meas.push_back({oracle::random_nonempty_cz(rng, 2, 3, 0).set, false});
  meas.push_back({ConstrainedZonotope(), true});
  const auto out = agreement_sets(meas, combinations(2, 2));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(out[0].empty);
}

TEST(AgreementSets, AttackFreeRunKeepsTrueStateInEveryCombo) {
  MiniSim sim;
  for (int k = 1; k <= 10; ++k) {
    const auto res = sim.step(sim.no_attacks());
    for (const auto& per_member : res.report.agreement_sets) {
      for (const auto& ag : per_member) {
        ASSERT_FALSE(ag.empty);
        ASSERT_TRUE(contains_point(ag.set, sim.x)) << "step " << k;
      }
    }
  }
}

// --- estimate_step --------------------------------------------------------------------

TEST(EstimateStep, AttackFreeInclusionHolds) {
  MiniSim sim;
  for (int k = 1; k <= 25; ++k) {
    const auto res = sim.step(sim.no_attacks());
    bool included = false;
    for (const auto& m : res.state.collection.members) {
      if (contains_point(m, sim.x)) {
        included = true;
        break;
      }
    }
    ASSERT_TRUE(included) << "step " << k;
  }
}

TEST(EstimateStep, RotatingAttacksInclusionHolds) {
  MiniSim sim;
  Rng attack_rng(123);
  for (int k = 1; k <= 25; ++k) {
    auto attacks = sim.no_attacks();
    for (int j = 0; j < 2; ++j) {
      const int i = (k + j) % 4;
      for (int d = 0; d < 2; ++d) {
        attacks[static_cast<size_t>(i)][d] = attack_rng.uniform_sym(static_cast<double>(k));
      }
    }
    const auto res = sim.step(attacks);
    bool included = false;
    for (const auto& m : res.state.collection.members) {
      if (contains_point(m, sim.x)) {
        included = true;
        break;
      }
    }
    ASSERT_TRUE(included) << "step " << k;
  }
}

TEST(EstimateStep, MonotoneFiltering) {
  // Each measurement update is a subset of its time-update member.
  MiniSim sim;
  oracle::InstanceRng rng(29);
  for (int k = 1; k <= 5; ++k) {
    const auto res = sim.step(sim.no_attacks());
    for (size_t mem = 0; mem < res.report.time_update.size(); ++mem) {
      for (const auto& mu : res.report.measurement_updates[mem]) {
        if (mu.empty) continue;
        for (int d = 0; d < 20; ++d) {
          const Vec dir = v2(rng.uniform(-1, 1), rng.uniform(-1, 1));
          ASSERT_LE(support_value(mu.set, dir),
                    support_value(res.report.time_update.members[mem], dir) + 1e-7);
        }
      }
    }
  }
}

TEST(EstimateStep, AllAgreementSetsEmptyRaisesContractError) {
  // All four sensors report measurements far outside the reachable set.
  MiniSim sim;
  auto attacks = sim.no_attacks();
  for (auto& a : attacks) a = v2(1e4, 1e4);
  EXPECT_THROW(sim.step(attacks), std::runtime_error);
}

TEST(EstimateStep, ReportFlagsConsistentWithEstimate) {
  MiniSim sim;
  const auto res = sim.step(sim.no_attacks());
  EXPECT_EQ(res.report.estimate.size(), res.state.collection.size());
  EXPECT_GE(res.report.radius, 0.0);
  bool any_nonempty = false;
  for (bool e : res.report.combo_agreement_empty) any_nonempty = any_nonempty || !e;
  EXPECT_TRUE(any_nonempty);
}

// --- prune -------------------------------------------------------------------------

TEST(Prune, DropsEmptyMembers) {
  SetCollection coll;
  coll.members.push_back(ConstrainedZonotope(Zonotope(v2(0, 0), Mat::Identity(2, 2))));
  coll.members.push_back(ConstrainedZonotope(Vec::Zero(2), Mat::Identity(2, 2),
                                             (Mat(1, 2) << 1, 0).finished(),
                                             (Vec(1) << 5).finished()));
  const auto out = prune(coll, PruneStrategy::kNone, two_dim_config());
  EXPECT_EQ(out.size(), 1u);
}

TEST(Prune, RemovesDuplicateUnderSubsetStrategy) {
  oracle::InstanceRng rng(31);
  const auto inst = oracle::random_nonempty_cz(rng, 2, 4, 1);
  SetCollection coll;
  coll.members.push_back(inst.set);
  coll.members.push_back(inst.set);
  const auto out = prune(coll, PruneStrategy::kDropEmptyAndSubsets, two_dim_config());
  EXPECT_EQ(out.size(), 1u);
}

TEST(Prune, RemovesCertifiedStrictSubset) {
  SetCollection coll;
  coll.members.push_back(ConstrainedZonotope(Zonotope(v2(0, 0), 0.3 * Mat::Identity(2, 2))));
  coll.members.push_back(ConstrainedZonotope(Zonotope(v2(0, 0), Mat::Identity(2, 2))));
  const auto out = prune(coll, PruneStrategy::kDropEmptyAndSubsets, two_dim_config());
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(out.members[0].generators.isApprox(Mat::Identity(2, 2)));
}

TEST(Prune, KeepsDisjointMembersUnderMerge) {
  SetCollection coll;
  coll.members.push_back(ConstrainedZonotope(Zonotope(v2(0, 0), Mat::Identity(2, 2))));
  coll.members.push_back(ConstrainedZonotope(Zonotope(v2(5, 5), Mat::Identity(2, 2))));
  const auto out = prune(coll, PruneStrategy::kMergeIntersecting, two_dim_config());
  EXPECT_EQ(out.size(), 2u);
}

TEST(Prune, MergesIntersectingGroup) {
  SetCollection coll;
  coll.members.push_back(ConstrainedZonotope(Zonotope(v2(0, 0), Mat::Identity(2, 2))));
  coll.members.push_back(ConstrainedZonotope(Zonotope(v2(0.5, 0), Mat::Identity(2, 2))));
  coll.members.push_back(ConstrainedZonotope(Zonotope(v2(9, 9), Mat::Identity(2, 2))));
  const auto out = prune(coll, PruneStrategy::kMergeIntersecting, two_dim_config());
  ASSERT_EQ(out.size(), 2u);
  // First group overbound spans both unit boxes.
  EXPECT_TRUE(contains_point(out.members[0], v2(-0.9, 0.9)));
  EXPECT_TRUE(contains_point(out.members[0], v2(1.4, -0.9)));
}

TEST(Prune, EveryStrategyPreservesUnionContainment) {
  oracle::InstanceRng rng(37);
  for (const auto strategy :
       {PruneStrategy::kNone, PruneStrategy::kDropEmptyAndSubsets,
        PruneStrategy::kMergeIntersecting, PruneStrategy::kOverboundAll,
        PruneStrategy::kReduceOrder}) {
    SetCollection coll;
    std::vector<oracle::RandomCz> insts;
    for (int i = 0; i < 4; ++i) {
      insts.push_back(oracle::random_nonempty_cz(rng, 2, 5, 1));
      coll.members.push_back(insts.back().set);
    }
    auto cfg = two_dim_config(strategy);
    cfg.reduce_max_generators = 3;
    const auto out = prune(coll, strategy, cfg);
    for (auto& inst : insts) {
      for (int s = 0; s < 100; ++s) {
        const Vec p = oracle::sample_member(inst, rng);
        bool inside = false;
        for (const auto& m : out.members) {
          if (contains_point(m, p)) {
            inside = true;
            break;
          }
        }
        ASSERT_TRUE(inside) << "strategy " << to_string(strategy);
      }
    }
  }
}

TEST(Prune, OverboundAllYieldsSingleMember) {
  oracle::InstanceRng rng(41);
  SetCollection coll;
  for (int i = 0; i < 3; ++i) coll.members.push_back(oracle::random_nonempty_cz(rng, 2, 4, 1).set);
  const auto out = prune(coll, PruneStrategy::kOverboundAll, two_dim_config());
  EXPECT_EQ(out.size(), 1u);
  EXPECT_TRUE(out.members[0].is_unconstrained());
}

TEST(Prune, ReduceOrderRespectsBudget) {
  oracle::InstanceRng rng(43);
  SetCollection coll;
  coll.members.push_back(oracle::random_nonempty_cz(rng, 2, 8, 1).set);
  auto cfg = two_dim_config(PruneStrategy::kReduceOrder);
  cfg.reduce_max_generators = 4;
  const auto out = prune(coll, PruneStrategy::kReduceOrder, cfg);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_LE(out.members[0].num_generators(), 4);
  EXPECT_TRUE(out.members[0].is_unconstrained());
}

// --- modified_estimate -----------------------------------------------------------------

TEST(ModifiedEstimate, HugeRadiusKeepsSet) {
  oracle::InstanceRng rng(47);
  const auto inst = oracle::random_nonempty_cz(rng, 2, 4, 1);
  SetCollection coll;
  coll.members.push_back(inst.set);
  const auto out = modified_estimate(coll, Vec::Zero(2), 1e6);
  ASSERT_EQ(out.size(), 1u);
  for (int s = 0; s < 200; ++s) {
    const Vec p = oracle::sample_member(inst, rng);
    EXPECT_TRUE(contains_point(out.members[0], p));
  }
}

TEST(ModifiedEstimate, ZeroRadiusCollapsesToPoint) {
  SetCollection coll;
  coll.members.push_back(ConstrainedZonotope(Zonotope(v2(1, 1), Mat::Identity(2, 2))));
  const Vec x_hat = v2(1.25, 0.75);
  const auto out = modified_estimate(coll, x_hat, 0.0);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(contains_point(out.members[0], x_hat));
  EXPECT_NEAR(radius(interval_hull(out.members[0]).to_zonotope()), 0.0, 1e-9);
}

TEST(ModifiedEstimate, DisjointCubeThrowsContractError) {
  SetCollection coll;
  coll.members.push_back(ConstrainedZonotope(Zonotope(v2(0, 0), Mat::Identity(2, 2))));
  EXPECT_THROW(modified_estimate(coll, v2(50, 50), 1.0), std::runtime_error);
}

// --- config validation --------------------------------------------------------------

TEST(EstimatorConfig, RejectsBadAgreementSize) {
  EstimatorConfig cfg;
  cfg.num_sensors = 4;
  cfg.max_attacked = 2;
  cfg.agreement_size = 3;  // > p - q
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(EstimatorConfig, ValidatesObservabilityAtConstruction) {
  const auto plant = build_two_dim_model();
  EXPECT_NO_THROW(validate_estimator_config(two_dim_config(), plant.a, plant.output_maps()));

  // A sensor pair that cannot observe the first state: duplicate rank-one rows.
  std::vector<Mat> bad_maps = plant.output_maps();
  bad_maps[0] = (Mat(2, 2) << 0, 1, 0, 1).finished();
  bad_maps[1] = (Mat(2, 2) << 0, 1, 0, 2).finished();
  Mat a_static = Mat::Identity(2, 2);  // static dynamics reveal nothing extra
  EXPECT_THROW(validate_estimator_config(two_dim_config(), a_static, bad_maps),
               std::runtime_error);
}
