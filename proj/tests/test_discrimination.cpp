// Copyright 2026 The cohdisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>

#include <gtest/gtest.h>

#include "cohdisc/errors.hpp"
#include "cohdisc/linalg.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace cohdisc {
namespace {

using discrimination::DiscriminationPair;
using linalg::identity;
using linalg::kron;

DiscriminationPair gad_pair(double g0, double n0, double g1, double n1) {
  return {channels::gad_channel({g0, n0}), channels::gad_channel({g1, n1})};
}

TEST(Pair, RejectsMismatchedDimensions) {
  EXPECT_THROW(DiscriminationPair(channels::identity_channel(2), channels::identity_channel(3)),
               DimensionMismatch);
}

TEST(Pair, RejectsNonChannels) {
  channels::KrausChannel bad(2, 2, {0.9 * identity(2)});
  EXPECT_THROW(DiscriminationPair(bad, channels::identity_channel(2)), CompletenessViolation);
}

TEST(Diamond, IdentityVersusFlipIsPerfect) {
  const auto r = discrimination::solve_diamond(testing::id_vs_x());
  EXPECT_NEAR(r.p_inc, 1.0, 1e-7);
}

TEST(Diamond, IdenticalChannelsAreHalf) {
  random::Rng rng = random::stream(11, 0);
  const auto ch = random::qubit_channel(rng);
  EXPECT_NEAR(discrimination::p_inc({ch, ch}), 0.5, 1e-7);
}

TEST(Diamond, MatchesBlochGridOracle) {
  const auto pair = gad_pair(0.25, 0.0, 0.75, 0.0);
  const double grid = oracle::grid_half_diamond(pair.channel(0), pair.channel(1)).value;
  const double p = discrimination::p_inc(pair);
  EXPECT_GE(p, 0.5 * (1.0 + grid) - 1e-7);
  EXPECT_NEAR(p, 0.5 * (1.0 + grid), 1e-6);
}

TEST(Diamond, RandomPairsAgreeWithGridOracle) {
  for (int t = 0; t < 3; ++t) {
    random::Rng rng = random::stream(12, t);
    const auto pair = testing::random_qubit_pair(rng);
    const double grid = oracle::grid_half_diamond(pair.channel(0), pair.channel(1)).value;
    EXPECT_NEAR(discrimination::solve_diamond(pair).half_distance, grid, 1e-6) << "instance " << t;
  }
}

TEST(Diamond, DualCertificateIsFeasible) {
  for (int t = 0; t < 5; ++t) {
    random::Rng rng = random::stream(13, t);
    const auto pair = testing::random_qubit_pair(rng);
    const auto r = discrimination::solve_diamond(pair);
    const ComplexMatrix gamma = channels::choi_from_kraus(pair.channel(0)).matrix -
                                channels::choi_from_kraus(pair.channel(1)).matrix;
    EXPECT_GE(linalg::min_eigenvalue(r.z), -1e-8);
    EXPECT_GE(linalg::min_eigenvalue(r.z - gamma), -1e-8);
    const ComplexMatrix tr_b = linalg::partial_trace(r.z, {{"R", 2}, {"B", 2}}, {"B"});
    EXPECT_GE(r.mu, linalg::max_eigenvalue(tr_b) - 1e-8);
    EXPECT_EQ(r.mu, r.half_distance);
    EXPECT_NEAR(r.solution.primal_value, r.half_distance, 1e-7);
    EXPECT_NEAR(r.rho.trace().real(), 1.0, 1e-9);
    EXPECT_GE(linalg::min_eigenvalue(r.w), -1e-8);
    EXPECT_GE(linalg::min_eigenvalue(kron(r.rho, identity(2)) - r.w), -1e-8);
  }
}

TEST(CohPrimal, ProjectorAndZMap) {
  for (int t = 0; t < 10; ++t) {
    random::Rng rng = random::stream(14, t);
    const auto pair = testing::random_qubit_pair(rng);
    const discrimination::CohPrimalProblem prob(pair);
    const ComplexMatrix& y = prob.y();
    EXPECT_LT(linalg::max_abs(y * y - y), 1e-12);
    EXPECT_NEAR(y.trace().real(), 2.0, 1e-12);
    const ComplexMatrix rho = random::density(2, rng);
    const ComplexMatrix z = prob.z_of(rho);
    EXPECT_NEAR(z.trace().real(), 1.0, 1e-12);
    EXPECT_GE(linalg::min_eigenvalue(z), -1e-12);
    EXPECT_LT(linalg::max_abs(z - z.adjoint()), 1e-14);
  }
}

TEST(CohPrimal, SupportOfDoNothingPairIsSmall) {
  random::Rng rng = random::stream(15, 0);
  const auto ch = random::channel(2, 2, 2, rng);
  const discrimination::CohPrimalProblem prob({ch, ch});
  EXPECT_EQ(prob.env_dim(), 2);
  EXPECT_EQ(prob.support_dim(), 2);
}

TEST(CohPrimal, ReducedProgramMatchesFullProgram) {
  for (int t = 0; t < 4; ++t) {
    random::Rng rng = random::stream(16, t);
    const int env = 1 + t % 2;
    const DiscriminationPair pair(random::channel(2, 2, env, rng), random::channel(2, 2, env, rng));
    const discrimination::CohPrimalProblem prob(pair);
    ASSERT_EQ(prob.support_dim(), 2 * prob.env_dim());
    const auto full = sdp::solve(prob.full_sdp());
    ASSERT_EQ(full.status, sdp::Status::Optimal);
    const auto coh = discrimination::solve_coh(pair);
    EXPECT_NEAR(full.primal_value, coh.value, 1e-7) << "instance " << t;
  }
}

TEST(CohPrimal, LiftedSigmaIsFeasible) {
  for (int t = 0; t < 6; ++t) {
    random::Rng rng = random::stream(17, t);
    const auto pair = testing::random_qubit_pair(rng);
    const auto coh = discrimination::solve_coh(pair);
    const discrimination::CohPrimalProblem prob(pair);
    EXPECT_GE(linalg::min_eigenvalue(coh.sigma), -1e-8);
    EXPECT_NEAR(coh.rho.trace().real(), 1.0, 1e-9);
    const ComplexMatrix marginal = linalg::partial_trace(coh.sigma, prob.sigma_shape(), {"F", "B"});
    EXPECT_LT(linalg::max_abs(marginal - prob.z_of(coh.rho)), 1e-7);
    EXPECT_NEAR((prob.y() * coh.sigma).trace().real(), coh.value, 1e-8);
  }
}

TEST(CohPrimal, NamedExamples) {
  const auto perfect = discrimination::solve_coh(testing::id_vs_x());
  EXPECT_NEAR(perfect.value, 1.0, 1e-7);
  EXPECT_NEAR(perfect.dual.bound, 1.0, 1e-6);

  const auto g = channels::gad_channel({0.3, 0.2});
  const auto same = discrimination::solve_coh({g, g});
  EXPECT_NEAR(same.value, 0.5, 1e-7);
  EXPECT_NEAR(same.dual.bound, 0.5, 1e-6);
}

TEST(CohPrimal, PaddingDoesNotChangeValue) {
  random::Rng rng = random::stream(18, 0);
  const auto pair = testing::random_qubit_pair(rng);
  const DiscriminationPair padded(pair.channel(0).padded(pair.channel(0).rank() + 2),
                                  pair.channel(1).padded(pair.channel(1).rank() + 1));
  EXPECT_NEAR(discrimination::p_coh(pair), discrimination::p_coh(padded), 1e-7);
}

TEST(CohPrimal, GaugeInvariance) {
  for (int t = 0; t < 3; ++t) {
    random::Rng rng = random::stream(19, t);
    const auto pair = testing::random_qubit_pair(rng);
    const auto& c0 = pair.channel(0);
    const auto& c1 = pair.channel(1);
    const DiscriminationPair rotated(
        channels::kraus_rotate(c0, random::unitary(static_cast<int>(c0.rank()), rng)),
        channels::kraus_rotate(c1, random::isometry(static_cast<int>(c1.rank()) + 1,
                                                    static_cast<int>(c1.rank()), rng)));
    EXPECT_NEAR(discrimination::p_coh(pair), discrimination::p_coh(rotated), 1e-7);
  }
}

TEST(CohDual, CertificateVerifiesAndBoundsPrimal) {
  for (int t = 0; t < 8; ++t) {
    random::Rng rng = random::stream(20, t);
    const auto pair = testing::random_qubit_pair(rng);
    const auto coh = discrimination::solve_coh(pair);
    const auto check = discrimination::verify_coh_dual(pair, coh.dual);
    EXPECT_TRUE(check.valid) << "instance " << t << " lmi " << check.lmi_y_min_eig;
    EXPECT_GE(coh.dual.bound, coh.value - 1e-9);
    EXPECT_LT(coh.dual.bound - coh.value, 1e-6);
    EXPECT_GE(coh.dual.bound, check.lambda_required - 1e-12);
  }
}

TEST(CohDual, CorruptedCertificateIsRejected) {
  random::Rng rng = random::stream(21, 0);
  const auto pair = testing::random_qubit_pair(rng);
  auto cert = discrimination::solve_coh_dual(pair);
  auto shrunk = cert;
  shrunk.w *= 0.5;
  EXPECT_FALSE(discrimination::verify_coh_dual(pair, shrunk).valid);
  auto low = cert;
  low.lambda -= 0.05;
  EXPECT_FALSE(discrimination::verify_coh_dual(pair, low).valid);
}

TEST(Strategy, ExampleStrategyIsPerfect) {
  const auto pair = testing::id_vs_x();
  const auto s = discrimination::example_strategy(pair);
  EXPECT_NEAR(discrimination::simulate_success(pair, s), 1.0, 1e-12);
  EXPECT_NEAR(discrimination::kraus_strategy_value(pair, discrimination::kraus_strategy_of(s, 2)), 1.0,
              1e-12);
}

TEST(Strategy, DoNothingIsHalf) {
  for (int t = 0; t < 5; ++t) {
    random::Rng rng = random::stream(22, t);
    const auto pair = testing::random_qubit_pair(rng);
    EXPECT_NEAR(discrimination::simulate_success(pair, discrimination::do_nothing_strategy(pair)), 0.5, 1e-12);
    EXPECT_NEAR(discrimination::kraus_strategy_value(pair, discrimination::do_nothing_kraus_strategy(pair, 3)),
                0.5, 1e-12);
  }
}

TEST(Strategy, RandomStrategiesNeverBeatTheProgram) {
  for (int t = 0; t < 5; ++t) {
    random::Rng rng = random::stream(23, t);
    const auto pair = testing::random_qubit_pair(rng);
    const double bound = discrimination::p_coh(pair);
    for (int k = 0; k < 20; ++k) {
      const int de = 1 + k % 3;
      discrimination::Strategy s{random::unit_vector(4, rng), random::unitary(2 * 2 * de * 2, rng), 2, de};
      const double p = discrimination::simulate_success(pair, s);
      EXPECT_LE(p, bound + 1e-7);
      EXPECT_GE(p, -1e-12);
    }
  }
}

TEST(Strategy, KrausValueMatchesSimulationOfCompletion) {
  for (int t = 0; t < 6; ++t) {
    random::Rng rng = random::stream(24, t);
    const auto pair = testing::random_qubit_pair(rng);
    const int de = 2;
    const ComplexMatrix stacked = random::isometry(2 * 4 * de, 4, rng);
    const discrimination::KrausStrategy ks{stacked.topRows(4 * de), stacked.bottomRows(4 * de), 2, de};
    const double value = discrimination::kraus_strategy_value(pair, ks);
    const ComplexVector psi = discrimination::best_input_state(pair, ks);
    const auto s = discrimination::complete_strategy(ks, psi, 2);
    EXPECT_NEAR(discrimination::simulate_success(pair, s), value, 1e-10);
    const auto back = discrimination::kraus_strategy_of(s, 2);
    EXPECT_LT(linalg::max_abs(back.p0 - ks.p0), 1e-12);
    EXPECT_LT(linalg::max_abs(back.p1 - ks.p1), 1e-12);
  }
}

TEST(Strategy, SimulationIsGaugeInvariant) {
  random::Rng rng = random::stream(25, 0);
  const auto pair = testing::random_qubit_pair(rng);
  const DiscriminationPair rotated(
      channels::kraus_rotate(pair.channel(0), random::unitary(static_cast<int>(pair.channel(0).rank()), rng)),
      channels::kraus_rotate(pair.channel(1), random::unitary(static_cast<int>(pair.channel(1).rank()), rng)));
  for (int k = 0; k < 5; ++k) {
    discrimination::Strategy s{random::unit_vector(4, rng), random::unitary(16, rng), 2, 2};
    EXPECT_NEAR(discrimination::simulate_success(pair, s), discrimination::simulate_success(rotated, s), 1e-12);
  }
}

TEST(Strategy, PovmStrategyIsBoundedByProgram) {
  random::Rng rng = random::stream(26, 0);
  const auto pair = testing::random_qubit_pair(rng);
  const ComplexMatrix u = random::unitary(4, rng);
  const ComplexMatrix proj = u * kron(linalg::ketbra(2, 0, 0), identity(2)) * u.adjoint();
  const channels::Povm povm{{proj, identity(4) - proj}};
  const auto ks = discrimination::kraus_strategy_from_povm(povm, 2);
  const double v = discrimination::kraus_strategy_value(pair, ks);
  EXPECT_LE(v, discrimination::p_coh(pair) + 1e-7);
  EXPECT_GE(v, 0.0);
}

TEST(Strategy, ValidationErrors) {
  const auto pair = testing::id_vs_x();
  auto s = discrimination::example_strategy(pair);
  auto bad_v = s;
  bad_v.v(0, 0) = 2.0;
  EXPECT_THROW(discrimination::simulate_success(pair, bad_v), NotIsometry);
  auto bad_psi = s;
  bad_psi.psi *= 2.0;
  EXPECT_THROW(discrimination::simulate_success(pair, bad_psi), ConstraintViolation);
  auto wrong_dim = s;
  wrong_dim.psi = ComplexVector::Zero(3);
  EXPECT_THROW(discrimination::simulate_success(pair, wrong_dim), DimensionMismatch);

  auto ks = discrimination::do_nothing_kraus_strategy(pair);
  ks.p1 *= 0.5;
  EXPECT_THROW(discrimination::kraus_strategy_value(pair, ks), ConstraintViolation);
}

TEST(Sandwich, HoldsOnRandomPairs) {
  discrimination::SeesawOptions opts;
  opts.starts = 3;
  for (int t = 0; t < 3; ++t) {
    random::Rng rng = random::stream(27, t);
    const auto pair = testing::random_qubit_pair(rng);
    const auto rep = discrimination::check_sandwich(pair, {}, opts);
    EXPECT_TRUE(rep.violations.empty());
    EXPECT_LE(rep.p_coh, rep.p_inc + 1e-6);
    EXPECT_LE(rep.p_inc, std::sqrt(rep.p_coh) + 1e-6);
    EXPECT_LE(rep.p_inc_unc_lb, rep.p_inc + 1e-6);
  }
}

TEST(Monotonicity, IdentitySuperchannelPreservesValue) {
  random::Rng rng = random::stream(28, 0);
  const auto pair = testing::random_qubit_pair(rng);
  const auto rep = discrimination::check_superchannel_monotonicity(pair, channels::identity_channel(2),
                                                                   channels::identity_channel(2), 1);
  EXPECT_NEAR(rep.before, rep.after, 1e-7);
}

TEST(Monotonicity, ReplacementSuperchannelGivesHalf) {
  random::Rng rng = random::stream(28, 1);
  const auto pair = testing::random_qubit_pair(rng);
  const channels::KrausChannel reset(2, 2, {linalg::ketbra(2, 0, 0), linalg::ketbra(2, 0, 1)});
  const auto rep = discrimination::check_superchannel_monotonicity(pair, channels::identity_channel(2), reset, 1);
  EXPECT_NEAR(rep.after, 0.5, 1e-7);
  EXPECT_LE(rep.after, rep.before + 1e-6);
}

TEST(Monotonicity, RandomSuperchannelsDoNotIncrease) {
  for (int t = 0; t < 3; ++t) {
    random::Rng rng = random::stream(29, t);
    const auto pair = testing::random_qubit_pair(rng);
    const auto pre = random::channel(2, 4, 2, rng);
    const auto post = random::channel(4, 2, 2, rng);
    EXPECT_NO_THROW(discrimination::check_superchannel_monotonicity(pair, pre, post, 2));
  }
}

}  // namespace
}  // namespace cohdisc
