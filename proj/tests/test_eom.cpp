#include "rodwheel/eom.hpp"

#include <gtest/gtest.h>

#include "rodwheel/oracle.hpp"
#include "test_support.hpp"

namespace rodwheel {
namespace {

using testing::kTiltedInitial;
using testing::legacy_params;
using testing::StateSampler;

TEST(Constraints, MatrixExamples) {
  const Params p;
  Matrix26d expected;
  expected << 1, 0, 0, -1, 0, 0, 0, 1, 1, 0, 0, 0;
  EXPECT_LT((constraint_matrix(GenPos::Zero(), p) - expected).cwiseAbs().maxCoeff(), 1e-15);

  GenPos q = GenPos::Zero();
  q[kPsi] = M_PI / 2;
  expected << 1, 0, -1, 0, 0, 0, 0, 1, 0, -1, 0, 0;
  EXPECT_LT((constraint_matrix(q, p) - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Constraints, MatchIndependentTranscription) {
  StateSampler s(301);
  Params p;
  p.r = 0.7;
  for (int k = 0; k < 200; ++k) {
    const GenPos q = s.state().q();
    const Matrix26d A = constraint_matrix(q, p);
    EXPECT_LT((A - oracle::constraint_matrix(q, p.r)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(A.col(kBeta), Vector2d::Zero());
  }
}

TEST(Constraints, ConstrainedVelocityExamples) {
  const Params p;
  EXPECT_LT((constrained_velocities(GenPos::Zero(), {1, 0, 0}, p) - Vector2d(0, -1)).norm(), 1e-15);
  EXPECT_EQ(constrained_velocities(GenPos::Zero(), {0, 0, 0}, p), Vector2d::Zero());

  const Vector2d v = constrained_velocities(kTiltedInitial.q(), {6, -3, 0}, p);
  EXPECT_NEAR(v[0], -3 * std::cos(0.3), 1e-12);
  EXPECT_NEAR(v[0], -2.8660, 1e-4);
  EXPECT_NEAR(v[1], -6.0, 1e-12);
}

TEST(Constraints, FullVelocitySatisfiesRolling) {
  const Params p;
  StateSampler s(303);
  for (int k = 0; k < 200; ++k) {
    const State x = s.state();
    const GenVel dq = full_velocity(x, p);
    EXPECT_LT((constraint_matrix(x.q(), p) * dq).norm(), 1e-12);
    EXPECT_EQ(dq.tail<4>(), x.rates());
  }
}

TEST(Constraints, DriftMatchesFiniteDifference) {
  const Params p;
  StateSampler s(305);
  const double h = 1e-6;
  for (int k = 0; k < 100; ++k) {
    const GenPos q = s.state().q();
    const GenVel dq = s.velocity();
    const Vector2d fd =
        (constraint_matrix(GenPos(q + h * dq), p) - constraint_matrix(GenPos(q - h * dq), p)) * dq / (2 * h);
    EXPECT_LT((constraint_drift(q, dq, p) - fd).cwiseAbs().maxCoeff(), 1e-7);
  }
}

TEST(MassSystem, StructureExamples) {
  const Params p;
  StateSampler s(307);
  for (int k = 0; k < 100; ++k) {
    const GenPos q = s.state().q();
    const Matrix8d M = mass_matrix(q, p);
    EXPECT_EQ(Eigen::Matrix2d(M.topLeftCorner<2, 2>()), Eigen::Matrix2d::Zero());
    EXPECT_EQ(Matrix26d(M.topRightCorner<2, 6>()), constraint_matrix(q, p));
    EXPECT_TRUE((M.bottomLeftCorner<6, 2>() == Matrix26d(-constraint_matrix(q, p)).transpose()));
    // M depends on q only.
    EXPECT_LT((assemble(q, s.velocity(), p).M - M).cwiseAbs().maxCoeff(), 1e-12);
  }
  EXPECT_NEAR(mass_matrix(GenPos::Zero(), p)(2, 2), p.m + p.mu, 1e-12);
}

TEST(MassSystem, RhsExamples) {
  const Params p;
  StateSampler s(309);
  for (int k = 0; k < 50; ++k) {
    const Vector8d b = rhs_vector(s.state().q(), GenVel::Zero(), p);
    EXPECT_EQ(b.head<2>(), Vector2d::Zero());
  }
  // Upright at rest: gravity has no moment, nothing to balance.
  EXPECT_LT(rhs_vector(GenPos::Zero(), GenVel::Zero(), p).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(control_direction(), (Vector8d() << 0, 0, 0, 0, 1, 0, 0, -1).finished());
}

TEST(MassSystem, MatchesOracleAssembly) {
  for (const Params& p : {Params{}, legacy_params()}) {
    StateSampler s(311);
    for (int k = 0; k < 50; ++k) {
      const State x = s.state();
      const GenVel dq = full_velocity(x, p);
      const MassSystem sys = assemble(x.q(), dq, p);
      const oracle::MassAndRhs ref = oracle::fd_mass_and_rhs(x.q(), dq, p);
      EXPECT_LE(oracle::relative_discrepancy(sys.M, ref.M), 1e-6);
      EXPECT_LE(oracle::relative_discrepancy(sys.b, ref.b), 1e-6);
      EXPECT_LT((sys.b - rhs_vector(x.q(), dq, p)).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Dynamics, UprightStraightRollIsEquilibrium) {
  const Params p;
  const State x(0, 0, 0, 0, 0, 0, 2.0, 0, 0, 0);
  const Dynamics d = evaluate_dynamics(x, 0.0, p);
  EXPECT_LT(d.xdot.tail<4>().cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT(d.accel.lambda().cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT((d.xdot.head<2>() - Vector2d(0, -2)).norm(), 1e-12);
  EXPECT_EQ(d.xdot.segment<4>(2), x.rates());
}

TEST(Dynamics, PlanarMotionStaysPlanar) {
  const Params p;
  StateSampler s(313);
  for (int k = 0; k < 100; ++k) {
    const State x(s.uniform(-5, 5), s.uniform(-5, 5), s.uniform(-3, 3), 0, 0, s.uniform(-3, 3), s.uniform(-3, 3),
                  0, 0, s.uniform(-3, 3));
    const Vector10d f = forward_dynamics(x, s.uniform(-20, 20), p);
    EXPECT_LT(std::abs(f[7]), 1e-12);
    EXPECT_LT(std::abs(f[8]), 1e-12);
  }
}

TEST(Dynamics, AccelerationLevelConstraintHolds) {
  const Params p;
  StateSampler s(315);
  for (int k = 0; k < 200; ++k) {
    const State x = s.state();
    const Dynamics d = evaluate_dynamics(x, s.uniform(-20, 20), p);
    const Vector2d res = constraint_matrix(x.q(), p) * d.accel.ddq() + constraint_drift(x.q(), d.dq, p);
    EXPECT_LT(res.norm(), 1e-9);
  }
}

TEST(Dynamics, PowerBalance) {
  // dE/dt along the flow equals the motor power u (phi' - beta').
  for (const Params& p : {Params{}, legacy_params()}) {
    StateSampler s(317);
    const double h = 1e-5;
    for (int k = 0; k < 100; ++k) {
      const State x = s.state();
      const double u = s.uniform(-10, 10);
      const Vector10d f = forward_dynamics(x, u, p);
      const double dE =
          (total_energy(State{Vector10d(x.x + h * f)}, p) - total_energy(State{Vector10d(x.x - h * f)}, p)) / (2 * h);
      const double power = u * (x.dphi() - x.dbeta());
      EXPECT_NEAR(dE, power, 1e-5 * std::max(1.0, f.norm()));
    }
  }
}

TEST(Dynamics, GroundForceDoesNoWork) {
  const Params p;
  StateSampler s(319);
  for (int k = 0; k < 100; ++k) {
    const State x = s.state();
    const Vector2d lambda = ground_reaction(x, s.uniform(-10, 10), p);
    const GenVel tau = constraint_matrix(x.q(), p).transpose() * lambda;
    EXPECT_LT(std::abs(tau.dot(full_velocity(x, p))), 1e-9 * std::max(1.0, tau.norm()));
  }
}

TEST(Dynamics, ReactionScalesWithMass) {
  // Scaling m and mu together scales every force but leaves accelerations alone.
  StateSampler s(321);
  for (int k = 0; k < 50; ++k) {
    State x = s.state();
    x.x.tail<4>().setZero();
    const Params p;
    Params heavy = p;
    heavy.m *= 3.0;
    heavy.mu *= 3.0;
    const Dynamics a = evaluate_dynamics(x, 0.0, p);
    const Dynamics b = evaluate_dynamics(x, 0.0, heavy);
    EXPECT_LT((b.accel.lambda() - 3.0 * a.accel.lambda()).norm(), 1e-9 * std::max(1.0, a.accel.lambda().norm()));
    EXPECT_LT((b.accel.ddq() - a.accel.ddq()).norm(), 1e-9 * std::max(1.0, a.accel.ddq().norm()));
  }
}

TEST(Dynamics, TranslationAndSpinInvariance) {
  const Params p;
  StateSampler s(323);
  for (int k = 0; k < 50; ++k) {
    const State x = s.state();
    State moved = x;
    moved.x[kC1] += 17.0;
    moved.x[kC2] -= 4.0;
    moved.x[kPhi] += 1.3;
    const double u = s.uniform(-5, 5);
    const Vector10d f = forward_dynamics(x, u, p);
    EXPECT_LT((forward_dynamics(moved, u, p) - f).cwiseAbs().maxCoeff(), 1e-9 * std::max(1.0, f.norm()));
  }
}

TEST(Dynamics, MirrorSymmetry) {
  // Reflection through the vertical plane x = 0 maps (c1, theta, psi) to their
  // negatives and leaves c2, phi and beta alone; the dynamics commute with it.
  const Params p;
  const Vector10d sign = (Vector10d() << -1, 1, 1, -1, -1, 1, 1, -1, -1, 1).finished();
  StateSampler s(325);
  for (int k = 0; k < 100; ++k) {
    const State x = s.state();
    const State mirrored{Vector10d(sign.cwiseProduct(x.x))};
    const double u = s.uniform(-10, 10);
    const Vector10d f = forward_dynamics(x, u, p);
    const Vector10d g = forward_dynamics(mirrored, u, p);
    EXPECT_LT((g - sign.cwiseProduct(f)).cwiseAbs().maxCoeff(), 1e-9 * std::max(1.0, f.norm()));
  }
}

TEST(Dynamics, TiltedInitialStateDerivative) {
  const Params p = legacy_params();
  const Vector10d f = forward_dynamics(kTiltedInitial, 0.0, p);
  EXPECT_NEAR(f[0], -3 * std::cos(0.3), 1e-12);
  EXPECT_NEAR(f[1], -6.0, 1e-12);
  EXPECT_EQ(f.segment<4>(2), kTiltedInitial.rates());
  EXPECT_TRUE(f.allFinite());
}

TEST(Dynamics, FlatDiskIsSingular) {
  const Params p;
  const State flat(0, 0, 0, M_PI / 2, 0, 0, 0, 0, 0, 0);
  EXPECT_THROW(forward_dynamics(flat, 0.0, p), SingularMass);
}

TEST(Dynamics, SolverRejectsSingularMatrix) {
  Matrix8d M = Matrix8d::Identity();
  M(7, 7) = 0.0;
  EXPECT_THROW(solve_mass_system(M, Vector8d::Ones()), SingularMass);
  EXPECT_EQ(solve_mass_system(2.0 * Matrix8d::Identity(), Vector8d::Ones()), Vector8d::Constant(0.5));
}

TEST(Dynamics, EnergyExamples) {
  const Params p;
  EXPECT_NEAR(total_energy(State(0, 0, 0, 0, 0, M_PI, 0, 0, 0, 0), p), 39.24, 1e-12);
  EXPECT_NEAR(total_energy(State(0, 0, 0, 0, 0, 0, 0, 0, 0, 0), p), 78.48, 1e-12);
  // Straight roll at spin rate 2: 1/2 (I1 + m + mu) * 4 on top of the potential.
  EXPECT_NEAR(total_energy(State(0, 0, 0, 0, 0, 0, 2, 0, 0, 0), p), 78.48 + 0.5 * (2.5 + 6) * 4, 1e-12);
}

}  // namespace
}  // namespace rodwheel
