#include <random>

#include <gtest/gtest.h>

#include "ramana/error.hpp"
#include "ramana/registry.hpp"
#include "ramana/verifier.hpp"
#include "test_util.hpp"

namespace ramana {
namespace {

using testing::Vec;

const RamanaCertificate& RegistryCert(const std::string& id, const std::string& name) {
  for (const NamedCertificate& nc : FindExample(id)->facts.certificates) {
    if (nc.name == name) return nc.cert;
  }
  throw std::runtime_error("no certificate " + name);
}

SymMat Diag(std::initializer_list<double> d) { return SymMat::Diagonal(Vec(d)); }

TEST(VerifyDram, UnattainedExampleLadder) {
  const Verdict v = VerifyDram(MakeUnattainedDualInstance(), RegistryCert("example-1.1", "ramana-dual"));
  ASSERT_TRUE(v.ok) << v.message();
  EXPECT_NEAR(v.value, 0.0, 1e-15);
}

TEST(VerifyDram, GapInstanceBothForms) {
  const Verdict a =
      VerifyDram(MakeGapInstanceReformulated(), RegistryCert("example-2.5-rr", "ramana-dual"));
  ASSERT_TRUE(a.ok) << a.message();
  EXPECT_NEAR(a.value, 1.0, 1e-15);
  const Verdict b = VerifyDram(MakeGapInstance(), RegistryCert("example-2.3-gap", "ramana-dual"));
  ASSERT_TRUE(b.ok) << b.message();
  EXPECT_NEAR(b.value, 1.0, 1e-15);
}

TEST(VerifyDram, ZeroLadderWithInfeasibleY) {
  RamanaCertificate cert;
  cert.system = SystemKind::kDram;
  cert.y = Vec({0, 0, 1});
  const Verdict v = VerifyDram(MakeUnattainedDualInstance(), cert);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.failed, "C - A^* y not in S_+ + tan(U_{n-1})");
}

TEST(VerifyDram, FirstFailureIsReported) {
  RamanaCertificate cert = RegistryCert("example-1.1", "ramana-dual");
  SymMat u = cert.ladder[0].u;
  u.set(0, 0, -1.0);
  cert.ladder[0].u = u;
  const Verdict v = VerifyDram(MakeUnattainedDualInstance(), cert);
  EXPECT_FALSE(v.ok);
  // A^* y^1 = U_1 + V_1 breaks before the psd check on U_1.
  EXPECT_EQ(v.failed, "A^* y^1 != U_1 + V_1");
  EXPECT_NEAR(v.residual, 2.0, 1e-12);
}

TEST(VerifyDram, ClaimedValueMismatchIsOnlyAWarning) {
  RamanaCertificate cert = RegistryCert("example-1.1", "ramana-dual");
  cert.claimed_value = 5.0;
  const Verdict v = VerifyDram(MakeUnattainedDualInstance(), cert);
  EXPECT_TRUE(v.ok);
  EXPECT_EQ(v.warnings.size(), 1u);
}

TEST(VerifyDram, LadderTooLong) {
  RamanaCertificate cert = RegistryCert("example-1.1", "ramana-dual");
  cert.ladder.push_back(cert.ladder.back());
  cert.ladder.push_back(cert.ladder.back());
  try {
    VerifyDram(MakeUnattainedDualInstance(), cert);
    FAIL() << "expected ShapeMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShapeMismatch);
  }
}

TEST(VerifyAltRam, InfeasibleInstance) {
  const RamanaCertificate& cert = RegistryCert("example-2.15-infeasible", "ramana-alternative");
  const Verdict v = VerifyAltRam(MakeInfeasibleInstance(), cert);
  EXPECT_TRUE(v.ok) << v.message();

  RamanaCertificate doubled = cert;
  *doubled.y *= 2.0;
  const Verdict d = VerifyAltRam(MakeInfeasibleInstance(), doubled);
  EXPECT_FALSE(d.ok);
  EXPECT_EQ(d.failed, "<b, y> != -1");

  RamanaCertificate zero;
  zero.system = SystemKind::kAltRam;
  zero.y = Vec({0, 0});
  EXPECT_FALSE(VerifyAltRam(MakeInfeasibleInstance(), zero).ok);
}

TEST(VerifyPram, RegistryCertificate) {
  const Verdict v =
      VerifyPram(MakeGapInstanceReformulated(), RegistryCert("example-2.5-rr", "ramana-primal"));
  ASSERT_TRUE(v.ok) << v.message();
  EXPECT_NEAR(v.value, 0.0, 1e-15);
}

TEST(VerifyPram, ZeroLadder) {
  RamanaCertificate cert;
  cert.system = SystemKind::kPram;
  cert.x = Diag({0, 0, 1, 1});
  const Verdict a = VerifyPram(MakeGapInstanceReformulated(), cert);
  ASSERT_TRUE(a.ok) << a.message();
  EXPECT_NEAR(a.value, 1.0, 1e-15);

  SymMat x(4);
  x.set(1, 3, 0.5);
  cert.x = x;
  EXPECT_FALSE(VerifyPram(MakeGapInstanceReformulated(), cert).ok);
}

TEST(VerifyPram, EnforcesPrimalEqualities) {
  RamanaCertificate cert;
  cert.system = SystemKind::kPram;
  cert.x = Diag({0, 0, 2, 1});
  const Verdict v = VerifyPram(MakeGapInstanceReformulated(), cert);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.failed, "A X != b");
}

TEST(VerifyStrong, DualSide) {
  const Verdict a = VerifyStrongDual(MakeUnattainedDualInstance(),
                                     {Eigen::MatrixXd::Identity(3, 3), 1}, Vec({0, 0, 0}));
  ASSERT_TRUE(a.ok) << a.message();
  EXPECT_NEAR(a.value, 0.0, 1e-15);

  const StrongDualSpec spec{Eigen::MatrixXd::Identity(4, 4), 2};
  const Verdict b = VerifyStrongDual(MakeGapInstanceReformulated(), spec, Vec({0, 0, 1}));
  ASSERT_TRUE(b.ok) << b.message();
  EXPECT_NEAR(b.value, 1.0, 1e-15);

  EXPECT_FALSE(VerifyStrongDual(MakeGapInstanceReformulated(), spec, Vec({0, 0, 2})).ok);
}

TEST(VerifyStrong, PrimalSide) {
  const Verdict v = Verify(MakeGapInstanceReformulated(), RegistryCert("example-2.5-rr", "strong-primal"));
  ASSERT_TRUE(v.ok) << v.message();
  EXPECT_NEAR(v.value, 0.0, 1e-15);
}

TEST(NormalizeLadder, ShortCertificateNeedsNoRotation) {
  const RamanaCertificate& cert = RegistryCert("example-2.5-rr", "ramana-dual-short");
  ASSERT_TRUE(VerifyDram(MakeGapInstanceReformulated(), cert).ok);
  const NormalizationReport rep = NormalizeLadder(MakeGapInstanceReformulated(), cert);
  EXPECT_TRUE(rep.frs_valid);
  EXPECT_EQ(rep.r, (std::vector<int>{0, 0, 1}));
  EXPECT_LE((rep.q_total.cwiseAbs() - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(NormalizeLadder, UnattainedExample) {
  const NormalizationReport rep =
      NormalizeLadder(MakeUnattainedDualInstance(), RegistryCert("example-1.1", "ramana-dual"));
  EXPECT_TRUE(rep.frs_valid);
  EXPECT_EQ(rep.r, (std::vector<int>{1, 1}));
  EXPECT_EQ(rep.u_membership, (std::vector<bool>{true, true}));
  EXPECT_LE((rep.q_total.cwiseAbs() - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(NormalizeLadder, RotationCovariance) {
  std::mt19937_64 rng(12);
  const SdpInstance inst = MakeGapInstanceReformulated();
  const RamanaCertificate& cert = RegistryCert("example-2.5-rr", "ramana-dual");
  const NormalizationReport base = NormalizeLadder(inst, cert);
  for (int t = 0; t < 5; ++t) {
    const Reformulation ref{testing::RandomRowOps(3, rng), testing::RandomOrthonormal(4, rng)};
    const SdpInstance moved = Reformulate(inst, ref);
    RamanaCertificate c = cert;
    c.y = TransportDual(ref, *cert.y);
    for (Rung& rung : c.ladder) {
      rung.y = TransportDual(ref, *rung.y);
      rung.u = Rotate(rung.u, ref.q);
      rung.v = Rotate(rung.v, ref.q);
    }
    ASSERT_TRUE(VerifyDram(moved, c).ok);
    const NormalizationReport rep = NormalizeLadder(moved, c);
    EXPECT_EQ(rep.r, base.r);
    EXPECT_TRUE(rep.frs_valid);
  }
}

TEST(NormalizeLadder, InductionBreak) {
  RamanaCertificate cert;
  cert.system = SystemKind::kDram;
  cert.y = Vec({0, 0, 0});
  cert.ladder = {Rung{Vec({0, 1, 0}), SymMat(3), SymMat(3)}};
  try {
    NormalizeLadder(MakeUnattainedDualInstance(), cert);
    FAIL() << "expected InductionBreak";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInductionBreak);
  }
}

TEST(LiftFromStrong, GapInstance) {
  const SdpInstance inst = MakeGapInstance();
  const RrForm rr = BuildRrForm(inst);
  const StrongDualSpec spec = StrongSpecFromRr(inst, rr);
  EXPECT_EQ(spec.r, 2);
  const Eigen::VectorXd y = Vec({0, 0, 1});
  ASSERT_TRUE(VerifyStrongDual(inst, spec, y).ok);
  const RamanaCertificate cert = LiftFromStrong(inst, rr, y);
  const Verdict v = VerifyDram(inst, cert);
  ASSERT_TRUE(v.ok) << v.message();
  EXPECT_NEAR(v.value, 1.0, 1e-12);
  EXPECT_TRUE(NormalizeLadder(inst, cert).frs_valid);
}

TEST(AltCertificateFromRr, InfeasibleInstance) {
  const SdpInstance inst = MakeInfeasibleInstance();
  const RamanaCertificate cert = AltCertificateFromRr(inst, BuildRrForm(inst));
  const Verdict v = VerifyAltRam(inst, cert);
  EXPECT_TRUE(v.ok) << v.message();
}

// Every accepted ladder is orthogonal to every feasible X.
TEST(VerifyDram, LadderOrthogonalToFeasiblePoints) {
  const SdpInstance inst = MakeGapInstanceReformulated();
  const RrForm rr = BuildRrForm(inst);
  const RamanaCertificate& cert = RegistryCert("example-2.5-rr", "ramana-dual");
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5; ++t) {
    const SymMat x = SampleFeasiblePoint(inst, rr, rng);
    for (const Rung& rung : cert.ladder) {
      EXPECT_NEAR(Inner(x, rung.u + rung.v), 0.0, 1e-8 * inst.scale());
    }
  }
}

}  // namespace
}  // namespace ramana
