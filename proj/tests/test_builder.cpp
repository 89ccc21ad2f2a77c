#include <random>

#include <gtest/gtest.h>

#include "ramana/builder.hpp"
#include "ramana/error.hpp"
#include "ramana/registry.hpp"
#include "ramana/verifier.hpp"
#include "test_util.hpp"

namespace ramana {
namespace {

using testing::Vec;

TEST(BuildDram, SizeFormula) {
  std::mt19937_64 rng(1);
  for (int n = 1; n <= 10; ++n) {
    for (int m = 1; m <= 10; ++m) {
      const StandardFormSdp sdp = BuildDram(testing::RandomInstance(n, m, rng));
      EXPECT_EQ(static_cast<int>(sdp.blocks.size()), DramBlockCount(n)) << n << " " << m;
      EXPECT_EQ(sdp.num_free, DramFreeCount(n, m)) << n << " " << m;
      EXPECT_EQ(static_cast<int>(sdp.constraints.size()), DramConstraintCount(n)) << n << " " << m;
    }
  }
}

TEST(BuildDram, HandCountForOrderThree) {
  const StandardFormSdp sdp = BuildDram(MakeUnattainedDualInstance());
  int order6 = 0, order3 = 0;
  for (const PsdBlock& b : sdp.blocks) {
    if (b.order == 6) ++order6;
    if (b.order == 3) ++order3;
  }
  // T_2 and T_f carry tangent witnesses; U_1, U_2 and P are plain psd blocks.
  EXPECT_EQ(order6, 2);
  EXPECT_EQ(order3, 3);
  EXPECT_EQ(sdp.num_free, 9);
  EXPECT_EQ(sdp.sense, Sense::kMaximize);
}

TEST(BuildDram, OrderOneIsTheClassicalDual) {
  const SdpInstance inst({SymMat::Identity(1)}, Vec({2}), SymMat::Identity(1));
  const StandardFormSdp sdp = BuildDram(inst);
  EXPECT_EQ(sdp.blocks.size(), 1u);
  EXPECT_EQ(sdp.num_free, 1);
  EXPECT_EQ(sdp.find("U_1"), nullptr);
  RamanaCertificate cert;
  cert.system = SystemKind::kDram;
  cert.y = Vec({0.5});
  EXPECT_TRUE(CheckPoint(sdp, EmbedCertificate(sdp, inst, cert)).ok(1e-12));
}

TEST(BuildDram, VarMapOrderingStartsWithY) {
  const StandardFormSdp sdp = BuildDram(MakeGapInstance());
  ASSERT_FALSE(sdp.var_map.empty());
  EXPECT_EQ(sdp.var_map[0].name, "y");
  EXPECT_EQ(sdp.var_map[1].name, "y^1");
  EXPECT_EQ(sdp.var_map[2].name, "U_1");
  EXPECT_EQ(sdp.var_map[3].name, "V_1");
}

// Every registry certificate maps to a point of the emitted system, and the
// point reads back to the same certificate.
TEST(EmbedCertificate, RegistryCertificates) {
  for (const ExampleEntry& e : ExampleRegistry()) {
    for (const NamedCertificate& nc : e.facts.certificates) {
      const StandardFormSdp sdp = BuildSystem(nc.cert.system, e.instance, nc.cert.strong);
      const SdpPoint pt = EmbedCertificate(sdp, e.instance, nc.cert);
      const PointCheck pc = CheckPoint(sdp, pt);
      EXPECT_TRUE(pc.ok(1e-8)) << e.id << " " << nc.name << " residual " << pc.max_residual
                               << " eig " << pc.min_block_eigenvalue;
      if (nc.cert.system != SystemKind::kAltRam) {
        EXPECT_NEAR(Evaluate(sdp.objective, pt), nc.value, 1e-9)
            << e.id << " " << nc.name;
      }
      const RamanaCertificate back = ExtractCertificate(sdp, pt);
      const Verdict v = Verify(e.instance, back);
      EXPECT_TRUE(v.ok) << e.id << " " << nc.name << ": " << v.message();
    }
  }
}

TEST(EmbedCertificate, InfeasibleCertificateIsRejected) {
  const SdpInstance inst = MakeUnattainedDualInstance();
  RamanaCertificate cert;
  cert.system = SystemKind::kDram;
  cert.y = Vec({0, 0, 1});
  const StandardFormSdp sdp = BuildDram(inst);
  try {
    EmbedCertificate(sdp, inst, cert);
    FAIL() << "expected InfeasibleInput";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasibleInput);
  }
}

TEST(BuildAltRam, OrderOneInstance) {
  const SdpInstance inst({SymMat::Identity(1)}, Vec({-1}), SymMat(1));
  const StandardFormSdp sdp = BuildAltRam(inst);
  EXPECT_EQ(sdp.sense, Sense::kFeasibility);
  RamanaCertificate cert;
  cert.system = SystemKind::kAltRam;
  cert.y = Vec({1});
  EXPECT_TRUE(CheckPoint(sdp, EmbedCertificate(sdp, inst, cert)).ok(1e-12));
}

TEST(BuildPram, DependentConstraints) {
  const SymMat a = SymMat::Identity(2);
  try {
    BuildPram(SdpInstance({a, a}, Vec({1, 1}), a));
    FAIL() << "expected DependentConstraints";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDependentConstraints);
  }
}

TEST(BuildPram, OrderOneIsThePrimal) {
  const SdpInstance inst({SymMat::Identity(1)}, Vec({2}), SymMat::Identity(1));
  const StandardFormSdp sdp = BuildPram(inst);
  EXPECT_EQ(sdp.blocks.size(), 1u);
  EXPECT_EQ(sdp.num_free, 0);
  EXPECT_EQ(sdp.sense, Sense::kMinimize);
}

// A(Y) = 0 and <C, Y> = 0 describe the same set as
// { sum_j l_j D_j : sum_j l_j <D_j, C> = 0 }.
TEST(BuildPram, RungConstraintsMatchComplementSpan) {
  std::mt19937_64 rng(6);
  const SdpInstance inst = MakeGapInstanceReformulated();
  const DualComplement dc = ComplementBasis(inst);
  const Eigen::VectorXd d = dc.rhs;
  for (int t = 0; t < 20; ++t) {
    Eigen::VectorXd l = testing::GaussianVec(dc.ell, rng);
    const bool inside = t % 2 == 0;
    if (inside) l -= d * (l.dot(d) / d.squaredNorm());
    SymMat y(4);
    for (int j = 0; j < dc.ell; ++j) y += l(j) * dc.d[j];
    if (!inside) y += testing::RandomSym(4, rng);
    const double res =
        std::max(ApplyA(inst, y).cwiseAbs().maxCoeff(), std::abs(Inner(inst.c(), y)));
    if (inside) {
      EXPECT_LE(res, 1e-10);
    } else {
      EXPECT_GT(res, 1e-6);
    }
  }
}

TEST(BuildDstrong, FullOrderMatchesClassicalDual) {
  const SdpInstance inst = MakeUnattainedDualInstance();
  const StandardFormSdp sdp = BuildDstrong(inst, {Eigen::MatrixXd::Identity(3, 3), 3});
  for (const Eigen::VectorXd& y : {Vec({-10, -1, -10}), Vec({0, 0, 0}), Vec({-1, 0, -1})}) {
    RamanaCertificate cert;
    cert.system = SystemKind::kDstrong;
    cert.y = y;
    const SdpPoint pt = EmbedCertificate(sdp, inst, cert);
    EXPECT_EQ(CheckPoint(sdp, pt).ok(1e-8), IsPsd(DualSlack(inst, y))) << y.transpose();
    EXPECT_DOUBLE_EQ(Evaluate(sdp.objective, pt), y(2));
  }
}

TEST(BuildDstrong, GapInstanceAnyLastCoordinateOne) {
  const SdpInstance inst = MakeGapInstanceReformulated();
  const StandardFormSdp sdp = BuildDstrong(inst, {Eigen::MatrixXd::Identity(4, 4), 2});
  std::mt19937_64 rng(2);
  for (int t = 0; t < 5; ++t) {
    RamanaCertificate cert;
    cert.system = SystemKind::kDstrong;
    cert.y = Vec({testing::GaussianVec(1, rng)(0), testing::GaussianVec(1, rng)(0), 1.0});
    const SdpPoint pt = EmbedCertificate(sdp, inst, cert);
    EXPECT_TRUE(CheckPoint(sdp, pt).ok(1e-8));
    EXPECT_NEAR(Evaluate(sdp.objective, pt), 1.0, 1e-12);
  }
}

TEST(BuildPstrong, FullOrderMatchesPrimal) {
  const SdpInstance inst = MakeGapInstanceReformulated();
  const StandardFormSdp sdp = BuildPstrong(inst, {Eigen::MatrixXd::Identity(4, 4), 4});
  RamanaCertificate cert;
  cert.system = SystemKind::kPstrong;
  cert.x = SymMat::Diagonal(Vec({0, 0, 1, 1}));
  const SdpPoint pt = EmbedCertificate(sdp, inst, cert);
  EXPECT_TRUE(CheckPoint(sdp, pt).ok(1e-10));
  EXPECT_NEAR(Evaluate(sdp.objective, pt), 1.0, 1e-12);
}

TEST(BuildRed, UnattainedExampleSlackAtZero) {
  const SdpInstance inst = MakeUnattainedDualInstance();
  const RedSystem red = BuildRed(inst);
  EXPECT_EQ(red.complement.ell, 3);
  EXPECT_EQ(red.sdp.constraints.size(), 3u);
  RamanaCertificate cert;
  cert.system = SystemKind::kRed;
  cert.y = Vec({0, 0, 0});
  const SdpPoint pt = EmbedCertificate(red.sdp, inst, cert);
  const PointCheck pc = CheckPoint(red.sdp, pt);
  EXPECT_LE(pc.max_residual, 1e-12);
}

TEST(BuildRed, FullSpanHasNoConstraints) {
  const SdpInstance inst({SymMat::Unit(2, 0, 0), SymMat::Unit(2, 1, 1), SymMat::Unit(2, 0, 1)},
                         Vec({1, 1, 0}), SymMat::Identity(2));
  EXPECT_TRUE(BuildRed(inst).sdp.constraints.empty());
}

}  // namespace
}  // namespace ramana
