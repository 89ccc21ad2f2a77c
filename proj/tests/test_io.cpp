#include <gtest/gtest.h>

#include "ramana/builder.hpp"
#include "ramana/certificate_io.hpp"
#include "ramana/error.hpp"
#include "ramana/registry.hpp"
#include "ramana/sdpa_io.hpp"
#include "ramana/verifier.hpp"
#include "test_util.hpp"

namespace ramana {
namespace {

ErrorCode CodeOf(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kUsage;
}

TEST(Sdpa, RegistryRoundTripIsExact) {
  for (const ExampleEntry& e : ExampleRegistry()) {
    const std::string text = WriteSdpaString(e.instance);
    const SdpInstance back = ReadSdpaString(text);
    EXPECT_TRUE(InstancesMatch(back, e.instance, 0.0)) << e.id;
    EXPECT_EQ(WriteSdpaString(back), text) << e.id;
  }
}

TEST(Sdpa, RandomRoundTripIsExact) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 20; ++t) {
    const SdpInstance inst = testing::RandomInstance(1 + t % 6, 1 + t % 4, rng);
    EXPECT_TRUE(InstancesMatch(ReadSdpaString(WriteSdpaString(inst)), inst, 0.0));
  }
}

TEST(Sdpa, HandWrittenOrderOne) {
  const SdpInstance inst = ReadSdpaString("1\n1\n1\n5.0\n0 1 1 1 2.0\n1 1 1 1 1.0\n");
  ASSERT_EQ(inst.n(), 1);
  ASSERT_EQ(inst.m(), 1);
  EXPECT_EQ(inst.c()(0, 0), 2.0);
  EXPECT_EQ(inst.a(0)(0, 0), 1.0);
  EXPECT_EQ(inst.b()(0), 5.0);
}

TEST(Sdpa, CommentsAndPunctuation) {
  const SdpInstance inst =
      ReadSdpaString("* a comment\n\"title\n1 = m\n1\n{2}\n(3.0)\n0 1 1 2 4\n1 1 1 1 1\n1 1 2 2 1\n");
  EXPECT_EQ(inst.n(), 2);
  EXPECT_EQ(inst.c()(0, 1), 4.0);
  EXPECT_EQ(inst.a(0), SymMat::Identity(2));
}

TEST(Sdpa, LowerTriangleEntryIsRejected) {
  try {
    ReadSdpaString("1\n1\n2\n1\n1 1 2 1 1.0\n");
    FAIL() << "expected ParseError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_NE(std::string(e.what()).find("line 5"), std::string::npos) << e.what();
  }
}

TEST(Sdpa, TwoDenseBlocksUnsupported) {
  EXPECT_EQ(CodeOf([] { ReadSdpaString("1\n2\n2 2\n1\n1 1 1 1 1\n"); }),
            ErrorCode::kUnsupportedBlockStructure);
}

TEST(Sdpa, DiagonalBlocks) {
  const SdpInstance inst = ReadSdpaString("1\n1\n-3\n1\n1 1 1 1 1\n1 1 3 3 2\n0 1 2 2 -1\n");
  EXPECT_EQ(inst.n(), 3);
  EXPECT_EQ(inst.a(0), SymMat::Diagonal(testing::Vec({1, 0, 2})));
  EXPECT_EQ(inst.c()(1, 1), -1.0);
}

TEST(Sdpa, Truncated) {
  EXPECT_EQ(CodeOf([] { ReadSdpaString("2\n1\n3\n"); }), ErrorCode::kParseError);
}

TEST(Sdpa, SystemWriteIsDeterministicAndCountsBlocks) {
  const StandardFormSdp sdp = BuildDram(MakeUnattainedDualInstance());
  const std::string a = WriteSdpaString(sdp);
  EXPECT_EQ(a, WriteSdpaString(BuildDram(MakeUnattainedDualInstance())));
  // Header: m, then the block count (psd blocks plus the free split pair).
  std::istringstream in(a);
  std::string line;
  do {
    std::getline(in, line);
  } while (!line.empty() && (line[0] == '*' || line[0] == '"'));
  EXPECT_EQ(std::stoi(line), static_cast<int>(sdp.constraints.size()));
  std::getline(in, line);
  EXPECT_EQ(std::stoi(line), DramBlockCount(3) + 2);
}

TEST(Sdpa, VarMapNamesEveryVariable) {
  const std::string vm = VarMapString(BuildDram(MakeGapInstance()));
  EXPECT_EQ(vm.rfind("ramana-varmap 1", 0), 0u);
  for (const char* name : {"y", "y^1", "U_3", "W_3", "R_3", "P", "W_f"}) {
    EXPECT_NE(vm.find(std::string(" ") + name + " "), std::string::npos) << name;
  }
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(FormatDouble(0.0), "0");
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(FormatDouble(-2.5), "-2.5");
  const double third = 1.0 / 3.0;
  EXPECT_EQ(std::stod(FormatDouble(third)), third);
}

TEST(CertificateFile, RegistryRoundTrip) {
  for (const ExampleEntry& e : ExampleRegistry()) {
    for (const NamedCertificate& nc : e.facts.certificates) {
      const std::string text = WriteCertificateString(e.instance, nc.cert);
      const CertificateFile cf = ReadCertificateString(text);
      EXPECT_EQ(cf.header.instance_hash, InstanceHash(e.instance));
      EXPECT_EQ(cf.header.system, nc.cert.system);
      CheckCertificateTarget(cf, e.instance);
      EXPECT_EQ(WriteCertificateString(e.instance, cf.cert), text) << e.id << " " << nc.name;
      const Verdict v = Verify(e.instance, cf.cert);
      EXPECT_TRUE(v.ok) << e.id << " " << nc.name;
    }
  }
}

TEST(CertificateFile, WrongInstanceIsRejected) {
  const ExampleEntry* e = FindExample("example-2.3-gap");
  const CertificateFile cf =
      ReadCertificateString(WriteCertificateString(e->instance, e->facts.certificates[0].cert));
  EXPECT_EQ(CodeOf([&] { CheckCertificateTarget(cf, MakeGapInstanceReformulated()); }),
            ErrorCode::kShapeMismatch);
}

TEST(CertificateFile, Malformed) {
  EXPECT_EQ(CodeOf([] { ReadCertificateString("not a certificate\n"); }), ErrorCode::kParseError);
  const ExampleEntry* e = FindExample("example-1.1");
  std::string text = WriteCertificateString(e->instance, e->facts.certificates[0].cert);
  text.replace(text.find("vector y 3"), 10, "vector y 2");
  EXPECT_NE(CodeOf([&] { ReadCertificateString(text); }), ErrorCode::kUsage);
}

TEST(RrReport, RoundTrip) {
  for (const SdpInstance& inst : {MakeGapInstance(), MakeInfeasibleInstance(),
                                  MakeStrictlyFeasibleInstance()}) {
    RrReport rep{RrSide::kPrimal, InstanceHash(inst), BuildRrForm(inst)};
    const std::string text = WriteRrReportString(inst, rep);
    const RrReport back = ReadRrReportString(text);
    EXPECT_EQ(back.instance_hash, rep.instance_hash);
    EXPECT_EQ(back.rr.k, rep.rr.k);
    EXPECT_EQ(back.rr.r, rep.rr.r);
    EXPECT_EQ(back.rr.status, rep.rr.status);
    EXPECT_EQ(back.rr.ref.m, rep.rr.ref.m);
    EXPECT_EQ(back.rr.ref.q, rep.rr.ref.q);
    EXPECT_EQ(back.rr.maxrank_x, rep.rr.maxrank_x);
  }
}

}  // namespace
}  // namespace ramana
