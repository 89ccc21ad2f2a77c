#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "ramana/certificate_io.hpp"
#include "ramana/cli.hpp"
#include "ramana/registry.hpp"
#include "ramana/sdpa_io.hpp"

namespace ramana {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = CliMain(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ramana_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  // Writes the registry instance and one of its certificates.
  std::pair<std::string, std::string> Materialize(const std::string& id, size_t cert_index) {
    const ExampleEntry* e = FindExample(id);
    const std::string inst = Path(id + ".dat-s");
    const std::string cert = Path(id + ".cert");
    WriteSdpa(e->instance, inst);
    WriteCertificate(e->instance, e->facts.certificates[cert_index].cert, cert);
    return {inst, cert};
  }

  fs::path dir_;
};

TEST_F(CliTest, ExamplesRunGap) {
  const CliRun r = Cli({"examples", "run", "example-2.3-gap"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("[ok] primal value: 1"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("[ok] classical dual value: 0"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("[ok] dram certificate ramana-dual: value 1"), std::string::npos) << r.out;
}

TEST_F(CliTest, ExamplesRunAll) {
  const CliRun r = Cli({"examples", "run", "--all"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
}

TEST_F(CliTest, ExamplesListAndJson) {
  const CliRun list = Cli({"examples"});
  EXPECT_EQ(list.code, 0);
  for (const ExampleEntry& e : ExampleRegistry()) {
    EXPECT_NE(list.out.find(e.id), std::string::npos);
  }
  const CliRun a = Cli({"--json", "examples", "run", "example-1.1"});
  const CliRun b = Cli({"--json", "examples", "run", "example-1.1"});
  EXPECT_EQ(a.out, b.out);
  const nlohmann::json j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["id"], "example-1.1");
}

TEST_F(CliTest, VerifyUnattainedLadder) {
  const auto [inst, cert] = Materialize("example-1.1", 0);
  const CliRun r = Cli({"verify", inst, "--cert", cert});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "dram: feasible, value 0\n");
}

TEST_F(CliTest, VerifyCorruptedCertificate) {
  const auto [inst, cert] = Materialize("example-1.1", 0);
  // Flip the (1,1) entry of U_1 to -1, and y^1 with it so that the rung
  // equation still holds and the psd check is what fails.
  const ExampleEntry* e = FindExample("example-1.1");
  RamanaCertificate bad = e->facts.certificates[0].cert;
  bad.ladder[0].u.set(0, 0, -1.0);
  bad.ladder[0].y = -*bad.ladder[0].y;
  WriteCertificate(e->instance, bad, cert);
  const CliRun r = Cli({"verify", inst, "--cert", cert});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("U_1 not PSD"), std::string::npos) << r.out;
}

TEST_F(CliTest, VerifyByRegistryId) {
  const auto [inst, cert] = Materialize("example-2.15-infeasible", 0);
  const CliRun r = Cli({"verify", "example-2.15-infeasible", "--cert", cert});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "altram: valid\n");
}

TEST_F(CliTest, Errors) {
  EXPECT_EQ(Cli({"verify", Path("missing.dat-s"), "--cert", Path("missing.cert")}).code, 1);
  const std::string garbage = Path("garbage.dat-s");
  WriteTextFile(garbage, "this is not sdpa\n");
  const CliRun r = Cli({"inspect", garbage});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.err.rfind("error: ", 0), 0u) << r.err;
  EXPECT_EQ(Cli({"no-such-command"}).code, 1);
  EXPECT_EQ(Cli({"examples", "run", "no-such-example"}).code, 1);
}

TEST_F(CliTest, RrFormWritesReport) {
  const std::string prefix = Path("gap");
  const CliRun r = Cli({"rr-form", "example-2.3-gap", "--out", prefix});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# rank revealing form check: pass"), std::string::npos) << r.out;
  const RrReport rep = ReadRrReportString(ReadTextFile(prefix + ".rr"));
  EXPECT_EQ(rep.rr.k, 2);
  EXPECT_EQ(rep.instance_hash, InstanceHash(MakeGapInstance()));
  ReadSdpa(prefix + ".dat-s");
}

TEST_F(CliTest, EmitSystems) {
  const std::string base = Path("dram");
  EXPECT_EQ(Cli({"emit", "example-1.1", "--system", "dram", "--out", base}).code, 0);
  EXPECT_TRUE(fs::exists(base + ".dat-s"));
  EXPECT_TRUE(fs::exists(base + ".varmap"));

  // The strong dual needs an RR report.
  EXPECT_EQ(Cli({"emit", "example-1.1", "--system", "dstrong", "--out", base}).code, 1);
  const std::string rr = Path("ex");
  ASSERT_EQ(Cli({"rr-form", "example-1.1", "--out", rr}).code, 0);
  const CliRun r = Cli({"emit", "example-1.1", "--system", "dstrong", "--from-rr", rr + ".rr",
                     "--out", Path("strong")});
  EXPECT_EQ(r.code, 0) << r.err;
  const std::string vm = ReadTextFile(Path("strong") + ".varmap");
  EXPECT_NE(vm.find("strong_r 1"), std::string::npos) << vm;
}

TEST_F(CliTest, NormalizeMatchesInstanceByHash) {
  const auto [inst, cert] = Materialize("example-1.1", 0);
  const CliRun r = Cli({"normalize", "--cert", cert});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("frs_valid true"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("r 1 1"), std::string::npos) << r.out;
}

TEST_F(CliTest, InspectReportsStrictFeasibility) {
  const CliRun a = Cli({"inspect", "strictly-feasible"});
  EXPECT_EQ(a.code, 0);
  EXPECT_NE(a.out.find("strict feasibility probe: strictly feasible"), std::string::npos) << a.out;
  const CliRun b = Cli({"--seed", "5", "inspect", "example-2.3-gap"});
  EXPECT_EQ(b.code, 0);
  EXPECT_NE(b.out.find("not strictly feasible"), std::string::npos) << b.out;
}

}  // namespace
}  // namespace ramana
