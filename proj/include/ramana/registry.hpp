#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ramana/certificate.hpp"
#include "ramana/sdp_model.hpp"

namespace ramana {

struct NamedCertificate {
  std::string name;
  RamanaCertificate cert;
  double value = 0.0;  // expected verified value (unused for altram)
};

struct KnownFacts {
  std::optional<double> primal_value;  // nullopt: (P) infeasible
  bool primal_attained = true;
  std::optional<double> dual_value;    // nullopt: (D) infeasible
  bool dual_attained = true;
  std::vector<NamedCertificate> certificates;
};

struct ExampleEntry {
  std::string id;
  std::string description;
  SdpInstance instance;
  KnownFacts facts;
};

const std::vector<ExampleEntry>& ExampleRegistry();
/// nullptr for unknown ids.
const ExampleEntry* FindExample(const std::string& id);

// Raw data of the built-in instances, shared with the tests.
SdpInstance MakeUnattainedDualInstance(); // value 0, dual sup not attained
SdpInstance MakeGapInstance();        // primal 1, dual 0
SdpInstance MakeGapInstanceReformulated(); // same problem after row operations
Eigen::MatrixXd GapRowOperations();   // M taking the first to the second
SdpInstance MakeInfeasibleInstance(); // infeasible, alt-P has no solution
SdpInstance MakeStrictlyFeasibleInstance();

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ExampleRun {
  std::string id;
  std::vector<CheckLine> checks;
  bool pass() const;
};

/// Recomputes the entry's primal and dual values, verifies every reference
/// certificate and compares against the known facts.
ExampleRun RunExample(const ExampleEntry& entry, double eps = kDefaultEpsPsd);

}  // namespace ramana
