#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ramana/symmat.hpp"

namespace ramana {

enum class SystemKind { kDram, kAltRam, kPram, kDstrong, kPstrong, kRed };

const char* SystemName(SystemKind kind);
std::optional<SystemKind> ParseSystemName(const std::string& name);

/// Rotation Q and order r of the psd-constrained trailing block of the
/// strong dual / strong primal.
struct StrongDualSpec {
  Eigen::MatrixXd q;
  int r = 0;
};

struct Rung {
  std::optional<Eigen::VectorXd> y;  // absent for the primal system
  SymMat u{1};
  SymMat v{1};
};

/// Feasible-point candidate for one of the Ramana or strong systems.
///
/// dram / altram: y and rungs (y^i, U_i, V_i).
/// pram: X and rungs (U_i, V_i).
/// dstrong: y plus `strong`; pstrong: X plus `strong`.
struct RamanaCertificate {
  SystemKind system = SystemKind::kDram;
  std::optional<Eigen::VectorXd> y;
  std::vector<Rung> ladder;
  std::optional<SymMat> x;
  std::optional<StrongDualSpec> strong;
  std::optional<double> claimed_value;
};

/// Ladder of exactly n - 1 rungs: shorter ladders get zero rungs in front.
/// Throws ShapeMismatch when the ladder is longer than n - 1 or any
/// dimension disagrees with (n, m).
std::vector<Rung> PaddedLadder(const RamanaCertificate& cert, int n, int m);

}  // namespace ramana
