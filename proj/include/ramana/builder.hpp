#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ramana/certificate.hpp"
#include "ramana/sdp_model.hpp"
#include "ramana/symmat.hpp"

namespace ramana {

struct PsdBlock {
  std::string name;
  int order = 0;
};

/// sum_k free[k] * x_k + sum_b <blocks[b], X_b>. Block coefficient matrices
/// are symmetric, so an off-diagonal coefficient f contributes 2 f X_b(i, j).
struct LinearForm {
  std::map<int, double> free;
  std::map<int, Eigen::MatrixXd> blocks;
};

struct LinearConstraint {
  LinearForm lhs;
  double rhs = 0.0;
  std::string label;
};

enum class Sense { kMinimize, kMaximize, kFeasibility };

enum class VarKind {
  kFreeVector,  // free scalars [offset, offset + size)
  kBlock,       // whole psd block
  kBlockPart,   // rows [row, row + size) x cols [col, col + size) of a block
  kExpression,  // derived quantity; `expr` spells it out
};

struct VarMapEntry {
  std::string name;
  VarKind kind = VarKind::kBlock;
  int block = -1;
  int offset = 0;
  int row = 0;
  int col = 0;
  int size = 0;
  std::string expr;
};

/// Explicit SDP in standard form: psd blocks and free scalars, linear
/// equality constraints, a linear objective.
struct StandardFormSdp {
  SystemKind system = SystemKind::kDram;
  int n = 0;  // order of the underlying instance
  int m = 0;
  std::vector<PsdBlock> blocks;
  int num_free = 0;
  std::vector<std::string> free_names;
  Sense sense = Sense::kFeasibility;
  LinearForm objective;
  std::vector<LinearConstraint> constraints;
  std::vector<VarMapEntry> var_map;
  std::optional<StrongDualSpec> strong;  // dstrong / pstrong only

  const VarMapEntry* find(const std::string& name) const;
};

/// Values for every variable of a StandardFormSdp.
struct SdpPoint {
  Eigen::VectorXd free;
  std::vector<Eigen::MatrixXd> blocks;
};

double Evaluate(const LinearForm& form, const SdpPoint& point);

struct PointCheck {
  double max_residual = 0.0;  // over all equality constraints
  int worst_constraint = -1;
  double min_block_eigenvalue = 0.0;
  int worst_block = -1;
  bool ok(double tol) const;
};

PointCheck CheckPoint(const StandardFormSdp& sdp, const SdpPoint& point);

// Size of the Ramana systems for n >= 2 (L = n - 1 rungs):
//   psd blocks: U_1..U_L (order n), T_2..T_L and T_f (order 2n), P (order n),
//               2n - 1 in total; n = 1 leaves only P.
//   free scalars: y and y^1..y^L, m n in total (P_Ram: none).
//   equalities (D_Ram): L n(n+1)/2 rung rows, L rows <b, y^i> = 0,
//               L n(n+1)/2 rows tying each T block to the previous U, and
//               n(n+1)/2 head rows.
// T_i = [[U_{i-1}, W_i], [W_i^T, R_i]] carries the tangent witness and
// V_i = W_i + W_i^T; the head uses P + W_f + W_f^T with T_f built on U_L.
int DramBlockCount(int n);
int DramFreeCount(int n, int m);
int DramConstraintCount(int n);

StandardFormSdp BuildDram(const SdpInstance& inst);
StandardFormSdp BuildAltRam(const SdpInstance& inst);
/// Throws DependentConstraints when the A_i are linearly dependent.
StandardFormSdp BuildPram(const SdpInstance& inst);
StandardFormSdp BuildDstrong(const SdpInstance& inst, const StrongDualSpec& spec);
StandardFormSdp BuildPstrong(const SdpInstance& inst, const StrongDualSpec& spec);

struct RedSystem {
  StandardFormSdp sdp;
  DualComplement complement;
};
RedSystem BuildRed(const SdpInstance& inst);

StandardFormSdp BuildSystem(SystemKind kind, const SdpInstance& inst,
                            const std::optional<StrongDualSpec>& spec = std::nullopt);

/// Maps a certificate onto the variables of `sdp`, synthesizing the tangent
/// witnesses (W, R) and the psd part of the head membership. Throws
/// InfeasibleInput when a tangent membership the encoding needs fails.
SdpPoint EmbedCertificate(const StandardFormSdp& sdp, const SdpInstance& inst,
                          const RamanaCertificate& cert, double eps = kDefaultEpsPsd);

/// Reads a certificate back out of a point (V_i = W_i + W_i^T, X = P + W + W^T).
RamanaCertificate ExtractCertificate(const StandardFormSdp& sdp, const SdpPoint& point);

}  // namespace ramana
