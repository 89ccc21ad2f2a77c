#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ramana/sdp_model.hpp"
#include "ramana/symmat.hpp"

namespace ramana {

/// Regular facial reduction sequence: Y_i is arbitrary in its leading
/// r_1 + ... + r_{i-1} rows and columns, has a pd block of order r_i right
/// after them, and is zero everywhere else.
struct FrSequence {
  std::vector<SymMat> y;
  std::vector<int> r;

  int certified_order() const;  // r_1 + ... + r_k
};

struct FrsCheck {
  bool valid = false;
  FrSequence seq;
  /// Block rotation diag(I, Q_1, ..., Q_k, I) that makes every pd block
  /// diagonal. Only set when valid.
  Eigen::MatrixXd normalizer;
  std::string reason;
};

/// Infers r_i greedily: in the trailing part of Y_i (after the previous
/// blocks) the last row holding a nonzero fixes the block, which must then
/// be pd. Zero means below eps * (1 + ||Y_i||_F).
FrsCheck ValidateFrs(const std::vector<SymMat>& y, double eps = kDefaultEpsPsd);

enum class RrStatus { kFeasible, kInfeasible };

/// Reformulation that brings (P) into rank revealing form. On kFeasible the
/// leading k rows certify that maxrank_x has maximum rank; on kInfeasible the
/// leading k - 1 rows form a facial reduction sequence with zero right-hand
/// sides and row k has b_k = -1 and a matrix that continues the sequence.
struct RrForm {
  Reformulation ref;
  int k = 0;
  std::vector<int> r;
  SymMat maxrank_x{1};  // original-order matrix in the rotated basis
  RrStatus status = RrStatus::kFeasible;

  /// r_1 + ... + r_k over the certifying rows (excludes the final row on the
  /// infeasible branch).
  int certified_order() const;
};

/// Checks the rank revealing form conditions against an (already
/// reformulated) instance with certificate count k and witness X.
bool IsRrForm(const SdpInstance& inst, int k, const SymMat& x_witness,
              double eps = kDefaultEpsPsd);

enum class AltMode {
  kEqZero,   // A^* y psd, nonzero, <b, y> = 0
  kLeqZero,  // A^* y psd, <b, y> <= 0, nonzero unless <b, y> < 0
};

enum class AltKind { kStrictOnly, kInfeasibility };

struct AltCertificateRaw {
  Eigen::VectorXd y;
  AltKind mode = AltKind::kStrictOnly;
};

/// Searches for y with A^* y psd and nonzero, normalized to trace 1, with
/// <b, y> = 0 (EqZero) or <b, y> <= 0 (LeqZero). In LeqZero mode a b with a
/// component outside the range of A is reported as an infeasibility
/// certificate with A^* y = 0 and <b, y> = -1. nullopt means the instance is
/// strictly feasible to tolerance.
std::optional<AltCertificateRaw> SolveAlternative(const SdpInstance& inst, AltMode mode,
                                                  double eps = kDefaultEpsPsd,
                                                  int max_iter = 2000);

/// Facial reduction loop producing an RR form with k <= n - 1 whenever the
/// certified rank is below n. Throws SubsolverFailure when the inner solver
/// stalls and NumericalRankAmbiguity when an eigenvalue of a certificate sits
/// in (eps, 100 eps) after scaling.
RrForm BuildRrForm(const SdpInstance& inst, double eps = kDefaultEpsPsd);

struct MergeResult {
  FrSequence seq;
  Eigen::MatrixXd combination;  // output member j = sum_i combination(j, i) * input Y_i
};

/// Drops members with r_i = 0; if the blocks then cover all of R^n,
/// collapses the sequence into one pd matrix Y_k + l_{k-1} (Y_{k-1} + ...)
/// with each multiplier the smallest power of two above its Schur
/// complement bound.
MergeResult MergeToBound(const FrSequence& seq, double eps = kDefaultEpsPsd);

/// True when the first n - r rows and columns of x_test vanish, where r is
/// the order of the trailing pd block of x_max.
bool MaxRankZeroPattern(const SymMat& x_max, const SymMat& x_test, double eps = 1e-6);

/// Rows [first_row, m) of `inst` restricted to the trailing principal block
/// starting at `offset`.
SdpInstance ReducedInstance(const SdpInstance& inst, int first_row, int offset);

struct ValueReport {
  bool feasible = true;
  bool unbounded = false;
  double value = 0.0;      // +inf if infeasible, -inf if unbounded
  std::optional<SymMat> x; // near-optimal point in original coordinates
};

/// inf <C, X> over (P): reduce to the strictly feasible face, then follow
/// the barrier path there.
ValueReport PrimalValue(const SdpInstance& inst, double eps = kDefaultEpsPsd);

/// sup b^T y over (D), computed as <X0, C> - inf(Re-D). Needs independent
/// A_i. `value` is -inf when (D) is infeasible.
ValueReport DualValue(const SdpInstance& inst, double eps = kDefaultEpsPsd);

/// Feasible point of (P): the minimizer of <G, X> - logdet X over the
/// strictly feasible face for a random pd G. Requires a kFeasible RR form of
/// `inst`.
SymMat SampleFeasiblePoint(const SdpInstance& inst, const RrForm& rr, std::mt19937_64& rng);

}  // namespace ramana
