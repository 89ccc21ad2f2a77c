#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ramana/sdp_model.hpp"
#include "ramana/symmat.hpp"

namespace ramana {

// Small dense log-det barrier solvers used by the facial reduction loop and
// by the value computations. Everything here is damped Newton on
// self-concordant barriers, sized for n up to a few dozen.

struct BarrierOptions {
  int max_iter = 2000;      // total Newton steps
  double gap_tol = 1e-11;   // stop once the duality gap bound falls below this
};

/// F(w) = f0 + sum_k w_k f_k over symmetric matrices of one order.
struct AffineLmi {
  Eigen::MatrixXd f0;
  std::vector<Eigen::MatrixXd> f;
};

struct MaxMinResult {
  Eigen::VectorXd w;
  double t = 0.0;    // lambda_min(F(w)) lower bound attained at w
  double gap = 0.0;  // the optimum is at most t + gap
  int iterations = 0;
};

/// Maximizes lambda_min(F(w)) by following the central path of
///   max t  s.t.  F(w) - t I psd.
/// Requires the map w -> F(w) - f0 to be injective and the optimum to be
/// finite. Throws IterationLimit when max_iter is hit first.
MaxMinResult MaximizeMinEigenvalue(const AffineLmi& lmi, const BarrierOptions& opts = {});

struct CenterResult {
  SymMat x;
  int iterations = 0;
};

/// Minimizes <G, X> - logdet X over {A X = b, X pd} by infeasible-start
/// Newton from `start` (identity by default). G must make the problem bounded
/// below, e.g. G pd. Throws SubsolverFailure when the affine set has no pd
/// point the iteration can reach, IterationLimit on stalling.
CenterResult AnalyticCenter(const SdpInstance& inst, const SymMat& g,
                            const std::optional<SymMat>& start = std::nullopt,
                            const BarrierOptions& opts = {});

struct LinearMinResult {
  double value = 0.0;
  SymMat x;
  bool unbounded = false;
};

/// inf <C, X> over {A X = b, X psd} for an instance with a pd feasible point.
/// Follows minimizers of <C, X> + mu (tr X - logdet X) down to mu = mu_min;
/// the trace term keeps each subproblem bounded when the feasible set is
/// not. Reports `unbounded` once <C, X> drops below -1e8 * scale.
LinearMinResult MinimizeLinear(const SdpInstance& inst, double mu_min = 1e-9,
                               const BarrierOptions& opts = {});

}  // namespace ramana
