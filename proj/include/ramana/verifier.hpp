#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ramana/certificate.hpp"
#include "ramana/frs_rr.hpp"
#include "ramana/sdp_model.hpp"

namespace ramana {

/// Outcome of a certificate check. On failure `failed` names the first
/// violated constraint in check order and `residual` its size.
struct Verdict {
  bool ok = false;
  double value = 0.0;
  std::string failed;
  std::string detail;
  double residual = 0.0;
  std::vector<std::string> warnings;

  std::string message() const;
};

/// D_Ram: per rung A^* y^i = U_i + V_i, <b, y^i> = 0, U_i psd,
/// V_i in tan(U_{i-1}); then C - A^* y in S_+ + tan(U_{n-1}). Value <b, y>.
Verdict VerifyDram(const SdpInstance& inst, const RamanaCertificate& cert,
                   double eps = kDefaultEpsPsd);

/// alt-Ram-P: the same rungs; head A^* y in S_+ + tan(U_{n-1}), <b, y> = -1.
Verdict VerifyAltRam(const SdpInstance& inst, const RamanaCertificate& cert,
                     double eps = kDefaultEpsPsd);

/// P_Ram: per rung A(U_i + V_i) = 0, <C, U_i + V_i> = 0, U_i psd,
/// V_i in tan(U_{i-1}); head A X = b and X in S_+ + tan(U_{n-1}).
/// Value <C, X>.
Verdict VerifyPram(const SdpInstance& inst, const RamanaCertificate& cert,
                   double eps = kDefaultEpsPsd);

/// Strong dual: trailing r x r block of Q^T (C - A^* y) Q psd; value <b, y>.
Verdict VerifyStrongDual(const SdpInstance& inst, const StrongDualSpec& spec,
                         const Eigen::VectorXd& y, double eps = kDefaultEpsPsd);

/// Strong primal: A X = b and trailing r x r block of Q^T X Q psd;
/// value <C, X>.
Verdict VerifyStrongPrimal(const SdpInstance& inst, const StrongDualSpec& spec,
                           const SymMat& x, double eps = kDefaultEpsPsd);

/// Dispatches on cert.system.
Verdict Verify(const SdpInstance& inst, const RamanaCertificate& cert,
               double eps = kDefaultEpsPsd);

struct NormalizationReport {
  Eigen::MatrixXd q_total;
  std::vector<int> r;
  bool frs_valid = false;
  std::vector<bool> u_membership;  // Q^T U_i Q in S_+^{n, r_1 + ... + r_i}
  std::vector<SymMat> rotated_y;   // Q^T (A^* y^i) Q
};

/// Rotates a verified ladder so that (A^* y^1, ..., A^* y^{n-1}) becomes a
/// regular facial reduction sequence: at each rung the trailing block past
/// the blocks found so far is diagonalized. For P_Ram ladders Y_i is
/// U_i + V_i. Throws InductionBreak when a trailing block is not psd.
NormalizationReport NormalizeLadder(const SdpInstance& inst, const RamanaCertificate& cert,
                                    double eps = kDefaultEpsPsd);

/// D_Ram certificate for a y that is feasible in the strong dual built from
/// `rr`: the certifying rows become the ladder (U_i = diag(I, Lambda_i, 0),
/// V_i = Y_i - U_i in the rotated basis), padded with zero rungs in front.
/// Needs a kFeasible RR form with k <= n - 1.
RamanaCertificate LiftFromStrong(const SdpInstance& inst, const RrForm& rr,
                                 const Eigen::VectorXd& y);

/// alt-Ram-P certificate read off an infeasible RR form: rows 1..k-1 give the
/// ladder and row k gives y.
RamanaCertificate AltCertificateFromRr(const SdpInstance& inst, const RrForm& rr);

/// (Q, r) of the strong dual attached to a feasible RR form.
StrongDualSpec StrongSpecFromRr(const SdpInstance& inst, const RrForm& rr);

}  // namespace ramana
