#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ramana/symmat.hpp"

namespace ramana {

/// Equality-form SDP
///
///   min <C, X>  s.t.  <A_i, X> = b_i (i = 1..m),  X psd
///
/// together with its dual  max b^T y  s.t.  C - sum_i y_i A_i psd.
class SdpInstance {
 public:
  SdpInstance(std::vector<SymMat> a, Eigen::VectorXd b, SymMat c);

  int n() const { return c_.order(); }
  int m() const { return static_cast<int>(a_.size()); }
  const std::vector<SymMat>& a() const { return a_; }
  const SymMat& a(int i) const { return a_[i]; }
  const Eigen::VectorXd& b() const { return b_; }
  const SymMat& c() const { return c_; }

  /// 1 + the largest Frobenius norm over C and the A_i; used to scale
  /// residual tolerances.
  double scale() const;

 private:
  std::vector<SymMat> a_;
  Eigen::VectorXd b_;
  SymMat c_;
};

/// (<A_1, X>, ..., <A_m, X>).
Eigen::VectorXd ApplyA(const SdpInstance& inst, const SymMat& x);
/// sum_i y_i A_i.
SymMat ApplyAt(const SdpInstance& inst, const Eigen::VectorXd& y);
/// C - sum_i y_i A_i.
SymMat DualSlack(const SdpInstance& inst, const Eigen::VectorXd& y);

/// <C, X> - <b, y> for primal-feasible X. Throws InfeasibleInput when
/// A X = b fails beyond tol * (1 + ||b||), and SubsolverFailure if the
/// identity <C, X> - <b, y> = <C - A^* y, X> breaks down numerically.
double WeakDualityGap(const SdpInstance& inst, const SymMat& x,
                      const Eigen::VectorXd& y, double tol = 1e-8);

/// Row operations M (m x m, invertible) and rotation Q (n x n, orthonormal).
struct Reformulation {
  Eigen::MatrixXd m;
  Eigen::MatrixXd q;

  static Reformulation Identity(int m, int n);
};

/// A'_i = sum_j M_ij Q^T A_j Q, b' = M b, C' = Q^T C Q.
///
/// Feasible X maps to Q^T X Q, dual y maps to M^{-T} y.
SdpInstance Reformulate(const SdpInstance& inst, const Reformulation& ref,
                        double orth_tol = kDefaultOrthTol,
                        double cond_tol = 1e-12);

/// Dual vector transported through a reformulation: M^{-T} y.
Eigen::VectorXd TransportDual(const Reformulation& ref, const Eigen::VectorXd& y);

/// True when all data agree to tol * (1 + scale).
bool InstancesMatch(const SdpInstance& a, const SdpInstance& b, double tol = kDefaultReconTol);

// Symmetric vectorization with sqrt(2)-weighted off-diagonals, so that
// <S, T> = Svec(S) . Svec(T). Coordinates run over the diagonal first, then
// the strict upper triangle in row-major order.
int SvecDim(int n);
Eigen::VectorXd Svec(const SymMat& s);
SymMat Smat(const Eigen::VectorXd& v, int n);

/// m x n(n+1)/2 matrix whose rows are Svec(A_i).
Eigen::MatrixXd ConstraintMatrix(const SdpInstance& inst);

/// Orthogonal complement of span{A_i} plus a particular solution of A X = b.
struct DualComplement {
  std::vector<SymMat> d;  // orthonormal, <A_i, D_j> = 0
  Eigen::VectorXd rhs;    // <D_j, C>
  SymMat x0;              // minimum-norm solution of A X = b
  int ell = 0;            // n(n+1)/2 - m
};

/// Throws DependentConstraints when the A_i are linearly dependent (a
/// singular value below 1e-8 sigma_max) and InconsistentRhs when b is not in
/// the range of A.
DualComplement ComplementBasis(const SdpInstance& inst);

/// The equality-form problem  min <X0, Z>  s.t. <D_j, Z> = <D_j, C>, Z psd.
/// Its feasible Z are exactly the dual slacks C - A^* y, and
/// <X0, Z> + <b, y> = <X0, C>.
SdpInstance ComplementInstance(const DualComplement& dc);

}  // namespace ramana
