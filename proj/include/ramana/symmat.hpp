#pragma once

#include <initializer_list>
#include <optional>

#include <Eigen/Dense>

namespace ramana {

// Default tolerances. PSD and rank decisions are relative: a value counts as
// zero when it is below eps * (1 + ||A||_F).
inline constexpr double kDefaultEpsPsd = 1e-8;
inline constexpr double kDefaultReconTol = 1e-10;
inline constexpr double kDefaultOrthTol = 1e-10;

/// Dense real symmetric matrix of order n >= 1.
///
/// Symmetry is a storage invariant: every constructor symmetrizes its input
/// as (A + A^T) / 2 and `set` writes both triangles, so `(i, j)` and `(j, i)`
/// always compare bit-equal.
class SymMat {
 public:
  explicit SymMat(int n);
  explicit SymMat(const Eigen::MatrixXd& a);
  SymMat(std::initializer_list<std::initializer_list<double>> rows);

  static SymMat Zero(int n) { return SymMat(n); }
  static SymMat Identity(int n);
  static SymMat Unit(int n, int i, int j);  // e_i e_j^T + e_j e_i^T (e_i e_i^T on the diagonal)
  static SymMat Diagonal(const Eigen::VectorXd& d);

  int order() const { return static_cast<int>(a_.rows()); }
  double operator()(int i, int j) const { return a_(i, j); }
  void set(int i, int j, double v) {
    a_(i, j) = v;
    a_(j, i) = v;
  }
  const Eigen::MatrixXd& matrix() const { return a_; }

  double frobenius_norm() const { return a_.norm(); }
  double max_abs() const { return a_.cwiseAbs().maxCoeff(); }
  double trace() const { return a_.trace(); }

  /// Principal submatrix on rows/columns [start, start + size).
  SymMat principal_block(int start, int size) const;
  /// Places `inner` at rows/columns [start, start + inner.order()) of a zero
  /// matrix of order n.
  static SymMat Embed(const SymMat& inner, int n, int start);

  SymMat& operator+=(const SymMat& o);
  SymMat& operator-=(const SymMat& o);
  SymMat& operator*=(double s);

  friend SymMat operator+(SymMat a, const SymMat& b) { return a += b; }
  friend SymMat operator-(SymMat a, const SymMat& b) { return a -= b; }
  friend SymMat operator*(double s, SymMat a) { return a *= s; }
  friend SymMat operator-(SymMat a) { return a *= -1.0; }
  friend bool operator==(const SymMat& a, const SymMat& b) {
    return a.a_.rows() == b.a_.rows() && a.a_ == b.a_;
  }

 private:
  Eigen::MatrixXd a_;
};

/// Trace inner product <S, T> = trace(S T).
double Inner(const SymMat& s, const SymMat& t);

/// Largest entrywise deviation of Q^T Q from the identity.
double OrthonormalityError(const Eigen::MatrixXd& q);

struct SpectralDecomp {
  Eigen::MatrixXd vectors;  // columns are eigenvectors
  Eigen::VectorXd values;   // descending
};

/// Cyclic Jacobi eigendecomposition.
///
/// Output is a pure function of the input bits: the sweep order is fixed,
/// eigenpairs are stably sorted by descending eigenvalue (ties keep their
/// sweep order) and every eigenvector is signed so its first nonzero
/// coordinate is positive.
SpectralDecomp Eig(const SymMat& a);

enum class PsdTag { kPositiveDefinite, kPsdRankDeficient, kNotPsd };

struct PsdClass {
  PsdTag tag;
  int rank;              // eigenvalues above the threshold
  double min_eigenvalue;
  double threshold;      // eps * (1 + ||A||_F)
};

PsdClass ClassifyPsd(const SymMat& a, double eps = kDefaultEpsPsd);
inline bool IsPsd(const SymMat& a, double eps = kDefaultEpsPsd) {
  return ClassifyPsd(a, eps).tag != PsdTag::kNotPsd;
}

/// Q^T A Q. Throws NonOrthonormal when ||Q^T Q - I||_max > orth_tol.
SymMat Rotate(const SymMat& a, const Eigen::MatrixXd& q,
              double orth_tol = kDefaultOrthTol);

struct TangentWitness {
  Eigen::MatrixXd w;  // V = W + W^T
  SymMat r;           // [[U, W], [W^T, R]] is PSD
};

struct TangentViolation {
  int row;  // indices in the eigenbasis of U
  int col;
  double magnitude;
};

struct TangentMembership {
  int rank = 0;  // numerical rank of U
  std::optional<TangentWitness> witness;
  std::optional<TangentViolation> violation;
  bool member() const { return witness.has_value(); }
};

/// Tests V in tan(U) for PSD U.
///
/// With U = Q diag(lambda) Q^T of rank r, V is a member iff Q^T V Q vanishes
/// outside its first r rows and columns. Throws NotPsdInput if U is not PSD.
TangentMembership TanContains(const SymMat& u, const SymMat& v,
                              double eps = kDefaultEpsPsd);

/// Block matrix [[U, W], [W^T, R]] of order 2n.
Eigen::MatrixXd TangentBlock(const SymMat& u, const TangentWitness& witness);

/// S = P + V with P PSD and V in tan(U).
struct PsdPlusTangentSplit {
  bool member = false;
  int rank = 0;                   // numerical rank of U
  double trailing_min_eigenvalue = 0.0;
  std::optional<SymMat> psd_part;
  std::optional<SymMat> tangent_part;
};

/// Membership of S in S_+^n + tan(U): in U's eigenbasis the trailing
/// (n - rank U) block of S must be PSD. On success also returns the split.
PsdPlusTangentSplit SplitPsdPlusTangent(const SymMat& u, const SymMat& s,
                                        double eps = kDefaultEpsPsd);

}  // namespace ramana
