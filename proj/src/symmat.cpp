#include "ramana/symmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "ramana/error.hpp"

namespace ramana {

const char* ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonOrthonormal: return "NonOrthonormal";
    case ErrorCode::kNotPsdInput: return "NotPsdInput";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInfeasibleInput: return "InfeasibleInput";
    case ErrorCode::kSingularM: return "SingularM";
    case ErrorCode::kDependentConstraints: return "DependentConstraints";
    case ErrorCode::kInconsistentRhs: return "InconsistentRhs";
    case ErrorCode::kIterationLimit: return "IterationLimit";
    case ErrorCode::kSubsolverFailure: return "SubsolverFailure";
    case ErrorCode::kNumericalRankAmbiguity: return "NumericalRankAmbiguity";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kInductionBreak: return "InductionBreak";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnsupportedBlockStructure: return "UnsupportedBlockStructure";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kUsage: return "Usage";
  }
  return "Unknown";
}

SymMat::SymMat(int n) {
  if (n < 1) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matrix order must be positive, got " + std::to_string(n));
  }
  a_ = Eigen::MatrixXd::Zero(n, n);
}

SymMat::SymMat(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw Error(ErrorCode::kDimensionMismatch, "symmetric matrix must be square and non-empty");
  }
  a_ = 0.5 * (a + a.transpose());
}

SymMat::SymMat(std::initializer_list<std::initializer_list<double>> rows) {
  const int n = static_cast<int>(rows.size());
  Eigen::MatrixXd a(n, n);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) {
      throw Error(ErrorCode::kDimensionMismatch, "ragged matrix literal");
    }
    int j = 0;
    for (double v : row) a(i, j++) = v;
    ++i;
  }
  *this = SymMat(a);
}

SymMat SymMat::Identity(int n) {
  SymMat s(n);
  s.a_.setIdentity();
  return s;
}

SymMat SymMat::Unit(int n, int i, int j) {
  SymMat s(n);
  s.set(i, j, 1.0);
  return s;
}

SymMat SymMat::Diagonal(const Eigen::VectorXd& d) {
  SymMat s(static_cast<int>(d.size()));
  s.a_.diagonal() = d;
  return s;
}

SymMat SymMat::principal_block(int start, int size) const {
  if (start < 0 || size < 1 || start + size > order()) {
    throw Error(ErrorCode::kDimensionMismatch, "principal block out of range");
  }
  return SymMat(Eigen::MatrixXd(a_.block(start, start, size, size)));
}

SymMat SymMat::Embed(const SymMat& inner, int n, int start) {
  if (start < 0 || start + inner.order() > n) {
    throw Error(ErrorCode::kDimensionMismatch, "embedding out of range");
  }
  SymMat s(n);
  s.a_.block(start, start, inner.order(), inner.order()) = inner.a_;
  return s;
}

SymMat& SymMat::operator+=(const SymMat& o) {
  if (o.order() != order()) throw Error(ErrorCode::kDimensionMismatch, "order mismatch in +");
  a_ += o.a_;
  return *this;
}

SymMat& SymMat::operator-=(const SymMat& o) {
  if (o.order() != order()) throw Error(ErrorCode::kDimensionMismatch, "order mismatch in -");
  a_ -= o.a_;
  return *this;
}

SymMat& SymMat::operator*=(double s) {
  a_ *= s;
  return *this;
}

double Inner(const SymMat& s, const SymMat& t) {
  if (s.order() != t.order()) {
    throw Error(ErrorCode::kDimensionMismatch, "order mismatch in inner product");
  }
  return s.matrix().cwiseProduct(t.matrix()).sum();
}

double OrthonormalityError(const Eigen::MatrixXd& q) {
  if (q.rows() != q.cols()) return INFINITY;
  const Eigen::MatrixXd e =
      q.transpose() * q - Eigen::MatrixXd::Identity(q.rows(), q.cols());
  return e.cwiseAbs().maxCoeff();
}

namespace {

// One cyclic sweep of two-sided Jacobi rotations; returns whether any
// rotation was applied.
bool JacobiSweep(Eigen::MatrixXd& a, Eigen::MatrixXd& v, double tiny) {
  const int n = static_cast<int>(a.rows());
  bool rotated = false;
  for (int p = 0; p < n - 1; ++p) {
    for (int q = p + 1; q < n; ++q) {
      const double apq = a(p, q);
      if (std::abs(apq) <= tiny) continue;
      rotated = true;
      const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
      const double t = (theta >= 0 ? 1.0 : -1.0) /
                       (std::abs(theta) + std::sqrt(theta * theta + 1.0));
      const double c = 1.0 / std::sqrt(t * t + 1.0);
      const double s = t * c;
      for (int k = 0; k < n; ++k) {
        const double akp = a(k, p);
        const double akq = a(k, q);
        a(k, p) = c * akp - s * akq;
        a(k, q) = s * akp + c * akq;
      }
      for (int k = 0; k < n; ++k) {
        const double apk = a(p, k);
        const double aqk = a(q, k);
        a(p, k) = c * apk - s * aqk;
        a(q, k) = s * apk + c * aqk;
      }
      a(p, q) = 0.0;
      a(q, p) = 0.0;
      for (int k = 0; k < n; ++k) {
        const double vkp = v(k, p);
        const double vkq = v(k, q);
        v(k, p) = c * vkp - s * vkq;
        v(k, q) = s * vkp + c * vkq;
      }
    }
  }
  return rotated;
}

}  // namespace

SpectralDecomp Eig(const SymMat& input) {
  const int n = input.order();
  Eigen::MatrixXd a = input.matrix();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double scale = a.norm();
  const double tiny = std::numeric_limits<double>::min() +
                      std::numeric_limits<double>::epsilon() * 1e-3 * scale;
  for (int sweep = 0; sweep < 100; ++sweep) {
    if (!JacobiSweep(a, v, tiny)) break;
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i) > a(j, j); });

  SpectralDecomp out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]);
    Eigen::VectorXd col = v.col(order[k]);
    for (int i = 0; i < n; ++i) {
      if (std::abs(col(i)) > 1e-12) {
        if (col(i) < 0) col = -col;
        break;
      }
    }
    out.vectors.col(k) = col;
  }
  return out;
}

PsdClass ClassifyPsd(const SymMat& a, double eps) {
  const SpectralDecomp d = Eig(a);
  PsdClass c;
  c.threshold = eps * (1.0 + a.frobenius_norm());
  c.min_eigenvalue = d.values(a.order() - 1);
  c.rank = static_cast<int>((d.values.array() > c.threshold).count());
  if (c.min_eigenvalue > c.threshold) {
    c.tag = PsdTag::kPositiveDefinite;
  } else if (c.min_eigenvalue < -c.threshold) {
    c.tag = PsdTag::kNotPsd;
  } else {
    c.tag = PsdTag::kPsdRankDeficient;
  }
  return c;
}

SymMat Rotate(const SymMat& a, const Eigen::MatrixXd& q, double orth_tol) {
  if (q.rows() != a.order() || q.cols() != a.order()) {
    throw Error(ErrorCode::kDimensionMismatch, "rotation order mismatch");
  }
  const double err = OrthonormalityError(q);
  if (!(err <= orth_tol)) {
    throw Error(ErrorCode::kNonOrthonormal,
                "||Q^T Q - I||_max = " + std::to_string(err));
  }
  return SymMat(Eigen::MatrixXd(q.transpose() * a.matrix() * q));
}

namespace {

struct Eigenbasis {
  SpectralDecomp decomp;
  int rank = 0;
  double smallest_positive = 0.0;
};

Eigenbasis RankedEigenbasis(const SymMat& u, double eps) {
  Eigenbasis e;
  e.decomp = Eig(u);
  const double thr = eps * (1.0 + u.frobenius_norm());
  if (e.decomp.values(u.order() - 1) < -thr) {
    throw Error(ErrorCode::kNotPsdInput,
                "lambda_min = " + std::to_string(e.decomp.values(u.order() - 1)));
  }
  e.rank = static_cast<int>((e.decomp.values.array() > thr).count());
  if (e.rank > 0) e.smallest_positive = e.decomp.values(e.rank - 1);
  return e;
}

}  // namespace

TangentMembership TanContains(const SymMat& u, const SymMat& v, double eps) {
  const int n = u.order();
  if (v.order() != n) throw Error(ErrorCode::kDimensionMismatch, "tan_contains order mismatch");
  const double vthr = eps * (1.0 + v.frobenius_norm());
  TangentMembership out;

  // tan(0) = {0}.
  if (u.max_abs() == 0.0) {
    out.rank = 0;
    int bi = 0, bj = 0;
    const double mag = v.matrix().cwiseAbs().maxCoeff(&bi, &bj);
    if (mag > vthr) {
      out.violation = TangentViolation{std::min(bi, bj), std::max(bi, bj), mag};
    } else {
      out.witness = TangentWitness{0.5 * v.matrix(), SymMat::Identity(n)};
    }
    return out;
  }

  const Eigenbasis basis = RankedEigenbasis(u, eps);
  const Eigen::MatrixXd& q = basis.decomp.vectors;
  const int r = basis.rank;
  out.rank = r;
  const Eigen::MatrixXd vr = q.transpose() * v.matrix() * q;

  if (r < n) {
    int bi = 0, bj = 0;
    const double mag =
        vr.block(r, r, n - r, n - r).cwiseAbs().maxCoeff(&bi, &bj);
    if (mag > vthr) {
      out.violation = TangentViolation{r + std::min(bi, bj), r + std::max(bi, bj), mag};
      return out;
    }
  }

  // In the eigenbasis W' = [[V11/2, V12], [0, V22/2]] so W' + W'^T = V' and
  // the rows of W' live (up to the negligible V22) in range(U). Then
  // U - W W^T / t is PSD once t > ||V||^2 / (2 lambda_+).
  Eigen::MatrixXd wr = Eigen::MatrixXd::Zero(n, n);
  if (r > 0) {
    wr.block(0, 0, r, r) = 0.5 * vr.block(0, 0, r, r);
    if (r < n) wr.block(0, r, r, n - r) = vr.block(0, r, r, n - r);
  }
  if (r < n) wr.block(r, r, n - r, n - r) = 0.5 * vr.block(r, r, n - r, n - r);
  const double vnorm = v.frobenius_norm();
  const double t = r > 0 ? vnorm * vnorm / (2.0 * basis.smallest_positive) + 1.0 : 1.0;
  out.witness = TangentWitness{q * wr * q.transpose(), t * SymMat::Identity(n)};
  return out;
}

Eigen::MatrixXd TangentBlock(const SymMat& u, const TangentWitness& witness) {
  const int n = u.order();
  Eigen::MatrixXd m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = u.matrix();
  m.topRightCorner(n, n) = witness.w;
  m.bottomLeftCorner(n, n) = witness.w.transpose();
  m.bottomRightCorner(n, n) = witness.r.matrix();
  return m;
}

PsdPlusTangentSplit SplitPsdPlusTangent(const SymMat& u, const SymMat& s, double eps) {
  const int n = u.order();
  if (s.order() != n) throw Error(ErrorCode::kDimensionMismatch, "split order mismatch");
  PsdPlusTangentSplit out;
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n, n);
  int r = 0;
  if (u.max_abs() != 0.0) {
    const Eigenbasis basis = RankedEigenbasis(u, eps);
    q = basis.decomp.vectors;
    r = basis.rank;
  }
  out.rank = r;
  const Eigen::MatrixXd sr = q.transpose() * s.matrix() * q;
  Eigen::MatrixXd pr = Eigen::MatrixXd::Zero(n, n);
  if (r < n) {
    const SymMat trailing(Eigen::MatrixXd(sr.block(r, r, n - r, n - r)));
    const double thr = eps * (1.0 + s.frobenius_norm());
    out.trailing_min_eigenvalue = Eig(trailing).values(n - r - 1);
    if (out.trailing_min_eigenvalue < -thr) return out;
    pr.block(r, r, n - r, n - r) = trailing.matrix();
  }
  out.member = true;
  const SymMat p(Eigen::MatrixXd(q * pr * q.transpose()));
  out.tangent_part = s - p;
  out.psd_part = p;
  return out;
}

}  // namespace ramana
