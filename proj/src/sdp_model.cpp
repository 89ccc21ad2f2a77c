#include "ramana/sdp_model.hpp"

#include <cmath>
#include <string>

#include "ramana/error.hpp"

namespace ramana {

SdpInstance::SdpInstance(std::vector<SymMat> a, Eigen::VectorXd b, SymMat c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  if (static_cast<int>(a_.size()) != b_.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "got " + std::to_string(a_.size()) + " constraint matrices but " +
                    std::to_string(b_.size()) + " right-hand sides");
  }
  for (size_t i = 0; i < a_.size(); ++i) {
    if (a_[i].order() != c_.order()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "A_" + std::to_string(i + 1) + " has order " +
                      std::to_string(a_[i].order()) + ", C has order " +
                      std::to_string(c_.order()));
    }
  }
}

double SdpInstance::scale() const {
  double s = c_.frobenius_norm();
  for (const auto& a : a_) s = std::max(s, a.frobenius_norm());
  return 1.0 + s;
}

Eigen::VectorXd ApplyA(const SdpInstance& inst, const SymMat& x) {
  if (x.order() != inst.n()) {
    throw Error(ErrorCode::kDimensionMismatch, "X has order " + std::to_string(x.order()) +
                                                   ", expected " + std::to_string(inst.n()));
  }
  Eigen::VectorXd out(inst.m());
  for (int i = 0; i < inst.m(); ++i) out(i) = Inner(inst.a(i), x);
  return out;
}

SymMat ApplyAt(const SdpInstance& inst, const Eigen::VectorXd& y) {
  if (y.size() != inst.m()) {
    throw Error(ErrorCode::kDimensionMismatch, "y has length " + std::to_string(y.size()) +
                                                   ", expected " + std::to_string(inst.m()));
  }
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(inst.n(), inst.n());
  for (int i = 0; i < inst.m(); ++i) s += y(i) * inst.a(i).matrix();
  return SymMat(s);
}

SymMat DualSlack(const SdpInstance& inst, const Eigen::VectorXd& y) {
  return inst.c() - ApplyAt(inst, y);
}

double WeakDualityGap(const SdpInstance& inst, const SymMat& x, const Eigen::VectorXd& y,
                      double tol) {
  const Eigen::VectorXd res = ApplyA(inst, x) - inst.b();
  if (inst.m() > 0 && res.cwiseAbs().maxCoeff() > tol * (1.0 + inst.b().norm())) {
    throw Error(ErrorCode::kInfeasibleInput,
                "||A X - b||_max = " + std::to_string(res.cwiseAbs().maxCoeff()));
  }
  const double gap = Inner(inst.c(), x) - inst.b().dot(y);
  const double via_slack = Inner(DualSlack(inst, y), x);
  // The two agree up to <A X - b, y>.
  const double allowed =
      tol * (1.0 + inst.b().norm()) * (1.0 + y.norm()) * (1.0 + x.frobenius_norm()) * inst.scale();
  if (std::abs(gap - via_slack) > allowed) {
    throw Error(ErrorCode::kSubsolverFailure,
                "duality gap identity off by " + std::to_string(gap - via_slack));
  }
  return gap;
}

Reformulation Reformulation::Identity(int m, int n) {
  return {Eigen::MatrixXd::Identity(m, m), Eigen::MatrixXd::Identity(n, n)};
}

SdpInstance Reformulate(const SdpInstance& inst, const Reformulation& ref, double orth_tol,
                        double cond_tol) {
  const int m = inst.m();
  const int n = inst.n();
  if (ref.m.rows() != m || ref.m.cols() != m || ref.q.rows() != n || ref.q.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "reformulation shape does not match instance");
  }
  if (m > 0) {
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(ref.m);
    const auto& sv = svd.singularValues();
    if (!(sv(m - 1) > cond_tol * sv(0))) {
      throw Error(ErrorCode::kSingularM, "sigma_min / sigma_max = " +
                                             std::to_string(sv(0) > 0 ? sv(m - 1) / sv(0) : 0.0));
    }
  }
  std::vector<SymMat> rotated;
  rotated.reserve(m);
  for (int j = 0; j < m; ++j) rotated.push_back(Rotate(inst.a(j), ref.q, orth_tol));
  std::vector<SymMat> a;
  a.reserve(m);
  for (int i = 0; i < m; ++i) {
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < m; ++j) {
      if (ref.m(i, j) != 0.0) acc += ref.m(i, j) * rotated[j].matrix();
    }
    a.emplace_back(acc);
  }
  return SdpInstance(std::move(a), ref.m * inst.b(), Rotate(inst.c(), ref.q, orth_tol));
}

Eigen::VectorXd TransportDual(const Reformulation& ref, const Eigen::VectorXd& y) {
  return ref.m.transpose().fullPivLu().solve(y);
}

bool InstancesMatch(const SdpInstance& a, const SdpInstance& b, double tol) {
  if (a.n() != b.n() || a.m() != b.m()) return false;
  const double bound = tol * (1.0 + std::max(a.scale(), b.scale()));
  auto close = [&](const SymMat& s, const SymMat& t) { return (s - t).max_abs() <= bound; };
  if (!close(a.c(), b.c())) return false;
  for (int i = 0; i < a.m(); ++i) {
    if (!close(a.a(i), b.a(i))) return false;
  }
  return a.m() == 0 || (a.b() - b.b()).cwiseAbs().maxCoeff() <= bound;
}

int SvecDim(int n) { return n * (n + 1) / 2; }

Eigen::VectorXd Svec(const SymMat& s) {
  const int n = s.order();
  Eigen::VectorXd v(SvecDim(n));
  int k = 0;
  for (int i = 0; i < n; ++i) v(k++) = s(i, i);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) v(k++) = M_SQRT2 * s(i, j);
  }
  return v;
}

SymMat Smat(const Eigen::VectorXd& v, int n) {
  if (v.size() != SvecDim(n)) throw Error(ErrorCode::kDimensionMismatch, "svec length");
  SymMat s(n);
  int k = 0;
  for (int i = 0; i < n; ++i) s.set(i, i, v(k++));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) s.set(i, j, v(k++) / M_SQRT2);
  }
  return s;
}

Eigen::MatrixXd ConstraintMatrix(const SdpInstance& inst) {
  Eigen::MatrixXd k(inst.m(), SvecDim(inst.n()));
  for (int i = 0; i < inst.m(); ++i) k.row(i) = Svec(inst.a(i)).transpose();
  return k;
}

DualComplement ComplementBasis(const SdpInstance& inst) {
  const int n = inst.n();
  const int m = inst.m();
  const int dim = SvecDim(n);
  const Eigen::MatrixXd k = ConstraintMatrix(inst);

  Eigen::MatrixXd basis(dim, 0);
  if (m > 0) {
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(k, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (m > dim || sv(sv.size() - 1) < 1e-8 * sv(0)) {
      throw Error(ErrorCode::kDependentConstraints,
                  "constraint matrices are linearly dependent (sigma_min = " +
                      std::to_string(m > dim ? 0.0 : sv(sv.size() - 1)) + ")");
    }
    basis = svd.matrixV();
  }

  // Gram-Schmidt of the standard basis of S^n against span{A_i}, twice
  // orthogonalized for stability.
  std::vector<SymMat> d;
  const int ell = dim - m;
  for (int e = 0; e < dim && static_cast<int>(d.size()) < ell; ++e) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(dim, e);
    for (int pass = 0; pass < 2; ++pass) v -= basis * (basis.transpose() * v);
    const double norm = v.norm();
    if (norm < 1e-8) continue;
    v /= norm;
    basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
    basis.col(basis.cols() - 1) = v;
    d.push_back(Smat(v, n));
  }

  Eigen::VectorXd x0v = Eigen::VectorXd::Zero(dim);
  if (m > 0) {
    x0v = k.transpose() * (k * k.transpose()).ldlt().solve(inst.b());
    const double res = (k * x0v - inst.b()).cwiseAbs().maxCoeff();
    if (res > kDefaultReconTol * (1.0 + inst.b().norm()) * inst.scale()) {
      throw Error(ErrorCode::kInconsistentRhs, "residual " + std::to_string(res));
    }
  }

  DualComplement out{std::move(d), Eigen::VectorXd(ell), Smat(x0v, n), ell};
  for (int j = 0; j < ell; ++j) out.rhs(j) = Inner(out.d[j], inst.c());
  return out;
}

SdpInstance ComplementInstance(const DualComplement& dc) {
  return SdpInstance(dc.d, dc.rhs, dc.x0);
}

}  // namespace ramana
