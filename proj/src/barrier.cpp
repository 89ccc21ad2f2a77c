#include "ramana/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ramana/error.hpp"

namespace ramana {
namespace {

// -logdet via Cholesky; nullopt when the matrix is not numerically pd.
std::optional<double> NegLogDet(const Eigen::MatrixXd& g) {
  const Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) return std::nullopt;
  const auto& l = llt.matrixL();
  double s = 0.0;
  for (int i = 0; i < g.rows(); ++i) {
    const double d = l(i, i);
    if (!(d > 0.0) || !std::isfinite(d)) return std::nullopt;
    s -= 2.0 * std::log(d);
  }
  return s;
}

// Drops constraints that are numerically combinations of the others. After
// facial reduction the restricted rows are often dependent, and rounding makes
// the overdetermined system slightly inconsistent.
SdpInstance IndependentRows(const SdpInstance& inst) {
  if (inst.m() <= 1) return inst;
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(ConstraintMatrix(inst).transpose());
  const Eigen::MatrixXd r = qr.matrixR().triangularView<Eigen::Upper>();
  const double top = std::abs(r(0, 0));
  int rank = 0;
  while (rank < std::min<int>(r.rows(), r.cols()) && std::abs(r(rank, rank)) > 1e-9 * top) ++rank;
  if (rank == inst.m()) return inst;
  std::vector<int> keep(qr.colsPermutation().indices().data(),
                        qr.colsPermutation().indices().data() + rank);
  std::sort(keep.begin(), keep.end());
  std::vector<SymMat> a;
  Eigen::VectorXd b(rank);
  for (int i = 0; i < rank; ++i) {
    a.push_back(inst.a(keep[i]));
    b(i) = inst.b()(keep[i]);
  }
  return SdpInstance(std::move(a), b, inst.c());
}

}  // namespace

MaxMinResult MaximizeMinEigenvalue(const AffineLmi& lmi, const BarrierOptions& opts) {
  const int dim = static_cast<int>(lmi.f0.rows());
  const int p = static_cast<int>(lmi.f.size());
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(dim, dim);

  auto assemble = [&](const Eigen::VectorXd& w, double t) {
    Eigen::MatrixXd g = lmi.f0 - t * eye;
    for (int k = 0; k < p; ++k) g += w(k) * lmi.f[k];
    return g;
  };

  MaxMinResult res;
  res.w = Eigen::VectorXd::Zero(p);
  res.t = Eig(SymMat(lmi.f0)).values(dim - 1) - 1.0;
  double s = 1.0;

  // Damped Newton on -s t - logdet(F(w) - t I) for increasing s. The damped
  // step 1 / (1 + lambda) needs no line search, which matters once s is
  // large and objective differences drown in rounding.
  constexpr int kInnerCap = 80;
  while (true) {
    for (int inner = 0; inner < kInnerCap; ++inner) {
      const Eigen::MatrixXd g = assemble(res.w, res.t);
      const Eigen::LLT<Eigen::MatrixXd> llt(g);
      const Eigen::MatrixXd linv =
          llt.matrixL().solve(Eigen::MatrixXd::Identity(dim, dim));
      std::vector<Eigen::MatrixXd> bt(p + 1);
      for (int k = 0; k < p; ++k) bt[k] = linv * lmi.f[k] * linv.transpose();
      bt[p] = -linv * linv.transpose();

      Eigen::VectorXd grad(p + 1);
      for (int k = 0; k <= p; ++k) grad(k) = -bt[k].trace();
      grad(p) -= s;
      Eigen::MatrixXd hess(p + 1, p + 1);
      for (int k = 0; k <= p; ++k) {
        for (int l = k; l <= p; ++l) {
          hess(k, l) = hess(l, k) = bt[k].cwiseProduct(bt[l]).sum();
        }
      }
      const Eigen::VectorXd step = hess.ldlt().solve(-grad);
      const double dec = -grad.dot(step);
      if (!std::isfinite(dec) || dec < 1e-12) break;
      const double lambda = std::sqrt(dec);
      double alpha = lambda > 0.25 ? 1.0 / (1.0 + lambda) : 1.0;
      while (!NegLogDet(assemble(res.w + alpha * step.head(p), res.t + alpha * step(p)))) {
        alpha *= 0.5;
        if (alpha < 1e-16) break;
      }
      if (alpha < 1e-16) break;
      res.w += alpha * step.head(p);
      res.t += alpha * step(p);
      if (++res.iterations > opts.max_iter) {
        throw Error(ErrorCode::kIterationLimit,
                    "max-min eigenvalue barrier exceeded " + std::to_string(opts.max_iter) +
                        " Newton steps");
      }
      if (dec < 1e-10) break;
    }
    res.gap = dim / s;
    if (res.gap < opts.gap_tol) break;
    s *= 10.0;
  }
  return res;
}

CenterResult AnalyticCenter(const SdpInstance& full, const SymMat& g,
                            const std::optional<SymMat>& start, const BarrierOptions& opts) {
  const SdpInstance inst = IndependentRows(full);
  const int n = inst.n();
  const int m = inst.m();
  Eigen::MatrixXd x = start ? start->matrix() : Eigen::MatrixXd::Identity(n, n);
  if (!NegLogDet(x)) throw Error(ErrorCode::kSubsolverFailure, "start point is not pd");
  // G + A^* nu has the same minimizer on the affine set for every nu. Folding
  // each Newton multiplier into G keeps X - X G X free of cancellation when
  // G is large.
  Eigen::MatrixXd gm = g.matrix();
  const double feas_tol = 1e-10 * (1.0 + inst.b().norm()) * inst.scale();

  CenterResult out{SymMat(n), 0};
  for (;;) {
    const Eigen::MatrixXd xgx = x * gm * x;
    Eigen::VectorXd r(m);
    std::vector<Eigen::MatrixXd> ax(m);
    for (int i = 0; i < m; ++i) {
      r(i) = inst.b()(i) - inst.a(i).matrix().cwiseProduct(x).sum();
      ax[i] = inst.a(i).matrix() * x;
    }
    const bool feasible = m == 0 || r.cwiseAbs().maxCoeff() <= feas_tol;

    Eigen::MatrixXd delta = x - xgx;
    if (m > 0) {
      Eigen::MatrixXd gram(m, m);
      Eigen::VectorXd rhs(m);
      for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
          gram(i, j) = gram(j, i) = ax[i].cwiseProduct(ax[j].transpose()).sum();
        }
        rhs(i) = inst.a(i).matrix().cwiseProduct(x - xgx).sum() - r(i);
      }
      const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(gram);
      const Eigen::VectorXd nu = cod.solve(rhs);
      if ((gram * nu - rhs).norm() > 1e-8 * (1.0 + rhs.norm()) * (1.0 + gram.norm())) {
        throw Error(ErrorCode::kSubsolverFailure, "affine constraints are inconsistent");
      }
      Eigen::MatrixXd at = Eigen::MatrixXd::Zero(n, n);
      for (int i = 0; i < m; ++i) at += nu(i) * inst.a(i).matrix();
      delta -= x * at * x;
      gm += at;
    }
    delta = 0.5 * (delta + delta.transpose());

    const Eigen::MatrixXd xinv_delta = x.llt().solve(delta);
    const double dec = xinv_delta.cwiseProduct(xinv_delta.transpose()).sum();
    if (feasible && dec < 1e-24) break;

    // Damped Newton on a self-concordant barrier: 1 / (1 + lambda) keeps X pd
    // and decreases the objective, no line search needed.
    const double lambda = std::sqrt(std::max(dec, 0.0));
    double alpha = lambda > 0.25 ? 1.0 / (1.0 + lambda) : 1.0;
    if (!feasible) alpha = 1.0;
    while (!NegLogDet(x + alpha * delta)) {
      alpha *= 0.5;
      if (alpha < 1e-16) throw Error(ErrorCode::kSubsolverFailure, "Newton step collapsed");
    }
    if (!feasible && alpha < 1.0) alpha *= 0.9;  // stay off the boundary
    x += alpha * delta;
    x = 0.5 * (x + x.transpose());
    // Quadratic convergence: one full step from dec < 1e-12 is at rounding level.
    if (feasible && alpha == 1.0 && dec < 1e-12) {
      ++out.iterations;
      break;
    }
    if (!std::isfinite(x.norm()) || x.norm() > 1e14) {
      throw Error(ErrorCode::kSubsolverFailure, "barrier iterate diverged");
    }
    if (++out.iterations > opts.max_iter) {
      throw Error(ErrorCode::kIterationLimit,
                  "analytic center exceeded " + std::to_string(opts.max_iter) + " Newton steps");
    }
  }
  out.x = SymMat(x);
  return out;
}

LinearMinResult MinimizeLinear(const SdpInstance& inst, double mu_min,
                               const BarrierOptions& opts) {
  const int n = inst.n();
  LinearMinResult res{0.0, AnalyticCenter(inst, SymMat::Identity(n), std::nullopt, opts).x,
                      false};
  const double floor = -1e8 * inst.scale();
  for (double mu = 1.0; mu >= mu_min * 0.999; mu *= 0.1) {
    const SymMat g = (1.0 / mu) * inst.c() + SymMat::Identity(n);
    try {
      res.x = AnalyticCenter(inst, g, res.x, opts).x;
    } catch (const Error& e) {
      if (std::string(e.what()).find("diverged") == std::string::npos) throw;
      res.unbounded = true;
      res.value = -std::numeric_limits<double>::infinity();
      return res;
    }
    res.value = Inner(inst.c(), res.x);
    if (res.value < floor) {
      res.unbounded = true;
      res.value = -std::numeric_limits<double>::infinity();
      return res;
    }
  }
  return res;
}

}  // namespace ramana
