#include "ramana/frs_rr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ramana/barrier.hpp"
#include "ramana/error.hpp"

namespace ramana {

int FrSequence::certified_order() const {
  int s = 0;
  for (int v : r) s += v;
  return s;
}

int RrForm::certified_order() const {
  int s = 0;
  const int members = status == RrStatus::kInfeasible ? k - 1 : k;
  for (int i = 0; i < members; ++i) s += r[i];
  return s;
}

FrsCheck ValidateFrs(const std::vector<SymMat>& y, double eps) {
  FrsCheck out;
  if (y.empty()) {
    out.valid = true;
    return out;
  }
  const int n = y[0].order();
  out.normalizer = Eigen::MatrixXd::Identity(n, n);
  int p = 0;
  for (size_t i = 0; i < y.size(); ++i) {
    const SymMat& yi = y[i];
    const std::string name = "Y_" + std::to_string(i + 1);
    if (yi.order() != n) {
      out.reason = name + " has order " + std::to_string(yi.order());
      return out;
    }
    int r = 0;
    if (p < n) {
      const double tol = eps * (1.0 + yi.frobenius_norm());
      const Eigen::MatrixXd t = yi.matrix().block(p, p, n - p, n - p);
      int last = -1;
      for (int a = 0; a < n - p; ++a) {
        for (int b = a; b < n - p; ++b) {
          if (std::abs(t(a, b)) > tol) last = std::max(last, b);
        }
      }
      r = last + 1;
      if (r > 0) {
        const SymMat block(Eigen::MatrixXd(t.topLeftCorner(r, r)));
        const PsdClass cls = ClassifyPsd(block, eps);
        if (cls.tag != PsdTag::kPositiveDefinite) {
          out.reason = name + ": block of order " + std::to_string(r) + " at offset " +
                       std::to_string(p) + " is not pd (lambda_min = " +
                       std::to_string(cls.min_eigenvalue) + ")";
          return out;
        }
        out.normalizer.block(p, p, r, r) = Eig(block).vectors;
      }
    }
    out.seq.y.push_back(yi);
    out.seq.r.push_back(r);
    p += r;
  }
  out.valid = true;
  return out;
}

bool IsRrForm(const SdpInstance& inst, int k, const SymMat& x, double eps) {
  const int n = inst.n();
  if (k < 0 || k > inst.m() || x.order() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "is_rr_form arguments do not match instance");
  }
  const std::vector<SymMat> lead(inst.a().begin(), inst.a().begin() + k);
  const FrsCheck frs = ValidateFrs(lead, eps);
  if (!frs.valid) return false;
  const double btol = eps * (1.0 + inst.b().norm());
  for (int i = 0; i < k; ++i) {
    if (std::abs(inst.b()(i)) > btol) return false;
  }
  const int q = frs.seq.certified_order();
  const double xtol = eps * (1.0 + x.frobenius_norm());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < std::min(q, n); ++b) {
      if (std::abs(x(a, b)) > xtol) return false;
    }
  }
  if (q < n && ClassifyPsd(x.principal_block(q, n - q), eps).tag != PsdTag::kPositiveDefinite) {
    return false;
  }
  const Eigen::VectorXd res = ApplyA(inst, x) - inst.b();
  return inst.m() == 0 ||
         res.cwiseAbs().maxCoeff() <= 1e-7 * (1.0 + inst.b().norm()) * inst.scale();
}

namespace {

// Candidate check for SolveAlternative; rescales y so that trace(A^* y) = 1.
std::optional<AltCertificateRaw> AcceptCandidate(const SdpInstance& inst, Eigen::VectorXd y,
                                                 AltMode mode, double eps) {
  SymMat s = ApplyAt(inst, y);
  const double tr = s.trace();
  if (!(tr > 0.0)) return std::nullopt;
  y /= tr;
  s *= 1.0 / tr;
  const PsdClass cls = ClassifyPsd(s, eps);
  if (cls.tag == PsdTag::kNotPsd || cls.rank == 0) return std::nullopt;
  const double by = inst.b().dot(y);
  const double btol = eps * (1.0 + inst.b().norm() * y.norm());
  if (mode == AltMode::kEqZero && std::abs(by) > btol) return std::nullopt;
  if (mode == AltMode::kLeqZero && by > btol) return std::nullopt;
  return AltCertificateRaw{
      y, mode == AltMode::kLeqZero && by < -btol ? AltKind::kInfeasibility : AltKind::kStrictOnly};
}

// Barrier iterates approach a singular optimum only like sqrt(gap), so
// eigenvalues that should vanish are left anywhere between 1e-13 and 1e-6.
// For each split of the spectrum (largest kept rank first) Gauss-Newton
// solves (A^* y)(N0 + R0 W) = 0, trace(A^* y) = 1 for (y, W), where R0 / N0
// are the eigenvectors above / below the split; the result has an exact
// null space of dimension n - r. Returns the first refined y whose spectrum
// is cleanly zero or positive.
std::optional<Eigen::VectorXd> Purify(const SdpInstance& inst, const Eigen::VectorXd& y,
                                      AltMode mode, double eps) {
  const int n = inst.n();
  const int m = inst.m();
  SymMat s = ApplyAt(inst, y);
  const double tr = s.trace();
  if (!(tr > 0.0)) return std::nullopt;
  s *= 1.0 / tr;
  const SpectralDecomp ed = Eig(s);
  const Eigen::VectorXd& lam = ed.values;
  constexpr double kTail = 1e-3;
  const double by = inst.b().dot(y / tr);
  // Tiny <b, y> is barrier noise; pin it to zero rather than report an
  // infeasibility certificate built on it.
  const bool pin_b = mode == AltMode::kEqZero || std::abs(by) <= kTail;

  for (int r = n - 1; r >= 1; --r) {
    if (!(lam(r - 1) > 1e-2 * kTail) || std::abs(lam(r)) > kTail || std::abs(lam(n - 1)) > kTail) {
      continue;
    }
    const int q = n - r;
    const Eigen::MatrixXd r0 = ed.vectors.leftCols(r);
    const Eigen::MatrixXd n0 = ed.vectors.rightCols(q);
    Eigen::VectorXd yk = y / tr;
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(r, q);
    const int rows = n * q + 1 + (pin_b ? 1 : 0);
    const int cols = m + r * q;
    for (int it = 0; it < 30; ++it) {
      const Eigen::MatrixXd sk = ApplyAt(inst, yk).matrix();
      const Eigen::MatrixXd nk = n0 + r0 * w;
      Eigen::VectorXd f(rows);
      Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(rows, cols);
      const Eigen::MatrixXd res = sk * nk;
      f.head(n * q) = Eigen::Map<const Eigen::VectorXd>(res.data(), n * q);
      f(n * q) = sk.trace() - 1.0;
      if (pin_b) f(n * q + 1) = inst.b().dot(yk);
      for (int j = 0; j < m; ++j) {
        const Eigen::MatrixXd dj = inst.a(j).matrix() * nk;
        jac.block(0, j, n * q, 1) = Eigen::Map<const Eigen::VectorXd>(dj.data(), n * q);
        jac(n * q, j) = inst.a(j).trace();
        if (pin_b) jac(n * q + 1, j) = inst.b()(j);
      }
      const Eigen::MatrixXd sr = sk * r0;
      for (int a = 0; a < r; ++a) {
        for (int c = 0; c < q; ++c) {
          // d/dW(a, c) of S N is S R0 e_a placed in column c.
          jac.block(c * n, m + c * r + a, n, 1) = sr.col(a);
        }
      }
      if (f.norm() < 1e-15) break;
      const Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-f);
      yk += step.head(m);
      w += Eigen::Map<const Eigen::MatrixXd>(step.data() + m, r, q);
    }
    SymMat s1 = ApplyAt(inst, yk);
    const double tr1 = s1.trace();
    if (!(tr1 > 0.0)) continue;
    s1 *= 1.0 / tr1;
    const double zero = eps * (1.0 + s1.frobenius_norm());
    const Eigen::VectorXd ev = Eig(s1).values;
    bool clean = true;
    for (int i = 0; i < n && clean; ++i) clean = std::abs(ev(i)) <= zero || ev(i) >= 1e3 * zero;
    if (clean) return yk;
  }
  return std::nullopt;
}

Eigen::MatrixXd BlockDiag(const Eigen::MatrixXd& s, std::optional<double> extra) {
  if (!extra) return s;
  const int n = static_cast<int>(s.rows());
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n + 1, n + 1);
  g.topLeftCorner(n, n) = s;
  g(n, n) = *extra;
  return g;
}

}  // namespace

std::optional<AltCertificateRaw> SolveAlternative(const SdpInstance& inst, AltMode mode,
                                                  double eps, int max_iter) {
  const int m = inst.m();
  if (m == 0) return std::nullopt;
  const Eigen::MatrixXd k = ConstraintMatrix(inst);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(k, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  int rho = 0;
  while (rho < sv.size() && sv(rho) > 1e-12 * std::max(1.0, sv(0))) ++rho;
  const Eigen::MatrixXd ur = svd.matrixU().leftCols(rho);
  const Eigen::MatrixXd un = svd.matrixU().rightCols(m - rho);

  // b outside range(A): some y has A^* y = 0 and <b, y> < 0. Rows reduced
  // onto a face carry the error of the face basis, so a component of b of
  // order eps is not evidence of infeasibility; the cut is sqrt(eps).
  if (mode == AltMode::kLeqZero && rho < m) {
    const Eigen::VectorXd bp = un * (un.transpose() * inst.b());
    if (bp.norm() > std::sqrt(eps) * (1.0 + inst.b().norm())) {
      return AltCertificateRaw{-bp / bp.squaredNorm(), AltKind::kInfeasibility};
    }
  }
  if (rho == 0) return std::nullopt;

  // y = U_r z. Constraints on z: trace(A^* y) = 1, plus <b, y> = 0 in
  // EqZero mode. In LeqZero mode -<b, y> becomes a 1x1 block of the LMI.
  std::vector<Eigen::MatrixXd> basis(rho);
  Eigen::VectorXd tau(rho);
  const Eigen::VectorXd beta = ur.transpose() * inst.b();
  for (int j = 0; j < rho; ++j) {
    basis[j] = ApplyAt(inst, ur.col(j)).matrix();
    tau(j) = basis[j].trace();
  }
  Eigen::MatrixXd e(mode == AltMode::kEqZero ? 2 : 1, rho);
  Eigen::VectorXd h(e.rows());
  e.row(0) = tau.transpose();
  h(0) = 1.0;
  if (mode == AltMode::kEqZero) {
    e.row(1) = beta.transpose();
    h(1) = 0.0;
  }
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(e);
  const Eigen::VectorXd z0 = cod.solve(h);
  if ((e * z0 - h).norm() > 1e-10) return std::nullopt;  // only traceless A^* y
  const Eigen::JacobiSVD<Eigen::MatrixXd> esvd(e, Eigen::ComputeFullV);
  int erank = 0;
  while (erank < esvd.singularValues().size() &&
         esvd.singularValues()(erank) > 1e-12 * std::max(1.0, esvd.singularValues()(0))) {
    ++erank;
  }
  const Eigen::MatrixXd null = esvd.matrixV().rightCols(rho - erank);

  const double bnorm = beta.norm();
  const bool with_scalar = mode == AltMode::kLeqZero && bnorm > 0.0;
  auto lift = [&](const Eigen::VectorXd& z) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(inst.n(), inst.n());
    for (int j = 0; j < rho; ++j) s += z(j) * basis[j];
    return BlockDiag(s, with_scalar ? std::optional<double>(-beta.dot(z) / bnorm)
                                    : std::nullopt);
  };

  AffineLmi lmi{lift(z0), {}};
  for (int c = 0; c < null.cols(); ++c) lmi.f.push_back(lift(null.col(c)));

  Eigen::VectorXd z = z0;
  double t = 0.0;
  double gap = 0.0;
  if (lmi.f.empty()) {
    t = Eig(SymMat(lmi.f0)).values(lmi.f0.rows() - 1);
  } else {
    const MaxMinResult mm = MaximizeMinEigenvalue(lmi, {max_iter, 1e-11});
    z = z0 + null * mm.w;
    t = mm.t;
    gap = mm.gap;
  }
  if (t + gap < -eps) return std::nullopt;

  const Eigen::VectorXd y = ur * z;
  Eigen::VectorXd rounded = y;
  const double ymax = y.cwiseAbs().maxCoeff();
  for (int i = 0; i < m; ++i) {
    if (std::abs(rounded(i)) < 1e-6 * ymax) rounded(i) = 0.0;
  }
  if (const auto pure = Purify(inst, y, mode, eps)) {
    if (auto c = AcceptCandidate(inst, *pure, mode, eps)) return c;
  }
  if (auto c = AcceptCandidate(inst, rounded, mode, eps)) return c;
  if (auto c = AcceptCandidate(inst, y, mode, eps)) return c;
  throw Error(ErrorCode::kIterationLimit,
              "alternative system: optimum " + std::to_string(t) +
                  " but no candidate passed revalidation");
}

SdpInstance ReducedInstance(const SdpInstance& inst, int first_row, int offset) {
  const int n = inst.n();
  const int size = n - offset;
  std::vector<SymMat> a;
  // Rows that vanish on the block up to rounding are made exactly zero, so the
  // subsolvers do not chase noise.
  const double zero_tol = 1e-11 * inst.scale();
  Eigen::VectorXd b = inst.b().tail(inst.m() - first_row);
  for (int i = first_row; i < inst.m(); ++i) {
    SymMat block = inst.a(i).principal_block(offset, size);
    if (block.max_abs() <= zero_tol) {
      block = SymMat(size);
      if (std::abs(b(i - first_row)) <= zero_tol * (1.0 + inst.b().norm())) b(i - first_row) = 0.0;
    }
    a.push_back(std::move(block));
  }
  return SdpInstance(std::move(a), b, inst.c().principal_block(offset, size));
}

MergeResult MergeToBound(const FrSequence& seq, double eps) {
  const int k_in = static_cast<int>(seq.y.size());
  MergeResult out;
  std::vector<int> kept;
  for (int i = 0; i < k_in; ++i) {
    if (seq.r[i] > 0) kept.push_back(i);
  }
  const int n = k_in > 0 ? seq.y[0].order() : 0;
  int total = 0;
  for (int i : kept) total += seq.r[i];

  if (total < n || kept.size() <= 1) {
    out.combination = Eigen::MatrixXd::Zero(kept.size(), k_in);
    for (size_t j = 0; j < kept.size(); ++j) {
      out.combination(j, kept[j]) = 1.0;
      out.seq.y.push_back(seq.y[kept[j]]);
      out.seq.r.push_back(seq.r[kept[j]]);
    }
    return out;
  }

  // Full-rank collapse: Z_j = l_{j-1} Z_{j-1} + Y_j keeps the leading
  // r_1 + ... + r_j block pd once l_{j-1} lambda_min(P) exceeds
  // lambda_max(X12 Lambda^{-1} X12^T - X11).
  Eigen::VectorXd coeff = Eigen::VectorXd::Zero(k_in);
  coeff(kept[0]) = 1.0;
  SymMat z = seq.y[kept[0]];
  int q = seq.r[kept[0]];
  for (size_t j = 1; j < kept.size(); ++j) {
    const SymMat& yj = seq.y[kept[j]];
    const int rj = seq.r[kept[j]];
    const Eigen::MatrixXd x11 = yj.matrix().topLeftCorner(q, q);
    const Eigen::MatrixXd x12 = yj.matrix().block(0, q, q, rj);
    const Eigen::MatrixXd lam = yj.matrix().block(q, q, rj, rj);
    const Eigen::MatrixXd schur = x12 * lam.llt().solve(x12.transpose()) - x11;
    const double top = std::max(0.0, Eig(SymMat(schur)).values(0));
    const double pmin = Eig(z.principal_block(0, q)).values(q - 1);
    const double bound = top / pmin;
    double l = 1.0;
    while (!(l > bound)) l *= 2.0;
    z = l * z + yj;
    coeff *= l;
    coeff(kept[j]) = 1.0;
    q += rj;
  }
  (void)eps;
  out.combination = coeff.transpose();
  out.seq.y.push_back(z);
  out.seq.r.push_back(n);
  return out;
}

bool MaxRankZeroPattern(const SymMat& x_max, const SymMat& x_test, double eps) {
  const int n = x_max.order();
  if (x_test.order() != n) throw Error(ErrorCode::kDimensionMismatch, "order mismatch");
  const double ztol = kDefaultEpsPsd * (1.0 + x_max.frobenius_norm());
  int zero_rows = 0;
  while (zero_rows < n && x_max.matrix().row(zero_rows).cwiseAbs().maxCoeff() <= ztol) {
    ++zero_rows;
  }
  const double tol = eps * (1.0 + x_test.frobenius_norm());
  for (int a = 0; a < zero_rows; ++a) {
    if (x_test.matrix().row(a).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

namespace {

// Rows i of M become sum_l y_l row(first + l); the pivot row takes the
// combination and is then swapped to position `first`.
void CombineRows(Eigen::MatrixXd& mm, int first, const Eigen::VectorXd& y) {
  int pivot = 0;
  y.cwiseAbs().maxCoeff(&pivot);
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(mm.cols());
  for (int l = 0; l < y.size(); ++l) {
    if (y(l) != 0.0) row += y(l) * mm.row(first + l);
  }
  mm.row(first + pivot) = row;
  mm.row(first).swap(mm.row(first + pivot));
}

void CheckRankBand(const SymMat& s, double eps) {
  const Eigen::VectorXd vals = Eig(s).values;
  const double scale = 1.0 + s.frobenius_norm();
  for (int i = 0; i < vals.size(); ++i) {
    if (vals(i) > eps * scale && vals(i) < 100.0 * eps * scale) {
      throw Error(ErrorCode::kNumericalRankAmbiguity,
                  "eigenvalue " + std::to_string(vals(i)) + " inside (" +
                      std::to_string(eps * scale) + ", " + std::to_string(100.0 * eps * scale) +
                      ")");
    }
  }
}

// Collapses rows [0, count) of an RR form whose blocks cover R^n into one pd
// row at position 0; the other members follow the remaining certifying row.
void CollapseFullRank(const SdpInstance& inst, RrForm& rr, int count, double eps) {
  const SdpInstance cur = Reformulate(inst, rr.ref);
  FrSequence seq;
  for (int i = 0; i < count; ++i) {
    seq.y.push_back(cur.a(i));
    seq.r.push_back(rr.r[i]);
  }
  const MergeResult merged = MergeToBound(seq, eps);
  if (merged.seq.y.size() == static_cast<size_t>(count)) return;
  const int m = inst.m();
  const Eigen::MatrixXd old = rr.ref.m;
  Eigen::MatrixXd next(m, m);
  int row = 0;
  next.row(row++) = merged.combination.row(0) * old.topRows(count);
  const int tail_start = rr.status == RrStatus::kInfeasible ? count + 1 : count;
  if (rr.status == RrStatus::kInfeasible) next.row(row++) = old.row(count);
  // The member with coefficient 1 (the last one) is the one replaced.
  for (int i = 0; i < count - 1; ++i) next.row(row++) = old.row(i);
  for (int i = tail_start; i < m; ++i) next.row(row++) = old.row(i);
  rr.ref.m = next;
  std::vector<int> r{merged.seq.r[0]};
  if (rr.status == RrStatus::kInfeasible) r.push_back(rr.r[count]);
  rr.r = r;
  rr.k = static_cast<int>(r.size());
}

}  // namespace

RrForm BuildRrForm(const SdpInstance& inst, double eps) {
  const int n = inst.n();
  const int m = inst.m();
  RrForm rr;
  rr.ref = Reformulation::Identity(m, n);
  SdpInstance cur = inst;
  int p = 0;
  const double btol = eps * (1.0 + inst.b().norm()) * inst.scale();

  while (rr.k < m) {
    if (p == n) {
      // Every remaining row has an empty trailing part.
      int j = rr.k;
      for (int i = rr.k; i < m; ++i) {
        if (std::abs(cur.b()(i)) > std::abs(cur.b()(j))) j = i;
      }
      if (std::abs(cur.b()(j)) > btol) {
        Eigen::VectorXd y = Eigen::VectorXd::Zero(m - rr.k);
        y(j - rr.k) = -1.0 / cur.b()(j);
        CombineRows(rr.ref.m, rr.k, y);
        rr.r.push_back(0);
        ++rr.k;
        rr.status = RrStatus::kInfeasible;
      }
      break;
    }
    const SdpInstance red = ReducedInstance(cur, rr.k, p);
    std::optional<AltCertificateRaw> alt;
    try {
      alt = SolveAlternative(red, AltMode::kLeqZero, eps);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kIterationLimit) {
        throw Error(ErrorCode::kSubsolverFailure, e.what());
      }
      throw;
    }
    if (!alt) break;

    Eigen::VectorXd y = alt->y;
    if (alt->mode == AltKind::kInfeasibility) y /= std::abs(red.b().dot(y));
    const SymMat s = ApplyAt(red, y);
    int rank = 0;
    Eigen::MatrixXd qsub = Eigen::MatrixXd::Identity(n - p, n - p);
    if (s.max_abs() > 0.0) {
      const SymMat normalized = (1.0 / std::max(s.trace(), 1e-300)) * s;
      CheckRankBand(normalized, eps);
      rank = ClassifyPsd(normalized, eps).rank;
      qsub = Eig(s).vectors;
    }
    CombineRows(rr.ref.m, rr.k, y);
    Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n, n);
    q.block(p, p, n - p, n - p) = qsub;
    rr.ref.q = rr.ref.q * q;
    cur = Reformulate(inst, rr.ref);
    rr.r.push_back(rank);
    ++rr.k;
    if (alt->mode == AltKind::kInfeasibility) {
      rr.status = RrStatus::kInfeasible;
      break;
    }
    p += rank;
  }

  const int certified = rr.certified_order();
  const int members = rr.status == RrStatus::kInfeasible ? rr.k - 1 : rr.k;
  if (certified == n && members > 1) CollapseFullRank(inst, rr, members, eps);

  rr.maxrank_x = SymMat(n);
  if (rr.status == RrStatus::kFeasible && certified < n) {
    const SdpInstance final_cur = Reformulate(inst, rr.ref);
    const SdpInstance red = ReducedInstance(final_cur, rr.k, certified);
    const SymMat inner = AnalyticCenter(red, SymMat::Identity(n - certified)).x;
    rr.maxrank_x = SymMat::Embed(inner, n, certified);
  }
  return rr;
}

ValueReport PrimalValue(const SdpInstance& inst, double eps) {
  const RrForm rr = BuildRrForm(inst, eps);
  ValueReport out;
  if (rr.status == RrStatus::kInfeasible) {
    out.feasible = false;
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  const int n = inst.n();
  const int q = rr.certified_order();
  const SdpInstance cur = Reformulate(inst, rr.ref);
  SymMat x(n);
  if (q < n) {
    const LinearMinResult lm = MinimizeLinear(ReducedInstance(cur, rr.k, q));
    if (lm.unbounded) {
      out.unbounded = true;
      out.value = -std::numeric_limits<double>::infinity();
      return out;
    }
    x = SymMat::Embed(lm.x, n, q);
  }
  out.x = SymMat(Eigen::MatrixXd(rr.ref.q * x.matrix() * rr.ref.q.transpose()));
  out.value = Inner(inst.c(), *out.x);
  return out;
}

ValueReport DualValue(const SdpInstance& inst, double eps) {
  const DualComplement dc = ComplementBasis(inst);
  const ValueReport red = PrimalValue(ComplementInstance(dc), eps);
  ValueReport out;
  const double shift = Inner(dc.x0, inst.c());
  if (!red.feasible) {
    out.feasible = false;
    out.value = -std::numeric_limits<double>::infinity();
  } else if (red.unbounded) {
    out.unbounded = true;
    out.value = std::numeric_limits<double>::infinity();
  } else {
    out.value = shift - red.value;
    out.x = red.x;  // the slack Z
  }
  return out;
}

SymMat SampleFeasiblePoint(const SdpInstance& inst, const RrForm& rr, std::mt19937_64& rng) {
  if (rr.status != RrStatus::kFeasible) {
    throw Error(ErrorCode::kInfeasibleInput, "no feasible point to sample");
  }
  const int n = inst.n();
  const int q = rr.certified_order();
  if (q == n) return SymMat(n);
  const SdpInstance red = ReducedInstance(Reformulate(inst, rr.ref), rr.k, q);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd b(n - q, n - q);
  for (int i = 0; i < b.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) b(i, j) = gauss(rng);
  }
  const SymMat g(Eigen::MatrixXd(b * b.transpose() / (n - q) +
                                 0.1 * Eigen::MatrixXd::Identity(n - q, n - q)));
  const SymMat inner = AnalyticCenter(red, g).x;
  const Eigen::MatrixXd x = SymMat::Embed(inner, n, q).matrix();
  return SymMat(Eigen::MatrixXd(rr.ref.q * x * rr.ref.q.transpose()));
}

}  // namespace ramana
