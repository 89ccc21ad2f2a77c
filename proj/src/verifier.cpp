#include "ramana/verifier.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "ramana/error.hpp"

namespace ramana {

std::vector<Rung> PaddedLadder(const RamanaCertificate& cert, int n, int m) {
  const int len = n - 1;
  if (static_cast<int>(cert.ladder.size()) > len) {
    throw Error(ErrorCode::kShapeMismatch, "ladder has " + std::to_string(cert.ladder.size()) +
                                               " rungs, at most " + std::to_string(len) +
                                               " allowed");
  }
  for (size_t i = 0; i < cert.ladder.size(); ++i) {
    const Rung& r = cert.ladder[i];
    const std::string at = " at rung " + std::to_string(i + 1);
    if (r.u.order() != n || r.v.order() != n) {
      throw Error(ErrorCode::kShapeMismatch, "matrix order" + at);
    }
    if (r.y && r.y->size() != m) throw Error(ErrorCode::kShapeMismatch, "y^i length" + at);
  }
  std::vector<Rung> out;
  const int pad = len - static_cast<int>(cert.ladder.size());
  for (int i = 0; i < pad; ++i) {
    out.push_back(Rung{Eigen::VectorXd::Zero(m), SymMat(n), SymMat(n)});
  }
  out.insert(out.end(), cert.ladder.begin(), cert.ladder.end());
  return out;
}

std::string Verdict::message() const {
  std::ostringstream os;
  if (ok) {
    os << "feasible, value " << value;
  } else {
    os << failed;
    if (!detail.empty()) os << " (" << detail << ")";
  }
  return os.str();
}

namespace {

std::string Fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

Verdict Fail(std::string failed, double residual, std::string detail = "") {
  Verdict v;
  v.failed = std::move(failed);
  v.residual = residual;
  v.detail = detail.empty() ? "residual " + Fmt(residual) : std::move(detail);
  return v;
}

std::string Name(const std::string& base, int i) { return base + "_" + std::to_string(i); }

void CheckOrders(const SdpInstance& inst, const RamanaCertificate& cert) {
  if (cert.x && cert.x->order() != inst.n()) throw Error(ErrorCode::kShapeMismatch, "X order");
  if (cert.y && cert.y->size() != inst.m()) throw Error(ErrorCode::kShapeMismatch, "y length");
}

// The rung checks shared by all three Ramana systems; nullopt when every
// rung passes.
std::optional<Verdict> CheckRungs(const SdpInstance& inst, const std::vector<Rung>& ladder,
                                  bool dual, double eps) {
  const int n = inst.n();
  SymMat prev(n);  // U_0 = 0
  for (size_t idx = 0; idx < ladder.size(); ++idx) {
    const int i = static_cast<int>(idx) + 1;
    const Rung& rung = ladder[idx];
    const SymMat sum = rung.u + rung.v;
    const double scale = 1.0 + rung.u.frobenius_norm() + rung.v.frobenius_norm();
    if (dual) {
      const Eigen::VectorXd yi = rung.y ? *rung.y : Eigen::VectorXd::Zero(inst.m());
      const SymMat ay = ApplyAt(inst, yi);
      const double res = (ay - sum).max_abs();
      if (res > eps * (scale + ay.frobenius_norm())) {
        return Fail("A^* y^" + std::to_string(i) + " != U_" + std::to_string(i) + " + V_" +
                        std::to_string(i),
                    res);
      }
      const double by = inst.b().dot(yi);
      if (std::abs(by) > eps * (1.0 + inst.b().norm() * yi.norm())) {
        return Fail("<b, y^" + std::to_string(i) + "> != 0", std::abs(by));
      }
    } else {
      const Eigen::VectorXd ay = ApplyA(inst, sum);
      const double res = inst.m() > 0 ? ay.cwiseAbs().maxCoeff() : 0.0;
      if (res > eps * scale * inst.scale()) {
        return Fail("A(U_" + std::to_string(i) + " + V_" + std::to_string(i) + ") != 0", res);
      }
      const double cres = std::abs(Inner(inst.c(), sum));
      if (cres > eps * scale * inst.scale()) {
        return Fail("<C, U_" + std::to_string(i) + " + V_" + std::to_string(i) + "> != 0",
                    cres);
      }
    }
    const PsdClass cls = ClassifyPsd(rung.u, eps);
    if (cls.tag == PsdTag::kNotPsd) {
      return Fail(Name("U", i) + " not PSD", -cls.min_eigenvalue,
                  "lambda_min = " + Fmt(cls.min_eigenvalue));
    }
    const TangentMembership tm = TanContains(prev, rung.v, eps);
    if (!tm.member()) {
      return Fail(Name("V", i) + " not in tan(U_" + std::to_string(i - 1) + ")",
                  tm.violation->magnitude,
                  "entry (" + std::to_string(tm.violation->row) + "," +
                      std::to_string(tm.violation->col) + ") of the rotated V is " +
                      Fmt(tm.violation->magnitude));
    }
    prev = rung.u;
  }
  return std::nullopt;
}

std::optional<Verdict> CheckHead(const SymMat& last_u, const SymMat& head, const std::string& what,
                                 double eps) {
  const PsdPlusTangentSplit split = SplitPsdPlusTangent(last_u, head, eps);
  if (!split.member) {
    return Fail(what + " not in S_+ + tan(U_{n-1})", -split.trailing_min_eigenvalue,
                "trailing block lambda_min = " + Fmt(split.trailing_min_eigenvalue));
  }
  return std::nullopt;
}

void ClaimWarning(Verdict& v, const RamanaCertificate& cert, double eps) {
  if (v.ok && cert.claimed_value &&
      std::abs(*cert.claimed_value - v.value) > 1e3 * eps * (1.0 + std::abs(v.value))) {
    v.warnings.push_back("claimed value " + Fmt(*cert.claimed_value) + " differs from " +
                         Fmt(v.value));
  }
}

Verdict VerifyDualSide(const SdpInstance& inst, const RamanaCertificate& cert, double eps,
                       bool alternative) {
  CheckOrders(inst, cert);
  if (!cert.y) throw Error(ErrorCode::kShapeMismatch, "certificate has no y");
  const std::vector<Rung> ladder = PaddedLadder(cert, inst.n(), inst.m());
  if (auto f = CheckRungs(inst, ladder, true, eps)) return *f;
  const SymMat last = ladder.empty() ? SymMat(inst.n()) : ladder.back().u;
  const Eigen::VectorXd& y = *cert.y;
  if (alternative) {
    if (auto f = CheckHead(last, ApplyAt(inst, y), "A^* y", eps)) return *f;
    const double by = inst.b().dot(y);
    if (std::abs(by + 1.0) > eps * (1.0 + inst.b().norm() * y.norm())) {
      return Fail("<b, y> != -1", std::abs(by + 1.0), "<b, y> = " + Fmt(by));
    }
  } else {
    if (auto f = CheckHead(last, DualSlack(inst, y), "C - A^* y", eps)) return *f;
  }
  Verdict v;
  v.ok = true;
  v.value = inst.b().dot(y);
  ClaimWarning(v, cert, eps);
  return v;
}

}  // namespace

Verdict VerifyDram(const SdpInstance& inst, const RamanaCertificate& cert, double eps) {
  return VerifyDualSide(inst, cert, eps, false);
}

Verdict VerifyAltRam(const SdpInstance& inst, const RamanaCertificate& cert, double eps) {
  return VerifyDualSide(inst, cert, eps, true);
}

Verdict VerifyPram(const SdpInstance& inst, const RamanaCertificate& cert, double eps) {
  CheckOrders(inst, cert);
  if (!cert.x) throw Error(ErrorCode::kShapeMismatch, "certificate has no X");
  const std::vector<Rung> ladder = PaddedLadder(cert, inst.n(), inst.m());
  if (auto f = CheckRungs(inst, ladder, false, eps)) return *f;
  const SymMat& x = *cert.x;
  if (inst.m() > 0) {
    const double res = (ApplyA(inst, x) - inst.b()).cwiseAbs().maxCoeff();
    if (res > eps * (1.0 + inst.b().norm()) * (1.0 + x.frobenius_norm()) * inst.scale()) {
      return Fail("A X != b", res);
    }
  }
  const SymMat last = ladder.empty() ? SymMat(inst.n()) : ladder.back().u;
  if (auto f = CheckHead(last, x, "X", eps)) return *f;
  Verdict v;
  v.ok = true;
  v.value = Inner(inst.c(), x);
  ClaimWarning(v, cert, eps);
  return v;
}

namespace {

void CheckSpec(const SdpInstance& inst, const StrongDualSpec& spec) {
  const int n = inst.n();
  if (spec.q.rows() != n || spec.q.cols() != n || spec.r < 0 || spec.r > n) {
    throw Error(ErrorCode::kShapeMismatch, "strong spec does not match the instance");
  }
  if (OrthonormalityError(spec.q) > kDefaultOrthTol) {
    throw Error(ErrorCode::kNonOrthonormal, "strong spec rotation");
  }
}

std::optional<Verdict> TrailingPsd(const SymMat& s, const StrongDualSpec& spec,
                                   const std::string& what, double eps) {
  const int n = s.order();
  if (spec.r == 0) return std::nullopt;
  const SymMat rot = Rotate(s, spec.q);
  const SymMat tail = rot.principal_block(n - spec.r, spec.r);
  // Scale by the full matrix, not just the block.
  const double thr = eps * (1.0 + rot.frobenius_norm());
  const double lmin = Eig(tail).values(spec.r - 1);
  if (lmin < -thr) {
    return Fail("trailing block of " + what + " not PSD", -lmin, "lambda_min = " + Fmt(lmin));
  }
  return std::nullopt;
}

}  // namespace

Verdict VerifyStrongDual(const SdpInstance& inst, const StrongDualSpec& spec,
                         const Eigen::VectorXd& y, double eps) {
  CheckSpec(inst, spec);
  if (y.size() != inst.m()) throw Error(ErrorCode::kShapeMismatch, "y length");
  if (auto f = TrailingPsd(DualSlack(inst, y), spec, "Q^T (C - A^* y) Q", eps)) return *f;
  Verdict v;
  v.ok = true;
  v.value = inst.b().dot(y);
  return v;
}

Verdict VerifyStrongPrimal(const SdpInstance& inst, const StrongDualSpec& spec, const SymMat& x,
                           double eps) {
  CheckSpec(inst, spec);
  if (x.order() != inst.n()) throw Error(ErrorCode::kShapeMismatch, "X order");
  if (inst.m() > 0) {
    const double res = (ApplyA(inst, x) - inst.b()).cwiseAbs().maxCoeff();
    if (res > eps * (1.0 + inst.b().norm()) * (1.0 + x.frobenius_norm()) * inst.scale()) {
      return Fail("A X != b", res);
    }
  }
  if (auto f = TrailingPsd(x, spec, "Q^T X Q", eps)) return *f;
  Verdict v;
  v.ok = true;
  v.value = Inner(inst.c(), x);
  return v;
}

Verdict Verify(const SdpInstance& inst, const RamanaCertificate& cert, double eps) {
  switch (cert.system) {
    case SystemKind::kDram: return VerifyDram(inst, cert, eps);
    case SystemKind::kAltRam: return VerifyAltRam(inst, cert, eps);
    case SystemKind::kPram: return VerifyPram(inst, cert, eps);
    case SystemKind::kDstrong:
    case SystemKind::kPstrong: {
      if (!cert.strong) throw Error(ErrorCode::kShapeMismatch, "strong certificate needs Q and r");
      Verdict v;
      if (cert.system == SystemKind::kDstrong) {
        if (!cert.y) throw Error(ErrorCode::kShapeMismatch, "certificate has no y");
        v = VerifyStrongDual(inst, *cert.strong, *cert.y, eps);
      } else {
        if (!cert.x) throw Error(ErrorCode::kShapeMismatch, "certificate has no X");
        v = VerifyStrongPrimal(inst, *cert.strong, *cert.x, eps);
      }
      ClaimWarning(v, cert, eps);
      return v;
    }
    case SystemKind::kRed: break;
  }
  throw Error(ErrorCode::kUsage, "no verifier for this system");
}

NormalizationReport NormalizeLadder(const SdpInstance& inst, const RamanaCertificate& cert,
                                    double eps) {
  const int n = inst.n();
  const std::vector<Rung> ladder = PaddedLadder(cert, n, inst.m());
  const bool dual = cert.system != SystemKind::kPram;
  std::vector<SymMat> ys;
  for (const Rung& rung : ladder) {
    ys.push_back(dual ? ApplyAt(inst, rung.y ? *rung.y : Eigen::VectorXd::Zero(inst.m()))
                      : rung.u + rung.v);
  }

  NormalizationReport rep;
  rep.q_total = Eigen::MatrixXd::Identity(n, n);
  int p = 0;
  for (size_t i = 0; i < ys.size(); ++i) {
    int rank = 0;
    if (p < n) {
      const SymMat rot = Rotate(ys[i], rep.q_total);
      const SymMat tail = rot.principal_block(p, n - p);
      const PsdClass cls = ClassifyPsd(tail, eps);
      if (cls.tag == PsdTag::kNotPsd) {
        throw Error(ErrorCode::kInductionBreak,
                    "rung " + std::to_string(i + 1) + ": trailing block past offset " +
                        std::to_string(p) + " has eigenvalue " + Fmt(cls.min_eigenvalue));
      }
      rank = cls.rank;
      if (tail.max_abs() > 0.0) {
        Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n, n);
        q.block(p, p, n - p, n - p) = Eig(tail).vectors;
        rep.q_total = rep.q_total * q;
      }
    }
    rep.r.push_back(rank);
    p += rank;
  }

  for (const SymMat& y : ys) rep.rotated_y.push_back(Rotate(y, rep.q_total));
  const FrsCheck frs = ValidateFrs(rep.rotated_y, eps);
  rep.frs_valid = frs.valid && frs.seq.r == rep.r;

  int q = 0;
  for (size_t i = 0; i < ladder.size(); ++i) {
    q += rep.r[i];
    const SymMat u = Rotate(ladder[i].u, rep.q_total);
    const double tol = eps * (1.0 + u.frobenius_norm());
    bool inside = ClassifyPsd(u, eps).tag != PsdTag::kNotPsd;
    for (int a = 0; a < n && inside; ++a) {
      for (int b = q; b < n; ++b) {
        if (std::abs(u(a, b)) > tol) {
          inside = false;
          break;
        }
      }
    }
    rep.u_membership.push_back(inside);
  }
  return rep;
}

namespace {


// Rungs for rows [0, count) of the reformulated instance, mapped back to the
// original basis.
std::vector<Rung> LadderFromRows(const SdpInstance& inst, const RrForm& rr, int count) {
  const int n = inst.n();
  const SdpInstance cur = Reformulate(inst, rr.ref);
  const Eigen::MatrixXd& q = rr.ref.q;
  std::vector<Rung> out;
  int offset = 0;
  for (int i = 0; i < count; ++i) {
    const Eigen::MatrixXd y = cur.a(i).matrix();
    const int ri = rr.r[i];
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);
    u.topLeftCorner(offset, offset).setIdentity();
    u.block(offset, offset, ri, ri) = y.block(offset, offset, ri, ri);
    const Eigen::MatrixXd v = y - u;
    Rung rung;
    rung.y = rr.ref.m.row(i).transpose();
    rung.u = SymMat(Eigen::MatrixXd(q * u * q.transpose()));
    rung.v = SymMat(Eigen::MatrixXd(q * v * q.transpose()));
    out.push_back(rung);
    offset += ri;
  }
  return out;
}

}  // namespace

RamanaCertificate LiftFromStrong(const SdpInstance& inst, const RrForm& rr,
                                 const Eigen::VectorXd& y) {
  if (rr.status != RrStatus::kFeasible) {
    throw Error(ErrorCode::kInfeasibleInput, "lift needs a feasible RR form");
  }
  if (rr.k > inst.n() - 1) {
    throw Error(ErrorCode::kShapeMismatch, "RR form has k = " + std::to_string(rr.k) +
                                               " > n - 1 certifying rows");
  }
  if (y.size() != inst.m()) throw Error(ErrorCode::kShapeMismatch, "y length");
  RamanaCertificate cert;
  cert.system = SystemKind::kDram;
  cert.y = y;
  cert.ladder = LadderFromRows(inst, rr, rr.k);
  cert.ladder = PaddedLadder(cert, inst.n(), inst.m());
  return cert;
}

RamanaCertificate AltCertificateFromRr(const SdpInstance& inst, const RrForm& rr) {
  if (rr.status != RrStatus::kInfeasible) {
    throw Error(ErrorCode::kUsage, "alternative certificate needs an infeasible RR form");
  }
  if (rr.k - 1 > inst.n() - 1) {
    throw Error(ErrorCode::kShapeMismatch, "too many certifying rows for the ladder");
  }
  RamanaCertificate cert;
  cert.system = SystemKind::kAltRam;
  cert.y = rr.ref.m.row(rr.k - 1).transpose();
  cert.ladder = LadderFromRows(inst, rr, rr.k - 1);
  cert.ladder = PaddedLadder(cert, inst.n(), inst.m());
  return cert;
}

StrongDualSpec StrongSpecFromRr(const SdpInstance& inst, const RrForm& rr) {
  return {rr.ref.q, inst.n() - rr.certified_order()};
}

}  // namespace ramana
