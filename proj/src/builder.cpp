#include "ramana/builder.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ramana/error.hpp"

namespace ramana {

const char* SystemName(SystemKind kind) {
  switch (kind) {
    case SystemKind::kDram: return "dram";
    case SystemKind::kAltRam: return "altram";
    case SystemKind::kPram: return "pram";
    case SystemKind::kDstrong: return "dstrong";
    case SystemKind::kPstrong: return "pstrong";
    case SystemKind::kRed: return "red";
  }
  return "unknown";
}

std::optional<SystemKind> ParseSystemName(const std::string& name) {
  for (SystemKind k : {SystemKind::kDram, SystemKind::kAltRam, SystemKind::kPram,
                       SystemKind::kDstrong, SystemKind::kPstrong, SystemKind::kRed}) {
    if (name == SystemName(k)) return k;
  }
  return std::nullopt;
}

const VarMapEntry* StandardFormSdp::find(const std::string& name) const {
  for (const auto& e : var_map) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

double Evaluate(const LinearForm& form, const SdpPoint& point) {
  double v = 0.0;
  for (const auto& [k, c] : form.free) v += c * point.free(k);
  for (const auto& [b, f] : form.blocks) v += f.cwiseProduct(point.blocks[b]).sum();
  return v;
}

bool PointCheck::ok(double tol) const {
  return max_residual <= tol && min_block_eigenvalue >= -tol;
}

PointCheck CheckPoint(const StandardFormSdp& sdp, const SdpPoint& point) {
  if (point.free.size() != sdp.num_free || point.blocks.size() != sdp.blocks.size()) {
    throw Error(ErrorCode::kShapeMismatch, "point does not match the system layout");
  }
  PointCheck out;
  for (size_t i = 0; i < sdp.constraints.size(); ++i) {
    const auto& c = sdp.constraints[i];
    const double res = std::abs(Evaluate(c.lhs, point) - c.rhs);
    if (res > out.max_residual) {
      out.max_residual = res;
      out.worst_constraint = static_cast<int>(i);
    }
  }
  // Eigenvalues are reported relative to 1 + ||X_b||_F.
  for (size_t b = 0; b < sdp.blocks.size(); ++b) {
    const SymMat xb(point.blocks[b]);
    const double lmin = Eig(xb).values(xb.order() - 1) / (1.0 + xb.frobenius_norm());
    if (out.worst_block < 0 || lmin < out.min_block_eigenvalue) {
      out.min_block_eigenvalue = lmin;
      out.worst_block = static_cast<int>(b);
    }
  }
  return out;
}

int DramBlockCount(int n) { return n == 1 ? 1 : 2 * n - 1; }
int DramFreeCount(int n, int m) { return n * m; }
int DramConstraintCount(int n) {
  const int t = n * (n + 1) / 2;
  const int l = n - 1;
  return l * t + l + l * t + t;
}

namespace {

std::string Idx(const std::string& base, int i) { return base + "_" + std::to_string(i); }

void AddEntry(LinearForm& f, int block, int order, int i, int j, double coef) {
  auto& mat = f.blocks.try_emplace(block, Eigen::MatrixXd::Zero(order, order)).first->second;
  if (i == j) {
    mat(i, i) += coef;
  } else {
    mat(i, j) += 0.5 * coef;
    mat(j, i) += 0.5 * coef;
  }
}

void AddBlock(LinearForm& f, int block, const Eigen::MatrixXd& coef) {
  auto& mat = f.blocks.try_emplace(block, Eigen::MatrixXd::Zero(coef.rows(), coef.cols()))
                  .first->second;
  mat += coef;
}

// <A, W + W^T> for W the top-right n x n block of an order-2n block.
void AddOffDiagonal(LinearForm& f, int block, const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  Eigen::MatrixXd coef = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  coef.topRightCorner(n, n) = a;
  coef.bottomLeftCorner(n, n) = a.transpose();
  AddBlock(f, block, coef);
}

// Entry (a, b) of W + W^T.
void AddOffDiagonalEntry(LinearForm& f, int block, int n, int a, int b, double coef) {
  AddEntry(f, block, 2 * n, a, n + b, coef);
  AddEntry(f, block, 2 * n, b, n + a, coef);
}

class Layout {
 public:
  explicit Layout(StandardFormSdp& sdp) : sdp_(sdp) {}

  int Block(const std::string& name, int order) {
    sdp_.blocks.push_back({name, order});
    return static_cast<int>(sdp_.blocks.size()) - 1;
  }
  int Free(const std::string& name, int count) {
    const int off = sdp_.num_free;
    for (int i = 0; i < count; ++i) sdp_.free_names.push_back(name + "[" + std::to_string(i) + "]");
    sdp_.num_free += count;
    return off;
  }
  void MapFree(const std::string& name, int offset, int size) {
    VarMapEntry e;
    e.name = name;
    e.kind = VarKind::kFreeVector;
    e.offset = offset;
    e.size = size;
    sdp_.var_map.push_back(e);
  }
  void MapBlock(const std::string& name, int block) {
    VarMapEntry e;
    e.name = name;
    e.kind = VarKind::kBlock;
    e.block = block;
    e.size = sdp_.blocks[block].order;
    sdp_.var_map.push_back(e);
  }
  void MapPart(const std::string& name, int block, int row, int col, int size) {
    VarMapEntry e;
    e.name = name;
    e.kind = VarKind::kBlockPart;
    e.block = block;
    e.row = row;
    e.col = col;
    e.size = size;
    sdp_.var_map.push_back(e);
  }
  void MapExpr(const std::string& name, const std::string& expr) {
    VarMapEntry e;
    e.name = name;
    e.kind = VarKind::kExpression;
    e.expr = expr;
    sdp_.var_map.push_back(e);
  }
  void Add(LinearForm lhs, double rhs, std::string label) {
    sdp_.constraints.push_back({std::move(lhs), rhs, std::move(label)});
  }

 private:
  StandardFormSdp& sdp_;
};

// Shared scaffolding of D_Ram, alt-Ram-P and P_Ram: the rungs, their tangent
// blocks, and the head membership X in S_+ + tan(U_{n-1}) written as
// P + W_f + W_f^T with T_f = [[U_{n-1}, W_f], [W_f^T, R_f]].
StandardFormSdp BuildRamanaSystem(const SdpInstance& inst, SystemKind kind) {
  const int n = inst.n();
  const int m = inst.m();
  const int rungs = n - 1;
  const bool dual = kind != SystemKind::kPram;
  StandardFormSdp sdp;
  sdp.system = kind;
  sdp.n = n;
  sdp.m = m;
  Layout lay(sdp);

  int y_off = -1;
  if (dual) {
    y_off = lay.Free("y", m);
    lay.MapFree("y", y_off, m);
  }

  std::vector<int> u_block(rungs + 1, -1);
  std::vector<int> t_block(rungs + 1, -1);
  std::vector<int> yi_off(rungs + 1, -1);
  for (int i = 1; i <= rungs; ++i) {
    if (dual) {
      yi_off[i] = lay.Free(Idx("y", i), m);
      lay.MapFree("y^" + std::to_string(i), yi_off[i], m);
    }
    u_block[i] = lay.Block(Idx("U", i), n);
    lay.MapBlock(Idx("U", i), u_block[i]);
    if (i >= 2) {
      t_block[i] = lay.Block(Idx("T", i), 2 * n);
      lay.MapExpr(Idx("V", i), Idx("W", i) + " + " + Idx("W", i) + "^T");
      lay.MapPart(Idx("W", i), t_block[i], 0, n, n);
      lay.MapPart(Idx("R", i), t_block[i], n, n, n);
    } else {
      lay.MapExpr(Idx("V", i), "0");
    }
  }
  const int p_block = lay.Block("P", n);
  lay.MapBlock("P", p_block);
  int tf_block = -1;
  if (rungs >= 1) {
    tf_block = lay.Block("T_f", 2 * n);
    lay.MapPart("W_f", tf_block, 0, n, n);
    lay.MapPart("R_f", tf_block, n, n, n);
  }
  const std::string tail = rungs >= 1 ? "P + W_f + W_f^T" : "P";
  switch (kind) {
    case SystemKind::kDram: lay.MapExpr("slack", "C - A^* y = " + tail); break;
    case SystemKind::kAltRam: lay.MapExpr("A^* y", tail); break;
    default: lay.MapExpr("X", tail); break;
  }

  // Rungs.
  for (int i = 1; i <= rungs; ++i) {
    const std::string tag = "rung " + std::to_string(i);
    if (dual) {
      for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
          LinearForm f;
          for (int j = 0; j < m; ++j) {
            if (inst.a(j)(a, b) != 0.0) f.free[yi_off[i] + j] += inst.a(j)(a, b);
          }
          AddEntry(f, u_block[i], n, a, b, -1.0);
          if (i >= 2) AddOffDiagonalEntry(f, t_block[i], n, a, b, -1.0);
          lay.Add(std::move(f), 0.0, tag + ": A^* y^i = U_i + V_i (" + std::to_string(a) + "," +
                                          std::to_string(b) + ")");
        }
      }
      LinearForm f;
      for (int j = 0; j < m; ++j) {
        if (inst.b()(j) != 0.0) f.free[yi_off[i] + j] += inst.b()(j);
      }
      lay.Add(std::move(f), 0.0, tag + ": <b, y^i> = 0");
    } else {
      auto rung_row = [&](const Eigen::MatrixXd& a, const std::string& label) {
        LinearForm f;
        AddBlock(f, u_block[i], a);
        if (i >= 2) AddOffDiagonal(f, t_block[i], a);
        lay.Add(std::move(f), 0.0, tag + ": " + label);
      };
      for (int j = 0; j < m; ++j) {
        rung_row(inst.a(j).matrix(), "<A_" + std::to_string(j + 1) + ", U_i + V_i> = 0");
      }
      rung_row(inst.c().matrix(), "<C, U_i + V_i> = 0");
    }
  }

  // Top-left block of each tangent block equals the previous U.
  auto link = [&](int t, int u, const std::string& name) {
    for (int a = 0; a < n; ++a) {
      for (int b = a; b < n; ++b) {
        LinearForm f;
        AddEntry(f, t, 2 * n, a, b, 1.0);
        AddEntry(f, u, n, a, b, -1.0);
        lay.Add(std::move(f), 0.0, name + " top-left = U (" + std::to_string(a) + "," +
                                       std::to_string(b) + ")");
      }
    }
  };
  for (int i = 2; i <= rungs; ++i) link(t_block[i], u_block[i - 1], Idx("T", i));
  if (tf_block >= 0) link(tf_block, u_block[rungs], "T_f");

  // Head.
  if (dual) {
    const double sign = kind == SystemKind::kDram ? 1.0 : -1.0;
    for (int a = 0; a < n; ++a) {
      for (int b = a; b < n; ++b) {
        LinearForm f;
        for (int j = 0; j < m; ++j) {
          if (inst.a(j)(a, b) != 0.0) f.free[y_off + j] += inst.a(j)(a, b);
        }
        AddEntry(f, p_block, n, a, b, sign);
        if (tf_block >= 0) AddOffDiagonalEntry(f, tf_block, n, a, b, sign);
        const double rhs = kind == SystemKind::kDram ? inst.c()(a, b) : 0.0;
        lay.Add(std::move(f), rhs, "head (" + std::to_string(a) + "," + std::to_string(b) + ")");
      }
    }
    if (kind == SystemKind::kDram) {
      sdp.sense = Sense::kMaximize;
      for (int j = 0; j < m; ++j) {
        if (inst.b()(j) != 0.0) sdp.objective.free[y_off + j] = inst.b()(j);
      }
    } else {
      LinearForm f;
      for (int j = 0; j < m; ++j) {
        if (inst.b()(j) != 0.0) f.free[y_off + j] = inst.b()(j);
      }
      lay.Add(std::move(f), -1.0, "<b, y> = -1");
      sdp.sense = Sense::kFeasibility;
    }
  } else {
    for (int j = 0; j < m; ++j) {
      LinearForm f;
      AddBlock(f, p_block, inst.a(j).matrix());
      if (tf_block >= 0) AddOffDiagonal(f, tf_block, inst.a(j).matrix());
      lay.Add(std::move(f), inst.b()(j), "<A_" + std::to_string(j + 1) + ", X> = b");
    }
    sdp.sense = Sense::kMinimize;
    AddBlock(sdp.objective, p_block, inst.c().matrix());
    if (tf_block >= 0) AddOffDiagonal(sdp.objective, tf_block, inst.c().matrix());
  }
  return sdp;
}

void CheckSpec(const SdpInstance& inst, const StrongDualSpec& spec) {
  const int n = inst.n();
  if (spec.q.rows() != n || spec.q.cols() != n || spec.r < 0 || spec.r > n) {
    throw Error(ErrorCode::kDimensionMismatch, "strong dual spec does not match instance");
  }
  if (OrthonormalityError(spec.q) > kDefaultOrthTol) {
    throw Error(ErrorCode::kNonOrthonormal, "strong dual rotation is not orthonormal");
  }
}

// Entry (a, b), a <= b, of V lies in the psd trailing block iff both indices
// do; the rest are free scalars laid out row-major.
struct StrongLayout {
  int n, r;
  std::vector<std::vector<int>> free_index;  // -1 inside the trailing block

  StrongLayout(int n_, int r_) : n(n_), r(r_), free_index(n_, std::vector<int>(n_, -1)) {}
  bool trailing(int a, int b) const { return a >= n - r && b >= n - r; }
};

StandardFormSdp BuildStrong(const SdpInstance& inst, const StrongDualSpec& spec, bool dual) {
  CheckSpec(inst, spec);
  const int n = inst.n();
  const int m = inst.m();
  const int r = spec.r;
  StandardFormSdp sdp;
  sdp.system = dual ? SystemKind::kDstrong : SystemKind::kPstrong;
  sdp.n = n;
  sdp.m = m;
  sdp.strong = spec;
  Layout lay(sdp);

  int y_off = -1;
  if (dual) {
    y_off = lay.Free("y", m);
    lay.MapFree("y", y_off, m);
  }
  StrongLayout sl(n, r);
  const int v_off = sdp.num_free;
  int count = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      if (!sl.trailing(a, b)) sl.free_index[a][b] = v_off + count++;
    }
  }
  lay.Free("V_free", count);
  lay.MapFree("V_free", v_off, count);
  int v22 = -1;
  if (r > 0) {
    v22 = lay.Block("V22", r);
    lay.MapBlock("V22", v22);
  }
  lay.MapExpr(dual ? "slack" : "X", dual ? "C - A^* y = Q V Q^T" : "X = Q V Q^T");

  const Eigen::MatrixXd& q = spec.q;
  std::vector<Eigen::MatrixXd> ar(m);
  for (int j = 0; j < m; ++j) ar[j] = q.transpose() * inst.a(j).matrix() * q;
  const Eigen::MatrixXd cr = q.transpose() * inst.c().matrix() * q;

  // Adds coef * V(a, b) to f.
  auto v_entry = [&](LinearForm& f, int a, int b, double coef) {
    if (sl.trailing(a, b)) {
      AddEntry(f, v22, r, a - (n - r), b - (n - r), coef);
    } else {
      f.free[sl.free_index[std::min(a, b)][std::max(a, b)]] += coef;
    }
  };

  if (dual) {
    for (int a = 0; a < n; ++a) {
      for (int b = a; b < n; ++b) {
        LinearForm f;
        for (int j = 0; j < m; ++j) {
          if (ar[j](a, b) != 0.0) f.free[y_off + j] += ar[j](a, b);
        }
        v_entry(f, a, b, 1.0);
        lay.Add(std::move(f), cr(a, b),
                "Q^T (C - A^* y) Q = V (" + std::to_string(a) + "," + std::to_string(b) + ")");
      }
    }
    sdp.sense = Sense::kMaximize;
    for (int j = 0; j < m; ++j) {
      if (inst.b()(j) != 0.0) sdp.objective.free[y_off + j] = inst.b()(j);
    }
  } else {
    auto functional = [&](LinearForm& f, const Eigen::MatrixXd& coef) {
      for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
          const double w = a == b ? coef(a, a) : 2.0 * coef(a, b);
          if (w != 0.0) v_entry(f, a, b, w);
        }
      }
    };
    for (int j = 0; j < m; ++j) {
      LinearForm f;
      functional(f, ar[j]);
      lay.Add(std::move(f), inst.b()(j), "<A_" + std::to_string(j + 1) + ", X> = b");
    }
    sdp.sense = Sense::kMinimize;
    functional(sdp.objective, cr);
  }
  return sdp;
}

SymMat StrongV(const StandardFormSdp& sdp, const SdpPoint& point) {
  const int n = sdp.n;
  const int r = sdp.strong->r;
  const VarMapEntry* vf = sdp.find("V_free");
  SymMat v(n);
  int idx = vf->offset;
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      if (a >= n - r && b >= n - r) continue;
      v.set(a, b, point.free(idx++));
    }
  }
  if (r > 0) {
    const Eigen::MatrixXd& blk = point.blocks[sdp.find("V22")->block];
    for (int a = 0; a < r; ++a) {
      for (int b = a; b < r; ++b) v.set(n - r + a, n - r + b, blk(a, b));
    }
  }
  return v;
}

}  // namespace

StandardFormSdp BuildDram(const SdpInstance& inst) {
  return BuildRamanaSystem(inst, SystemKind::kDram);
}

StandardFormSdp BuildAltRam(const SdpInstance& inst) {
  return BuildRamanaSystem(inst, SystemKind::kAltRam);
}

StandardFormSdp BuildPram(const SdpInstance& inst) {
  if (inst.m() > 0) {
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(ConstraintMatrix(inst));
    const auto& sv = svd.singularValues();
    if (inst.m() > SvecDim(inst.n()) || sv(sv.size() - 1) < 1e-8 * sv(0)) {
      throw Error(ErrorCode::kDependentConstraints, "the A_i are linearly dependent");
    }
  }
  return BuildRamanaSystem(inst, SystemKind::kPram);
}

StandardFormSdp BuildDstrong(const SdpInstance& inst, const StrongDualSpec& spec) {
  return BuildStrong(inst, spec, true);
}

StandardFormSdp BuildPstrong(const SdpInstance& inst, const StrongDualSpec& spec) {
  return BuildStrong(inst, spec, false);
}

RedSystem BuildRed(const SdpInstance& inst) {
  RedSystem out{StandardFormSdp{}, ComplementBasis(inst)};
  const int n = inst.n();
  StandardFormSdp& sdp = out.sdp;
  sdp.system = SystemKind::kRed;
  sdp.n = n;
  sdp.m = inst.m();
  Layout lay(sdp);
  const int z = lay.Block("Z", n);
  lay.MapBlock("Z", z);
  lay.MapExpr("y", "Z = C - A^* y");
  for (int j = 0; j < out.complement.ell; ++j) {
    LinearForm f;
    AddBlock(f, z, out.complement.d[j].matrix());
    lay.Add(std::move(f), out.complement.rhs(j), "<D_" + std::to_string(j + 1) + ", Z> = d");
  }
  sdp.sense = Sense::kMinimize;
  AddBlock(sdp.objective, z, out.complement.x0.matrix());
  return out;
}

StandardFormSdp BuildSystem(SystemKind kind, const SdpInstance& inst,
                            const std::optional<StrongDualSpec>& spec) {
  switch (kind) {
    case SystemKind::kDram: return BuildDram(inst);
    case SystemKind::kAltRam: return BuildAltRam(inst);
    case SystemKind::kPram: return BuildPram(inst);
    case SystemKind::kRed: return BuildRed(inst).sdp;
    case SystemKind::kDstrong:
    case SystemKind::kPstrong:
      if (!spec) {
        throw Error(ErrorCode::kUsage, std::string(SystemName(kind)) + " needs (Q, r)");
      }
      return kind == SystemKind::kDstrong ? BuildDstrong(inst, *spec) : BuildPstrong(inst, *spec);
  }
  throw Error(ErrorCode::kUsage, "unknown system");
}

SdpPoint EmbedCertificate(const StandardFormSdp& sdp, const SdpInstance& inst,
                          const RamanaCertificate& cert, double eps) {
  const int n = inst.n();
  const int m = inst.m();
  if (sdp.n != n || sdp.m != m) throw Error(ErrorCode::kShapeMismatch, "system/instance mismatch");
  SdpPoint pt;
  pt.free = Eigen::VectorXd::Zero(sdp.num_free);
  pt.blocks.resize(sdp.blocks.size());
  for (size_t b = 0; b < sdp.blocks.size(); ++b) {
    pt.blocks[b] = Eigen::MatrixXd::Zero(sdp.blocks[b].order, sdp.blocks[b].order);
  }
  auto need_y = [&]() -> const Eigen::VectorXd& {
    if (!cert.y || cert.y->size() != m) throw Error(ErrorCode::kShapeMismatch, "certificate y");
    return *cert.y;
  };
  auto need_x = [&]() -> const SymMat& {
    if (!cert.x || cert.x->order() != n) throw Error(ErrorCode::kShapeMismatch, "certificate X");
    return *cert.x;
  };
  auto witness = [&](const SymMat& u, const SymMat& v, const std::string& what) {
    const TangentMembership tm = TanContains(u, v, eps);
    if (!tm.member()) throw Error(ErrorCode::kInfeasibleInput, what + " not in tangent space");
    return TangentBlock(u, *tm.witness);
  };

  switch (sdp.system) {
    case SystemKind::kDram:
    case SystemKind::kAltRam:
    case SystemKind::kPram: {
      const std::vector<Rung> ladder = PaddedLadder(cert, n, m);
      const bool dual = sdp.system != SystemKind::kPram;
      if (dual) pt.free.segment(sdp.find("y")->offset, m) = need_y();
      for (int i = 1; i <= n - 1; ++i) {
        const Rung& rung = ladder[i - 1];
        if (dual) {
          pt.free.segment(sdp.find("y^" + std::to_string(i))->offset, m) =
              rung.y ? *rung.y : Eigen::VectorXd::Zero(m);
        }
        pt.blocks[sdp.find(Idx("U", i))->block] = rung.u.matrix();
        if (i >= 2) {
          pt.blocks[sdp.find(Idx("W", i))->block] =
              witness(ladder[i - 2].u, rung.v, Idx("V", i));
        }
      }
      SymMat head(n);
      if (sdp.system == SystemKind::kDram) head = DualSlack(inst, need_y());
      if (sdp.system == SystemKind::kAltRam) head = ApplyAt(inst, need_y());
      if (sdp.system == SystemKind::kPram) head = need_x();
      const int p = sdp.find("P")->block;
      if (n == 1) {
        pt.blocks[p] = head.matrix();
      } else {
        const SymMat& last = ladder[n - 2].u;
        const PsdPlusTangentSplit split = SplitPsdPlusTangent(last, head, eps);
        if (!split.member) {
          throw Error(ErrorCode::kInfeasibleInput, "head not in S_+ + tan(U_{n-1})");
        }
        pt.blocks[p] = split.psd_part->matrix();
        pt.blocks[sdp.find("W_f")->block] = witness(last, *split.tangent_part, "head tangent part");
      }
      break;
    }
    case SystemKind::kDstrong:
    case SystemKind::kPstrong: {
      const Eigen::MatrixXd& q = sdp.strong->q;
      const int r = sdp.strong->r;
      const SymMat base = sdp.system == SystemKind::kDstrong ? DualSlack(inst, need_y()) : need_x();
      const Eigen::MatrixXd v = q.transpose() * base.matrix() * q;
      if (sdp.system == SystemKind::kDstrong) pt.free.segment(sdp.find("y")->offset, m) = need_y();
      int idx = sdp.find("V_free")->offset;
      for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
          if (a >= n - r && b >= n - r) continue;
          pt.free(idx++) = v(a, b);
        }
      }
      if (r > 0) pt.blocks[sdp.find("V22")->block] = v.bottomRightCorner(r, r);
      break;
    }
    case SystemKind::kRed:
      pt.blocks[sdp.find("Z")->block] = DualSlack(inst, need_y()).matrix();
      break;
  }
  return pt;
}

RamanaCertificate ExtractCertificate(const StandardFormSdp& sdp, const SdpPoint& point) {
  const int n = sdp.n;
  const int m = sdp.m;
  RamanaCertificate cert;
  cert.system = sdp.system;
  auto off_diag = [&](int block) {
    const Eigen::MatrixXd w = point.blocks[block].topRightCorner(n, n);
    return SymMat(Eigen::MatrixXd(w + w.transpose()));
  };
  switch (sdp.system) {
    case SystemKind::kDram:
    case SystemKind::kAltRam:
    case SystemKind::kPram: {
      const bool dual = sdp.system != SystemKind::kPram;
      if (dual) cert.y = point.free.segment(sdp.find("y")->offset, m);
      for (int i = 1; i <= n - 1; ++i) {
        Rung rung;
        if (dual) rung.y = point.free.segment(sdp.find("y^" + std::to_string(i))->offset, m);
        rung.u = SymMat(point.blocks[sdp.find(Idx("U", i))->block]);
        rung.v = i >= 2 ? off_diag(sdp.find(Idx("W", i))->block) : SymMat(n);
        cert.ladder.push_back(rung);
      }
      if (!dual) {
        SymMat x(point.blocks[sdp.find("P")->block]);
        if (n >= 2) x += off_diag(sdp.find("W_f")->block);
        cert.x = x;
      }
      break;
    }
    case SystemKind::kDstrong:
    case SystemKind::kPstrong: {
      cert.strong = sdp.strong;
      if (sdp.system == SystemKind::kDstrong) {
        cert.y = point.free.segment(sdp.find("y")->offset, m);
      } else {
        const Eigen::MatrixXd& q = sdp.strong->q;
        cert.x = SymMat(Eigen::MatrixXd(q * StrongV(sdp, point).matrix() * q.transpose()));
      }
      break;
    }
    case SystemKind::kRed:
      throw Error(ErrorCode::kUsage, "Re-D points carry a slack, not a certificate");
  }
  return cert;
}

}  // namespace ramana
