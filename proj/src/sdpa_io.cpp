#include "ramana/sdpa_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>
#include <vector>

#include "ramana/error.hpp"

namespace ramana {

std::string FormatDouble(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path);
}

namespace {

// One SDPA matrix, keyed by (block, i, j) so iteration gives the fixed
// row-major upper-triangle order.
using SparseMat = std::map<std::tuple<int, int, int>, double>;

void AddDense(SparseMat& out, int block, const Eigen::MatrixXd& a, double scale = 1.0) {
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = i; j < a.cols(); ++j) {
      const double v = scale * a(i, j);
      if (v != 0.0) out[{block, i + 1, j + 1}] += v;
    }
  }
}

std::string Emit(const std::string& comment, const std::vector<int>& block_sizes,
                 const Eigen::VectorXd& c, const std::vector<SparseMat>& mats) {
  std::string s;
  s += "* " + comment + "\n";
  s += std::to_string(c.size()) + "\n";
  s += std::to_string(block_sizes.size()) + "\n";
  for (size_t k = 0; k < block_sizes.size(); ++k) {
    if (k) s += ' ';
    s += std::to_string(block_sizes[k]);
  }
  s += "\n";
  for (int k = 0; k < c.size(); ++k) {
    if (k) s += ' ';
    s += FormatDouble(c(k));
  }
  s += "\n";
  for (size_t mat = 0; mat < mats.size(); ++mat) {
    for (const auto& [key, v] : mats[mat]) {
      if (v == 0.0) continue;
      const auto& [b, i, j] = key;
      s += std::to_string(mat) + ' ' + std::to_string(b) + ' ' + std::to_string(i) + ' ' +
           std::to_string(j) + ' ' + FormatDouble(v) + "\n";
    }
  }
  return s;
}

SparseMat FormToSparse(const LinearForm& form, int num_blocks, int num_free, double scale) {
  SparseMat out;
  for (const auto& [b, coef] : form.blocks) AddDense(out, b + 1, coef, scale);
  if (num_free > 0) {
    for (const auto& [k, v] : form.free) {
      if (v == 0.0) continue;
      out[{num_blocks + 1, k + 1, k + 1}] += scale * v;
      out[{num_blocks + 2, k + 1, k + 1}] -= scale * v;
    }
  }
  return out;
}

const char* SenseName(Sense s) {
  switch (s) {
    case Sense::kMinimize: return "min";
    case Sense::kMaximize: return "max";
    case Sense::kFeasibility: return "feasibility";
  }
  return "?";
}

}  // namespace

std::string WriteSdpaString(const SdpInstance& inst) {
  std::vector<SparseMat> mats(inst.m() + 1);
  AddDense(mats[0], 1, inst.c().matrix());
  for (int i = 0; i < inst.m(); ++i) AddDense(mats[i + 1], 1, inst.a(i).matrix());
  return Emit("instance n=" + std::to_string(inst.n()) + " m=" + std::to_string(inst.m()),
              {inst.n()}, inst.b(), mats);
}

std::string WriteSdpaString(const StandardFormSdp& sdp) {
  const int nb = static_cast<int>(sdp.blocks.size());
  std::vector<int> sizes;
  for (const PsdBlock& b : sdp.blocks) sizes.push_back(b.order);
  if (sdp.num_free > 0) {
    sizes.push_back(-sdp.num_free);
    sizes.push_back(-sdp.num_free);
  }
  const double obj_scale = sdp.sense == Sense::kMinimize ? -1.0 : 1.0;
  std::vector<SparseMat> mats;
  if (sdp.sense == Sense::kFeasibility) {
    mats.emplace_back();
  } else {
    mats.push_back(FormToSparse(sdp.objective, nb, sdp.num_free, obj_scale));
  }
  Eigen::VectorXd c(static_cast<int>(sdp.constraints.size()));
  for (size_t k = 0; k < sdp.constraints.size(); ++k) {
    mats.push_back(FormToSparse(sdp.constraints[k].lhs, nb, sdp.num_free, 1.0));
    c(static_cast<int>(k)) = sdp.constraints[k].rhs;
  }
  return Emit(std::string(SystemName(sdp.system)) + " n=" + std::to_string(sdp.n) +
                  " m=" + std::to_string(sdp.m) + " sense=" + SenseName(sdp.sense),
              sizes, c, mats);
}

void WriteSdpa(const SdpInstance& inst, const std::string& path) {
  WriteTextFile(path, WriteSdpaString(inst));
}

void WriteSdpa(const StandardFormSdp& sdp, const std::string& path) {
  WriteTextFile(path, WriteSdpaString(sdp));
}

namespace {

struct Token {
  std::string text;
  int line;
};

std::vector<Token> Tokenize(const std::string& text) {
  std::vector<Token> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool header_done = false;
  int counts_seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!header_done && !line.empty() && (line[0] == '*' || line[0] == '"')) continue;
    // The constraint and block count lines may carry trailing text ("2 = mDIM").
    if (counts_seen < 2) {
      std::istringstream probe(line);
      std::string first;
      if (probe >> first) {
        ++counts_seen;
        header_done = true;
        out.push_back({first, lineno});
        continue;
      }
    }
    for (char& ch : line) {
      if (ch == ',' || ch == '{' || ch == '}' || ch == '(' || ch == ')' || ch == '\r') ch = ' ';
    }
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      header_done = true;
      out.push_back({tok, lineno});
    }
  }
  return out;
}

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

  bool done() const { return pos_ >= toks_.size(); }
  int line() const { return done() ? (toks_.empty() ? 0 : toks_.back().line) : toks_[pos_].line; }

  long Int(const char* what) {
    const Token& t = Next(what);
    long v = 0;
    const auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (res.ec != std::errc() || res.ptr != t.text.data() + t.text.size()) {
      // Some writers emit integers as "3.0" or "+3".
      const double d = Parse(t);
      if (d != std::floor(d)) Fail(t, std::string("expected integer ") + what);
      return static_cast<long>(d);
    }
    return v;
  }

  double Real(const char* what) { return Parse(Next(what)); }

  [[noreturn]] void Fail(const Token& t, const std::string& msg) const {
    throw Error(ErrorCode::kParseError, "line " + std::to_string(t.line) + ": " + msg +
                                            " (got '" + t.text + "')");
  }

  const Token& Peek() const { return toks_[pos_]; }

 private:
  const Token& Next(const char* what) {
    if (done()) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line()) +
                                              ": unexpected end of file, expected " + what);
    }
    return toks_[pos_++];
  }

  double Parse(const Token& t) const {
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    if (first != last && *first == '+') ++first;
    double v = 0.0;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) Fail(t, "expected a number");
    return v;
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace

SdpInstance ReadSdpaString(const std::string& text) {
  TokenStream ts(Tokenize(text));
  const long m = ts.Int("constraint count");
  if (m < 0) throw Error(ErrorCode::kParseError, "negative constraint count");
  const long nblocks = ts.Int("block count");
  if (nblocks < 1) throw Error(ErrorCode::kParseError, "block count must be positive");
  std::vector<long> sizes;
  for (long k = 0; k < nblocks; ++k) {
    const long s = ts.Int("block size");
    if (s == 0) throw Error(ErrorCode::kParseError, "zero block size");
    sizes.push_back(s);
  }
  int dense = 0;
  for (long s : sizes) dense += s > 0 ? 1 : 0;
  if (dense > 1) {
    throw Error(ErrorCode::kUnsupportedBlockStructure,
                std::to_string(dense) + " dense blocks; at most one is supported");
  }

  // Dense block first, then the diagonal blocks in file order.
  std::vector<int> offset(nblocks, 0);
  int n = 0;
  for (long k = 0; k < nblocks; ++k) {
    if (sizes[k] > 0) {
      offset[k] = n;
      n += static_cast<int>(sizes[k]);
    }
  }
  for (long k = 0; k < nblocks; ++k) {
    if (sizes[k] < 0) {
      offset[k] = n;
      n += static_cast<int>(-sizes[k]);
    }
  }

  Eigen::VectorXd b(m);
  for (long i = 0; i < m; ++i) b(i) = ts.Real("right-hand side");

  std::vector<Eigen::MatrixXd> mats(m + 1, Eigen::MatrixXd::Zero(n, n));
  while (!ts.done()) {
    const Token first = ts.Peek();
    const long matno = ts.Int("matrix number");
    const long blk = ts.Int("block number");
    const long i = ts.Int("row");
    const long j = ts.Int("column");
    const double v = ts.Real("value");
    if (matno < 0 || matno > m) ts.Fail(first, "matrix number out of range");
    if (blk < 1 || blk > nblocks) ts.Fail(first, "block number out of range");
    const long size = std::abs(sizes[blk - 1]);
    if (i < 1 || j < 1 || i > size || j > size) ts.Fail(first, "index out of range");
    if (j < i) ts.Fail(first, "entry below the diagonal (j < i)");
    if (sizes[blk - 1] < 0 && i != j) ts.Fail(first, "off-diagonal entry in a diagonal block");
    const int r = offset[blk - 1] + static_cast<int>(i) - 1;
    const int c = offset[blk - 1] + static_cast<int>(j) - 1;
    mats[matno](r, c) = v;
    mats[matno](c, r) = v;
  }

  std::vector<SymMat> a;
  for (long i = 1; i <= m; ++i) a.emplace_back(mats[i]);
  return SdpInstance(std::move(a), std::move(b), SymMat(mats[0]));
}

SdpInstance ReadSdpa(const std::string& path) { return ReadSdpaString(ReadTextFile(path)); }

std::string VarMapString(const StandardFormSdp& sdp) {
  std::ostringstream os;
  const int nb = static_cast<int>(sdp.blocks.size());
  os << "ramana-varmap 1\n";
  os << "system " << SystemName(sdp.system) << "\n";
  os << "n " << sdp.n << "\nm " << sdp.m << "\n";
  os << "sense " << SenseName(sdp.sense);
  if (sdp.sense == Sense::kMinimize) os << " negated";
  os << "\n";
  if (sdp.strong) {
    os << "strong_r " << sdp.strong->r << "\n";
    os << "strong_q";
    for (int i = 0; i < sdp.strong->q.rows(); ++i) {
      for (int j = 0; j < sdp.strong->q.cols(); ++j) os << ' ' << FormatDouble(sdp.strong->q(i, j));
    }
    os << "\n";
  }
  // SDPA block numbers are 1-based.
  for (int k = 0; k < nb; ++k) {
    os << "block " << k + 1 << ' ' << sdp.blocks[k].name << ' ' << sdp.blocks[k].order << "\n";
  }
  if (sdp.num_free > 0) {
    os << "block " << nb + 1 << " free+ " << -sdp.num_free << "\n";
    os << "block " << nb + 2 << " free- " << -sdp.num_free << "\n";
    os << "free_split x[k] = block" << nb + 1 << "[k,k] - block" << nb + 2 << "[k,k]\n";
  }
  for (const VarMapEntry& e : sdp.var_map) {
    os << "var " << e.name << ' ';
    switch (e.kind) {
      case VarKind::kFreeVector: os << "free " << e.offset << ' ' << e.size; break;
      case VarKind::kBlock: os << "block " << e.block + 1; break;
      case VarKind::kBlockPart:
        os << "part " << e.block + 1 << ' ' << e.row << ' ' << e.col << ' ' << e.size;
        break;
      case VarKind::kExpression: os << "expr " << e.expr; break;
    }
    os << "\n";
  }
  os << "constraints " << sdp.constraints.size() << "\n";
  for (size_t k = 0; k < sdp.constraints.size(); ++k) {
    os << "row " << k + 1 << ' ' << sdp.constraints[k].label << "\n";
  }
  return os.str();
}

void WriteVarMap(const StandardFormSdp& sdp, const std::string& path) {
  WriteTextFile(path, VarMapString(sdp));
}

std::uint64_t InstanceHash(const SdpInstance& inst) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : WriteSdpaString(inst)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace ramana
