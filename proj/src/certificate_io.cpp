#include "ramana/certificate_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "ramana/error.hpp"
#include "ramana/sdpa_io.hpp"

namespace ramana {

namespace {

void PutVector(std::string& s, const std::string& name, const Eigen::VectorXd& v) {
  s += "vector " + name + " " + std::to_string(v.size()) + "\n";
  for (int i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += FormatDouble(v(i));
  }
  s += "\n";
}

void PutMatrix(std::string& s, const std::string& name, const Eigen::MatrixXd& a) {
  s += "matrix " + name + " " + std::to_string(a.rows()) + "\n";
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (j) s += ' ';
      s += FormatDouble(a(i, j));
    }
    s += "\n";
  }
}

std::string Hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

std::string WriteCertificateString(const SdpInstance& inst, const RamanaCertificate& cert) {
  std::string s = "ramana-certificate 1\n";
  s += std::string("system ") + SystemName(cert.system) + "\n";
  s += "instance " + Hex(InstanceHash(inst)) + "\n";
  s += "n " + std::to_string(inst.n()) + "\n";
  s += "m " + std::to_string(inst.m()) + "\n";
  if (cert.claimed_value) s += "claimed_value " + FormatDouble(*cert.claimed_value) + "\n";
  if (cert.y) PutVector(s, "y", *cert.y);
  for (size_t i = 0; i < cert.ladder.size(); ++i) {
    const Rung& r = cert.ladder[i];
    s += "rung " + std::to_string(i + 1) + "\n";
    if (r.y) PutVector(s, "y", *r.y);
    PutMatrix(s, "U", r.u.matrix());
    PutMatrix(s, "V", r.v.matrix());
  }
  if (cert.x) PutMatrix(s, "X", cert.x->matrix());
  if (cert.strong) {
    s += "strong " + std::to_string(cert.strong->r) + "\n";
    PutMatrix(s, "Q", cert.strong->q);
  }
  s += "end\n";
  return s;
}

void WriteCertificate(const SdpInstance& inst, const RamanaCertificate& cert,
                      const std::string& path) {
  WriteTextFile(path, WriteCertificateString(inst, cert));
}

namespace {

class LineReader {
 public:
  explicit LineReader(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
      ++no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#') continue;
      lines_.push_back({line.substr(first), no});
    }
  }

  bool done() const { return pos_ >= lines_.size(); }
  int line() const { return done() ? (lines_.empty() ? 0 : lines_.back().second) : lines_[pos_].second; }

  std::vector<std::string> Words() {
    if (done()) Fail("unexpected end of file");
    std::istringstream ls(lines_[pos_++].first);
    std::vector<std::string> w;
    std::string t;
    while (ls >> t) w.push_back(t);
    return w;
  }

  std::vector<double> Numbers(int count) {
    const int at = line();
    const std::vector<std::string> w = Words();
    if (static_cast<int>(w.size()) != count) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(at) + ": expected " +
                                              std::to_string(count) + " numbers, got " +
                                              std::to_string(w.size()));
    }
    std::vector<double> out;
    for (const std::string& t : w) {
      const char* first = t.data();
      const char* last = first + t.size();
      if (first != last && *first == '+') ++first;
      double v = 0.0;
      const auto res = std::from_chars(first, last, v);
      if (res.ec != std::errc() || res.ptr != last) {
        throw Error(ErrorCode::kParseError,
                    "line " + std::to_string(at) + ": bad number '" + t + "'");
      }
      out.push_back(v);
    }
    return out;
  }

  [[noreturn]] void Fail(const std::string& msg, int at = -1) const {
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(at < 0 ? line() : at) + ": " + msg);
  }

 private:
  std::vector<std::pair<std::string, int>> lines_;
  size_t pos_ = 0;
};

int ToInt(const LineReader& rd, const std::string& s, int at) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) rd.Fail("bad integer '" + s + "'", at);
  return v;
}

double ToReal(const LineReader& rd, const std::string& s, int at) {
  const char* first = s.data();
  const char* last = first + s.size();
  if (first != last && *first == '+') ++first;
  double v = 0.0;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) rd.Fail("bad number '" + s + "'", at);
  return v;
}

Eigen::VectorXd ReadVector(LineReader& rd, int len) {
  const std::vector<double> v = rd.Numbers(len);
  return Eigen::Map<const Eigen::VectorXd>(v.data(), len);
}

Eigen::MatrixXd ReadMatrix(LineReader& rd, int n) {
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    const std::vector<double> row = rd.Numbers(n);
    for (int j = 0; j < n; ++j) a(i, j) = row[j];
  }
  return a;
}

SymMat ToSym(const LineReader& rd, const Eigen::MatrixXd& a, const std::string& name, int at) {
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * (1.0 + a.norm())) rd.Fail("matrix " + name + " is not symmetric", at);
  return SymMat(a);
}

}  // namespace

CertificateFile ReadCertificateString(const std::string& text) {
  LineReader rd(text);
  CertificateFile file;
  RamanaCertificate& cert = file.cert;

  std::vector<std::string> w = rd.Words();
  if (w.size() != 2 || w[0] != "ramana-certificate" || w[1] != "1") {
    rd.Fail("missing 'ramana-certificate 1' header", 1);
  }
  bool have_system = false, have_hash = false, have_n = false, have_m = false, ended = false;
  Rung* rung = nullptr;
  while (!rd.done()) {
    const int at = rd.line();
    w = rd.Words();
    const std::string& key = w[0];
    auto need = [&](size_t k) {
      if (w.size() != k) rd.Fail("'" + key + "' takes " + std::to_string(k - 1) + " fields", at);
    };
    auto dims = [&]() {
      if (!have_n || !have_m) rd.Fail("dimensions must precede records", at);
    };
    if (key == "system") {
      need(2);
      const auto sys = ParseSystemName(w[1]);
      if (!sys || *sys == SystemKind::kRed) rd.Fail("unknown system '" + w[1] + "'", at);
      cert.system = *sys;
      file.header.system = *sys;
      have_system = true;
    } else if (key == "instance") {
      need(2);
      std::uint64_t h = 0;
      const auto res = std::from_chars(w[1].data(), w[1].data() + w[1].size(), h, 16);
      if (res.ec != std::errc() || res.ptr != w[1].data() + w[1].size()) {
        rd.Fail("bad instance hash", at);
      }
      file.header.instance_hash = h;
      have_hash = true;
    } else if (key == "n" || key == "m") {
      need(2);
      const int v = ToInt(rd, w[1], at);
      if (v < (key == "n" ? 1 : 0)) rd.Fail("bad dimension", at);
      (key == "n" ? file.header.n : file.header.m) = v;
      (key == "n" ? have_n : have_m) = true;
    } else if (key == "claimed_value") {
      need(2);
      cert.claimed_value = ToReal(rd, w[1], at);
    } else if (key == "rung") {
      need(2);
      dims();
      const int i = ToInt(rd, w[1], at);
      if (i != static_cast<int>(cert.ladder.size()) + 1) rd.Fail("rungs must be numbered 1, 2, ...", at);
      const int n = file.header.n;
      cert.ladder.push_back(Rung{std::nullopt, SymMat(n), SymMat(n)});
      rung = &cert.ladder.back();
    } else if (key == "vector") {
      need(3);
      dims();
      if (w[1] != "y") rd.Fail("unknown vector '" + w[1] + "'", at);
      const int len = ToInt(rd, w[2], at);
      if (len != file.header.m) {
        throw Error(ErrorCode::kShapeMismatch, "line " + std::to_string(at) + ": y has length " +
                                                   std::to_string(len) + ", header m is " +
                                                   std::to_string(file.header.m));
      }
      Eigen::VectorXd v = ReadVector(rd, len);
      (rung ? rung->y : cert.y) = std::move(v);
    } else if (key == "matrix") {
      need(3);
      dims();
      const std::string& name = w[1];
      const int n = ToInt(rd, w[2], at);
      if (n != file.header.n) {
        throw Error(ErrorCode::kShapeMismatch, "line " + std::to_string(at) + ": " + name +
                                                   " has order " + std::to_string(n) +
                                                   ", header n is " + std::to_string(file.header.n));
      }
      const Eigen::MatrixXd a = ReadMatrix(rd, n);
      if (name == "Q") {
        if (!cert.strong) rd.Fail("matrix Q before 'strong'", at);
        cert.strong->q = a;
      } else if (name == "X") {
        cert.x = ToSym(rd, a, name, at);
        rung = nullptr;
      } else if ((name == "U" || name == "V") && rung) {
        (name == "U" ? rung->u : rung->v) = ToSym(rd, a, name, at);
      } else {
        rd.Fail("unexpected matrix '" + name + "'", at);
      }
    } else if (key == "strong") {
      need(2);
      dims();
      StrongDualSpec spec;
      spec.r = ToInt(rd, w[1], at);
      spec.q = Eigen::MatrixXd::Identity(file.header.n, file.header.n);
      cert.strong = spec;
      rung = nullptr;
    } else if (key == "end") {
      need(1);
      ended = true;
      break;
    } else {
      rd.Fail("unknown record '" + key + "'", at);
    }
  }
  if (!ended) rd.Fail("missing 'end'");
  if (!have_system || !have_hash || !have_n || !have_m) rd.Fail("incomplete header");
  return file;
}

CertificateFile ReadCertificate(const std::string& path) {
  return ReadCertificateString(ReadTextFile(path));
}

void CheckCertificateTarget(const CertificateFile& file, const SdpInstance& inst) {
  if (file.header.n != inst.n() || file.header.m != inst.m()) {
    throw Error(ErrorCode::kShapeMismatch,
                "certificate is for n=" + std::to_string(file.header.n) +
                    " m=" + std::to_string(file.header.m) + ", instance has n=" +
                    std::to_string(inst.n()) + " m=" + std::to_string(inst.m()));
  }
  if (file.header.instance_hash != InstanceHash(inst)) {
    throw Error(ErrorCode::kShapeMismatch, "certificate instance hash does not match");
  }
}

std::string WriteRrReportString(const SdpInstance& inst, const RrReport& report) {
  const RrForm& rr = report.rr;
  std::string s = "ramana-rr 1\n";
  s += std::string("side ") + (report.side == RrSide::kPrimal ? "primal" : "dual") + "\n";
  s += "instance " + Hex(report.instance_hash ? report.instance_hash : InstanceHash(inst)) + "\n";
  s += std::string("status ") + (rr.status == RrStatus::kFeasible ? "feasible" : "infeasible") +
       "\n";
  s += "k " + std::to_string(rr.k) + "\n";
  s += "r";
  for (int r : rr.r) s += " " + std::to_string(r);
  s += "\n";
  PutMatrix(s, "M", rr.ref.m);
  PutMatrix(s, "Q", rr.ref.q);
  PutMatrix(s, "X", rr.maxrank_x.matrix());
  s += "end\n";
  return s;
}

RrReport ReadRrReportString(const std::string& text) {
  LineReader rd(text);
  RrReport rep;
  std::vector<std::string> w = rd.Words();
  if (w.size() != 2 || w[0] != "ramana-rr" || w[1] != "1") rd.Fail("missing 'ramana-rr 1' header", 1);
  bool ended = false, have_m = false, have_q = false, have_x = false;
  while (!rd.done()) {
    const int at = rd.line();
    w = rd.Words();
    const std::string& key = w[0];
    if (key == "side" && w.size() == 2) {
      if (w[1] != "primal" && w[1] != "dual") rd.Fail("bad side '" + w[1] + "'", at);
      rep.side = w[1] == "primal" ? RrSide::kPrimal : RrSide::kDual;
    } else if (key == "instance" && w.size() == 2) {
      const auto res = std::from_chars(w[1].data(), w[1].data() + w[1].size(), rep.instance_hash, 16);
      if (res.ec != std::errc() || res.ptr != w[1].data() + w[1].size()) rd.Fail("bad instance hash", at);
    } else if (key == "status" && w.size() == 2) {
      if (w[1] != "feasible" && w[1] != "infeasible") rd.Fail("bad status '" + w[1] + "'", at);
      rep.rr.status = w[1] == "feasible" ? RrStatus::kFeasible : RrStatus::kInfeasible;
    } else if (key == "k" && w.size() == 2) {
      rep.rr.k = ToInt(rd, w[1], at);
    } else if (key == "r") {
      rep.rr.r.clear();
      for (size_t i = 1; i < w.size(); ++i) rep.rr.r.push_back(ToInt(rd, w[i], at));
    } else if (key == "matrix" && w.size() == 3) {
      const int n = ToInt(rd, w[2], at);
      if (n < 0) rd.Fail("bad matrix order", at);
      const Eigen::MatrixXd a = ReadMatrix(rd, n);
      if (w[1] == "M") {
        rep.rr.ref.m = a;
        have_m = true;
      } else if (w[1] == "Q") {
        rep.rr.ref.q = a;
        have_q = true;
      } else if (w[1] == "X") {
        rep.rr.maxrank_x = ToSym(rd, a, "X", at);
        have_x = true;
      } else {
        rd.Fail("unexpected matrix '" + w[1] + "'", at);
      }
    } else if (key == "end" && w.size() == 1) {
      ended = true;
      break;
    } else {
      rd.Fail("unknown record '" + key + "'", at);
    }
  }
  if (!ended) rd.Fail("missing 'end'");
  if (!have_q || !have_x) rd.Fail("report needs matrices Q and X");
  if (!have_m) rep.rr.ref.m = Eigen::MatrixXd(0, 0);
  if (static_cast<int>(rep.rr.r.size()) != rep.rr.k) {
    throw Error(ErrorCode::kShapeMismatch, "r has " + std::to_string(rep.rr.r.size()) +
                                               " entries, k is " + std::to_string(rep.rr.k));
  }
  return rep;
}

}  // namespace ramana
