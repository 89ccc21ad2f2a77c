#include "ramana/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <future>
#include <iostream>
#include <limits>
#include <random>
#include <cmath>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ramana/builder.hpp"
#include "ramana/certificate_io.hpp"
#include "ramana/error.hpp"
#include "ramana/frs_rr.hpp"
#include "ramana/registry.hpp"
#include "ramana/sdpa_io.hpp"
#include "ramana/verifier.hpp"

namespace ramana {

namespace {

using json = nlohmann::ordered_json;

struct Globals {
  double eps = kDefaultEpsPsd;
  std::uint64_t seed = 1;
  bool json = false;
};

// Instances come from SDPA files or, when no such file exists, from the
// registry by id.
SdpInstance LoadInstance(const std::string& what) {
  if (!std::filesystem::exists(what)) {
    if (const ExampleEntry* e = FindExample(what)) return e->instance;
  }
  return ReadSdpa(what);
}

const ExampleEntry* FindByHash(std::uint64_t h) {
  for (const ExampleEntry& e : ExampleRegistry()) {
    if (InstanceHash(e.instance) == h) return &e;
  }
  return nullptr;
}

json MatrixJson(const Eigen::MatrixXd& a) {
  json rows = json::array();
  for (int i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    rows.push_back(row);
  }
  return rows;
}

json VectorJson(const Eigen::VectorXd& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

// Report values; rounding noise below 1e-12 prints as 0.
std::string Num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << (std::abs(v) < 1e-12 ? 0.0 : v);
  return os.str();
}

const char* TagName(PsdTag t) {
  switch (t) {
    case PsdTag::kPositiveDefinite: return "positive definite";
    case PsdTag::kPsdRankDeficient: return "psd, rank deficient";
    case PsdTag::kNotPsd: return "not psd";
  }
  return "?";
}

int Inspect(const Globals& g, const std::string& file, std::ostream& out) {
  const SdpInstance inst = LoadInstance(file);
  const PsdClass cls = ClassifyPsd(inst.c(), g.eps);
  std::string probe;
  const auto alt = SolveAlternative(inst, AltMode::kLeqZero, g.eps);
  if (!alt) {
    probe = "strictly feasible";
  } else if (alt->mode == AltKind::kInfeasibility) {
    probe = "infeasible";
  } else {
    probe = "not strictly feasible";
  }
  // A random feasible point shows the rank every feasible point can reach.
  std::optional<int> sample_rank;
  if (!alt || alt->mode != AltKind::kInfeasibility) {
    const RrForm rr = BuildRrForm(inst, g.eps);
    if (rr.status == RrStatus::kFeasible) {
      std::mt19937_64 rng(g.seed);
      sample_rank = ClassifyPsd(SampleFeasiblePoint(inst, rr, rng), 1e-6).rank;
    } else {
      probe = "infeasible";
    }
  }
  if (g.json) {
    json j;
    j["n"] = inst.n();
    j["m"] = inst.m();
    j["c_class"] = TagName(cls.tag);
    j["c_rank"] = cls.rank;
    j["c_min_eigenvalue"] = cls.min_eigenvalue;
    j["strict_feasibility"] = probe;
    if (alt) j["certificate_y"] = VectorJson(alt->y);
    if (sample_rank) j["sample_rank"] = *sample_rank;
    out << j.dump(2) << "\n";
  } else {
    out << "n " << inst.n() << "\nm " << inst.m() << "\n";
    out << "C: " << TagName(cls.tag) << ", rank " << cls.rank << ", min eigenvalue "
        << Num(cls.min_eigenvalue) << "\n";
    out << "strict feasibility probe: " << probe << "\n";
    if (sample_rank) out << "random feasible point rank " << *sample_rank << "\n";
  }
  return 0;
}

int RrFormCmd(const Globals& g, const std::string& file, const std::string& prefix, bool dual,
              std::ostream& out) {
  const SdpInstance inst = LoadInstance(file);
  RrReport rep;
  rep.side = dual ? RrSide::kDual : RrSide::kPrimal;
  rep.instance_hash = InstanceHash(inst);
  const SdpInstance target = dual ? ComplementInstance(ComplementBasis(inst)) : inst;
  rep.rr = BuildRrForm(target, g.eps);
  const SdpInstance reformed = Reformulate(target, rep.rr.ref);
  const std::string report = WriteRrReportString(inst, rep);
  if (!prefix.empty()) {
    WriteSdpa(reformed, prefix + ".dat-s");
    WriteTextFile(prefix + ".rr", report);
  }
  const bool is_rr = rep.rr.status == RrStatus::kFeasible &&
                     IsRrForm(reformed, rep.rr.k, rep.rr.maxrank_x, g.eps);
  if (g.json) {
    json j;
    j["side"] = dual ? "dual" : "primal";
    j["status"] = rep.rr.status == RrStatus::kFeasible ? "feasible" : "infeasible";
    j["k"] = rep.rr.k;
    j["r"] = rep.rr.r;
    j["certified_order"] = rep.rr.certified_order();
    j["is_rr_form"] = is_rr;
    j["M"] = MatrixJson(rep.rr.ref.m);
    j["Q"] = MatrixJson(rep.rr.ref.q);
    j["maxrank_x"] = MatrixJson(rep.rr.maxrank_x.matrix());
    if (rep.rr.status == RrStatus::kInfeasible) j["final_rhs"] = reformed.b()(rep.rr.k - 1);
    out << j.dump(2) << "\n";
  } else {
    out << report;
    if (rep.rr.status == RrStatus::kFeasible) {
      out << "# rank revealing form check: " << (is_rr ? "pass" : "FAIL") << "\n";
    } else {
      out << "# final right-hand side " << Num(reformed.b()(rep.rr.k - 1)) << "\n";
    }
  }
  return 0;
}

int Emit(const Globals& g, const std::string& file, const std::string& system,
         const std::string& from_rr, const std::string& prefix, std::ostream& out) {
  const auto kind = ParseSystemName(system);
  if (!kind) throw Error(ErrorCode::kUsage, "unknown system '" + system + "'");
  const SdpInstance inst = LoadInstance(file);
  std::optional<StrongDualSpec> spec;
  if (*kind == SystemKind::kDstrong || *kind == SystemKind::kPstrong) {
    if (from_rr.empty()) throw Error(ErrorCode::kUsage, system + " needs --from-rr <report>");
    const RrReport rep = ReadRrReportString(ReadTextFile(from_rr));
    if (rep.instance_hash != InstanceHash(inst)) {
      throw Error(ErrorCode::kShapeMismatch, "RR report was made for a different instance");
    }
    const bool want_dual = *kind == SystemKind::kPstrong;
    if ((rep.side == RrSide::kDual) != want_dual) {
      throw Error(ErrorCode::kUsage, std::string(system) + " needs an RR report of the " +
                                         (want_dual ? "dual (rr-form --dual)" : "primal") +
                                         " side");
    }
    if (want_dual) {
      const SdpInstance comp = ComplementInstance(ComplementBasis(inst));
      spec = StrongSpecFromRr(comp, rep.rr);
    } else {
      spec = StrongSpecFromRr(inst, rep.rr);
    }
  }
  StandardFormSdp sdp = *kind == SystemKind::kRed ? BuildRed(inst).sdp : BuildSystem(*kind, inst, spec);
  const std::string base = prefix.empty() ? system : prefix;
  WriteSdpa(sdp, base + ".dat-s");
  WriteVarMap(sdp, base + ".varmap");
  if (g.json) {
    json j;
    j["system"] = system;
    j["blocks"] = sdp.blocks.size();
    j["free"] = sdp.num_free;
    j["constraints"] = sdp.constraints.size();
    j["sdpa"] = base + ".dat-s";
    j["varmap"] = base + ".varmap";
    out << j.dump(2) << "\n";
  } else {
    out << "wrote " << base << ".dat-s (" << sdp.blocks.size() << " psd blocks, " << sdp.num_free
        << " free scalars, " << sdp.constraints.size() << " constraints) and " << base
        << ".varmap\n";
  }
  return 0;
}

json VerdictJson(const Verdict& v) {
  json j;
  j["ok"] = v.ok;
  if (v.ok) {
    j["value"] = v.value;
  } else {
    j["failed"] = v.failed;
    j["detail"] = v.detail;
    j["residual"] = v.residual;
  }
  j["warnings"] = v.warnings;
  return j;
}

int VerifyCmd(const Globals& g, const std::string& file, const std::string& cert_path,
              std::ostream& out) {
  const SdpInstance inst = LoadInstance(file);
  const CertificateFile cf = ReadCertificate(cert_path);
  CheckCertificateTarget(cf, inst);
  const Verdict v = Verify(inst, cf.cert, g.eps);
  if (g.json) {
    json j = VerdictJson(v);
    j["system"] = SystemName(cf.cert.system);
    out << j.dump(2) << "\n";
  } else {
    out << SystemName(cf.cert.system) << ": ";
    if (v.ok) {
      if (cf.cert.system == SystemKind::kAltRam) {
        out << "valid\n";
      } else {
        out << "feasible, value " << Num(v.value) << "\n";
      }
    } else {
      out << (cf.cert.system == SystemKind::kAltRam ? "invalid: " : "infeasible: ") << v.message()
          << "\n";
    }
    for (const std::string& w : v.warnings) out << "warning: " << w << "\n";
  }
  return v.ok ? 0 : 2;
}

int NormalizeCmd(const Globals& g, const std::string& file, const std::string& cert_path,
                 std::ostream& out) {
  const CertificateFile cf = ReadCertificate(cert_path);
  std::optional<SdpInstance> inst;
  if (!file.empty()) {
    inst = LoadInstance(file);
  } else if (const ExampleEntry* e = FindByHash(cf.header.instance_hash)) {
    inst = e->instance;
  } else {
    throw Error(ErrorCode::kUsage, "certificate does not match a built-in instance; pass the instance file");
  }
  CheckCertificateTarget(cf, *inst);
  const NormalizationReport rep = NormalizeLadder(*inst, cf.cert, g.eps);
  if (g.json) {
    json j;
    j["frs_valid"] = rep.frs_valid;
    j["r"] = rep.r;
    j["u_membership"] = rep.u_membership;
    j["q_total"] = MatrixJson(rep.q_total);
    out << j.dump(2) << "\n";
  } else {
    out << "frs_valid " << (rep.frs_valid ? "true" : "false") << "\nr";
    for (int r : rep.r) out << ' ' << r;
    out << "\nu_membership";
    for (bool b : rep.u_membership) out << ' ' << (b ? "true" : "false");
    out << "\nQ_total\n";
    for (int i = 0; i < rep.q_total.rows(); ++i) {
      for (int j = 0; j < rep.q_total.cols(); ++j) out << (j ? " " : "") << Num(rep.q_total(i, j));
      out << "\n";
    }
  }
  return 0;
}

json RunJson(const ExampleRun& run) {
  json j;
  j["id"] = run.id;
  j["pass"] = run.pass();
  json checks = json::array();
  for (const CheckLine& c : run.checks) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  j["checks"] = checks;
  return j;
}

void PrintRun(const ExampleRun& run, std::ostream& out) {
  out << run.id << "\n";
  for (const CheckLine& c : run.checks) {
    out << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name << ": " << c.detail << "\n";
  }
}

int Examples(const Globals& g, bool run, const std::string& id, bool all, std::ostream& out) {
  if (!run) {
    if (g.json) {
      json j = json::array();
      for (const ExampleEntry& e : ExampleRegistry()) {
        j.push_back({{"id", e.id}, {"n", e.instance.n()}, {"m", e.instance.m()},
                     {"description", e.description}});
      }
      out << j.dump(2) << "\n";
    } else {
      for (const ExampleEntry& e : ExampleRegistry()) {
        out << e.id << "  (n=" << e.instance.n() << ", m=" << e.instance.m() << ")  "
            << e.description << "\n";
      }
    }
    return 0;
  }
  std::vector<ExampleRun> runs;
  if (all) {
    std::vector<std::future<ExampleRun>> jobs;
    for (const ExampleEntry& e : ExampleRegistry()) {
      jobs.push_back(std::async(std::launch::async, [&e, eps = g.eps] { return RunExample(e, eps); }));
    }
    for (auto& f : jobs) runs.push_back(f.get());
  } else {
    const ExampleEntry* e = FindExample(id);
    if (!e) throw Error(ErrorCode::kUsage, "unknown example '" + id + "'");
    runs.push_back(RunExample(*e, g.eps));
  }
  bool ok = true;
  if (g.json) {
    json j = json::array();
    for (const ExampleRun& r : runs) j.push_back(RunJson(r));
    out << (runs.size() == 1 ? j[0] : j).dump(2) << "\n";
  } else {
    for (const ExampleRun& r : runs) PrintRun(r, out);
  }
  for (const ExampleRun& r : runs) ok = ok && r.pass();
  return ok ? 0 : 2;
}

double DefaultEps() {
  if (const char* env = std::getenv("RAMANA_EPS")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0) return v;
  }
  return kDefaultEpsPsd;
}

}  // namespace

int CliMain(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact duality tools for small dense semidefinite programs", "ramana"};
  app.require_subcommand(1);
  Globals g;
  g.eps = DefaultEps();
  app.add_option("--eps", g.eps, "PSD / rank tolerance (default 1e-8, or $RAMANA_EPS)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "seed for randomized subsolver steps");
  app.add_flag("--json", g.json, "machine-readable output");

  std::string file, cert, system, from_rr, prefix, id;
  bool dual = false, all = false;

  auto* inspect = app.add_subcommand("inspect", "dimensions, C classification, strict feasibility probe");
  inspect->add_option("file", file, "SDPA file or example id")->required();

  auto* rr = app.add_subcommand("rr-form", "reformulate into rank revealing form");
  rr->add_option("file", file, "SDPA file or example id")->required();
  rr->add_option("--out", prefix, "write <prefix>.dat-s and <prefix>.rr");
  rr->add_flag("--dual", dual, "reduce the dual slack problem instead (for pstrong)");

  auto* emit = app.add_subcommand("emit", "write a Ramana or strong system as SDPA + var_map");
  emit->add_option("file", file, "SDPA file or example id")->required();
  emit->add_option("--system", system, "dram | altram | pram | dstrong | pstrong | red")->required();
  emit->add_option("--from-rr", from_rr, "RR report (dstrong, pstrong)");
  emit->add_option("--out", prefix, "output prefix (default: system name)");

  auto* verify = app.add_subcommand("verify", "check a certificate file");
  verify->add_option("file", file, "SDPA file or example id")->required();
  verify->add_option("--cert", cert, "certificate file")->required();

  auto* normalize = app.add_subcommand("normalize", "rotate a certificate ladder into FRS shape");
  normalize->add_option("file", file, "SDPA file or example id (default: match by hash)");
  normalize->add_option("--cert", cert, "certificate file")->required();

  auto* examples = app.add_subcommand("examples", "list or run the built-in examples");
  auto* run = examples->add_subcommand("run", "run golden checks");
  run->add_option("id", id, "example id");
  run->add_flag("--all", all, "run every example");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*inspect) return Inspect(g, file, out);
    if (*rr) return RrFormCmd(g, file, prefix, dual, out);
    if (*emit) return Emit(g, file, system, from_rr, prefix, out);
    if (*verify) return VerifyCmd(g, file, cert, out);
    if (*normalize) return NormalizeCmd(g, file, cert, out);
    if (*examples) {
      if (*run && id.empty() && !all) {
        err << "error: examples run needs an id or --all\n";
        return 1;
      }
      return Examples(g, run->parsed(), id, all, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

int CliMain(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return CliMain(args, std::cout, std::cerr);
}

}  // namespace ramana
