#include "ramana/registry.hpp"

#include <cmath>
#include <sstream>

#include "ramana/error.hpp"
#include "ramana/frs_rr.hpp"
#include "ramana/verifier.hpp"

namespace ramana {

namespace {

Eigen::VectorXd Vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<int>(v.size()));
  int i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

SymMat Diag(std::initializer_list<double> v) { return SymMat::Diagonal(Vec(v)); }

SymMat E(int n, int i) { return SymMat::Unit(n, i, i); }

Rung ZeroRung(int n, int m) { return Rung{Eigen::VectorXd::Zero(m), SymMat(n), SymMat(n)}; }

Rung DualRung(Eigen::VectorXd y, SymMat u, SymMat v) {
  return Rung{std::move(y), std::move(u), std::move(v)};
}

NamedCertificate Named(std::string name, RamanaCertificate cert, double value) {
  cert.claimed_value = value;
  return {std::move(name), std::move(cert), value};
}

// Report values; rounding noise below 1e-12 prints as 0.
std::string Fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << (std::abs(v) < 1e-12 ? 0.0 : v);
  return os.str();
}

// Ladder shared by the gap instance before and after row operations; only
// the y^i differ.
std::vector<Rung> GapLadder(const Eigen::VectorXd& y2, const Eigen::VectorXd& y3) {
  const SymMat v3{{-6, 0, 2, 1}, {0, 0, 0, 0}, {2, 0, 0, 0}, {1, 0, 0, 0}};
  return {ZeroRung(4, 3), DualRung(y2, E(4, 0), SymMat(4)),
          DualRung(y3, Diag({1, 1, 0, 0}), v3)};
}

std::vector<ExampleEntry> BuildRegistry() {
  std::vector<ExampleEntry> out;

  {
    const SdpInstance inst = MakeUnattainedDualInstance();
    KnownFacts f;
    f.primal_value = 0.0;
    f.dual_value = 0.0;
    f.dual_attained = false;
    RamanaCertificate dram;
    dram.system = SystemKind::kDram;
    dram.y = Vec({0, 0, 0});
    const SymMat v2{{-1, 0, 1}, {0, 0, 0}, {1, 0, 0}};
    dram.ladder = {DualRung(Vec({1, 0, 0}), E(3, 0), SymMat(3)),
                   DualRung(Vec({0, 1, 0}), Diag({1, 1, 0}), v2)};
    f.certificates.push_back(Named("ramana-dual", dram, 0.0));
    RamanaCertificate strong;
    strong.system = SystemKind::kDstrong;
    strong.y = Vec({0, 0, 0});
    strong.strong = StrongDualSpec{Eigen::MatrixXd::Identity(3, 3), 1};
    f.certificates.push_back(Named("strong-dual", strong, 0.0));
    out.push_back({"example-1.1", "zero optimal value, dual supremum 0 not attained", inst, f});
  }

  {
    const SdpInstance inst = MakeGapInstance();
    KnownFacts f;
    f.primal_value = 1.0;
    f.dual_value = 0.0;
    RamanaCertificate dram;
    dram.system = SystemKind::kDram;
    dram.y = Vec({0, 0, 1});
    dram.ladder = GapLadder(Vec({1, -3, 1}), Vec({0, 1, -2}));
    f.certificates.push_back(Named("ramana-dual", dram, 1.0));
    RamanaCertificate strong;
    strong.system = SystemKind::kDstrong;
    strong.y = Vec({0, 0, 1});
    strong.strong = StrongDualSpec{Eigen::MatrixXd::Identity(4, 4), 2};
    f.certificates.push_back(Named("strong-dual", strong, 1.0));
    out.push_back({"example-2.3-gap", "positive duality gap: primal 1, dual 0", inst, f});
  }

  {
    const SdpInstance inst = MakeGapInstanceReformulated();
    KnownFacts f;
    f.primal_value = 1.0;
    f.dual_value = 0.0;
    RamanaCertificate dram;
    dram.system = SystemKind::kDram;
    dram.y = Vec({0, 0, 1});
    dram.ladder = GapLadder(Vec({1, 0, 0}), Vec({0, 1, 0}));
    f.certificates.push_back(Named("ramana-dual", dram, 1.0));

    // y = (1, 1, 0) with a single nonzero rung; padded in front.
    RamanaCertificate pad;
    pad.system = SystemKind::kDram;
    pad.y = Vec({1, 1, 0});
    pad.ladder = {DualRung(Vec({1, 0, 0}), E(4, 0), SymMat(4))};
    f.certificates.push_back(Named("ramana-dual-short", pad, 0.0));

    RamanaCertificate strong;
    strong.system = SystemKind::kDstrong;
    strong.y = Vec({0, 0, 1});
    strong.strong = StrongDualSpec{Eigen::MatrixXd::Identity(4, 4), 2};
    f.certificates.push_back(Named("strong-dual", strong, 1.0));

    SymMat x(4);
    x.set(1, 3, 0.5);
    RamanaCertificate pram;
    pram.system = SystemKind::kPram;
    pram.x = x;
    pram.ladder = {Rung{std::nullopt, SymMat(4), SymMat(4)},
                   Rung{std::nullopt, SymMat(4), SymMat(4)},
                   Rung{std::nullopt, E(4, 3), SymMat(4)}};
    f.certificates.push_back(Named("ramana-primal", pram, 0.0));

    // The maximum rank slack is C = diag(1, 1, 1, 0); Q moves its range to
    // the trailing three coordinates.
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(4, 4);
    q(3, 0) = 1;
    q(0, 1) = 1;
    q(1, 2) = 1;
    q(2, 3) = 1;
    RamanaCertificate pstrong;
    pstrong.system = SystemKind::kPstrong;
    pstrong.x = x;
    pstrong.strong = StrongDualSpec{q, 3};
    f.certificates.push_back(Named("strong-primal", pstrong, 0.0));
    out.push_back({"example-2.5-rr", "gap instance after row operations", inst, f});
  }

  {
    const SdpInstance inst = MakeInfeasibleInstance();
    KnownFacts f;
    f.primal_value = std::nullopt;
    f.dual_value = 0.0;
    RamanaCertificate alt;
    alt.system = SystemKind::kAltRam;
    alt.y = Vec({0, 1});
    alt.ladder = {ZeroRung(3, 2), DualRung(Vec({1, 0}), E(3, 0), SymMat(3))};
    f.certificates.push_back({"ramana-alternative", alt, 0.0});
    out.push_back({"example-2.15-infeasible",
                   "infeasible system the classical alternative cannot certify", inst, f});
  }

  {
    const SdpInstance inst = MakeStrictlyFeasibleInstance();
    KnownFacts f;
    f.primal_value = 3.0;
    f.dual_value = 3.0;
    RamanaCertificate dram;
    dram.system = SystemKind::kDram;
    dram.y = Vec({1});
    f.certificates.push_back(Named("ramana-dual", dram, 3.0));
    out.push_back({"strictly-feasible", "trace constraint, strictly feasible on both sides", inst, f});
  }
  return out;
}

}  // namespace

SdpInstance MakeUnattainedDualInstance() {
  const SymMat c{{0, 1, 0}, {1, 0, 0}, {0, 0, 0}};
  const SymMat a2{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
  return SdpInstance({E(3, 0), a2, E(3, 2)}, Vec({0, 0, 1}), c);
}

SdpInstance MakeGapInstance() {
  const SymMat a1{{-4, 15, 6, 3}, {15, 3, 0, 5}, {6, 0, 5, 0}, {3, 5, 0, 0}};
  const SymMat a2{{-1, 6, 2, 1}, {6, 1, 0, 2}, {2, 0, 2, 0}, {1, 2, 0, 0}};
  const SymMat a3{{2, 3, 0, 0}, {3, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}};
  return SdpInstance({a1, a2, a3}, Vec({5, 2, 1}), Diag({1, 1, 1, 0}));
}

SdpInstance MakeGapInstanceReformulated() {
  const SymMat a2{{-5, 0, 2, 1}, {0, 1, 0, 0}, {2, 0, 0, 0}, {1, 0, 0, 0}};
  const SymMat a3{{2, 3, 0, 0}, {3, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}};
  return SdpInstance({E(4, 0), a2, a3}, Vec({0, 0, 1}), Diag({1, 1, 1, 0}));
}

Eigen::MatrixXd GapRowOperations() {
  Eigen::MatrixXd m(3, 3);
  m << 1, -3, 1,
       0, 1, -2,
       0, 0, 1;
  return m;
}

SdpInstance MakeInfeasibleInstance() {
  const SymMat a2{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
  return SdpInstance({E(3, 0), a2}, Vec({0, -1}), SymMat(3));
}

SdpInstance MakeStrictlyFeasibleInstance() {
  return SdpInstance({SymMat::Identity(3)}, Vec({3}), Diag({1, 2, 3}));
}

const std::vector<ExampleEntry>& ExampleRegistry() {
  static const std::vector<ExampleEntry> registry = BuildRegistry();
  return registry;
}

const ExampleEntry* FindExample(const std::string& id) {
  for (const ExampleEntry& e : ExampleRegistry()) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

bool ExampleRun::pass() const {
  for (const CheckLine& c : checks) {
    if (!c.pass) return false;
  }
  return !checks.empty();
}

ExampleRun RunExample(const ExampleEntry& entry, double eps) {
  constexpr double kValueTol = 1e-6;
  ExampleRun run;
  run.id = entry.id;
  const SdpInstance& inst = entry.instance;
  const KnownFacts& f = entry.facts;

  auto attempt = [&](const std::string& name, auto&& body) {
    try {
      run.checks.push_back(body());
    } catch (const Error& e) {
      run.checks.push_back({name, false, e.what()});
    }
  };

  std::optional<double> primal;
  attempt("primal value", [&]() -> CheckLine {
    const ValueReport r = PrimalValue(inst, eps);
    if (!f.primal_value) {
      return {"primal value", !r.feasible, r.feasible ? "expected infeasible, got " + Fmt(r.value)
                                                      : "infeasible"};
    }
    primal = r.value;
    const bool ok = r.feasible && std::abs(r.value - *f.primal_value) <= kValueTol;
    return {"primal value", ok, Fmt(r.value) + " (expected " + Fmt(*f.primal_value) + ")"};
  });

  std::optional<double> dual;
  attempt("classical dual value", [&]() -> CheckLine {
    const ValueReport r = DualValue(inst, eps);
    if (!f.dual_value) {
      return {"classical dual value", !r.feasible, r.feasible ? "expected infeasible" : "infeasible"};
    }
    dual = r.value;
    const bool ok = r.feasible && std::abs(r.value - *f.dual_value) <= kValueTol;
    return {"classical dual value", ok, Fmt(r.value) + " (expected " + Fmt(*f.dual_value) + ")"};
  });

  if (primal && dual && f.primal_value && f.dual_value) {
    const double gap = *primal - *dual;
    const double want = *f.primal_value - *f.dual_value;
    run.checks.push_back({"duality gap", std::abs(gap - want) <= 2 * kValueTol,
                          Fmt(gap) + " (expected " + Fmt(want) + ")"});
  }

  for (const NamedCertificate& nc : f.certificates) {
    const std::string name = std::string(SystemName(nc.cert.system)) + " certificate " + nc.name;
    attempt(name, [&]() -> CheckLine {
      const Verdict v = Verify(inst, nc.cert, eps);
      if (!v.ok) return {name, false, v.message()};
      if (nc.cert.system == SystemKind::kAltRam) return {name, true, "valid"};
      const bool ok = std::abs(v.value - nc.value) <= kValueTol;
      return {name, ok, "value " + Fmt(v.value) + " (expected " + Fmt(nc.value) + ")"};
    });
  }
  return run;
}

}  // namespace ramana
