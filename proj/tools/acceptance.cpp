// Acceptance runner: ten go/no-go checks over the verification registry,
// one pass/fail line each.  Exit code is the number of failed checks.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "suites.hpp"

using namespace sjg::tools;

namespace {

int g_failures = 0;

struct RunOutcome {
  bool pass = true;
  double worst = 0.0;
  std::string detail;
};

RunOutcome run_ids(const std::vector<std::string>& ids, const SuiteConfig& cfg) {
  RunOutcome o;
  for (const auto& ident : identity_registry()) {
    bool wanted = false;
    for (const auto& id : ids) wanted = wanted || id == ident.id;
    if (!wanted) continue;
    int n = 0;
    double err = ident.run(cfg, n);
    o.worst = std::max(o.worst, err);
    if (err > ident.tol) {
      o.pass = false;
      o.detail += " " + ident.id + " err=" + fmt17(err);
    }
  }
  return o;
}

void report(int num, const std::string& what, bool pass, const std::string& extra = "") {
  std::printf("%s: criterion %d, %s%s\n", pass ? "PASS" : "FAIL", num, what.c_str(),
              extra.c_str());
  if (!pass) ++g_failures;
}

}  // namespace

int main() {
  SuiteConfig cfg{sjg::ModelParams{2.0, 0.7, 1.3}, 42, 200};

  // 1. printed Christoffel tables at 200 points each, under five seconds
  {
    auto t0 = std::chrono::steady_clock::now();
    auto o = run_ids({"christoffel-disc", "christoffel-half-plane",
                      "christoffel-half-plane-real", "christoffel-hyperbolic",
                      "christoffel-extended"},
                     cfg);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                      .count();
    bool pass = o.pass && secs < 5.0;
    report(1, "Christoffel tables reproduced at 200 points per table", pass,
           ", worst err " + fmt17(o.worst) + ", " + fmt17(secs) + " s" + o.detail);
  }

  // 2. connection-matrix transformation law at 100 points
  {
    SuiteConfig c100 = cfg;
    c100.samples = 100;
    auto o = run_ids({"connection-transform", "cayley-jacobian"}, c100);
    report(2, "connection matrix transported between charts, Jacobian analytic", o.pass,
           ", worst err " + fmt17(o.worst) + o.detail);
  }

  // 3. metrics from potentials and printed inverses
  {
    auto o = run_ids({"metric-potential-disc", "metric-potential-half-plane",
                      "metric-potential-eta", "metric-potential-flat-block",
                      "metric-inverse-disc", "metric-inverse-half-plane"},
                     cfg);
    report(3, "metrics derived from potentials, printed inverses invert", o.pass,
           ", worst err " + fmt17(o.worst) + o.detail);
  }

  // 4. Berry closure on every catalogued space, loop phase vs Stokes
  {
    auto o = run_ids({"berry-closure-D1", "berry-closure-X1", "berry-closure-S2",
                      "berry-closure-CP1", "berry-closure-CP2", "berry-closure-CP3",
                      "berry-closure-Gr11m", "berry-closure-Gr11p", "berry-closure-Gr21m",
                      "berry-closure-Gr21p", "berry-closure-Gr22m", "berry-closure-Gr22p",
                      "berry-closure-SCWZ", "berry-closure-fpp", "berry-loop-stokes"},
                     cfg);
    report(4, "dA_B + omega = 0 on all spaces, loop phase -4pi/3 via Stokes", o.pass,
           ", worst err " + fmt17(o.worst) + o.detail);
  }

  // 5. geodesic fixtures: closed forms, RK4 deviation, speed drift
  {
    auto o = run_ids({"geodesic-closed-form", "geodesic-grassmann", "geodesic-rk4"}, cfg);
    report(5, "geodesic closed forms and RK4 deviation/drift", o.pass,
           ", worst err " + fmt17(o.worst) + o.detail);
  }

  // 6. almost cosymplectic structure and Darboux reconstruction
  {
    auto o = run_ids({"cosym-closed", "cosym-top-form", "cosym-darboux-n1",
                      "cosym-darboux-n2"},
                     cfg);
    report(6, "d omega = 0, top form coefficient, Darboux pairs n = 1, 2", o.pass,
           ", worst err " + fmt17(o.worst) + o.detail);
  }

  // 7. covariant-derivative matrices of the coordinate one-forms
  {
    auto o = run_ids({"covariant-half-plane", "covariant-extended"}, cfg);
    report(7, "covariant-derivative matrices match the printed tables", o.pass,
           ", worst err " + fmt17(o.worst) + o.detail);
  }

  // 8. documented discrepancies really differ at the probe points
  {
    auto o = run_ids({"gap-two-form-disc", "gap-two-form-half-plane", "gap-kernel-log"},
                     cfg);
    report(8, "expected-difference fixtures show gaps above 1e-3", o.pass, o.detail);
  }

  // 9. independent finite-difference oracle
  {
    auto o = run_ids({"christoffel-fd", "berry-closure-fd"}, cfg);
    report(9, "central finite differences confirm the derivative routes", o.pass,
           ", worst rel err " + fmt17(o.worst) + o.detail);
  }

  // 10. full verification suite through the CLI inside the time budget
  {
    std::string report_path = "acceptance-report.json";
    std::string cmd = std::string(SJG_CLI_PATH) +
                      " verify --suite all --samples 200 --seed 42"
                      " --params k=2,nu=0.7,delta=1.3 --out " +
                      report_path + " > /dev/null";
    auto t0 = std::chrono::steady_clock::now();
    int rc = std::system(cmd.c_str());
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                      .count();
    bool pass = rc == 0 && secs < 30.0;
    report(10, "verify --suite all --samples 200 exits 0", pass,
           ", " + fmt17(secs) + " s, exit " + std::to_string(rc));
  }

  return g_failures;
}
