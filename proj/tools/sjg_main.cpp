// Command-line surface over the library: point evaluation, verification
// suites with JSON reports, geodesic/flow integration to CSV, loop phases,
// and the almost cosymplectic structure check.
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sjg/berry.hpp"
#include "sjg/connections.hpp"
#include "sjg/cosymplectic.hpp"
#include "sjg/dynamics.hpp"
#include "sjg/metrics.hpp"
#include "suites.hpp"

using namespace sjg;
using tools::fmt17;

namespace {

std::map<std::string, double> parse_kv(const std::string& s) {
  std::map<std::string, double> m;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("expected name=value, got: " + item);
    m[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
  }
  return m;
}

ModelParams params_from(const std::string& spec) {
  double k = 1.0, nu = 1.0, delta = 1.0;
  if (const char* e = std::getenv("SJG_K")) k = std::stod(e);
  if (const char* e = std::getenv("SJG_NU")) nu = std::stod(e);
  if (const char* e = std::getenv("SJG_DELTA")) delta = std::stod(e);
  for (auto& [key, v] : parse_kv(spec)) {
    if (key == "k") k = v;
    else if (key == "nu") nu = v;
    else if (key == "delta") delta = v;
    else throw CLI::ValidationError("unknown parameter: " + key);
  }
  return ModelParams{k, nu, delta};
}

std::string chart_of_space(std::string space) {
  for (auto& c : space)
    if (c == '-') c = '_';
  if (!atlas().has_chart(space)) throw DomainError("unknown space: " + space);
  return space;
}

// point from name=value pairs; complex coordinate names set the real slot
std::vector<double> point_at(const Chart& ch, const std::string& at) {
  std::vector<double> x(ch.rdim, 0.0);
  for (auto& [name, v] : parse_kv(at)) {
    bool found = false;
    for (int i = 0; i < ch.rdim && !found; ++i)
      if (ch.names[i] == name) {
        x[i] = v;
        found = true;
      }
    for (size_t a = 0; a < ch.cnames.size() && !found; ++a)
      if (ch.cnames[a] == name) {
        x[ch.cpairs[a].first] = v;
        found = true;
      }
    if (!found) throw DomainError("no coordinate '" + name + "' on chart " + ch.id);
  }
  return x;
}

std::string hermitian_id_of(const std::string& chart) {
  if (chart == "DJ1") return "metrica";
  if (chart == "XJ1") return "kmb";
  if (chart == "XJ1_eta") return "hs";
  for (const auto& id : hermitian_catalog_ids())
    if (id == chart) return id;
  throw DomainError("no Hermitian metric catalogued for chart " + chart);
}

RealMetric real_metric_of(const std::string& chart, const ModelParams& mp) {
  if (chart == "XJ1_real") return real_catalog("METRS2", mp);
  if (chart == "XJ1_ext") return real_catalog("begGG", mp);
  if (chart == "XJ1") return real_catalog("NEWMM", mp);
  if (chart == "XJ1_eta") return real_catalog("newM", mp);
  if (chart == "X1_real") return real_from_hermitian(hermitian_catalog("X1", mp));
  return real_from_hermitian(hermitian_catalog(hermitian_id_of(chart), mp));
}

std::string jnum(cplx v) {
  if (std::abs(v.imag()) < 1e-15) return fmt17(v.real());
  return "[" + fmt17(v.real()) + ", " + fmt17(v.imag()) + "]";
}

int cmd_eval(const std::string& space, const std::string& object, const std::string& at,
             const ModelParams& mp) {
  std::string chart = chart_of_space(space);
  const Chart& ch = atlas().chart(chart);
  auto x = point_at(ch, at);
  if (!ch.in_domain(x)) throw DomainError("point is outside the chart domain");
  std::string out = "{\n  \"space\": \"" + space + "\",\n  \"object\": \"" + object +
                    "\",\n";
  out += "  \"at\": {";
  for (int i = 0; i < ch.rdim; ++i)
    out += (i ? ", " : "") + ("\"" + ch.names[i] + "\": ") + fmt17(x[i]);
  out += "},\n";
  if (object == "metric") {
    if (ch.cpairs.empty() || chart == "XJ1_real" || chart == "XJ1_ext") {
      auto rm = real_metric_of(chart, mp);
      auto g = real_at(rm, x);
      out += "  \"metric\": [\n";
      for (int i = 0; i < rm.dim; ++i) {
        out += "    [";
        for (int j = 0; j < rm.dim; ++j) out += (j ? ", " : "") + fmt17(g(i, j));
        out += (i + 1 < rm.dim) ? "],\n" : "]\n";
      }
      out += "  ]\n}";
    } else {
      auto hm = hermitian_catalog(hermitian_id_of(chart), mp);
      auto h = hermitian_at(hm, x);
      out += "  \"hermitian_metric\": [\n";
      for (int i = 0; i < hm.n; ++i) {
        out += "    [";
        for (int j = 0; j < hm.n; ++j) out += (j ? ", " : "") + jnum(h(i, j));
        out += (i + 1 < hm.n) ? "],\n" : "]\n";
      }
      out += "  ]\n}";
    }
  } else if (object == "christoffel") {
    if (ch.cpairs.empty() || chart == "XJ1_real" || chart == "XJ1_ext") {
      auto rm = real_metric_of(chart, mp);
      auto gam = christoffel(rm, x);
      out += "  \"christoffel\": {";
      bool first = true;
      for (int i = 0; i < rm.dim; ++i)
        for (int j = 0; j < rm.dim; ++j)
          for (int k = j; k < rm.dim; ++k)
            if (std::abs(gam[i][j][k]) > 1e-14) {
              out += first ? "\n" : ",\n";
              out += "    \"Gamma^" + ch.names[i] + "_" + ch.names[j] + ch.names[k] +
                     "\": " + fmt17(gam[i][j][k]);
              first = false;
            }
      out += "\n  }\n}";
    } else {
      auto hm = hermitian_catalog(hermitian_id_of(chart), mp);
      auto cc = complex_connection(hm, x);
      out += "  \"christoffel\": {";
      bool first = true;
      for (int b = 0; b < cc.n; ++b)
        for (int a = 0; a < cc.n; ++a)
          for (int c = a; c < cc.n; ++c)
            if (std::abs(cc.coeff[a][b][c]) > 1e-14) {
              out += first ? "\n" : ",\n";
              out += "    \"Gamma^" + ch.cnames[b] + "_" + ch.cnames[a] + ch.cnames[c] +
                     "\": " + jnum(cc.coeff[a][b][c]);
              first = false;
            }
      out += "\n  }\n}";
    }
  } else if (object == "connection-matrix") {
    auto hm = hermitian_catalog(hermitian_id_of(chart), mp);
    auto cc = complex_connection(hm, x);
    // entry (a, b) = theta^a_b, listed per differential dz_c
    out += "  \"connection_matrix\": {";
    bool firstc = true;
    for (int c = 0; c < cc.n; ++c) {
      out += firstc ? "\n" : ",\n";
      firstc = false;
      out += "    \"d" + ch.cnames[c] + "\": [";
      for (int a = 0; a < cc.n; ++a) {
        out += a ? ", [" : "[";
        for (int b = 0; b < cc.n; ++b) out += (b ? ", " : "") + jnum(cc.coeff[b][a][c]);
        out += "]";
      }
      out += "]";
    }
    out += "\n  }\n}";
  } else if (object == "berry") {
    auto a = closed_form_berry(space == chart ? chart : space, mp);
    auto co = a.eval(x);
    out += "  \"berry_connection\": {";
    for (int i = 0; i < ch.rdim; ++i)
      out += (i ? ", " : "") + ("\"d" + ch.names[i] + "\": ") + jnum(co[i]);
    out += "}\n}";
  } else {
    throw CLI::ValidationError("unknown object: " + object);
  }
  std::cout << out << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, const tools::SuiteConfig& cfg,
               const std::string& out_path, bool json_stdout) {
  auto rows = tools::run_suite(suite, cfg);
  auto report = tools::report_json(suite, cfg, rows);
  tools::write_atomic(out_path, report);
  bool all = true;
  if (json_stdout) {
    std::cout << report;
  } else {
    for (const auto& r : rows) {
      std::printf("%-4s %-32s anchor=%-20s samples=%-4d err=%-13.6g tol=%g\n",
                  r.pass ? "pass" : "FAIL", r.identity_id.c_str(),
                  r.paper_anchor.c_str(), r.samples, r.max_abs_err, r.tol);
    }
  }
  for (const auto& r : rows) all = all && r.pass;
  if (!json_stdout)
    std::printf("%s: %zu identities, report written to %s\n",
                all ? "all passed" : "FAILURES", rows.size(), out_path.c_str());
  return all ? 0 : 1;
}

void write_csv(const std::string& out_path, const std::string& csv) {
  if (out_path.empty())
    std::cout << csv;
  else
    tools::write_atomic(out_path, csv);
}

int cmd_geodesic(const std::string& space, const std::string& init, double t_max,
                 double step, const ModelParams& mp, const std::string& out_path) {
  std::string chart = chart_of_space(space);
  auto rm = real_metric_of(chart, mp);
  const Chart& ch = atlas().chart(rm.chart);
  std::vector<double> x0(ch.rdim, 0.0), v0(ch.rdim, 0.0);
  for (auto& [name, v] : parse_kv(init)) {
    bool found = false;
    for (int i = 0; i < ch.rdim; ++i) {
      if (ch.names[i] == name) { x0[i] = v; found = true; }
      if ("v" + ch.names[i] == name) { v0[i] = v; found = true; }
    }
    if (!found) throw DomainError("no coordinate '" + name + "' on chart " + ch.id);
  }
  if (!ch.in_domain(x0)) throw DomainError("initial point is outside the chart domain");
  auto tr = integrate_geodesic(rm, x0, v0, t_max, step);
  std::string csv = "t";
  for (const auto& nm : ch.names) csv += "," + nm;
  for (const auto& nm : ch.names) csv += ",v" + nm;
  csv += ",speed\n";
  for (size_t i = 0; i < tr.t.size(); ++i) {
    csv += fmt17(tr.t[i]);
    for (double v : tr.x[i]) csv += "," + fmt17(v);
    for (double v : tr.v[i]) csv += "," + fmt17(v);
    csv += "," + fmt17(metric_speed(rm, tr.x[i], tr.v[i])) + "\n";
  }
  write_csv(out_path, csv);
  if (tr.exited) throw DomainError("trajectory left the chart domain");
  return 0;
}

int cmd_flow(const std::string& space, const std::string& hspec, const std::string& init,
             double t_max, double step, const ModelParams& mp,
             const std::string& out_path) {
  std::string chart = chart_of_space(space);
  if (chart != "XJ1_ext") throw DomainError("flow is defined on the XJ1-ext space");
  const Chart& ch = atlas().chart(chart);
  EnergyCoeffs ec;
  for (auto& [name, v] : parse_kv(hspec)) {
    if (name == "a") ec.a = v;
    else if (name == "b") ec.b = v;
    else if (name == "c") ec.c = v;
    else if (name == "m") ec.m = v;
    else if (name == "n") ec.n = v;
    else throw DomainError("unknown Hamiltonian coefficient: " + name);
  }
  HamiltonianSpec spec{ec, nullptr};
  std::vector<double> s0{0.0, 1.0, 0.0, 0.0, 0.0};
  if (!init.empty()) s0 = point_at(ch, init);
  if (!ch.in_domain(s0)) throw DomainError("initial point is outside the chart domain");
  auto tr = integrate_flow(spec, s0, t_max, mp, step);
  std::string csv = "t";
  for (const auto& nm : ch.names) csv += "," + nm;
  csv += ",energy\n";
  for (size_t i = 0; i < tr.t.size(); ++i) {
    csv += fmt17(tr.t[i]);
    for (double v : tr.x[i]) csv += "," + fmt17(v);
    csv += "," + fmt17(extended_energy(spec, tr.x[i], mp)) + "\n";
  }
  write_csv(out_path, csv);
  if (tr.exited) throw DomainError("trajectory left the chart domain");
  return 0;
}

int cmd_loop_phase(const std::string& space, const std::string& curve,
                   const std::string& at, const std::string& slots,
                   const ModelParams& mp, const Quadrature& q) {
  std::string chart = chart_of_space(space);
  const Chart& ch = atlas().chart(chart);
  auto a = closed_form_berry(space == chart ? chart : space, mp);
  std::vector<double> base = point_at(ch, at);
  auto sl = parse_kv("i=" + slots.substr(0, slots.find(',')) +
                     ",j=" + slots.substr(slots.find(',') + 1));
  int ix = int(sl["i"]), iy = int(sl["j"]);

  LoopPhase ph;
  auto colon = curve.find(':');
  std::string kind = curve.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : curve.substr(colon + 1);
  if (kind == "circle") {
    auto kv = parse_kv(rest);
    double r = kv.count("r") ? kv["r"] : 0.5;
    if (kv.count("cx")) base[ix] = kv["cx"];
    if (kv.count("cy")) base[iy] = kv["cy"];
    auto c = circle_curve(ch.rdim, ix, iy, base, r);
    auto s = disk_surface(ch.rdim, ix, iy, base, r);
    ph = berry_phase_loop(a, c, s, LineBundleConvention::minus_i, q);
  } else if (kind == "rect") {
    std::vector<double> v;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
    if (v.size() != 4) throw CLI::ValidationError("rect needs q0,q1,p0,p1");
    auto c = rect_curve(base, ix, iy, v[0], v[1], v[2], v[3]);
    auto s = rect_surface(base, ix, iy, v[0], v[1], v[2], v[3]);
    Quadrature q4 = q;
    if (q4.panels % 4 != 0) q4.panels = 4 * std::max(1, q4.panels);
    ph = berry_phase_loop(a, c, s, LineBundleConvention::minus_i, q4);
  } else {
    throw CLI::ValidationError("unknown curve kind: " + kind);
  }
  std::cout << "loop = " << fmt17(ph.loop) << "\n";
  std::cout << "stokes = " << fmt17(ph.surface) << "\n";
  std::cout << "diff = " << fmt17(std::abs(ph.loop - ph.surface)) << "\n";
  return 0;
}

int cmd_cosym_check(const std::string& at, const ModelParams& mp) {
  auto s = gtacos_xj1_ext(mp);
  const Chart& ch = atlas().chart(s.chart);
  std::vector<double> x{0.0, 2.0, 0.1, -0.2, 0.3};
  if (!at.empty()) x = point_at(ch, at);
  if (!ch.in_domain(x)) throw DomainError("point is outside the chart domain");
  auto rep = acos_check(s, x);
  double expected = 4.0 * mp.k * mp.nu * std::sqrt(mp.delta) / (x[1] * x[1]);
  std::cout << "{\n  \"rank\": " << rep.rank << ",\n  \"top_coeff\": "
            << fmt17(rep.top_coeff.real()) << ",\n  \"expected_top\": "
            << fmt17(expected) << ",\n  \"d_omega_norm\": " << fmt17(rep.d_omega_norm)
            << ",\n  \"pass\": " << (rep.pass ? "true" : "false") << "\n}\n";
  return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"computational checks on homogeneous spaces of the Jacobi group"};
  app.require_subcommand(1);

  std::string params_spec, at, space, object, suite = "all", curve, slots = "0,1";
  std::string init, hspec, out_path, report_path = "report.json";
  double t_max = 1.0, step = 1e-3;
  int samples = 200, nodes = 64, panels = 1;
  unsigned long long seed = 42;
  bool json_stdout = false;

  auto add_params = [&](CLI::App* c) {
    c->add_option("--params", params_spec, "model parameters, e.g. k=2,nu=0.7,delta=1.3");
  };

  auto* ev = app.add_subcommand("eval", "evaluate a tensor or form at a point");
  ev->add_option("--space", space)->required();
  ev->add_option("--object", object, "metric | christoffel | connection-matrix | berry")
      ->required();
  ev->add_option("--at", at, "point, e.g. x=0,y=1,q=0,p=0");
  add_params(ev);

  auto* vf = app.add_subcommand("verify", "run a verification suite");
  vf->add_option("--suite", suite,
                 "all | christoffel | berry | transforms | cosymplectic | dynamics | "
                 "discrepancies");
  vf->add_option("--samples", samples);
  vf->add_option("--seed", seed);
  vf->add_option("--out", report_path, "report path (written atomically)");
  vf->add_flag("--json", json_stdout, "print the JSON report instead of a summary");
  add_params(vf);

  auto* ge = app.add_subcommand("geodesic", "integrate a geodesic, emit CSV");
  ge->add_option("--space", space)->required();
  ge->add_option("--init", init, "e.g. x=0,y=1,vx=1,vy=0")->required();
  ge->add_option("--t", t_max);
  ge->add_option("--step", step);
  ge->add_option("--out", out_path, "CSV path; stdout when omitted");
  add_params(ge);

  auto* fl = app.add_subcommand("flow", "integrate the extended Hamiltonian flow");
  fl->add_option("--space", space)->required();
  fl->add_option("--H", hspec, "generator coefficients a=..,b=..,c=..,m=..,n=..")
      ->required();
  fl->add_option("--init", init, "e.g. x=0,y=1,q=0,p=0,kappa=0");
  fl->add_option("--t", t_max);
  fl->add_option("--step", step);
  fl->add_option("--out", out_path, "CSV path; stdout when omitted");
  add_params(fl);

  auto* lp = app.add_subcommand("loop-phase", "contour and Stokes phase for a loop");
  lp->add_option("--space", space)->required();
  lp->add_option("--curve", curve, "circle:r=0.5[,cx=..,cy=..] or rect:q0,q1,p0,p1")
      ->required();
  lp->add_option("--at", at, "base point for the inactive coordinates");
  lp->add_option("--slots", slots, "active coordinate slots, default 0,1");
  lp->add_option("--nodes", nodes);
  lp->add_option("--panels", panels);
  add_params(lp);

  auto* cc = app.add_subcommand("cosym-check", "almost cosymplectic structure check");
  cc->add_option("--at", at);
  add_params(cc);

  CLI11_PARSE(app, argc, argv);

  try {
    ModelParams mp = params_from(params_spec);
    if (ev->parsed()) return cmd_eval(space, object, at, mp);
    if (vf->parsed()) {
      tools::SuiteConfig cfg{mp, seed, samples};
      if (!tools::is_suite(suite)) {
        std::cerr << "unknown suite: " << suite << "\n";
        return 64;
      }
      return cmd_verify(suite, cfg, report_path, json_stdout);
    }
    if (ge->parsed()) return cmd_geodesic(space, init, t_max, step, mp, out_path);
    if (fl->parsed()) return cmd_flow(space, hspec, init, t_max, step, mp, out_path);
    if (lp->parsed())
      return cmd_loop_phase(space, curve, at, slots, mp, Quadrature{nodes, panels});
    if (cc->parsed()) return cmd_cosym_check(at, mp);
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const SingularMetric& e) {
    std::cerr << "singular metric: " << e.what() << "\n";
    return 2;
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 70;
  }
  return 0;
}
