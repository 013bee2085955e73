#include "suites.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <stdexcept>

#include "sjg/berry.hpp"
#include "sjg/connections.hpp"
#include "sjg/cosymplectic.hpp"
#include "sjg/dynamics.hpp"
#include "sjg/exprs.hpp"
#include "sjg/metrics.hpp"

namespace sjg::tools {

namespace {

std::string data_path(const std::string& name) {
  return std::string(SJG_DATA_DIR) + "/" + name;
}

std::map<std::string, int> name_index(const std::vector<std::string>& names) {
  std::map<std::string, int> m;
  for (size_t i = 0; i < names.size(); ++i) m[names[i]] = int(i);
  return m;
}

std::vector<std::vector<std::vector<cplx>>> fixture_tensor(
    const std::vector<ChristoffelFixture>& tab, const std::map<std::string, int>& idx,
    const ExprEnv& env, int n) {
  std::vector<std::vector<std::vector<cplx>>> t(
      n, std::vector<std::vector<cplx>>(n, std::vector<cplx>(n, cplx(0.0))));
  for (const auto& f : tab) {
    int i = idx.at(f.up), j = idx.at(f.lo1), k = idx.at(f.lo2);
    cplx v = eval_expr(f.expr, env);
    t[i][j][k] = v;
    t[i][k][j] = v;
  }
  return t;
}

ExprEnv env_half_plane(std::span<const double> x, const ModelParams& mp) {
  ExprEnv e;
  e["x"] = x[0];
  e["y"] = x[1];
  e["q"] = x[2];
  e["p"] = x[3];
  if (x.size() > 4) e["kappa"] = x[4];
  e["eps"] = mp.eps();
  e["tau"] = mp.tau();
  e["xi"] = x[3] * x[0] + x[2];
  e["S"] = x[0] * x[0] + x[1] * x[1];
  return e;
}

// real-route table check: derived Christoffels against a fixture table
double real_table_err(const std::string& id, const RealMetric& rm, const Chart& ch,
                      const std::vector<ChristoffelFixture>& tab, const SuiteConfig& cfg) {
  auto idx = name_index(ch.names);
  Rng rng(cfg.seed, id);
  double worst = 0.0;
  for (int s = 0; s < cfg.samples; ++s) {
    auto x = ch.sample(rng);
    auto gam = christoffel(rm, x);
    auto exp = fixture_tensor(tab, idx, env_half_plane(x, cfg.mp), rm.dim);
    for (int i = 0; i < rm.dim; ++i)
      for (int j = 0; j < rm.dim; ++j)
        for (int k = 0; k < rm.dim; ++k)
          worst = std::max(worst, std::abs(gam[i][j][k] - exp[i][j][k]));
  }
  return worst;
}

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Christoffels rebuilt from central finite differences of the metric matrix
double fd_christoffel_err(const RealMetric& rm, std::span<const double> x) {
  int n = rm.dim;
  const double h = 1e-5;
  Eigen::MatrixXd g0 = real_at(rm, x);
  Eigen::MatrixXd gi = metric_inverse(g0);
  std::vector<Eigen::MatrixXd> dg(n);
  std::vector<double> xp(x.begin(), x.end());
  for (int k = 0; k < n; ++k) {
    xp[k] += h;
    Eigen::MatrixXd gp = real_at(rm, xp);
    xp[k] -= 2.0 * h;
    Eigen::MatrixXd gm = real_at(rm, xp);
    xp[k] += h;
    dg[k] = (gp - gm) / (2.0 * h);
  }
  auto gam = christoffel(rm, x);
  double worst = 0.0, scale = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l)
          acc += gi(i, l) * (dg[j](l, k) + dg[k](l, j) - dg[l](j, k));
        acc *= 0.5;
        scale = std::max(scale, std::abs(gam[i][j][k]));
        worst = std::max(worst, std::abs(acc - gam[i][j][k]));
      }
  return worst / scale;
}

// printed covariant-derivative matrices of the four base coordinates
double covariant_err_half_plane(const SuiteConfig& cfg) {
  auto rm = real_catalog("METRS2", cfg.mp);
  const Chart& ch = atlas().chart(rm.chart);
  Rng rng(cfg.seed, "covariant-half-plane");
  double worst = 0.0;
  for (int s = 0; s < cfg.samples; ++s) {
    auto pt = ch.sample(rng);
    double x = pt[0], y = pt[1];
    double eps = cfg.mp.eps();
    double y2 = y * y;
    Eigen::MatrixXd DX(4, 4), DY(4, 4), DQ(4, 4), DP(4, 4);
    DX << 0, 1 / y, 0, 0,
          1 / y, 0, 0, 0,
          0, 0, 0, eps * y / 2,
          0, 0, eps * y / 2, eps * x * y;
    DY << -1 / y, 0, 0, 0,
          0, 1 / y, 0, 0,
          0, 0, -eps / 2, -eps * x / 2,
          0, 0, -eps * x / 2, eps / 2 * (y2 - x * x);
    DQ << 0, 0, x / (2 * y2), (x * x - y2) / (2 * y2),
          0, 0, 1 / (2 * y), x / y,
          x / (2 * y2), 1 / (2 * y), 0, 0,
          (x * x - y2) / (2 * y2), x / y, 0, 0;
    DP << 0, 0, -1 / (2 * y2), -x / (2 * y2),
          0, 0, 0, -1 / (2 * y),
          -1 / (2 * y2), 0, 0, 0,
          -x / (2 * y2), -1 / (2 * y), 0, 0;
    const Eigen::MatrixXd want[4] = {DX, DY, DQ, DP};
    for (int i = 0; i < 4; ++i)
      worst = std::max(worst, (covariant_dx(rm, i, pt) - want[i]).cwiseAbs().maxCoeff());
  }
  return worst;
}

double covariant_err_extended(const SuiteConfig& cfg) {
  auto rm = real_catalog("begGG", cfg.mp);
  const Chart& ch = atlas().chart(rm.chart);
  Rng rng(cfg.seed, "covariant-extended");
  double worst = 0.0;
  for (int s = 0; s < cfg.samples; ++s) {
    auto pt = ch.sample(rng);
    double x = pt[0], y = pt[1], q = pt[2], p = pt[3];
    double eps = cfg.mp.eps(), tau = cfg.mp.tau();
    double y2 = y * y, S = x * x + y * y, xi = p * x + q;
    Eigen::MatrixXd DX(5, 5), DY(5, 5), DQ(5, 5), DP(5, 5), DK(5, 5);
    DX.setZero();
    DX(0, 1) = DX(1, 0) = 1 / y;
    DX(2, 3) = DX(3, 2) = eps * y / 2;
    DX(3, 3) = eps * x * y;
    DY.setZero();
    DY(0, 0) = -1 / y;
    DY(1, 1) = 1 / y;
    DY(2, 2) = -eps / 2;
    DY(2, 3) = DY(3, 2) = -eps * x / 2;
    DY(3, 3) = eps / 2 * (y2 - x * x);
    DQ << 0, 0, x / (2 * y2), (x * x - y2) / (2 * y2), 0,
          0, 0, 1 / (2 * y), x / y, 0,
          x / (2 * y2), 1 / (2 * y), -2 * tau * x * p / y, tau * (x * q - p * S) / y, tau * x / y,
          (x * x - y2) / (2 * y2), x / y, tau * (x * q - p * S) / y, 2 * tau * q * S / y, tau * S / y,
          0, 0, tau * x / y, tau * S / y, 0;
    DP << 0, 0, -1 / (2 * y2), -x / (2 * y2), 0,
          0, 0, 0, -1 / (2 * y), 0,
          -1 / (2 * y2), 0, 2 * tau * p / y, -tau * (q - p * x) / y, -tau / y,
          -x / (2 * y2), -1 / (2 * y), -tau * (q - p * x) / y, -2 * tau * x * q / y, -tau * x / y,
          0, 0, -tau / y, -tau * x / y, 0;
    DK << 0, 0, xi / (2 * y2), (x * xi - p * y2) / (2 * y2), 0,
          0, 0, p / (2 * y), (2 * p * x + q) / (2 * y), 0,
          xi / (2 * y2), p / (2 * y), -2 * tau * p * xi / y, tau * (q * q - p * p * S) / y, tau * xi / y,
          (x * xi - p * y2) / (2 * y2), (2 * p * x + q) / (2 * y), tau * (q * q - p * p * S) / y,
              2 * tau * q * (p * S + q * x) / y, tau * (p * S + q * x) / y,
          0, 0, tau * xi / y, tau * (p * S + q * x) / y, 0;
    const Eigen::MatrixXd want[5] = {DX, DY, DQ, DP, DK};
    for (int i = 0; i < 5; ++i)
      worst = std::max(worst, (covariant_dx(rm, i, pt) - want[i]).cwiseAbs().maxCoeff());
  }
  return worst;
}

// two-form restricted to real coordinates of the disk presentation that
// carries the cross terms in (q, p)
Form disc_two_form_full(const ModelParams& mp) {
  double k = mp.k, nu = mp.nu;
  auto slot = [](int i, double c) {
    return make_field([i, c]<class S>(std::span<const GJet<S>> x) { return c * x[i]; });
  };
  Form h(4, 2);
  h.set({0, 1}, make_field([k]<class S>(std::span<const GJet<S>> x) {
          auto d = 1.0 - x[0] * x[0] - x[1] * x[1];
          return 4.0 * k / (d * d);
        }));
  h.set({2, 3}, const_field(cplx(2.0 * nu)));
  // + 2 nu [dq ^ (p da - q db) + dp ^ (p db + q da)]
  h.set({2, 0}, slot(3, 2.0 * nu));
  h.set({2, 1}, slot(2, -2.0 * nu));
  h.set({3, 1}, slot(3, 2.0 * nu));
  h.set({3, 0}, slot(2, 2.0 * nu));
  return h;
}

Form disc_two_form_plain(const ModelParams& mp) {
  double k = mp.k, nu = mp.nu;
  Form f(4, 2);
  f.set({0, 1}, make_field([k]<class S>(std::span<const GJet<S>> x) {
          auto d = 1.0 - x[0] * x[0] - x[1] * x[1];
          return 4.0 * k / (d * d);
        }));
  f.set({2, 3}, const_field(cplx(2.0 * nu)));
  return f;
}

// half-plane (x, y, q, p) two-form with the matrix-variable normalization
Form half_plane_two_form_matrix(const ModelParams& mp) {
  double k = mp.k, nu = mp.nu;
  Form f(4, 2);
  f.set({0, 1}, make_field([k]<class S>(std::span<const GJet<S>> x) {
          return k / (4.0 * x[1] * x[1]);
        }));
  auto slot = [](int i, double c) {
    return make_field([i, c]<class S>(std::span<const GJet<S>> x) { return c * x[i]; });
  };
  f.set({0, 3}, slot(3, 2.0 * nu));  // 2 nu p dx ^ dp
  f.set({2, 1}, slot(3, 2.0 * nu));  // 2 nu p dq ^ dy
  f.set({2, 3}, slot(1, 2.0 * nu));  // 2 nu y dq ^ dp
  return f;
}

Form half_plane_two_form_plain(const ModelParams& mp) {
  double k = mp.k, nu = mp.nu;
  Form f(4, 2);
  f.set({0, 1}, make_field([k]<class S>(std::span<const GJet<S>> x) {
          return k / (x[1] * x[1]);
        }));
  f.set({2, 3}, const_field(cplx(2.0 * nu)));
  return f;
}

// shortfall below the required gap; 0 when the two objects differ enough
double gap_shortfall(double diff, double required = 1e-3) {
  return std::max(0.0, required - diff);
}

int berry_cap(const std::string& pot) {
  if (pot == "Gr22m" || pot == "Gr22p") return 25;
  if (pot == "Gr21m" || pot == "Gr21p") return 60;
  if (pot == "CP3") return 40;
  if (pot == "CP2") return 100;
  return 1 << 30;
}

std::vector<Identity> build_registry() {
  std::vector<Identity> r;

  // ---- christoffel ----------------------------------------------------------

  auto complex_table = [](const std::string& ident, const std::string& metric,
                          const std::string& table) {
    return [=](const SuiteConfig& cfg, int& n) {
      auto hm = hermitian_catalog(metric, cfg.mp);
      const Chart& ch = atlas().chart(hm.chart);
      auto idx = name_index(ch.cnames);
      auto tab = load_christoffel_table(data_path(table));
      Rng rng(cfg.seed, ident);
      n = cfg.samples;
      double worst = 0.0;
      for (int s = 0; s < n; ++s) {
        auto x = ch.sample(rng);
        ExprEnv e;
        if (metric == "metrica") {
          cplx w(x[0], x[1]), z(x[2], x[3]);
          cplx P = 1.0 - w * std::conj(w);
          e["w"] = w;
          e["z"] = z;
          e["wb"] = std::conj(w);
          e["zb"] = std::conj(z);
          e["P"] = P;
          e["etab"] = std::conj((z + std::conj(z) * w) / P);
          e["lam"] = cfg.mp.lambda();
        } else {
          cplx v(x[0], x[1]), u(x[2], x[3]);
          e["v"] = v;
          e["u"] = u;
          e["i"] = cplx(0.0, 1.0);
          e["iota"] = cfg.mp.iota();
          e["y"] = x[1];
          e["r"] = (u - std::conj(u)) / (v - std::conj(v));
        }
        auto exp = fixture_tensor(tab, idx, e, hm.n);
        auto cc = complex_connection(hm, x);
        for (int a = 0; a < hm.n; ++a)
          for (int b = 0; b < hm.n; ++b)
            for (int c = 0; c < hm.n; ++c)
              worst = std::max(worst, std::abs(cc.coeff[a][b][c] - exp[b][a][c]));
      }
      return worst;
    };
  };

  r.push_back({"christoffel", "christoffel-disc", "GAMM", 1e-9,
               complex_table("christoffel-disc", "metrica", "gamm.txt")});
  r.push_back({"christoffel", "christoffel-half-plane", "XGAMMM", 1e-9,
               complex_table("christoffel-half-plane", "kmb", "xgammm.txt")});
  r.push_back({"christoffel", "christoffel-half-plane-real", "GSC", 1e-9,
               [](const SuiteConfig& cfg, int& n) {
                 n = cfg.samples;
                 auto rm = real_catalog("METRS2", cfg.mp);
                 return real_table_err("christoffel-half-plane-real", rm,
                                       atlas().chart(rm.chart),
                                       load_christoffel_table(data_path("gsc.txt")), cfg);
               }});
  r.push_back({"christoffel", "christoffel-hyperbolic", "GM22", 1e-9,
               [](const SuiteConfig& cfg, int& n) {
                 n = cfg.samples;
                 auto rm = real_from_hermitian(hermitian_catalog("X1", cfg.mp));
                 return real_table_err("christoffel-hyperbolic", rm,
                                       atlas().chart("X1_real"),
                                       load_christoffel_table(data_path("gm22.txt")), cfg);
               }});
  r.push_back({"christoffel", "christoffel-extended", "MNM", 1e-9,
               [](const SuiteConfig& cfg, int& n) {
                 n = cfg.samples;
                 auto rm = real_catalog("begGG", cfg.mp);
                 auto tab = load_christoffel_table(data_path("gsc.txt"));
                 auto extra = load_christoffel_table(data_path("mnm.txt"));
                 tab.insert(tab.end(), extra.begin(), extra.end());
                 return real_table_err("christoffel-extended", rm, atlas().chart(rm.chart),
                                       tab, cfg);
               }});
  r.push_back({"christoffel", "christoffel-fd", "central-differences", 1e-6,
               [](const SuiteConfig& cfg, int& n) {
                 n = std::min(cfg.samples, 40);
                 double worst = 0.0;
                 for (const char* id : {"METRS2", "begGG"}) {
                   auto rm = real_catalog(id, cfg.mp);
                   const Chart& ch = atlas().chart(rm.chart);
                   Rng rng(cfg.seed, std::string("christoffel-fd-") + id);
                   for (int s = 0; s < n; ++s)
                     worst = std::max(worst, fd_christoffel_err(rm, ch.sample(rng)));
                 }
                 return worst;
               }});
  r.push_back({"christoffel", "covariant-half-plane", "DX-DP", 1e-10,
               [](const SuiteConfig& cfg, int& n) {
                 n = cfg.samples;
                 return covariant_err_half_plane(cfg);
               }});
  r.push_back({"christoffel", "covariant-extended", "DDX-DDK", 1e-10,
               [](const SuiteConfig& cfg, int& n) {
                 n = cfg.samples;
                 return covariant_err_extended(cfg);
               }});

  // ---- transforms -----------------------------------------------------------

  r.push_back({"transforms", "cayley-jacobian", "341B", 1e-10,
               [](const SuiteConfig& cfg, int& n) {
                 n = cfg.samples;
                 auto old_hm = hermitian_catalog("metrica", cfg.mp);
                 const Chart& nw = atlas().chart("XJ1");
                 const Chart& old = atlas().chart("DJ1");
                 Map T = atlas().transform("XJ1", "DJ1");
                 Rng rng(cfg.seed, "cayley-jacobian");
                 double worst = 0.0;
                 for (int s = 0; s < n; ++s) {
                   auto x = nw.sample(rng);
                   auto tr = transformed_connection(old_hm, T, nw, old, x);
                   cplx v(x[0], x[1]), u(x[2], x[3]);
                   cplx vi = v + cplx(0.0, 1.0);
                   cplx tiw = cplx(0.0, 2.0) / (vi * vi);
                   worst = std::max(worst, std::abs(tr.A(0, 0) - tiw));
                   worst = std::max(worst, std::abs(tr.A(0, 1) + tiw * u));
                   worst = std::max(worst, std::abs(tr.A(1, 0)));
                   worst = std::max(worst, std::abs(tr.A(1, 1) - cplx(0.0, 2.0) / vi));
                 }
                 return worst;
               }});
  r.push_back({"transforms", "connection-transform", "522a", 1e-10,
               [](const SuiteConfig& cfg, int& n) {
                 n = cfg.samples;
                 auto old_hm = hermitian_catalog("metrica", cfg.mp);
                 auto new_hm = hermitian_catalog("kmb", cfg.mp);
                 const Chart& nw = atlas().chart("XJ1");
                 const Chart& old = atlas().chart("DJ1");
                 Map T = atlas().transform("XJ1", "DJ1");
                 Rng rng(cfg.seed, "connection-transform");
                 double worst = 0.0;
                 for (int s = 0; s < n; ++s) {
                   auto x = nw.sample(rng);
                   auto tr = transformed_connection(old_hm, T, nw, old, x);
                   auto direct = complex_connection(new_hm, x);
                   for (int a = 0; a < 2; ++a)
                     for (int b = 0; b < 2; ++b)
                       for (int c = 0; c < 2; ++c)
                         worst = std::max(worst, std::abs(tr.conn.coeff[a][b][c] -
                                                          direct.coeff[a][b][c]));
                 }
                 return worst;
               }});
  r.push_back({"transforms", "metric-potential-disc", "metrica", 1e-10,
               [](const SuiteConfig& cfg, int& n) {
                 n = cfg.samples;
                 auto derived = metric_from_potential("SCWZ", "DJ1",
                                                      potential_catalog("SCWZ", cfg.mp));
                 auto table = hermitian_catalog("metrica", cfg.mp);
                 Rng rng(cfg.seed, "metric-potential-disc");
                 double worst = 0.0;
                 for (int s = 0; s < n; ++s) {
                   auto x = atlas().chart("DJ1").sample(rng);
                   worst = std::max(worst, (hermitian_at(derived, x) - hermitian_at(table, x))
                                               .cwiseAbs().maxCoeff());
                 }
                 return worst;
               }});
  r.push_back({"transforms", "metric-inverse-disc", "hinv", 1e-10,
               [](const SuiteConfig& cfg, int& n) {
                 n = cfg.samples;
                 auto table = hermitian_catalog("metrica", cfg.mp);
                 Rng rng(cfg.seed, "metric-inverse-disc");
                 double k = cfg.mp.k, nu = cfg.mp.nu;
                 double worst = 0.0;
                 for (int s = 0; s < n; ++s) {
                   auto x = atlas().chart("DJ1").sample(rng);
                   cplx w(x[0], x[1]), z(x[2], x[3]);
                   cplx P = 1.0 - w * std::conj(w);
                   cplx eta = (z + std::conj(z) * w) / P;
                   Eigen::MatrixXcd inv(2, 2);
                   inv(0, 0) = P * P / (2.0 * k);
                   inv(1, 0) = -P * P * eta / (2.0 * k);
                   inv(0, 1) = std::conj(inv(1, 0));
                   inv(1, 1) = P / nu + P * P * std::norm(eta) / (2.0 * k);
                   Eigen::MatrixXcd prod = inv * hermitian_at(table, x);
                   worst = std::max(worst, (prod - Eigen::MatrixXcd::Identity(2, 2))
                                               .cwiseAbs().maxCoeff());
                 }
                 return worst;
               }});
  r.push_back({"transforms", "metric-potential-half-plane", "kmb", 1e-10,
               [](const SuiteConfig& cfg, int& n) {
                 n = cfg.samples;
                 auto derived = metric_from_potential("fpp", "XJ1",
                                                      potential_catalog("fpp", cfg.mp));
                 auto table = hermitian_catalog("kmb", cfg.mp);
                 Rng rng(cfg.seed, "metric-potential-half-plane");
                 double worst = 0.0;
                 for (int s = 0; s < n; ++s) {
                   auto x = atlas().chart("XJ1").sample(rng);
                   worst = std::max(worst, (hermitian_at(derived, x) - hermitian_at(table, x))
                                               .cwiseAbs().maxCoeff());
                 }
                 return worst;
               }});
  r.push_back({"transforms", "metric-inverse-half-plane", "kmbINV", 1e-10,
               [](const SuiteConfig& cfg, int& n) {
                 n = cfg.samples;
                 auto table = hermitian_catalog("kmb", cfg.mp);
                 Rng rng(cfg.seed, "metric-inverse-half-plane");
                 double k = cfg.mp.k, nu = cfg.mp.nu;
                 double worst = 0.0;
                 for (int s = 0; s < n; ++s) {
                   auto x = atlas().chart("XJ1").sample(rng);
                   double y = x[1], rr = x[3] / x[1];
                   Eigen::MatrixXcd inv(2, 2);
                   inv(0, 0) = 2.0 * y * y / k;
                   inv(0, 1) = inv(1, 0) = 2.0 * y * y * rr / k;
                   inv(1, 1) = y / nu + 2.0 * rr * rr * y * y / k;
                   Eigen::MatrixXcd prod = inv * hermitian_at(table, x);
                   worst = std::max(worst, (prod - Eigen::MatrixXcd::Identity(2, 2))
                                               .cwiseAbs().maxCoeff());
                 }
                 return worst;
               }});
  r.push_back({"transforms", "metric-potential-eta", "hs", 1e-10,
               [](const SuiteConfig& cfg, int& n) {
                 n = cfg.samples;
                 auto derived = metric_from_potential("222b", "XJ1_eta",
                                                      potential_catalog("222b", cfg.mp));
                 auto table = hermitian_catalog("hs", cfg.mp);
                 Rng rng(cfg.seed, "metric-potential-eta");
                 double worst = 0.0;
                 for (int s = 0; s < n; ++s) {
                   auto x = atlas().chart("XJ1_eta").sample(rng);
                   worst = std::max(worst, (hermitian_at(derived, x) - hermitian_at(table, x))
                                               .cwiseAbs().maxCoeff());
                 }
                 return worst;
               }});
  r.push_back({"transforms", "metric-potential-flat-block", "214b", 1e-10,
               [](const SuiteConfig& cfg, int& n) {
                 n = cfg.samples;
                 auto derived = metric_from_potential("KK1", "XJ1_eta",
                                                      potential_catalog("KK1", cfg.mp));
                 auto rm = real_from_hermitian(derived);
                 auto table = real_catalog("newM", cfg.mp);
                 auto omega = kahler_two_form(derived);
                 auto plain = half_plane_two_form_plain(cfg.mp);
                 Rng rng(cfg.seed, "metric-potential-flat-block");
                 double worst = 0.0;
                 for (int s = 0; s < n; ++s) {
                   auto x = atlas().chart("XJ1_eta").sample(rng);
                   worst = std::max(worst,
                                    (real_at(rm, x) - real_at(table, x)).cwiseAbs().maxCoeff());
                   worst = std::max(worst, max_abs_diff(omega.eval(x), plain.eval(x)));
                 }
                 return worst;
               }});

  // ---- berry ----------------------------------------------------------------

  for (const char* pot : {"D1", "X1", "S2", "CP1", "CP2", "CP3", "Gr11m", "Gr11p",
                          "Gr21m", "Gr21p", "Gr22m", "Gr22p", "SCWZ", "fpp"}) {
    std::string sp = pot;
    std::string ident = "berry-closure-" + sp;
    r.push_back({"berry", ident, sp, 1e-9,
                 [sp, ident](const SuiteConfig& cfg, int& n) {
                   n = std::min(cfg.samples, berry_cap(sp));
                   const Chart& ch = atlas().chart(potential_chart(sp));
                   Rng rng(cfg.seed, ident);
                   double worst = 0.0;
                   for (int s = 0; s < n; ++s)
                     worst = std::max(worst, d_berry_residual(sp, ch.sample(rng), cfg.mp));
                   return worst;
                 }});
  }
  r.push_back({"berry", "berry-loop-stokes", "EQ11", 1e-7,
               [](const SuiteConfig&, int& n) {
                 n = 1;
                 ModelParams mp{1.0, 1.0, 1.0};
                 auto a = closed_form_berry("D1", mp);
                 double rr = 0.5;
                 auto c = circle_curve(2, 0, 1, {0.0, 0.0}, rr);
                 auto sf = disk_surface(2, 0, 1, {0.0, 0.0}, rr);
                 auto ph = berry_phase_loop(a, c, sf);
                 double want = -4.0 * M_PI * rr * rr / (1.0 - rr * rr);
                 return std::max(std::abs(ph.loop - want), std::abs(ph.loop - ph.surface));
               }});
  r.push_back({"berry", "berry-closure-fd", "central-differences", 1e-6,
               [](const SuiteConfig& cfg, int& n) {
                 n = std::min(cfg.samples, 25);
                 auto a = berry_of_potential("SCWZ", cfg.mp);
                 auto omega = kahler_two_form(hermitian_catalog("metrica", cfg.mp));
                 const Chart& ch = atlas().chart("DJ1");
                 Rng rng(cfg.seed, "berry-closure-fd");
                 const double h = 1e-5;
                 double worst = 0.0;
                 for (int s = 0; s < n; ++s) {
                   auto x = ch.sample(rng);
                   auto w = omega.eval(x);
                   double scale = 1.0;
                   for (auto v : w) scale = std::max(scale, std::abs(v));
                   std::vector<std::vector<cplx>> da(4);
                   for (int i = 0; i < 4; ++i) {
                     auto xp = x;
                     xp[i] += h;
                     auto ap = a.eval(xp);
                     xp[i] -= 2.0 * h;
                     auto am = a.eval(xp);
                     da[i].resize(4);
                     for (int j = 0; j < 4; ++j) da[i][j] = (ap[j] - am[j]) / (2.0 * h);
                   }
                   long t = 0;
                   for (int i = 0; i < 4; ++i)
                     for (int j = i + 1; j < 4; ++j, ++t)
                       worst = std::max(worst,
                                        std::abs(da[i][j] - da[j][i] + w[t]) / scale);
                 }
                 return worst;
               }});

  // ---- cosymplectic ---------------------------------------------------------

  r.push_back({"cosymplectic", "cosym-closed", "TT12/42b", 1e-10,
               [](const SuiteConfig& cfg, int& n) {
                 n = cfg.samples;
                 auto s = gtacos_xj1_ext(cfg.mp);
                 auto w1 = xjn_two_form(1, cfg.mp);
                 const Chart& ch = atlas().chart("XJ1_ext");
                 Rng rng(cfg.seed, "cosym-closed");
                 double worst = 0.0;
                 for (int i = 0; i < n; ++i) {
                   auto x = ch.sample(rng);
                   worst = std::max(worst, exterior_derivative_residual(s.omega, x));
                   worst = std::max(worst, exterior_derivative_residual(w1, x));
                 }
                 auto w2 = xjn_two_form(2, cfg.mp);
                 const Chart& ch2 = atlas().chart("XJ2_ext");
                 Rng rng2(cfg.seed, "cosym-closed-n2");
                 for (int i = 0; i < std::min(n, 25); ++i)
                   worst = std::max(worst, exterior_derivative_residual(w2, ch2.sample(rng2)));
                 return worst;
               }});
  r.push_back({"cosymplectic", "cosym-top-form", "cond", 1e-10,
               [](const SuiteConfig& cfg, int& n) {
                 n = cfg.samples;
                 auto s = gtacos_xj1_ext(cfg.mp);
                 auto top = wedge(s.theta, wedge(s.omega, s.omega));
                 const Chart& ch = atlas().chart("XJ1_ext");
                 Rng rng(cfg.seed, "cosym-top-form");
                 double c = 4.0 * cfg.mp.k * cfg.mp.nu * std::sqrt(cfg.mp.delta);
                 double worst = 0.0;
                 for (int i = 0; i < n; ++i) {
                   auto x = ch.sample(rng);
                   worst = std::max(worst,
                                    std::abs(top.eval(x)[0] - c / (x[1] * x[1])));
                 }
                 return worst;
               }});
  r.push_back({"cosymplectic", "cosym-darboux-n1", "NNOOU", 1e-10,
               [](const SuiteConfig& cfg, int& n) {
                 n = cfg.samples;
                 auto pairs = darboux_vectorize(1, cfg.mp);
                 auto src = xjn_two_form(1, cfg.mp);
                 const Chart& ch = atlas().chart("XJ1_ext");
                 Rng rng(cfg.seed, "cosym-darboux-n1");
                 double worst = 0.0;
                 for (int i = 0; i < n; ++i) {
                   auto x = ch.sample(rng);
                   worst = std::max(worst,
                                    max_abs_diff(darboux_coefficients(pairs, 5, x), src.eval(x)));
                 }
                 return worst;
               }});
  r.push_back({"cosymplectic", "cosym-darboux-n2", "NNOOU", 1e-10,
               [](const SuiteConfig& cfg, int& n) {
                 n = std::min(cfg.samples, 25);
                 auto pairs = darboux_vectorize(2, cfg.mp);
                 auto src = xjn_two_form(2, cfg.mp);
                 const Chart& ch = atlas().chart("XJ2_ext");
                 Rng rng(cfg.seed, "cosym-darboux-n2");
                 double worst = 0.0;
                 for (int i = 0; i < n; ++i) {
                   auto x = ch.sample(rng);
                   worst = std::max(worst,
                                    max_abs_diff(darboux_coefficients(pairs, 11, x), src.eval(x)));
                 }
                 return worst;
               }});

  // ---- dynamics -------------------------------------------------------------

  r.push_back({"dynamics", "geodesic-closed-form", "GEO", 1e-10,
               [](const SuiteConfig& cfg, int& n) {
                 n = std::min(cfg.samples, 50);
                 auto rm = real_from_hermitian(hermitian_catalog("X1", cfg.mp));
                 double worst = 0.0;
                 for (int i = 0; i < n; ++i) {
                   double t = 2.0 * i / (n - 1.0 + 1e-300);
                   double sh = 1.0 / std::cosh(t), th = std::tanh(t);
                   double x[2] = {th, sh};
                   double v[2] = {sh * sh, -sh * th};
                   auto acc = geodesic_rhs(rm, x, v);
                   worst = std::max(worst, std::abs(acc[0] + 2.0 * sh * sh * th));
                   worst = std::max(worst, std::abs(acc[1] - sh * (th * th - sh * sh)));
                 }
                 return worst;
               }});
  r.push_back({"dynamics", "geodesic-grassmann", "556", 1e-10,
               [](const SuiteConfig& cfg, int& n) {
                 n = std::min(cfg.samples, 50);
                 auto rm = real_from_hermitian(hermitian_catalog("Gr11m", cfg.mp));
                 double worst = 0.0;
                 for (int i = 0; i < n; ++i) {
                   double t = 1.7 * i / (n - 1.0 + 1e-300);
                   double c = std::cosh(0.5 * t);
                   double x[2] = {std::tanh(0.5 * t), 0.0};
                   double v[2] = {0.5 / (c * c), 0.0};
                   auto acc = geodesic_rhs(rm, x, v);
                   worst = std::max(worst,
                                    std::abs(acc[0] + 0.5 * std::tanh(0.5 * t) / (c * c)));
                   worst = std::max(worst, std::abs(acc[1]));
                 }
                 return worst;
               }});
  r.push_back({"dynamics", "geodesic-rk4", "GEO", 1e-7,
               [](const SuiteConfig& cfg, int& n) {
                 auto rm = real_from_hermitian(hermitian_catalog("X1", cfg.mp));
                 double x0[2] = {0.0, 1.0};
                 double v0[2] = {1.0, 0.0};
                 auto tr = integrate_geodesic(rm, x0, v0, 2.0, 5e-4);
                 n = int(tr.t.size());
                 if (tr.exited) return 1.0;
                 double worst = 0.0;
                 double s0 = metric_speed(rm, tr.x[0], tr.v[0]);
                 for (size_t i = 0; i < tr.t.size(); ++i) {
                   double t = tr.t[i];
                   worst = std::max(worst, std::abs(tr.x[i][0] - std::tanh(t)));
                   worst = std::max(worst, std::abs(tr.x[i][1] - 1.0 / std::cosh(t)));
                   worst = std::max(worst,
                                    std::abs(metric_speed(rm, tr.x[i], tr.v[i]) - s0));
                 }
                 return worst;
               }});
  r.push_back({"dynamics", "geodesic-complex", "ECIV_2", 1e-9,
               [](const SuiteConfig& cfg, int& n) {
                 n = std::min(cfg.samples, 100);
                 auto hm = hermitian_catalog("kmb", cfg.mp);
                 auto rm = real_catalog("NEWMM", cfg.mp);
                 double iota = cfg.mp.iota();
                 const Chart& ch = atlas().chart("XJ1");
                 Rng rng(cfg.seed, "geodesic-complex");
                 double worst = 0.0;
                 for (int it = 0; it < n; ++it) {
                   auto x = ch.sample(rng);
                   double y = x[1], rr = x[3] / x[1];
                   cplx vd(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5));
                   cplx ud(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5));
                   std::vector<cplx> vel{vd, ud};
                   auto acc = complex_geodesic_rhs(hm, x, vel);
                   cplx iI(0.0, 1.0 / iota);
                   cplx ev = -iI * (ud * ud - 2.0 * rr * ud * vd +
                                    (iota / y + rr * rr) * vd * vd);
                   cplx eu = -iI * (rr * ud * ud + (iota / y - 2.0 * rr * rr) * ud * vd +
                                    rr * rr * rr * vd * vd);
                   worst = std::max(worst, std::abs(acc[0] - ev));
                   worst = std::max(worst, std::abs(acc[1] - eu));
                   double vr[4] = {vd.real(), vd.imag(), ud.real(), ud.imag()};
                   auto racc = geodesic_rhs(rm, x, vr);
                   worst = std::max(worst, std::abs(racc[0] - acc[0].real()));
                   worst = std::max(worst, std::abs(racc[1] - acc[0].imag()));
                   worst = std::max(worst, std::abs(racc[2] - acc[1].real()));
                   worst = std::max(worst, std::abs(racc[3] - acc[1].imag()));
                 }
                 return worst;
               }});
  r.push_back({"dynamics", "flow-energy", "corH", 1e-6,
               [](const SuiteConfig& cfg, int& n) {
                 HamiltonianSpec full{{.a = 0.3, .b = -0.4, .c = 0.9, .m = 0.2, .n = 0.6},
                                      nullptr};
                 double s0[5] = {0.3, 1.5, 0.2, -0.4, 0.0};
                 double e0 = extended_energy(full, s0, cfg.mp);
                 auto tr = integrate_flow(full, s0, 1.0, cfg.mp);
                 n = int(tr.t.size());
                 if (tr.exited) return 1.0;
                 double drift = 0.0;
                 for (const auto& p : tr.x)
                   drift = std::max(drift, std::abs(extended_energy(full, p, cfg.mp) - e0));
                 return drift;
               }});

  // ---- discrepancies --------------------------------------------------------
  // the measured value is the shortfall below the required pointwise gap, so
  // a pass (err <= 0) means the two printed objects really differ

  r.push_back({"discrepancies", "gap-two-form-disc", "F2/E32bb", 0.0,
               [](const SuiteConfig& cfg, int& n) {
                 n = 1;
                 auto a = disc_two_form_full(cfg.mp);
                 auto b = disc_two_form_plain(cfg.mp);
                 std::vector<double> x{0.2, 0.1, 0.3, -0.4};
                 return gap_shortfall(max_abs_diff(a.eval(x), b.eval(x)));
               }});
  r.push_back({"discrepancies", "gap-two-form-half-plane", "omM/214b", 0.0,
               [](const SuiteConfig& cfg, int& n) {
                 n = 1;
                 auto a = half_plane_two_form_matrix(cfg.mp);
                 auto b = half_plane_two_form_plain(cfg.mp);
                 std::vector<double> x{0.3, 1.2, 0.4, -0.5};
                 return gap_shortfall(max_abs_diff(a.eval(x), b.eval(x)));
               }});
  r.push_back({"discrepancies", "gap-kernel-log", "222a/DOIIi", 0.0,
               [](const SuiteConfig& cfg, int& n) {
                 n = 1;
                 auto fa = potential_catalog("222a", cfg.mp);
                 std::vector<double> x{0.3, 1.2, 0.4, -0.5};
                 cplx v(x[0], x[1]), u(x[2], x[3]);
                 cplx i1(0.0, 1.0);
                 double y = x[1], N = std::norm(v + i1);
                 cplx br = std::norm(u) -
                           (std::pow(u * std::conj(v) - std::conj(u) * v, 2) +
                            std::pow(std::conj(u) - u, 2)) /
                               (4.0 * y);
                 cplx other = 2.0 * cfg.mp.k * std::log(N / (4.0 * y)) +
                              2.0 * cfg.mp.nu / N * br;
                 return gap_shortfall(std::abs(field_value(fa, x) - other));
               }});

  return r;
}

}  // namespace

const std::vector<Identity>& identity_registry() {
  static const std::vector<Identity> reg = build_registry();
  return reg;
}

std::vector<std::string> suite_ids() {
  return {"christoffel", "transforms", "berry", "cosymplectic", "dynamics",
          "discrepancies"};
}

bool is_suite(const std::string& id) {
  if (id == "all") return true;
  for (const auto& s : suite_ids())
    if (s == id) return true;
  return false;
}

std::vector<IdentityRow> run_suite(const std::string& suite, const SuiteConfig& cfg) {
  if (!is_suite(suite)) throw std::invalid_argument("unknown suite: " + suite);
  std::vector<const Identity*> chosen;
  for (const auto& ident : identity_registry())
    if (suite == "all" || ident.suite == suite) chosen.push_back(&ident);

  std::vector<std::future<IdentityRow>> futs;
  futs.reserve(chosen.size());
  for (const Identity* ident : chosen)
    futs.push_back(std::async(std::launch::async, [ident, &cfg] {
      IdentityRow row;
      row.identity_id = ident->id;
      row.paper_anchor = ident->anchor;
      row.tol = ident->tol;
      row.max_abs_err = ident->run(cfg, row.samples);
      row.pass = row.max_abs_err <= row.tol;
      return row;
    }));
  std::vector<IdentityRow> rows;
  rows.reserve(futs.size());
  for (auto& f : futs) rows.push_back(f.get());
  return rows;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {
std::string jstr(const std::string& s) { return "\"" + s + "\""; }
}  // namespace

std::string report_json(const std::string& suite, const SuiteConfig& cfg,
                        const std::vector<IdentityRow>& rows) {
  std::string out;
  out += "{\n";
  out += "  \"schema\": \"1\",\n";
  out += "  \"suite\": " + jstr(suite) + ",\n";
  out += "  \"seed\": " + std::to_string(cfg.seed) + ",\n";
  out += "  \"samples\": " + std::to_string(cfg.samples) + ",\n";
  out += "  \"params\": {\"k\": " + fmt17(cfg.mp.k) + ", \"nu\": " + fmt17(cfg.mp.nu) +
         ", \"delta\": " + fmt17(cfg.mp.delta) + "},\n";
  out += "  \"conventions\": {\"two_form\": \"riemannian\", "
         "\"line_bundle\": \"minus_i\"},\n";
  out += "  \"identities\": [\n";
  bool all = true;
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    all = all && r.pass;
    out += "    {\"identity_id\": " + jstr(r.identity_id) +
           ", \"paper_anchor\": " + jstr(r.paper_anchor) +
           ", \"samples\": " + std::to_string(r.samples) +
           ", \"max_abs_err\": " + fmt17(r.max_abs_err) +
           ", \"tol\": " + fmt17(r.tol) + ", \"pass\": " + (r.pass ? "true" : "false") +
           "}";
    out += (i + 1 < rows.size()) ? ",\n" : "\n";
  }
  out += "  ],\n";
  out += std::string("  \"pass\": ") + (all ? "true" : "false") + "\n";
  out += "}\n";
  return out;
}

void write_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp);
    f << content;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace sjg::tools
