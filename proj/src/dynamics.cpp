#include "sjg/dynamics.hpp"

#include <cmath>

namespace sjg {

namespace {

// one classical RK4 step of x' = f(x)
std::vector<double> rk4_step(const std::function<std::vector<double>(std::span<const double>)>& f,
                             std::span<const double> x, double h) {
  auto add = [](std::span<const double> a, const std::vector<double>& b, double s) {
    std::vector<double> r(a.begin(), a.end());
    for (size_t i = 0; i < r.size(); ++i) r[i] += s * b[i];
    return r;
  };
  auto k1 = f(x);
  auto k2 = f(add(x, k1, 0.5 * h));
  auto k3 = f(add(x, k2, 0.5 * h));
  auto k4 = f(add(x, k3, h));
  std::vector<double> r(x.begin(), x.end());
  for (size_t i = 0; i < r.size(); ++i)
    r[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return r;
}

Trajectory run_rk4(const std::function<std::vector<double>(std::span<const double>)>& f,
                   const std::function<bool(std::span<const double>)>& in_domain,
                   std::vector<double> s0, int npos, double t_max, double step) {
  Trajectory tr;
  auto record = [&](double t, const std::vector<double>& s) {
    tr.t.push_back(t);
    tr.x.emplace_back(s.begin(), s.begin() + npos);
    tr.v.emplace_back(s.begin() + npos, s.end());
  };
  record(0.0, s0);
  long nsteps = std::lround(std::ceil(t_max / step - 1e-12));
  for (long i = 0; i < nsteps; ++i) {
    double h = std::min(step, t_max - i * step);
    std::vector<double> nx;
    try {
      nx = rk4_step(f, s0, h);
    } catch (const DomainError&) {
      tr.exited = true;
      return tr;
    } catch (const SingularMetric&) {
      tr.exited = true;
      return tr;
    }
    if (!in_domain(std::span<const double>(nx.data(), npos))) {
      tr.exited = true;
      return tr;
    }
    s0 = std::move(nx);
    record(i * step + h, s0);
  }
  return tr;
}

}  // namespace

std::vector<double> geodesic_rhs(const RealMetric& rm, std::span<const double> x,
                                 std::span<const double> v) {
  auto gam = christoffel(rm, x);
  int n = rm.dim;
  std::vector<double> acc(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) acc[i] -= gam[i][j][k] * v[j] * v[k];
  return acc;
}

std::vector<cplx> complex_geodesic_rhs(const HermitianMetric& hm, std::span<const double> x,
                                       std::span<const cplx> v) {
  auto conn = complex_connection(hm, x);
  std::vector<cplx> acc(conn.n, 0.0);
  for (int b = 0; b < conn.n; ++b)
    for (int a = 0; a < conn.n; ++a)
      for (int c = 0; c < conn.n; ++c) acc[b] -= conn.coeff[a][b][c] * v[a] * v[c];
  return acc;
}

double metric_speed(const RealMetric& rm, std::span<const double> x,
                    std::span<const double> v) {
  auto G = real_at(rm, x);
  double s = 0.0;
  for (int i = 0; i < rm.dim; ++i)
    for (int j = 0; j < rm.dim; ++j) s += G(i, j) * v[i] * v[j];
  return s;
}

Trajectory integrate_geodesic(const RealMetric& rm, std::span<const double> x0,
                              std::span<const double> v0, double t_max, double step) {
  const Chart& ch = atlas().chart(rm.chart);
  int n = rm.dim;
  auto f = [&](std::span<const double> s) {
    auto acc = geodesic_rhs(rm, s.first(n), s.subspan(n));
    std::vector<double> d(s.begin() + n, s.end());
    d.insert(d.end(), acc.begin(), acc.end());
    return d;
  };
  std::vector<double> s0(x0.begin(), x0.end());
  s0.insert(s0.end(), v0.begin(), v0.end());
  if (!ch.in_domain(x0)) throw DomainError("integrate_geodesic: start outside chart");
  return run_rk4(f, ch.in_domain, std::move(s0), n, t_max, step);
}

Trajectory integrate_complex_geodesic(const HermitianMetric& hm, std::span<const double> x0,
                                      std::span<const cplx> v0, double t_max, double step) {
  const Chart& ch = atlas().chart(hm.chart);
  int n = ch.rdim;
  int nc = ch.cdim();
  auto f = [&](std::span<const double> s) {
    std::vector<cplx> vc(nc);
    for (int a = 0; a < nc; ++a) vc[a] = cplx(s[n + 2 * a], s[n + 2 * a + 1]);
    auto acc = complex_geodesic_rhs(hm, s.first(n), vc);
    std::vector<double> d(n + 2 * nc, 0.0);
    for (int a = 0; a < nc; ++a) {
      d[ch.cpairs[a].first] = vc[a].real();
      d[ch.cpairs[a].second] = vc[a].imag();
      d[n + 2 * a] = acc[a].real();
      d[n + 2 * a + 1] = acc[a].imag();
    }
    return d;
  };
  std::vector<double> s0(x0.begin(), x0.end());
  for (int a = 0; a < nc; ++a) {
    s0.push_back(v0[a].real());
    s0.push_back(v0[a].imag());
  }
  if (!ch.in_domain(x0)) throw DomainError("integrate_complex_geodesic: start outside chart");
  return run_rk4(f, ch.in_domain, std::move(s0), n, t_max, step);
}

std::vector<double> parallel_transport(const RealMetric& rm, const Curve& c,
                                       std::span<const double> lam0, TransportKind kind,
                                       double step) {
  const Chart& ch = atlas().chart(rm.chart);
  int n = rm.dim;
  double sign = kind == TransportKind::vector ? -1.0 : 1.0;
  std::vector<double> lam(lam0.begin(), lam0.end());
  long nsteps = std::lround(std::ceil((c.t1 - c.t0) / step - 1e-12));
  for (long i = 0; i < nsteps; ++i) {
    double ta = c.t0 + i * step;
    double h = std::min(step, c.t1 - ta);
    auto f = [&](double t, const std::vector<double>& l) {
      auto x = c.point(t);
      if (!ch.in_domain(x)) throw DomainExit("parallel_transport: curve left the chart");
      auto u = c.velocity(t);
      auto gam = christoffel(rm, x);
      std::vector<double> d(n, 0.0);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int k = 0; k < n; ++k)
            d[a] += sign * (kind == TransportKind::vector ? gam[a][b][k] : gam[b][a][k]) *
                    u[k] * l[b];
      return d;
    };
    auto add = [&](const std::vector<double>& a, const std::vector<double>& b, double s) {
      auto r = a;
      for (int j = 0; j < n; ++j) r[j] += s * b[j];
      return r;
    };
    auto k1 = f(ta, lam);
    auto k2 = f(ta + 0.5 * h, add(lam, k1, 0.5 * h));
    auto k3 = f(ta + 0.5 * h, add(lam, k2, 0.5 * h));
    auto k4 = f(ta + h, add(lam, k3, h));
    for (int j = 0; j < n; ++j)
      lam[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  }
  return lam;
}

namespace {

// value and derivative of the kappa term
std::pair<double, double> h_term(const ScalarField& h, double kappa) {
  if (!h) return {0.0, 0.0};
  double kv[1] = {kappa};
  auto j = jet_eval(*h, kv);
  return {j.v.real(), j.g[0].real()};
}

}  // namespace

double extended_energy(const HamiltonianSpec& hs, std::span<const double> s,
                       const ModelParams& mp) {
  return energy_function(hs.coeffs, s.first(4), mp) + h_term(hs.h, s[4]).first;
}

std::array<double, 5> hamilton_eom_extended(const HamiltonianSpec& hs,
                                            std::span<const double> s,
                                            const ModelParams& mp) {
  if (s[1] <= 0.0) throw DomainError("hamilton_eom_extended: y must be positive");
  const auto& ec = hs.coeffs;
  double a = ec.a, b = ec.b, c = ec.c, m = ec.m, n = ec.n;
  double x = s[0], y = s[1], q = s[2], p = s[3];
  auto [hv, hk] = h_term(hs.h, s[4]);
  double sd = std::sqrt(mp.delta);
  std::array<double, 5> d{};
  d[0] = (c + m) * (-x * x + y * y) + 2.0 * n * x - c + m;
  d[1] = -2.0 * y * ((c + m) * x - n);
  d[2] = (c - m) * p - q * n + b - q / (2.0 * mp.nu) * hk;
  d[3] = -(m + c) * q + n * p - a - p / (2.0 * mp.nu) * hk;
  double H = energy_function(ec, s.first(4), mp) + hv;
  d[4] = (c + m) * q * q + (c - m) * p * p + a * q + b * p - 2.0 * n * p * q - H / sd;
  return d;
}

KappaDotForms kappa_dot_forms(const HamiltonianSpec& hs, std::span<const double> s,
                              const ModelParams& mp) {
  const auto& ec = hs.coeffs;
  double a = ec.a, b = ec.b, c = ec.c, m = ec.m, n = ec.n;
  double x = s[0], y = s[1], q = s[2], p = s[3];
  double hv = h_term(hs.h, s[4]).first;
  double k = mp.k, nu = mp.nu, sd = std::sqrt(mp.delta);
  KappaDotForms out;
  out.primary = hamilton_eom_extended(hs, s, mp)[4];
  out.expanded = (m + c) * ((1.0 - nu / sd) * q * q - k / sd * (x * x + y * y) / y) +
                 (c - m) * ((1.0 - nu / sd) * p * p - k / sd / y) -
                 2.0 * (1.0 - nu / sd) * n * p * q + (1.0 - 2.0 / sd) * (a * q + b * p) -
                 2.0 * k / sd * x / y - hv / sd;
  return out;
}

Trajectory integrate_flow(const HamiltonianSpec& hs, std::span<const double> s0,
                          double t_max, const ModelParams& mp, double step) {
  auto f = [&](std::span<const double> s) {
    auto d = hamilton_eom_extended(hs, s, mp);
    return std::vector<double>(d.begin(), d.end());
  };
  auto in_dom = [](std::span<const double> s) { return s[1] > 0.0; };
  if (!in_dom(s0)) throw DomainError("integrate_flow: y must be positive");
  return run_rk4(f, in_dom, std::vector<double>(s0.begin(), s0.end()), 5, t_max, step);
}

}  // namespace sjg
