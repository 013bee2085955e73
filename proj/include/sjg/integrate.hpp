// Composite Gauss-Legendre quadrature and integrals of 1- and 2-forms
// over parametrized curves and surfaces.
#ifndef SJG_INTEGRATE_HPP
#define SJG_INTEGRATE_HPP

#include <functional>

#include "sjg/forms.hpp"

namespace sjg {

struct Quadrature {
  int nodes = 64;   // Gauss-Legendre nodes per panel
  int panels = 1;
};

// nodes/weights on [-1, 1]
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (t * p0 - p1) / (t * t - 1.0);
      double dt = p0 / pp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = -t;
    x[n - 1 - i] = t;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * pp * pp);
  }
}

// integrate f over [a, b]
inline cplx quad_1d(const std::function<cplx(double)>& f, double a, double b,
                    const Quadrature& q = {}) {
  std::vector<double> xs, ws;
  gauss_legendre(q.nodes, xs, ws);
  cplx acc = 0.0;
  double hp = (b - a) / q.panels;
  for (int p = 0; p < q.panels; ++p) {
    double pa = a + p * hp;
    for (int i = 0; i < q.nodes; ++i) {
      double t = pa + 0.5 * hp * (xs[i] + 1.0);
      acc += 0.5 * hp * ws[i] * f(t);
    }
  }
  return acc;
}

struct Curve {
  std::function<std::vector<double>(double)> point;
  std::function<std::vector<double>(double)> velocity;
  double t0 = 0.0, t1 = 1.0;
};

inline cplx line_integral(const Form& a, const Curve& c, const Quadrature& q = {}) {
  if (a.degree != 1) throw std::invalid_argument("line_integral needs a 1-form");
  return quad_1d(
      [&](double t) {
        auto p = c.point(t);
        auto v = c.velocity(t);
        auto coeff = a.eval(p);
        cplx s = 0.0;
        for (int i = 0; i < a.dim; ++i) s += coeff[i] * v[i];
        return s;
      },
      c.t0, c.t1, q);
}

// surface patch mapped from [s0,s1] x [t0,t1]; evaluated with 2-variable
// jets so tangents come from the same map
struct Surface {
  std::function<std::vector<J1>(const J1&, const J1&)> point;
  double s0 = 0.0, s1 = 1.0, t0 = 0.0, t1 = 1.0;
};

inline cplx surface_integral(const Form& a, const Surface& sf, const Quadrature& q = {}) {
  if (a.degree != 2) throw std::invalid_argument("surface_integral needs a 2-form");
  std::vector<double> xs, ws;
  gauss_legendre(q.nodes, xs, ws);
  cplx acc = 0.0;
  double hs = (sf.s1 - sf.s0) / q.panels;
  double ht = (sf.t1 - sf.t0) / q.panels;
  for (int ps = 0; ps < q.panels; ++ps)
    for (int pt = 0; pt < q.panels; ++pt)
      for (int i = 0; i < q.nodes; ++i)
        for (int j = 0; j < q.nodes; ++j) {
          double s = sf.s0 + ps * hs + 0.5 * hs * (xs[i] + 1.0);
          double t = sf.t0 + pt * ht + 0.5 * ht * (xs[j] + 1.0);
          double sv[2] = {s, t};
          auto sj = seed(sv);
          auto p = sf.point(sj[0], sj[1]);
          std::vector<double> pv(p.size());
          for (size_t r = 0; r < p.size(); ++r) pv[r] = p[r].v.real();
          auto coeff = a.eval(pv);
          cplx sum = 0.0;
          long nc = binom(a.dim, 2);
          for (long rk = 0; rk < nc; ++rk) {
            auto idx = mi_unrank(a.dim, 2, int(rk));
            cplx jac = p[idx[0]].g[0] * p[idx[1]].g[1] - p[idx[0]].g[1] * p[idx[1]].g[0];
            sum += coeff[rk] * jac;
          }
          acc += 0.25 * hs * ht * ws[i] * ws[j] * sum;
        }
  return acc;
}

// convenience curves
inline Curve circle_curve(int dim, int ix, int iy, std::vector<double> center, double r) {
  Curve c;
  c.t0 = 0.0;
  c.t1 = 2.0 * M_PI;
  c.point = [=](double t) {
    auto p = center;
    p[ix] += r * std::cos(t);
    p[iy] += r * std::sin(t);
    return p;
  };
  c.velocity = [=](double t) {
    std::vector<double> v(dim, 0.0);
    v[ix] = -r * std::sin(t);
    v[iy] = r * std::cos(t);
    return v;
  };
  return c;
}

inline Surface disk_surface(int dim, int ix, int iy, std::vector<double> center, double r) {
  Surface sf;
  sf.s0 = 0.0;
  sf.s1 = 1.0;  // radius fraction
  sf.t0 = 0.0;
  sf.t1 = 2.0 * M_PI;
  sf.point = [=](const J1& s, const J1& t) {
    std::vector<J1> p;
    p.reserve(dim);
    for (int i = 0; i < dim; ++i) p.push_back(s * 0.0 + center[i]);
    p[ix] = p[ix] + r * s * cos(t);
    p[iy] = p[iy] + r * s * sin(t);
    return p;
  };
  return sf;
}

}  // namespace sjg

#endif
