#include "sjg/connections.hpp"

namespace sjg {

std::vector<std::vector<std::vector<double>>> christoffel(const RealMetric& rm,
                                                          std::span<const double> x) {
  // point values only need first derivatives of g, so the metric fields are
  // evaluated one jet level shallower than christoffel_jets
  int n = rm.dim;
  auto s = seed(x);
  std::span<const J1> js(s);
  std::vector<std::vector<J1>> G(n, std::vector<J1>(n, s[0] * 0.0));
  Eigen::MatrixXd g0(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      G[i][j] = rm.g[i][j]->eval(js);
      g0(i, j) = G[i][j].v.real();
    }
  Eigen::MatrixXd ginv = metric_inverse(g0);
  auto dg = [&](int k, int i, int j) { return G[i][j].g[k].real(); };
  std::vector<std::vector<std::vector<double>>> r(
      n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l)
          acc += ginv(i, l) * (dg(j, l, k) + dg(k, l, j) - dg(l, j, k));
        r[i][j][k] = 0.5 * acc;
        r[i][k][j] = 0.5 * acc;
      }
  return r;
}

ScalarField christoffel_field(const RealMetric& rm, int i, int j, int k) {
  return make_field([rm, i, j, k]<class S>(std::span<const GJet<S>> x) -> GJet<S> {
    if constexpr (!can_differentiate<S>)
      throw std::runtime_error("christoffel_field: jet nesting depth exhausted");
    else
      return christoffel_jets<S>(rm, x)[i][j][k];
  });
}

FormMatrix connection_matrix(const RealMetric& rm) {
  int n = rm.dim;
  FormMatrix m(n, std::vector<Form>(n, Form(n, 1)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k) m[a][b].set({k}, christoffel_field(rm, b, a, k));
  return m;
}

FormMatrix curvature_matrix(const FormMatrix& omega) {
  int n = int(omega.size());
  FormMatrix r(n, std::vector<Form>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Form acc = exterior_derivative(omega[a][b]);
      for (int c = 0; c < n; ++c) acc = acc - wedge(omega[a][c], omega[c][b]);
      r[a][b] = acc;
    }
  return r;
}

std::vector<std::vector<std::vector<std::vector<double>>>> curvature_tensor(
    const RealMetric& rm, std::span<const double> x) {
  auto s = seed(x);
  auto gam = christoffel_jets<cplx>(rm, std::span<const J1>(s));
  int n = rm.dim;
  std::vector<std::vector<std::vector<std::vector<double>>>> R(
      n, std::vector<std::vector<std::vector<double>>>(
             n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0))));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          cplx acc = gam[j][i][l].g[k] - gam[j][i][k].g[l];
          for (int h = 0; h < n; ++h)
            acc += gam[h][i][l].v * gam[j][h][k].v - gam[h][i][k].v * gam[j][h][l].v;
          R[j][i][k][l] = acc.real();
        }
  return R;
}

Eigen::MatrixXd covariant_dx(const RealMetric& rm, int i, std::span<const double> x) {
  auto gam = christoffel(rm, x);
  Eigen::MatrixXd m(rm.dim, rm.dim);
  for (int j = 0; j < rm.dim; ++j)
    for (int k = 0; k < rm.dim; ++k) m(j, k) = -gam[i][j][k];
  return m;
}

ComplexConnection complex_connection(const HermitianMetric& hm, std::span<const double> x) {
  const Chart& ch = atlas().chart(hm.chart);
  int n = hm.n;
  auto s = seed(x);
  std::span<const J1> js(s);
  std::vector<std::vector<J1>> hj(n, std::vector<J1>(n));
  Eigen::MatrixXcd h0(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      hj[a][b] = hm.h[a][b]->eval(js);
      h0(a, b) = hj[a][b].v;
    }
  Eigen::MatrixXcd hinv = metric_inverse(h0);
  ComplexConnection cc;
  cc.n = n;
  cc.coeff.assign(n, std::vector<std::vector<cplx>>(n, std::vector<cplx>(n, cplx(0.0))));
  for (int a = 0; a < n; ++a) {
    auto [ax, ay] = ch.cpairs[a];
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        cplx acc = 0.0;
        for (int e = 0; e < n; ++e) acc += hinv(e, b) * wirt_d(hj[c][e], ax, ay);
        cc.coeff[a][b][c] = acc;
      }
  }
  return cc;
}

cplx complex_christoffel(const HermitianMetric& hm, int up, int lo1, int lo2,
                         std::span<const double> x) {
  return complex_connection(hm, x).coeff[lo1][up][lo2];
}

TransformedConnection transformed_connection(const HermitianMetric& old_hm, const Map& T,
                                             const Chart& nw, const Chart& old,
                                             std::span<const double> x_new) {
  int n = nw.cdim();
  auto s1 = seed(x_new);
  auto s2 = reseed(std::span<const J1>(s1));
  auto y = T->eval(std::span<const J2>(s2));

  std::vector<double> x_old(y.size());
  for (size_t j = 0; j < y.size(); ++j) x_old[j] = value_of(y[j]).real();

  // complex jets of the old coordinates over the new real slots
  std::vector<J2> zc(n, J2(int(x_new.size()), J1(int(x_new.size()), cplx(0.0))));
  for (int j = 0; j < n; ++j) {
    auto [pr, pi] = old.cpairs[j];
    zc[j] = y[pr] + I * y[pi];
  }

  TransformedConnection out;
  out.A = Eigen::MatrixXcd(n, n);
  out.dA.assign(n, Eigen::MatrixXcd(n, n));
  for (int i = 0; i < n; ++i) {
    auto [ix, iy] = nw.cpairs[i];
    for (int j = 0; j < n; ++j) {
      out.A(i, j) = wirt_d(zc[j], ix, iy).v;
      for (int k = 0; k < n; ++k) {
        auto [kx, ky] = nw.cpairs[k];
        out.dA[k](i, j) = wirt_dd(zc[j], ix, iy, kx, ky).v;
      }
    }
  }
  Eigen::MatrixXcd ainv = out.A.partialPivLu().inverse();

  auto wold = complex_connection(old_hm, x_old);

  out.conn.n = n;
  out.conn.coeff.assign(n, std::vector<std::vector<cplx>>(n, std::vector<cplx>(n, cplx(0.0))));
  for (int k = 0; k < n; ++k) {
    // old one-forms pulled back: dz_old_c = sum_k A(k, c) dz_new_k
    Eigen::MatrixXcd wk(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        cplx acc = 0.0;
        for (int c = 0; c < n; ++c) acc += wold.coeff[a][b][c] * out.A(k, c);
        wk(a, b) = acc;
      }
    Eigen::MatrixXcd wpk = out.dA[k] * ainv + out.A * wk * ainv;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) out.conn.coeff[a][b][k] = wpk(a, b);
  }
  return out;
}

}  // namespace sjg
