#include "sjg/metrics.hpp"

#include <cmath>

namespace sjg {

namespace {

// ---- potentials -------------------------------------------------------------

// helpers reused by several potentials
template <class S>
GJet<S> half_plane_y(const GJet<S>& vre, const GJet<S>& vim) {
  (void)vre;
  return vim;
}

ScalarField pot_disk_log(double weight) {
  // f = -weight * log(1 - |w|^2)
  return make_field([weight]<class S>(std::span<const GJet<S>> x) {
    auto w = cx(x[0], x[1]);
    return (-weight) * log(1.0 - w * conj(w));
  });
}

ScalarField pot_upper_log(double weight) {
  // f = -weight * log((v - conj v) / 2i) = -weight * log(Im v)
  return make_field([weight]<class S>(std::span<const GJet<S>> x) {
    return (-weight) * log(x[1]);
  });
}

}  // namespace

ScalarField potential_catalog(const std::string& id, const ModelParams& mp) {
  double k = mp.k, nu = mp.nu;
  if (id == "SCWZ") {
    // f(z, w) = -2k log P + nu (2 z zbar + wbar z^2 + w zbar^2) / (2P), chart DJ1
    return make_field([k, nu]<class S>(std::span<const GJet<S>> x) {
      auto w = cx(x[0], x[1]);
      auto z = cx(x[2], x[3]);
      auto P = 1.0 - w * conj(w);
      auto F = (2.0 * z * conj(z) + conj(w) * z * z + w * conj(z) * conj(z)) / (2.0 * P);
      return (-2.0 * k) * log(P) + nu * F;
    });
  }
  if (id == "GGG") {
    // f(w, eta) = -2k log P + nu [eta etabar - (wbar eta^2 + w etabar^2) / 2]
    return make_field([k, nu]<class S>(std::span<const GJet<S>> x) {
      auto w = cx(x[0], x[1]);
      auto eta = cx(x[2], x[3]);
      auto P = 1.0 - w * conj(w);
      return (-2.0 * k) * log(P) +
             nu * (eta * conj(eta) - (conj(w) * eta * eta + w * conj(eta) * conj(eta)) * 0.5);
    });
  }
  if (id == "fpp") {
    // f(v, u) = -2k log Im v - i nu (u - ubar)^2 / (v - vbar)
    return make_field([k, nu]<class S>(std::span<const GJet<S>> x) {
      auto du = 2.0 * I * x[3];  // u - conj(u)
      auto dv = 2.0 * I * x[1];  // v - conj(v)
      return (-2.0 * k) * log(x[1]) - I * nu * du * du / dv;
    });
  }
  if (id == "222a") {
    return make_field([k, nu]<class S>(std::span<const GJet<S>> x) {
      auto du = 2.0 * I * x[3];
      auto dv = 2.0 * I * x[1];
      return (-0.5 * k) * log(x[1]) - I * nu * du * du / dv;
    });
  }
  if (id == "222b") {
    // f(v, eta) = -(k/2) log Im v + (i nu / 4) (eta - etabar)^2 (v - vbar)
    return make_field([k, nu]<class S>(std::span<const GJet<S>> x) {
      auto de = 2.0 * I * x[3];
      auto dv = 2.0 * I * x[1];
      return (-0.5 * k) * log(x[1]) + (I * nu * 0.25) * de * de * dv;
    });
  }
  if (id == "222c") {
    // f(x, y, q, p) = -(k/2) log y + 2 nu y p^2
    return make_field([k, nu]<class S>(std::span<const GJet<S>> x) {
      return (-0.5 * k) * log(x[1]) + 2.0 * nu * x[1] * x[3] * x[3];
    });
  }
  if (id == "KK1") {
    // f(v, eta) = -2k log Im v - (nu/2) (eta - etabar)^2
    return make_field([k, nu]<class S>(std::span<const GJet<S>> x) {
      auto de = 2.0 * I * x[3];
      return (-2.0 * k) * log(x[1]) - 0.5 * nu * de * de;
    });
  }
  if (id == "KK2") {
    // f(w, eta) = -2k log (1 - |w|^2) / ((1 - w)(1 - wbar)) - (nu/2) (eta - etabar)^2
    return make_field([k, nu]<class S>(std::span<const GJet<S>> x) {
      auto w = cx(x[0], x[1]);
      auto eta = cx(x[2], x[3]);
      auto de = eta - conj(eta);
      auto P = 1.0 - w * conj(w);
      return (-2.0 * k) * log(P / ((1.0 - w) * (1.0 - conj(w)))) - 0.5 * nu * de * de;
    });
  }
  if (id == "FXY") {
    // f(x, y, q, p) = -2k log (4y / N) + nu F, N = x^2 + (y+1)^2
    return make_field([k, nu]<class S>(std::span<const GJet<S>> x) {
      auto N = x[0] * x[0] + (x[1] + 1.0) * (x[1] + 1.0);
      auto S2 = x[0] * x[0] + x[1] * x[1];
      auto F = 2.0 / N *
               ((x[1] + 1.0) * x[2] * x[2] + (S2 + x[1]) * x[3] * x[3] +
                2.0 * x[2] * x[3] * x[0]);
      return (-2.0 * k) * log(4.0 * x[1] / N) + nu * F;
    });
  }
  if (id == "D1") return pot_disk_log(2.0 * k);
  if (id == "X1") return pot_upper_log(2.0 * k);
  if (id == "S2") {
    // f = 2j log(1 + |z|^2), with 2j = k
    return make_field([k]<class S>(std::span<const GJet<S>> x) {
      auto z = cx(x[0], x[1]);
      return k * log(1.0 + z * conj(z));
    });
  }
  if (id.rfind("CP", 0) == 0) {
    int n = std::stoi(id.substr(2));
    return make_field([n]<class S>(std::span<const GJet<S>> x) {
      auto s = x[0] * 0.0;
      for (int i = 0; i < n; ++i) {
        auto z = cx(x[2 * i], x[2 * i + 1]);
        s = s + z * conj(z);
      }
      return log(1.0 + s);
    });
  }
  if (id.rfind("Gr", 0) == 0) {
    // f = eps k log det(1 + eps Z Z^+), Z flattened row-major in the chart
    int n = id[2] - '0', m = id[3] - '0';
    double eps = id.back() == 'm' ? -1.0 : 1.0;
    return make_field([n, m, eps, k]<class S>(std::span<const GJet<S>> x) {
      using T = GJet<S>;
      std::vector<std::vector<T>> G(n, std::vector<T>(n, x[0] * 0.0));
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          T s = x[0] * 0.0;
          for (int c = 0; c < m; ++c) {
            auto za = cx(x[2 * (a * m + c)], x[2 * (a * m + c) + 1]);
            auto zb = cx(x[2 * (b * m + c)], x[2 * (b * m + c) + 1]);
            s = s + za * conj(zb);
          }
          G[a][b] = (a == b ? x[0] * 0.0 + 1.0 : x[0] * 0.0) + eps * s;
        }
      T det = G[0][0];
      if (n == 2) det = G[0][0] * G[1][1] - G[0][1] * G[1][0];
      return (eps * k) * log(det);
    });
  }
  throw DomainError("unknown potential: " + id);
}

std::string potential_chart(const std::string& id) {
  if (id == "SCWZ") return "DJ1";
  if (id == "GGG" || id == "KK2") return "DJ1_eta";
  if (id == "fpp" || id == "222a") return "XJ1";
  if (id == "222b" || id == "KK1") return "XJ1_eta";
  if (id == "222c" || id == "FXY") return "XJ1_real";
  if (id == "D1" || id == "X1" || id == "S2") return id;
  if (id.rfind("CP", 0) == 0 || id.rfind("Gr", 0) == 0) return id;
  throw DomainError("unknown potential: " + id);
}

std::vector<std::string> potential_catalog_ids() {
  return {"SCWZ", "GGG", "fpp", "222a", "222b", "222c", "KK1", "KK2", "FXY",
          "D1",   "X1",  "S2",  "CP1",  "CP2",  "CP3",  "Gr11m", "Gr11p",
          "Gr21m", "Gr21p", "Gr22m", "Gr22p"};
}

// ---- Hermitian catalog ------------------------------------------------------

HermitianMetric hermitian_catalog(const std::string& id, const ModelParams& mp) {
  double k = mp.k, nu = mp.nu;
  HermitianMetric hm;
  hm.id = id;
  if (id == "metrica") {
    // chart order (w, z); printed entries: h_zz = nu/P, h_zw = nu eta / P,
    // h_ww = 2k/P^2 + nu |eta|^2 / P with eta = (z + zbar w) / P
    hm.chart = "DJ1";
    hm.n = 2;
    auto hww = make_field([k, nu]<class S>(std::span<const GJet<S>> x) {
      auto w = cx(x[0], x[1]);
      auto z = cx(x[2], x[3]);
      auto P = 1.0 - w * conj(w);
      auto eta = (z + conj(z) * w) / P;
      return 2.0 * k / (P * P) + nu * eta * conj(eta) / P;
    });
    auto hwz = make_field([nu]<class S>(std::span<const GJet<S>> x) {
      auto w = cx(x[0], x[1]);
      auto z = cx(x[2], x[3]);
      auto P = 1.0 - w * conj(w);
      auto eta = (z + conj(z) * w) / P;
      return nu * conj(eta) / P;
    });
    auto hzw = make_field([nu]<class S>(std::span<const GJet<S>> x) {
      auto w = cx(x[0], x[1]);
      auto z = cx(x[2], x[3]);
      auto P = 1.0 - w * conj(w);
      auto eta = (z + conj(z) * w) / P;
      return nu * eta / P;
    });
    auto hzz = make_field([nu]<class S>(std::span<const GJet<S>> x) {
      auto w = cx(x[0], x[1]);
      auto P = 1.0 - w * conj(w);
      return nu / P;
    });
    hm.h = {{hww, hwz}, {hzw, hzz}};
    return hm;
  }
  if (id == "kmb") {
    // chart order (v, u); r = (u - ubar) / (v - vbar) = n / y
    hm.chart = "XJ1";
    hm.n = 2;
    auto hvv = make_field([k, nu]<class S>(std::span<const GJet<S>> x) {
      auto r = x[3] / x[1];
      return 0.5 * k / (x[1] * x[1]) + nu * r * r / x[1];
    });
    auto hvu = make_field([nu]<class S>(std::span<const GJet<S>> x) {
      return -nu * (x[3] / x[1]) / x[1];
    });
    auto huu = make_field([nu]<class S>(std::span<const GJet<S>> x) { return nu / x[1]; });
    hm.h = {{hvv, hvu}, {hvu, huu}};
    return hm;
  }
  if (id == "hs") {
    // chart order (v, eta); h = [[k/8y^2, nu p], [nu p, nu y]]
    hm.chart = "XJ1_eta";
    hm.n = 2;
    auto hvv = make_field([k]<class S>(std::span<const GJet<S>> x) {
      return 0.125 * k / (x[1] * x[1]);
    });
    auto hve = make_field([nu]<class S>(std::span<const GJet<S>> x) { return nu * x[3]; });
    auto hee = make_field([nu]<class S>(std::span<const GJet<S>> x) { return nu * x[1]; });
    hm.h = {{hvv, hve}, {hve, hee}};
    return hm;
  }
  if (id == "D1" || id == "X1" || id == "S2" || id.rfind("CP", 0) == 0 ||
      id.rfind("Gr", 0) == 0) {
    return metric_from_potential(id, potential_chart(id), potential_catalog(id, mp));
  }
  throw DomainError("unknown hermitian metric: " + id);
}

std::vector<std::string> hermitian_catalog_ids() {
  return {"metrica", "kmb", "hs", "D1", "X1", "S2", "CP1", "CP2", "CP3",
          "Gr11m", "Gr11p", "Gr21m", "Gr21p", "Gr22m", "Gr22p"};
}

// ---- real catalog -----------------------------------------------------------

namespace {

// ds^2 entries for the matrix-variable metric, any n; coordinates are
// vech(x), vech(y) (row-wise upper triangle), then q, p, then kappa.
template <class S>
std::vector<std::vector<GJet<S>>> bigm_matrix(std::span<const GJet<S>> xs, int n,
                                              const ModelParams& mp) {
  using T = GJet<S>;
  int N1 = n * (n + 1) / 2;
  int dim = 2 * N1 + 2 * n + 1;
  T zero = xs[0] * 0.0;

  // unpack symmetric x, y and vectors q, p
  std::vector<std::vector<T>> xm(n, std::vector<T>(n, zero)), ym = xm;
  {
    int idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j, ++idx) {
        xm[i][j] = xm[j][i] = xs[idx];
        ym[i][j] = ym[j][i] = xs[N1 + idx];
      }
  }
  std::vector<T> q(n, zero), p(n, zero);
  for (int i = 0; i < n; ++i) {
    q[i] = xs[2 * N1 + i];
    p[i] = xs[2 * N1 + n + i];
  }
  auto yinv = jet_inverse(ym);

  // differentials expressed in the coordinate basis: d(x_{ij}) etc. are
  // rows of constants; build the quadratic form by accumulating
  // coefficient products of symbolic one-forms.
  // one-form = vector of length dim of T coefficients
  using OneForm = std::vector<T>;
  auto of_zero = [&] { return OneForm(dim, zero); };
  auto coord = [&](int c) {
    auto o = of_zero();
    o[c] = zero + 1.0;
    return o;
  };
  // d x_{ij}, d y_{ij} as one-forms
  auto dmat = [&](int base) {
    std::vector<std::vector<OneForm>> d(n, std::vector<OneForm>(n, of_zero()));
    int idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j, ++idx) d[i][j] = d[j][i] = coord(base + idx);
    return d;
  };
  auto dx = dmat(0), dy = dmat(N1);
  std::vector<OneForm> dq(n), dp(n);
  for (int i = 0; i < n; ++i) {
    dq[i] = coord(2 * N1 + i);
    dp[i] = coord(2 * N1 + n + i);
  }
  OneForm dkappa = coord(2 * N1 + 2 * n);

  std::vector<std::vector<T>> g(dim, std::vector<T>(dim, zero));
  auto add_sym = [&](const OneForm& a, const OneForm& b, const T& c) {
    // accumulate c * (a tensor b), symmetrized
    for (int i = 0; i < dim; ++i) {
      if (value_of(a[i]) == cplx(0.0) && value_of(b[i]) == cplx(0.0)) continue;
      for (int j = 0; j < dim; ++j)
        g[i][j] = g[i][j] + 0.5 * c * (a[i] * b[j] + b[i] * a[j]);
    }
  };
  auto scale = [&](const OneForm& a, const T& c) {
    auto o = of_zero();
    for (int i = 0; i < dim; ++i) o[i] = c * a[i];
    return o;
  };
  auto add_of = [&](OneForm a, const OneForm& b) {
    for (int i = 0; i < dim; ++i) a[i] = a[i] + b[i];
    return a;
  };

  T one = zero + 1.0;
  // alpha tr[(y^-1 dx)^2 + (y^-1 dy)^2]
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          T c = mp.alpha() * yinv[i][j] * yinv[a][b];
          add_sym(dx[j][a], dx[b][i], c);
          add_sym(dy[j][a], dy[b][i], c);
        }
  // gamma [dp (x y^-1 x + y) dp^t + dq y^-1 dq^t + 2 dp x y^-1 dq^t]
  std::vector<std::vector<T>> xyx(n, std::vector<T>(n, zero)), xy = xyx;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a) xy[i][j] = xy[i][j] + xm[i][a] * yinv[a][j];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a) xyx[i][j] = xyx[i][j] + xy[i][a] * xm[a][j];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      add_sym(dp[i], dp[j], mp.gamma() * (xyx[i][j] + ym[i][j]));
      add_sym(dq[i], dq[j], mp.gamma() * yinv[i][j]);
      add_sym(dp[i], dq[j], (2.0 * mp.gamma()) * xy[i][j]);
    }
  // delta (d kappa - p dq^t + q dp^t)^2
  OneForm lam = dkappa;
  for (int i = 0; i < n; ++i) {
    lam = add_of(lam, scale(dq[i], zero - p[i]));
    lam = add_of(lam, scale(dp[i], q[i]));
  }
  add_sym(lam, lam, (zero + mp.delta) * one);
  return g;
}

std::vector<std::vector<ScalarField>> bigm_fields(int n, const ModelParams& mp) {
  int N1 = n * (n + 1) / 2;
  int dim = 2 * N1 + 2 * n + 1;
  std::vector<std::vector<ScalarField>> g(dim, std::vector<ScalarField>(dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      g[i][j] = make_field([i, j, n, mp]<class S>(std::span<const GJet<S>> x) {
        return bigm_matrix(x, n, mp)[i][j];
      });
  return g;
}

}  // namespace

RealMetric real_catalog(const std::string& id, const ModelParams& mp) {
  double k = mp.k, nu = mp.nu, del = mp.delta;
  double al = mp.alpha(), ga = mp.gamma();
  RealMetric rm;
  rm.id = id;
  auto cf = [](double v) { return const_field(cplx(v, 0.0)); };
  if (id == "METRS2") {
    // (x, y, q, p): alpha (dx^2 + dy^2)/y^2 + (gamma/y)(S dp^2 + dq^2 + 2x dp dq)
    rm.chart = "XJ1_real";
    rm.dim = 4;
    auto ayy = make_field([al]<class S>(std::span<const GJet<S>> x) {
      return al / (x[1] * x[1]);
    });
    auto gqq = make_field([ga]<class S>(std::span<const GJet<S>> x) { return ga / x[1]; });
    auto gpp = make_field([ga]<class S>(std::span<const GJet<S>> x) {
      return ga * (x[0] * x[0] + x[1] * x[1]) / x[1];
    });
    auto gpq = make_field([ga]<class S>(std::span<const GJet<S>> x) {
      return ga * x[0] / x[1];
    });
    auto z = cf(0.0);
    rm.g = {{ayy, z, z, z}, {z, ayy, z, z}, {z, z, gqq, gpq}, {z, z, gpq, gpp}};
    return rm;
  }
  if (id == "newM") {
    // (x, y, q, p): k/(2y^2) (dx^2 + dy^2) + nu (dq^2 + dp^2)
    rm.chart = "XJ1_real";
    rm.dim = 4;
    auto ayy = make_field([k]<class S>(std::span<const GJet<S>> x) {
      return 0.5 * k / (x[1] * x[1]);
    });
    auto nf = cf(nu);
    auto z = cf(0.0);
    rm.g = {{ayy, z, z, z}, {z, ayy, z, z}, {z, z, nf, z}, {z, z, z, nf}};
    return rm;
  }
  if (id == "NEWMM") {
    // (x, y, m, n): (k/2 + nu n^2/y)(dx^2 + dy^2)/y^2
    //   + (nu/y)[dm^2 + dn^2 - 2r (dm dx + dn dy)], r = n/y
    rm.chart = "XJ1";
    rm.dim = 4;
    auto gxx = make_field([k, nu]<class S>(std::span<const GJet<S>> x) {
      return (0.5 * k + nu * x[3] * x[3] / x[1]) / (x[1] * x[1]);
    });
    auto gmm = make_field([nu]<class S>(std::span<const GJet<S>> x) { return nu / x[1]; });
    auto gxm = make_field([nu]<class S>(std::span<const GJet<S>> x) {
      return -nu * (x[3] / x[1]) / x[1];
    });
    auto z = cf(0.0);
    rm.g = {{gxx, z, gxm, z}, {z, gxx, z, gxm}, {gxm, z, gmm, z}, {z, gxm, z, gmm}};
    return rm;
  }
  if (id == "begGG") {
    // (x, y, q, p, kappa), the three-parameter extended metric
    rm.chart = "XJ1_ext";
    rm.dim = 5;
    auto ayy = make_field([al]<class S>(std::span<const GJet<S>> x) {
      return al / (x[1] * x[1]);
    });
    auto gqq = make_field([ga, del]<class S>(std::span<const GJet<S>> x) {
      return ga / x[1] + del * x[3] * x[3];
    });
    auto gpp = make_field([ga, del]<class S>(std::span<const GJet<S>> x) {
      return ga * (x[0] * x[0] + x[1] * x[1]) / x[1] + del * x[2] * x[2];
    });
    auto gpq = make_field([ga, del]<class S>(std::span<const GJet<S>> x) {
      return ga * x[0] / x[1] - del * x[3] * x[2];
    });
    auto gpk = make_field([del]<class S>(std::span<const GJet<S>> x) {
      return del * x[2];
    });
    auto gqk = make_field([del]<class S>(std::span<const GJet<S>> x) {
      return (-del) * x[3];
    });
    auto dk = cf(del);
    auto z = cf(0.0);
    rm.g = {{ayy, z, z, z, z},
            {z, ayy, z, z, z},
            {z, z, gqq, gpq, gqk},
            {z, z, gpq, gpp, gpk},
            {z, z, gqk, gpk, dk}};
    return rm;
  }
  if (id == "BIGM-n1" || id == "BIGM-n2") {
    int n = id.back() - '0';
    rm.chart = n == 1 ? "XJ1_ext" : "XJ2_ext";
    rm.dim = n * (n + 3) + 1;
    rm.g = bigm_fields(n, mp);
    return rm;
  }
  throw DomainError("unknown real metric: " + id);
}

std::vector<std::string> real_catalog_ids() {
  return {"METRS2", "newM", "NEWMM", "begGG", "BIGM-n1", "BIGM-n2"};
}

// ---- derived constructions --------------------------------------------------

HermitianMetric metric_from_potential(const std::string& id, const std::string& chart,
                                      ScalarField f) {
  const Chart& c = atlas().chart(chart);
  HermitianMetric hm;
  hm.id = id;
  hm.chart = chart;
  hm.n = c.cdim();
  auto pairs = c.cpairs;
  hm.h.assign(hm.n, std::vector<ScalarField>(hm.n));
  for (int a = 0; a < hm.n; ++a)
    for (int b = 0; b < hm.n; ++b) {
      auto [ax, ay] = pairs[a];
      auto [bx, by] = pairs[b];
      hm.h[a][b] = make_field([f, ax, ay, bx, by]<class S>(std::span<const GJet<S>> x) {
        if constexpr (!can_differentiate<S>) {
          throw std::runtime_error("metric_from_potential: jet nesting depth exhausted");
          return x[0];
        } else {
          auto s = reseed(x);
          auto j = f->eval(std::span<const GJet<GJet<S>>>(s));
          return wirt_ddb(j, ax, ay, bx, by);
        }
      });
    }
  return hm;
}

RealMetric real_from_hermitian(const HermitianMetric& hm) {
  const Chart& c = atlas().chart(hm.chart);
  RealMetric rm;
  rm.id = hm.id;
  rm.chart = hm.chart;
  rm.dim = c.rdim;
  rm.g.assign(rm.dim, std::vector<ScalarField>(rm.dim));
  auto pairs = c.cpairs;
  for (int i = 0; i < rm.dim; ++i)
    for (int j = 0; j < rm.dim; ++j) {
      // g_ij = Re sum h_{a bbar} dz_a(e_i) dzbar_b(e_j)
      std::vector<std::tuple<int, int, cplx>> terms;
      for (size_t a = 0; a < pairs.size(); ++a)
        for (size_t b = 0; b < pairs.size(); ++b) {
          cplx za = pairs[a].first == i ? cplx(1.0) : pairs[a].second == i ? I : cplx(0.0);
          cplx zb = pairs[b].first == j ? cplx(1.0) : pairs[b].second == j ? -I : cplx(0.0);
          cplx w = za * zb;
          if (w != cplx(0.0)) terms.emplace_back(int(a), int(b), w);
        }
      auto h = hm.h;
      rm.g[i][j] = make_field([h, terms]<class S>(std::span<const GJet<S>> x) {
        auto acc = x[0] * 0.0;
        for (auto& [a, b, w] : terms) acc = acc + w * h[a][b]->eval(x);
        return real_part(acc);
      });
    }
  return rm;
}

Eigen::MatrixXcd hermitian_at(const HermitianMetric& hm, std::span<const double> x) {
  Eigen::MatrixXcd out(hm.n, hm.n);
  for (int a = 0; a < hm.n; ++a)
    for (int b = 0; b < hm.n; ++b) out(a, b) = field_value(hm.h[a][b], x);
  return out;
}

Eigen::MatrixXd real_at(const RealMetric& rm, std::span<const double> x) {
  Eigen::MatrixXd out(rm.dim, rm.dim);
  for (int i = 0; i < rm.dim; ++i)
    for (int j = 0; j < rm.dim; ++j) out(i, j) = field_value(rm.g[i][j], x).real();
  return out;
}

double kahler_defect(const HermitianMetric& hm, std::span<const double> x) {
  const Chart& c = atlas().chart(hm.chart);
  auto pairs = c.cpairs;
  int n = hm.n;
  // dh[a][b][g] = d h_{a bbar} / dz_g
  double worst = 0.0;
  std::vector<std::vector<std::vector<cplx>>> dh(
      n, std::vector<std::vector<cplx>>(n, std::vector<cplx>(n)));
  auto s = seed(x);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto j = hm.h[a][b]->eval(std::span<const J1>(s));
      for (int g = 0; g < n; ++g) dh[a][b][g] = wirt_d(j, pairs[g].first, pairs[g].second);
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int g = 0; g < n; ++g) worst = std::max(worst, std::abs(dh[a][b][g] - dh[g][b][a]));
  return worst;
}

Eigen::MatrixXcd metric_inverse(const Eigen::MatrixXcd& h) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h);
  double cond = svd.singularValues()(0) / svd.singularValues().tail(1)(0);
  if (!std::isfinite(cond) || cond > 1e12) throw SingularMetric("metric condition > 1e12");
  return h.inverse();
}

Eigen::MatrixXd metric_inverse(const Eigen::MatrixXd& g) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
  double cond = svd.singularValues()(0) / svd.singularValues().tail(1)(0);
  if (!std::isfinite(cond) || cond > 1e12) throw SingularMetric("metric condition > 1e12");
  return g.inverse();
}

bool positive_definite(const Eigen::MatrixXd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  return es.eigenvalues().minCoeff() > 0.0;
}

}  // namespace sjg
