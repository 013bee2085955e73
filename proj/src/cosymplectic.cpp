#include "sjg/cosymplectic.hpp"

namespace sjg {

int vech_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return i_d(n, n - i) + (j - i);
}

std::vector<double> vech(const Eigen::MatrixXd& A) {
  int n = int(A.rows());
  if (A.cols() != n || !A.isApprox(A.transpose(), 1e-12))
    throw NonSymmetric("vech needs a symmetric matrix");
  std::vector<double> v;
  v.reserve(vech_len(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) v.push_back(A(i, j));
  return v;
}

Eigen::MatrixXd unvech(std::span<const double> v) {
  int n = 0;
  while (vech_len(n) < int(v.size())) ++n;
  if (vech_len(n) != int(v.size())) throw NonSymmetric("unvech: length is not n(n+1)/2");
  Eigen::MatrixXd A(n, n);
  int t = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      A(i, j) = v[t];
      A(j, i) = v[t];
      ++t;
    }
  return A;
}

std::vector<double> vec(const Eigen::MatrixXd& A) {
  std::vector<double> v;
  v.reserve(A.size());
  for (int j = 0; j < A.cols(); ++j)
    for (int i = 0; i < A.rows(); ++i) v.push_back(A(i, j));
  return v;
}

namespace {

// -(y^{-1})_{rc} as a field of the extended chart, y from its vech slots
ScalarField neg_yinv_field(int n, int r, int c) {
  int N1 = vech_len(n);
  return make_field([n, N1, r, c]<class S>(std::span<const GJet<S>> x) {
    std::vector<std::vector<GJet<S>>> y(n, std::vector<GJet<S>>(n, x[0] * 0.0));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        y[i][j] = x[N1 + vech_index(n, i, j)];
        y[j][i] = y[i][j];
      }
    auto inv = jet_inverse(y);
    return inv[r][c] * -1.0;
  });
}

ScalarField slot_field(int slot, double scale) {
  return make_field([slot, scale]<class S>(std::span<const GJet<S>> x) {
    return x[slot] * scale;
  });
}

}  // namespace

std::vector<DarbouxPair> darboux_vectorize(int n, const ModelParams& mp) {
  if (n < 1 || n > 2) throw UnsupportedN("darboux_vectorize supports n = 1, 2");
  int N1 = vech_len(n);
  std::vector<DarbouxPair> pairs;
  for (int r = 0; r < n; ++r)
    for (int c = r; c < n; ++c) {
      double w = (r == c) ? mp.k / 4.0 : mp.k / 2.0;
      pairs.push_back({slot_field(vech_index(n, r, c), w), neg_yinv_field(n, r, c)});
    }
  for (int i = 0; i < n; ++i)
    pairs.push_back({slot_field(2 * N1 + i, 2.0 * mp.nu), slot_field(2 * N1 + n + i, 1.0)});
  return pairs;
}

Form xjn_two_form(int n, const ModelParams& mp) {
  if (n < 1 || n > 2) throw UnsupportedN("xjn_two_form supports n = 1, 2");
  int N1 = vech_len(n);
  int dim = n * (n + 3) + 1;
  // coefficient of dx_s ^ dy_t in (k/4) tr(y^{-1} dx ^ y^{-1} dy) is
  // (k/4) tr(Y E_s Y E_t) with E the symmetric basis pattern of the slot;
  // kept as plain jet arithmetic so the form stays cheap to differentiate
  Form r(dim, 2);
  for (int sa = 0; sa < n; ++sa)
    for (int sb = sa; sb < n; ++sb)
      for (int ta = 0; ta < n; ++ta)
        for (int tb = ta; tb < n; ++tb) {
          auto f = make_field([=, k = mp.k]<class S>(std::span<const GJet<S>> x) {
            std::vector<std::vector<GJet<S>>> y(n, std::vector<GJet<S>>(n, x[0] * 0.0));
            for (int i = 0; i < n; ++i)
              for (int j = i; j < n; ++j) {
                y[i][j] = x[N1 + vech_index(n, i, j)];
                y[j][i] = y[i][j];
              }
            auto Y = jet_inverse(y);
            // M = Y E_s Y, then tr(M E_t)
            auto M = [&](int i, int j) {
              auto v = Y[i][sa] * Y[sb][j];
              if (sa != sb) v = v + Y[i][sb] * Y[sa][j];
              return v;
            };
            auto tr = M(tb, ta);
            if (ta != tb) tr = tr + M(ta, tb);
            return tr * (k / 4.0);
          });
          r.set({vech_index(n, sa, sb), N1 + vech_index(n, ta, tb)}, f);
        }
  for (int i = 0; i < n; ++i)
    r.set({2 * N1 + i, 2 * N1 + n + i}, const_field(cplx(2.0 * mp.nu)));
  return r;
}

std::vector<cplx> darboux_coefficients(const std::vector<DarbouxPair>& pairs, int dim,
                                       std::span<const double> x) {
  auto s = seed(x);
  std::span<const J1> js(s);
  std::vector<cplx> out(binom(dim, 2), 0.0);
  for (const auto& pr : pairs) {
    auto gQ = pr.Q->eval(js);
    auto gP = pr.P->eval(js);
    long t = 0;
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j, ++t) out[t] += gQ.g[i] * gP.g[j] - gQ.g[j] * gP.g[i];
  }
  return out;
}

ACOSStructure gtacos_xj1_ext(const ModelParams& mp) {
  double sd = std::sqrt(mp.delta);
  ACOSStructure s;
  s.chart = "XJ1_ext";
  s.nbar = 2;
  s.theta = Form(5, 1);
  s.theta.set({4}, const_field(cplx(sd)));
  s.theta.set({2}, slot_field(3, -sd));
  s.theta.set({3}, slot_field(2, sd));
  s.omega = Form(5, 2);
  s.omega.set({0, 1}, make_field([k = mp.k]<class S>(std::span<const GJet<S>> x) {
                return k / (x[1] * x[1]);
              }));
  s.omega.set({2, 3}, const_field(cplx(2.0 * mp.nu)));
  return s;
}

ACOSReport acos_check(const ACOSStructure& s, std::span<const double> p) {
  int dim = s.omega.dim;
  if (dim != 2 * s.nbar + 1)
    throw DomainError("acos_check: chart dimension must be 2 nbar + 1");
  ACOSReport rep;

  auto w = s.omega.eval(p);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim, dim);
  for (long t = 0; t < binom(dim, 2); ++t) {
    auto idx = mi_unrank(dim, 2, int(t));
    M(idx[0], idx[1]) = w[t].real();
    M(idx[1], idx[0]) = -w[t].real();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  double tol = dim * svd.singularValues()(0) * 1e-12;
  rep.rank = int((svd.singularValues().array() > tol).count());

  Form pw = s.omega;
  for (int i = 1; i < s.nbar; ++i) pw = wedge(pw, s.omega);
  Form top = wedge(s.theta, pw);
  rep.top_coeff = top.eval(p)[0];

  auto dw = exterior_derivative(s.omega).eval(p);
  for (auto v : dw) rep.d_omega_norm = std::max(rep.d_omega_norm, std::abs(v));

  rep.pass = rep.rank == 2 * s.nbar && std::abs(rep.top_coeff) > 1e-12;
  return rep;
}

}  // namespace sjg
