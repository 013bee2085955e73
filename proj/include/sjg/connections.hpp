// Levi-Civita connections: Christoffel symbols obtained from the metric by
// automatic differentiation, connection and curvature matrices, covariant
// derivatives of coordinate one-forms, and the transport of a connection
// matrix under a holomorphic change of coordinates.
//
// Matrix layout: rows carry the lower index, so M[a][b] = theta^b_a and the
// products below match omega' = dA A^{-1} + A omega A^{-1} literally.
#ifndef SJG_CONNECTIONS_HPP
#define SJG_CONNECTIONS_HPP

#include <Eigen/Dense>

#include "sjg/charts.hpp"
#include "sjg/forms.hpp"
#include "sjg/metrics.hpp"

namespace sjg {

// Gamma^i_{jk}, first index up, carried at jet level so the result can be
// differentiated again; costs one jet level on top of the metric fields
template <class S>
  requires can_differentiate<S>
std::vector<std::vector<std::vector<GJet<S>>>> christoffel_jets(
    const RealMetric& rm, std::span<const GJet<S>> x) {
  int n = rm.dim;
  auto sx = reseed(x);
  auto G = matrix_eval(rm.g, std::span<const GJet<GJet<S>>>(sx));
  std::vector<std::vector<GJet<S>>> g0(n, std::vector<GJet<S>>(n, x[0] * 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g0[i][j] = G[i][j].v;
  auto ginv = jet_inverse(g0);
  auto dg = [&](int k, int i, int j) -> const GJet<S>& { return G[i][j].g[k]; };
  std::vector<std::vector<std::vector<GJet<S>>>> gam(
      n, std::vector<std::vector<GJet<S>>>(n, std::vector<GJet<S>>(n, x[0] * 0.0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        GJet<S> acc = x[0] * 0.0;
        for (int l = 0; l < n; ++l)
          acc = acc + ginv[i][l] * (dg(j, l, k) + dg(k, l, j) - dg(l, j, k));
        acc = acc * 0.5;
        gam[i][j][k] = acc;
        gam[i][k][j] = acc;
      }
  return gam;
}

// Gamma^i_{jk} at a point
std::vector<std::vector<std::vector<double>>> christoffel(const RealMetric& rm,
                                                          std::span<const double> x);

ScalarField christoffel_field(const RealMetric& rm, int i, int j, int k);

using FormMatrix = std::vector<std::vector<Form>>;

// entry [a][b] = theta^b_a = Gamma^b_{ak} dx^k
FormMatrix connection_matrix(const RealMetric& rm);

// Omega = d omega - omega ^ omega, same layout as connection_matrix
FormMatrix curvature_matrix(const FormMatrix& omega);

// R[j][i][k][l] = d_k Gamma^j_{il} - d_l Gamma^j_{ik}
//                 + Gamma^h_{il} Gamma^j_{hk} - Gamma^h_{ik} Gamma^j_{hl}
std::vector<std::vector<std::vector<std::vector<double>>>> curvature_tensor(
    const RealMetric& rm, std::span<const double> x);

// covariant derivative of dx^i as a quadratic form: entry (j,k) = -Gamma^i_{jk}
Eigen::MatrixXd covariant_dx(const RealMetric& rm, int i, std::span<const double> x);

// holomorphic Christoffels of a Kaehler metric;
// coeff[a][b][c] = Gamma^b_{ac}, the dz_c coefficient of theta^b_a
struct ComplexConnection {
  int n = 0;
  std::vector<std::vector<std::vector<cplx>>> coeff;
};

ComplexConnection complex_connection(const HermitianMetric& hm, std::span<const double> x);

cplx complex_christoffel(const HermitianMetric& hm, int up, int lo1, int lo2,
                         std::span<const double> x);

// connection matrix of old_hm rewritten in the coordinates of chart `nw`
// through the holomorphic map T : nw -> old, evaluated at x_new.
// A(i, j) = d old_j / d new_i over the complex coordinates of the charts.
struct TransformedConnection {
  ComplexConnection conn;            // coefficients over the new dz basis
  Eigen::MatrixXcd A;
  std::vector<Eigen::MatrixXcd> dA;  // dA[k](i, j) = d A(i, j) / d new_k
};

TransformedConnection transformed_connection(const HermitianMetric& old_hm, const Map& T,
                                             const Chart& nw, const Chart& old,
                                             std::span<const double> x_new);

}  // namespace sjg

#endif
