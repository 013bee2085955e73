// Almost cosymplectic structures on the extended half-plane spaces:
// half-vectorisation utilities, Darboux coordinate assignments for the
// matrix-variable two-form, and the (theta, omega) compatibility checks.
//
// vech uses the row-wise upper-triangle layout (a11, a12, ..., a1n, a22, ...),
// not the usual column-stacking convention.
#ifndef SJG_COSYMPLECTIC_HPP
#define SJG_COSYMPLECTIC_HPP

#include <Eigen/Dense>

#include "sjg/forms.hpp"
#include "sjg/metrics.hpp"

namespace sjg {

struct NonSymmetric : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedN : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline int vech_len(int n) { return n * (n + 1) / 2; }

// offset of the row holding i entries (i = n on the first row, 1 on the last)
inline int i_d(int n, int i) { return vech_len(n) - i * (i + 1) / 2; }

std::vector<double> vech(const Eigen::MatrixXd& A);
Eigen::MatrixXd unvech(std::span<const double> v);
std::vector<double> vec(const Eigen::MatrixXd& A);  // column stacking

// position of entry (i, j), i <= j, in the vech list
int vech_index(int n, int i, int j);

struct DarbouxPair {
  ScalarField Q, P;
};

// Darboux assignments (Q^I, P^I) on the extended chart: the matrix block
// carries weight k/4 on diagonal entries and k/2 off the diagonal with
// P from the -y^{-1} entries, the oscillator block Q = 2 nu q, P = p
std::vector<DarbouxPair> darboux_vectorize(int n, const ModelParams& mp);

// the half-plane two-form (k/4) tr(y^{-1} dx ^ y^{-1} dy) + 2 nu dq^t ^ dp
// over the extended chart
Form xjn_two_form(int n, const ModelParams& mp);

// coefficients of sum dQ^I ^ dP^I at a point, in Form coefficient order,
// from a single first-order evaluation of each Q, P
std::vector<cplx> darboux_coefficients(const std::vector<DarbouxPair>& pairs, int dim,
                                       std::span<const double> x);

struct ACOSStructure {
  std::string chart;
  Form theta;  // degree 1
  Form omega;  // degree 2
  int nbar = 0;
};

// theta = sqrt(delta)(dkappa - p dq + q dp), omega = k/y^2 dx^dy + 2nu dq^dp
// on the extended half-plane chart (x, y, q, p, kappa)
ACOSStructure gtacos_xj1_ext(const ModelParams& mp);

struct ACOSReport {
  int rank = 0;
  cplx top_coeff = 0.0;    // coefficient of theta ^ omega^nbar on the top wedge
  double d_omega_norm = 0.0;
  bool pass = false;       // rank == 2 nbar and top_coeff != 0
};

ACOSReport acos_check(const ACOSStructure& s, std::span<const double> p);

}  // namespace sjg

#endif
