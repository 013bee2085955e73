// Hermitian and real metric catalogs, metrics derived from potentials,
// and the bridge from Hermitian metrics to real coordinate metrics.
#ifndef SJG_METRICS_HPP
#define SJG_METRICS_HPP

#include <Eigen/Dense>

#include "sjg/charts.hpp"
#include "sjg/config.hpp"
#include "sjg/jet.hpp"

namespace sjg {

struct SingularMetric : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// h[a][b] = h_{a bbar}, indexed by the complex pairs of the chart
struct HermitianMetric {
  std::string id;
  std::string chart;
  int n = 0;
  std::vector<std::vector<ScalarField>> h;
};

// g[i][j], indexed by the real coordinates of the chart, real valued
struct RealMetric {
  std::string id;
  std::string chart;
  int dim = 0;
  std::vector<std::vector<ScalarField>> g;
};

// Kahler potentials keyed by stable catalog id
ScalarField potential_catalog(const std::string& id, const ModelParams& mp);
std::string potential_chart(const std::string& id);

HermitianMetric hermitian_catalog(const std::string& id, const ModelParams& mp);
RealMetric real_catalog(const std::string& id, const ModelParams& mp);

std::vector<std::string> hermitian_catalog_ids();
std::vector<std::string> real_catalog_ids();
std::vector<std::string> potential_catalog_ids();

// h_{a bbar} = d^2 f / dz_a dzbar_b over the complex pairs of `chart`
HermitianMetric metric_from_potential(const std::string& id, const std::string& chart,
                                      ScalarField f);

// ds^2 = sum h_{a bbar} dz_a dzbar_b restricted to real tangent vectors
RealMetric real_from_hermitian(const HermitianMetric& hm);

Eigen::MatrixXcd hermitian_at(const HermitianMetric& hm, std::span<const double> x);
Eigen::MatrixXd real_at(const RealMetric& rm, std::span<const double> x);

// max over (a,b,c) of |d h_{a bbar}/dz_c - d h_{c bbar}/dz_a|
double kahler_defect(const HermitianMetric& hm, std::span<const double> x);

// throws SingularMetric when the condition number exceeds 1e12
Eigen::MatrixXcd metric_inverse(const Eigen::MatrixXcd& h);
Eigen::MatrixXd metric_inverse(const Eigen::MatrixXd& g);

bool positive_definite(const Eigen::MatrixXd& g);

// Gauss-Jordan inverse carried at jet level, for metrics made of jets
template <class T>
std::vector<std::vector<T>> jet_inverse(std::vector<std::vector<T>> a) {
  int n = int(a.size());
  std::vector<std::vector<T>> inv(n, std::vector<T>(n, a[0][0] * 0.0));
  for (int i = 0; i < n; ++i) inv[i][i] = a[0][0] * 0.0 + 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    double best = std::abs(value_of(a[c][c]));
    for (int r = c + 1; r < n; ++r) {
      double m = std::abs(value_of(a[r][c]));
      if (m > best) { best = m; piv = r; }
    }
    if (best < 1e-300) throw SingularMetric("jet_inverse: singular matrix");
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    T d = a[c][c];
    for (int j = 0; j < n; ++j) { a[c][j] = a[c][j] / d; inv[c][j] = inv[c][j] / d; }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      T f = a[r][c];
      for (int j = 0; j < n; ++j) {
        a[r][j] = a[r][j] - f * a[c][j];
        inv[r][j] = inv[r][j] - f * inv[c][j];
      }
    }
  }
  return inv;
}

// evaluate every entry of a field matrix at the given jets
template <class S>
std::vector<std::vector<GJet<S>>> matrix_eval(
    const std::vector<std::vector<ScalarField>>& m, std::span<const GJet<S>> x) {
  std::vector<std::vector<GJet<S>>> r(m.size());
  for (size_t i = 0; i < m.size(); ++i) {
    r[i].reserve(m[i].size());
    for (const auto& f : m[i]) r[i].push_back(f->eval(x));
  }
  return r;
}

}  // namespace sjg

#endif
