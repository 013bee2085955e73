#include <cmath>
#include <vector>

#include "doctest.h"
#include "sjg/charts.hpp"
#include "sjg/cosymplectic.hpp"

using namespace sjg;

namespace {

const ModelParams kMP{2.0, 0.7, 1.3};

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("half-vectorisation in the row-wise layout") {
  Eigen::MatrixXd A(2, 2);
  A << 1.5, -0.3, -0.3, 2.0;
  auto v = vech(A);
  REQUIRE(v.size() == 3);
  CHECK(v[0] == 1.5);
  CHECK(v[1] == -0.3);
  CHECK(v[2] == 2.0);

  Eigen::MatrixXd one(1, 1);
  one << 4.0;
  CHECK(vech(one) == std::vector<double>{4.0});

  Eigen::MatrixXd B(3, 3);
  B << 1, 2, 3, 2, 4, 5, 3, 5, 6;
  CHECK((unvech(vech(B)) - B).cwiseAbs().maxCoeff() == 0.0);

  Eigen::MatrixXd C(2, 2);
  C << 1, 2, 3, 4;
  CHECK_THROWS_AS(vech(C), NonSymmetric);

  auto vc = vec(C);
  CHECK(vc == std::vector<double>{1, 3, 2, 4});
}

TEST_CASE("row offsets of the vech arrangement") {
  CHECK(i_d(1, 1) == 0);
  CHECK(i_d(2, 1) == 2);
  CHECK(i_d(2, 2) == 0);
  for (int n = 1; n <= 4; ++n) CHECK(i_d(n, n) == 0);
  CHECK(vech_index(2, 0, 0) == 0);
  CHECK(vech_index(2, 0, 1) == 1);
  CHECK(vech_index(2, 1, 0) == 1);
  CHECK(vech_index(2, 1, 1) == 2);
  CHECK(vech_len(2) == 3);

  CHECK_THROWS_AS(darboux_vectorize(3, kMP), UnsupportedN);
}

TEST_CASE("Darboux pairs rebuild the two-form for n=1") {
  auto pairs = darboux_vectorize(1, kMP);
  REQUIRE(pairs.size() == 2);
  auto src = xjn_two_form(1, kMP);
  Rng rng(5, "darboux1");
  const auto& ch = atlas().chart("XJ1_ext");
  for (int it = 0; it < 50; ++it) {
    auto x = ch.sample(rng);
    CHECK(max_abs_diff(darboux_coefficients(pairs, 5, x), src.eval(x)) < 1e-10);
    // matrix block coefficient k/(4 y^2): a quarter of the oscillator-route
    // normalization of the extended-structure omega
    CHECK(std::abs(src.coeff(x, {0, 1}) - kMP.k / (4.0 * x[1] * x[1])) < 1e-12);
    CHECK(std::abs(src.coeff(x, {2, 3}) - 2.0 * kMP.nu) < 1e-12);
  }
  double x0[5] = {0.4, 1.5, 0.2, -0.3, 0.8};
  CHECK(std::abs(field_value(pairs[0].Q, x0) - kMP.k / 4.0 * 0.4) < 1e-15);
  CHECK(std::abs(field_value(pairs[0].P, x0) + 1.0 / 1.5) < 1e-15);
  CHECK(std::abs(field_value(pairs[1].Q, x0) - 2.0 * kMP.nu * 0.2) < 1e-15);
  CHECK(std::abs(field_value(pairs[1].P, x0) + 0.3) < 1e-15);
}

TEST_CASE("Darboux pairs rebuild the two-form for n=2") {
  auto pairs = darboux_vectorize(2, kMP);
  REQUIRE(pairs.size() == 5);
  auto src = xjn_two_form(2, kMP);
  Rng rng(5, "darboux2");
  const auto& ch = atlas().chart("XJ2_ext");
  for (int it = 0; it < 10; ++it) {
    auto x = ch.sample(rng);
    auto a = darboux_coefficients(pairs, 11, x);
    auto b = src.eval(x);
    CHECK(max_abs_diff(a, b) < 1e-10);

    // bilinear pairing on random tangent vectors
    Eigen::VectorXd u(11), v(11);
    for (int i = 0; i < 11; ++i) {
      u(i) = rng.uniform(-1.0, 1.0);
      v(i) = rng.uniform(-1.0, 1.0);
    }
    cplx pa = 0.0, pb = 0.0;
    for (long t = 0; t < binom(11, 2); ++t) {
      auto idx = mi_unrank(11, 2, int(t));
      double jac = u(idx[0]) * v(idx[1]) - u(idx[1]) * v(idx[0]);
      pa += a[t] * jac;
      pb += b[t] * jac;
    }
    CHECK(std::abs(pa - pb) < 1e-10);

    // oscillator block is 2 nu dq^t ^ dp, exactly
    CHECK(std::abs(src.coeff(x, {6, 8}) - 2.0 * kMP.nu) < 1e-12);
    CHECK(std::abs(src.coeff(x, {7, 9}) - 2.0 * kMP.nu) < 1e-12);
    CHECK(std::abs(src.coeff(x, {6, 9})) < 1e-12);
    CHECK(std::abs(src.coeff(x, {7, 8})) < 1e-12);
  }

  // weights of the matrix block: k/4 on diagonal slots, k/2 off the diagonal
  double x0[11] = {0.3, -0.1, 0.5, 1.4, 0.2, 1.1, 0.1, -0.2, 0.4, 0.3, 0.6};
  CHECK(std::abs(field_value(pairs[0].Q, x0) - kMP.k / 4.0 * 0.3) < 1e-15);
  CHECK(std::abs(field_value(pairs[1].Q, x0) - kMP.k / 2.0 * -0.1) < 1e-15);
  CHECK(std::abs(field_value(pairs[2].Q, x0) - kMP.k / 4.0 * 0.5) < 1e-15);
  Eigen::MatrixXd y(2, 2);
  y << 1.4, 0.2, 0.2, 1.1;
  Eigen::MatrixXd yi = y.inverse();
  CHECK(std::abs(field_value(pairs[0].P, x0) + yi(0, 0)) < 1e-14);
  CHECK(std::abs(field_value(pairs[1].P, x0) + yi(0, 1)) < 1e-14);
  CHECK(std::abs(field_value(pairs[2].P, x0) + yi(1, 1)) < 1e-14);
}

TEST_CASE("the two-forms are closed") {
  auto s = gtacos_xj1_ext(kMP);
  auto w1 = xjn_two_form(1, kMP);
  Rng rng(5, "closed");
  const auto& ch = atlas().chart("XJ1_ext");
  for (int it = 0; it < 200; ++it) {
    auto x = ch.sample(rng);
    CHECK(exterior_derivative_residual(s.omega, x) < 1e-10);
    if (it < 100) CHECK(exterior_derivative_residual(w1, x) < 1e-10);
  }
  auto w2 = xjn_two_form(2, kMP);
  const auto& ch2 = atlas().chart("XJ2_ext");
  for (int it = 0; it < 50; ++it) {
    auto x = ch2.sample(rng);
    CHECK(exterior_derivative_residual(w2, x) < 1e-10);
  }
}

TEST_CASE("extended structure rank and top-form checks") {
  auto s = gtacos_xj1_ext(kMP);
  Rng rng(5, "acos");
  const auto& ch = atlas().chart("XJ1_ext");
  for (int it = 0; it < 25; ++it) {
    auto x = ch.sample(rng);
    auto rep = acos_check(s, x);
    CHECK(rep.rank == 4);
    CHECK(rep.d_omega_norm < 1e-12);
    double want = 4.0 * kMP.k * kMP.nu * std::sqrt(kMP.delta) / (x[1] * x[1]);
    CHECK(std::abs(rep.top_coeff - want) < 1e-10 * std::abs(want));
    CHECK(rep.pass);
  }

  ModelParams unit{1.0, 1.0, 1.0};
  auto s1 = gtacos_xj1_ext(unit);
  double x0[5] = {0.3, 2.0, 0.1, -0.2, 0.5};
  CHECK(std::abs(acos_check(s1, x0).top_coeff - 1.0) < 1e-12);

  // degenerate two-form fails the rank condition
  ACOSStructure bad = s;
  bad.omega = Form(5, 2);
  bad.omega.set({0, 1}, const_field(cplx(1.0)));
  auto rep = acos_check(bad, x0);
  CHECK(rep.rank == 2);
  CHECK(!rep.pass);
}

TEST_CASE("theta in Darboux coordinates") {
  // theta = sum a_I dQ^I + b_I dP^I + c dkappa with a = -(sqrt(delta)/2nu) p,
  // b = sqrt(delta) q on the oscillator pair and zero on the matrix pair
  auto s = gtacos_xj1_ext(kMP);
  auto pairs = darboux_vectorize(1, kMP);
  double sd = std::sqrt(kMP.delta);
  Rng rng(5, "aibi");
  const auto& ch = atlas().chart("XJ1_ext");
  for (int it = 0; it < 25; ++it) {
    auto x = ch.sample(rng);
    double q = x[2], p = x[3];
    auto th = s.theta.eval(x);
    std::vector<cplx> xc(x.begin(), x.end());
    auto gQ = field_partials(*pairs[1].Q, std::span<const cplx>(xc));
    auto gP = field_partials(*pairs[1].P, std::span<const cplx>(xc));
    std::vector<cplx> rec(5, 0.0);
    for (int j = 0; j < 5; ++j)
      rec[j] = -(sd / (2.0 * kMP.nu)) * p * gQ[j] + sd * q * gP[j];
    rec[4] += sd;
    CHECK(max_abs_diff(th, rec) < 1e-12);
  }
}
