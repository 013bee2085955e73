#include "doctest.h"

#include <Eigen/Dense>

#include "sjg/charts.hpp"
#include "sjg/metrics.hpp"
#include "sjg/rng.hpp"

using namespace sjg;

namespace {

const ModelParams kMP{2.0, 0.7, 1.3};

Eigen::MatrixXd pulled_back(const RealMetric& rm, const Map& T, std::span<const double> x) {
  auto y = map_apply(T, x);
  Eigen::MatrixXd J = jacobian(T, x);
  return J.transpose() * real_at(rm, y) * J;
}

}  // namespace

TEST_CASE("disk metric from its potential matches the closed form and inverse") {
  auto f = potential_catalog("SCWZ", kMP);
  auto derived = metric_from_potential("SCWZ", "DJ1", f);
  auto table = hermitian_catalog("metrica", kMP);
  Rng rng(11, "metrica");
  for (int s = 0; s < 40; ++s) {
    auto x = atlas().chart("DJ1").sample(rng);
    auto hd = hermitian_at(derived, x);
    auto ht = hermitian_at(table, x);
    CHECK((hd - ht).cwiseAbs().maxCoeff() < 1e-10);

    cplx w(x[0], x[1]), z(x[2], x[3]);
    cplx P = 1.0 - w * std::conj(w);
    cplx eta = (z + std::conj(z) * w) / P;
    Eigen::MatrixXcd want(2, 2);
    double k = kMP.k, nu = kMP.nu;
    want(0, 0) = P * P / (2.0 * k);
    want(1, 0) = -P * P * eta / (2.0 * k);
    want(0, 1) = std::conj(want(1, 0));
    want(1, 1) = P / nu + P * P * std::norm(eta) / (2.0 * k);
    CHECK((metric_inverse(ht) - want).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(kahler_defect(table, x) < 1e-10);
  }
}

TEST_CASE("half-plane metric from its potential matches the closed form and inverse") {
  auto derived = metric_from_potential("fpp", "XJ1", potential_catalog("fpp", kMP));
  auto table = hermitian_catalog("kmb", kMP);
  Rng rng(11, "kmb");
  for (int s = 0; s < 40; ++s) {
    auto x = atlas().chart("XJ1").sample(rng);
    auto hd = hermitian_at(derived, x);
    auto ht = hermitian_at(table, x);
    CHECK((hd - ht).cwiseAbs().maxCoeff() < 1e-10);

    double k = kMP.k, nu = kMP.nu, y = x[1], r = x[3] / x[1];
    Eigen::MatrixXcd want(2, 2);
    want(0, 0) = 2.0 * y * y / k;
    want(0, 1) = want(1, 0) = 2.0 * y * y * r / k;
    want(1, 1) = y / nu + 2.0 * r * r * y * y / k;
    CHECK((metric_inverse(ht) - want).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(kahler_defect(table, x) < 1e-10);
  }
}

TEST_CASE("two-parameter eta-chart metric from its potential") {
  auto derived = metric_from_potential("222b", "XJ1_eta", potential_catalog("222b", kMP));
  auto table = hermitian_catalog("hs", kMP);
  Rng rng(11, "hs");
  for (int s = 0; s < 40; ++s) {
    auto x = atlas().chart("XJ1_eta").sample(rng);
    CHECK((hermitian_at(derived, x) - hermitian_at(table, x)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(kahler_defect(table, x) < 1e-10);
  }
}

TEST_CASE("potential catalog is Kahler on every space") {
  Rng rng(12, "kahler");
  for (const auto& id : potential_catalog_ids()) {
    auto chart = potential_chart(id);
    const Chart& c = atlas().chart(chart);
    if (c.cdim() == 0) continue;
    auto hm = metric_from_potential(id, chart, potential_catalog(id, kMP));
    for (int s = 0; s < 10; ++s) {
      auto x = c.sample(rng);
      CHECK(kahler_defect(hm, x) < 1e-9);
    }
  }
}

TEST_CASE("real metric induced by the half-plane Hermitian metric") {
  auto rm = real_from_hermitian(hermitian_catalog("kmb", kMP));
  auto table = real_catalog("NEWMM", kMP);
  Rng rng(13, "NEWMM");
  for (int s = 0; s < 40; ++s) {
    auto x = atlas().chart("XJ1").sample(rng);
    CHECK((real_at(rm, x) - real_at(table, x)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(positive_definite(real_at(table, x)));
  }
}

TEST_CASE("two-parameter metric transported between the two half-plane charts") {
  // METRS2 in (x, y, q, p) is the pullback of NEWMM through (q, p) -> (m, n)
  auto newmm = real_catalog("NEWMM", kMP);
  auto metrs2 = real_catalog("METRS2", kMP);
  auto T = atlas().transform("XJ1_eta", "XJ1");
  Rng rng(14, "METRS2");
  for (int s = 0; s < 40; ++s) {
    auto x = atlas().chart("XJ1_eta").sample(rng);
    CHECK((pulled_back(newmm, T, x) - real_at(metrs2, x)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("flat-block metric agrees with the quadratic-exponent potential") {
  auto derived = metric_from_potential("KK1", "XJ1_eta", potential_catalog("KK1", kMP));
  auto rm = real_from_hermitian(derived);
  auto table = real_catalog("newM", kMP);
  Rng rng(15, "newM");
  for (int s = 0; s < 40; ++s) {
    auto x = atlas().chart("XJ1_eta").sample(rng);
    CHECK((real_at(rm, x) - real_at(table, x)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("extended metric equals base metric plus the contact square") {
  auto ext = real_catalog("begGG", kMP);
  auto base = real_catalog("METRS2", kMP);
  auto bigm = real_catalog("BIGM-n1", kMP);
  Rng rng(16, "begGG");
  for (int s = 0; s < 40; ++s) {
    auto x5 = atlas().chart("XJ2_ext").sample(rng);  // just for variety of kappa
    auto x = atlas().chart("XJ1_ext").sample(rng);
    (void)x5;
    Eigen::MatrixXd ge = real_at(ext, x);
    Eigen::MatrixXd gb = Eigen::MatrixXd::Zero(5, 5);
    gb.topLeftCorner(4, 4) = real_at(base, std::span<const double>(x.data(), 4));
    // lambda = sqrt(delta) (d kappa - p dq + q dp) over (x, y, q, p, kappa)
    Eigen::VectorXd lam(5);
    lam << 0.0, 0.0, -x[3], x[2], 1.0;
    lam *= std::sqrt(kMP.delta);
    gb += lam * lam.transpose();
    CHECK((ge - gb).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((real_at(bigm, x) - ge).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(positive_definite(ge));
  }
}

TEST_CASE("matrix-variable metric at size two") {
  auto bigm = real_catalog("BIGM-n2", kMP);
  Rng rng(17, "BIGM-n2");
  for (int s = 0; s < 10; ++s) {
    auto x = atlas().chart("XJ2_ext").sample(rng);
    Eigen::MatrixXd g = real_at(bigm, x);
    CHECK((g - g.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(positive_definite(g));
    CHECK(g(10, 10) == doctest::Approx(kMP.delta).epsilon(1e-12));
  }
  // diagonal y, everything else simple: the (x11, x11) entry of the
  // alpha block is alpha * (y^-1)_{11}^2
  std::vector<double> x(11, 0.0);
  x[3] = 2.0;  // y11
  x[5] = 5.0;  // y22
  Eigen::MatrixXd g = real_at(bigm, x);
  CHECK(g(0, 0) == doctest::Approx(kMP.alpha() / 4.0).epsilon(1e-12));
  CHECK(g(2, 2) == doctest::Approx(kMP.alpha() / 25.0).epsilon(1e-12));
  // q block: gamma * y^-1
  CHECK(g(6, 6) == doctest::Approx(kMP.gamma() / 2.0).epsilon(1e-12));
  CHECK(g(7, 7) == doctest::Approx(kMP.gamma() / 5.0).epsilon(1e-12));
  // p block with x = 0: gamma * y
  CHECK(g(8, 8) == doctest::Approx(kMP.gamma() * 2.0).epsilon(1e-12));
  CHECK(g(9, 9) == doctest::Approx(kMP.gamma() * 5.0).epsilon(1e-12));
}

TEST_CASE("different logarithm normalizations of the kernel disagree") {
  // the two printed forms of the kernel on the half-plane differ; keep the
  // gap as a regression guard
  auto fa = potential_catalog("222a", kMP);
  std::vector<double> x{0.3, 1.2, 0.4, -0.5};
  cplx v(x[0], x[1]), u(x[2], x[3]);
  double y = x[1], N = std::norm(v + I);
  cplx br = std::norm(u) - (std::pow(u * std::conj(v) - std::conj(u) * v, 2) +
                            std::pow(std::conj(u) - u, 2)) /
                               (4.0 * y);
  cplx other = 2.0 * kMP.k * std::log(N / (4.0 * y)) + 2.0 * kMP.nu / N * br;
  CHECK(std::abs(field_value(fa, x) - other) > 1e-3);
}

TEST_CASE("matching potentials across the eta change of variables") {
  // the real-coordinate form of the quarter-weight potential
  auto fb = potential_catalog("222b", kMP);
  auto fc = potential_catalog("222c", kMP);
  Rng rng(18, "222c");
  for (int s = 0; s < 20; ++s) {
    auto x = atlas().chart("XJ1_eta").sample(rng);
    CHECK(std::abs(field_value(fb, x) - field_value(fc, x)) < 1e-12);
  }
}

TEST_CASE("singular metrics are rejected") {
  Eigen::MatrixXd g(2, 2);
  g << 1.0, 1.0, 1.0, 1.0 + 1e-15;
  CHECK_THROWS_AS(metric_inverse(g), SingularMetric);
  Eigen::MatrixXcd h(2, 2);
  h.setZero();
  CHECK_THROWS_AS(metric_inverse(h), SingularMetric);
}

TEST_CASE("potentials transported by the holomorphic bridges") {
  // the disk-potential / eta-chart potential pair differ by pluriharmonic
  // terms only, so their derived metrics agree after pullback
  auto hm_disk = metric_from_potential("GGG", "DJ1_eta", potential_catalog("GGG", kMP));
  auto hm_kk2 = metric_from_potential("KK2", "DJ1_eta", potential_catalog("KK2", kMP));
  Rng rng(19, "GGG");
  for (int s = 0; s < 20; ++s) {
    auto x = atlas().chart("DJ1_eta").sample(rng);
    auto hd = hermitian_at(hm_disk, x);
    // KK2 keeps the hyperbolic block and flattens the eta block
    auto hk = hermitian_at(hm_kk2, x);
    CHECK(std::abs(hd(0, 0).real() - hk(0, 0).real()) < 1e-10);
    CHECK(std::abs(hk(1, 1) - cplx(kMP.nu)) < 1e-10);
  }
}
