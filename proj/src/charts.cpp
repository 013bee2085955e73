#include "sjg/charts.hpp"

#include <deque>
#include <set>

namespace sjg {

namespace {

std::vector<double> disk_sample(Rng& rng, double rmax) {
  double r = rmax * std::sqrt(rng.uniform01());
  double th = rng.uniform(0.0, 2.0 * M_PI);
  return {r * std::cos(th), r * std::sin(th)};
}

constexpr double kBoxLo = -3.0, kBoxHi = 3.0;
constexpr double kYLo = 0.2, kYHi = 5.0;

template <class S>
std::vector<GJet<S>> to_reals(std::initializer_list<GJet<S>> zs) {
  std::vector<GJet<S>> out;
  for (const auto& z : zs) {
    out.push_back(real_part(z));
    out.push_back(imag_part(z));
  }
  return out;
}

}  // namespace

Atlas::Atlas() {
  // --- comparison spaces ---
  add_chart({.id = "D1",
             .rdim = 2,
             .names = {"w_re", "w_im"},
             .cpairs = {{0, 1}},
             .cnames = {"w"},
             .in_domain = [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1] < 1.0; },
             .sample = [](Rng& r) { return disk_sample(r, 0.9); }});

  add_chart({.id = "X1",
             .rdim = 2,
             .names = {"x", "y"},
             .cpairs = {{0, 1}},
             .cnames = {"v"},
             .in_domain = [](std::span<const double> x) { return x[1] > 0.0; },
             .sample = [](Rng& r) {
               return std::vector<double>{r.uniform(kBoxLo, kBoxHi), r.uniform(kYLo, kYHi)};
             }});

  add_chart({.id = "X1_real",
             .rdim = 2,
             .names = {"x", "y"},
             .cpairs = {},
             .cnames = {},
             .in_domain = [](std::span<const double> x) { return x[1] > 0.0; },
             .sample = [](Rng& r) {
               return std::vector<double>{r.uniform(kBoxLo, kBoxHi), r.uniform(kYLo, kYHi)};
             }});

  add_chart({.id = "S2",
             .rdim = 2,
             .names = {"z_re", "z_im"},
             .cpairs = {{0, 1}},
             .cnames = {"z"},
             .in_domain = [](std::span<const double>) { return true; },
             .sample = [](Rng& r) {
               return std::vector<double>{r.uniform(kBoxLo, kBoxHi), r.uniform(kBoxLo, kBoxHi)};
             }});

  for (int n = 1; n <= 3; ++n) {
    Chart c;
    c.id = "CP" + std::to_string(n);
    c.rdim = 2 * n;
    for (int i = 0; i < n; ++i) {
      c.names.push_back("z" + std::to_string(i + 1) + "_re");
      c.names.push_back("z" + std::to_string(i + 1) + "_im");
      c.cpairs.push_back({2 * i, 2 * i + 1});
      c.cnames.push_back("z" + std::to_string(i + 1));
    }
    c.in_domain = [](std::span<const double>) { return true; };
    c.sample = [n](Rng& r) {
      std::vector<double> x(2 * n);
      for (auto& v : x) v = r.uniform(kBoxLo, kBoxHi);
      return x;
    };
    add_chart(std::move(c));
  }

  // Grassmann charts: n x m matrix entries, row-major, eps = -1 noncompact
  for (auto [n, m] : {std::pair{1, 1}, {2, 1}, {2, 2}}) {
    for (int sgn : {-1, +1}) {
      Chart c;
      c.id = "Gr" + std::to_string(n) + std::to_string(m) + (sgn < 0 ? "m" : "p");
      c.rdim = 2 * n * m;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < m; ++b) {
          std::string nm = "Z" + std::to_string(a + 1) + std::to_string(b + 1);
          c.names.push_back(nm + "_re");
          c.names.push_back(nm + "_im");
          c.cpairs.push_back({int(c.cpairs.size()) * 2, int(c.cpairs.size()) * 2 + 1});
          c.cnames.push_back(nm);
        }
      c.in_domain = [n, m, sgn](std::span<const double> x) {
        if (sgn > 0) return true;
        Eigen::MatrixXcd Z(n, m);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < m; ++b)
            Z(a, b) = cplx(x[2 * (a * m + b)], x[2 * (a * m + b) + 1]);
        Eigen::MatrixXcd G = Eigen::MatrixXcd::Identity(n, n) - Z * Z.adjoint();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
        return es.eigenvalues().minCoeff() > 0.0;
      };
      double rmax = 0.8 / std::sqrt(double(n * m));
      c.sample = [rmax, dim = 2 * n * m](Rng& r) {
        std::vector<double> x(dim);
        for (int i = 0; i < dim; i += 2) {
          auto d = disk_sample(r, rmax);
          x[i] = d[0];
          x[i + 1] = d[1];
        }
        return x;
      };
      add_chart(std::move(c));
    }
  }

  // --- Jacobi group spaces ---
  add_chart({.id = "DJ1",
             .rdim = 4,
             .names = {"w_re", "w_im", "z_re", "z_im"},
             .cpairs = {{0, 1}, {2, 3}},
             .cnames = {"w", "z"},
             .in_domain = [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1] < 1.0; },
             .sample = [](Rng& r) {
               auto w = disk_sample(r, 0.9);
               return std::vector<double>{w[0], w[1], r.uniform(kBoxLo, kBoxHi),
                                          r.uniform(kBoxLo, kBoxHi)};
             }});

  add_chart({.id = "DJ1_eta",
             .rdim = 4,
             .names = {"w_re", "w_im", "eta_re", "eta_im"},
             .cpairs = {{0, 1}, {2, 3}},
             .cnames = {"w", "eta"},
             .in_domain = [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1] < 1.0; },
             .sample = [](Rng& r) {
               auto w = disk_sample(r, 0.9);
               return std::vector<double>{w[0], w[1], r.uniform(kBoxLo, kBoxHi),
                                          r.uniform(kBoxLo, kBoxHi)};
             }});

  add_chart({.id = "XJ1",
             .rdim = 4,
             .names = {"x", "y", "m", "n"},  // v = x+iy, u = m+in
             .cpairs = {{0, 1}, {2, 3}},
             .cnames = {"v", "u"},
             .in_domain = [](std::span<const double> x) { return x[1] > 0.0; },
             .sample = [](Rng& r) {
               return std::vector<double>{r.uniform(kBoxLo, kBoxHi), r.uniform(kYLo, kYHi),
                                          r.uniform(kBoxLo, kBoxHi), r.uniform(kBoxLo, kBoxHi)};
             }});

  add_chart({.id = "XJ1_eta",
             .rdim = 4,
             .names = {"x", "y", "q", "p"},  // v = x+iy, eta = q+ip
             .cpairs = {{0, 1}, {2, 3}},
             .cnames = {"v", "eta"},
             .in_domain = [](std::span<const double> x) { return x[1] > 0.0; },
             .sample = [](Rng& r) {
               return std::vector<double>{r.uniform(kBoxLo, kBoxHi), r.uniform(kYLo, kYHi),
                                          r.uniform(kBoxLo, kBoxHi), r.uniform(kBoxLo, kBoxHi)};
             }});

  add_chart({.id = "XJ1_real",
             .rdim = 4,
             .names = {"x", "y", "q", "p"},
             .cpairs = {},
             .cnames = {},
             .in_domain = [](std::span<const double> x) { return x[1] > 0.0; },
             .sample = [](Rng& r) {
               return std::vector<double>{r.uniform(kBoxLo, kBoxHi), r.uniform(kYLo, kYHi),
                                          r.uniform(kBoxLo, kBoxHi), r.uniform(kBoxLo, kBoxHi)};
             }});

  add_chart({.id = "XJ1_ext",
             .rdim = 5,
             .names = {"x", "y", "q", "p", "kappa"},
             .cpairs = {},
             .cnames = {},
             .in_domain = [](std::span<const double> x) { return x[1] > 0.0; },
             .sample = [](Rng& r) {
               return std::vector<double>{r.uniform(kBoxLo, kBoxHi), r.uniform(kYLo, kYHi),
                                          r.uniform(kBoxLo, kBoxHi), r.uniform(kBoxLo, kBoxHi),
                                          r.uniform(kBoxLo, kBoxHi)};
             }});

  // symmetric 2x2 (x, y) with y positive definite, plus vectors q, p
  auto y2_ok = [](std::span<const double> x) {
    return x[3] > 0.0 && x[3] * x[5] - x[4] * x[4] > 0.0;
  };
  auto xj2_sample = [](Rng& r, bool ext) {
    std::vector<double> x{r.uniform(kBoxLo, kBoxHi), r.uniform(kBoxLo, kBoxHi),
                          r.uniform(kBoxLo, kBoxHi), r.uniform(kYLo, kYHi),
                          0.0,                       r.uniform(kYLo, kYHi),
                          r.uniform(kBoxLo, kBoxHi), r.uniform(kBoxLo, kBoxHi),
                          r.uniform(kBoxLo, kBoxHi), r.uniform(kBoxLo, kBoxHi)};
    x[4] = 0.8 * std::sqrt(x[3] * x[5]) * r.uniform(-1.0, 1.0);
    if (ext) x.push_back(r.uniform(kBoxLo, kBoxHi));
    return x;
  };
  add_chart({.id = "XJ2_real",
             .rdim = 10,
             .names = {"x11", "x12", "x22", "y11", "y12", "y22", "q1", "q2", "p1", "p2"},
             .cpairs = {},
             .cnames = {},
             .in_domain = y2_ok,
             .sample = [xj2_sample](Rng& r) { return xj2_sample(r, false); }});

  add_chart({.id = "XJ2_ext",
             .rdim = 11,
             .names = {"x11", "x12", "x22", "y11", "y12", "y22", "q1", "q2", "p1", "p2",
                       "kappa"},
             .cpairs = {},
             .cnames = {},
             .in_domain = y2_ok,
             .sample = [xj2_sample](Rng& r) { return xj2_sample(r, true); }});

  // --- bridges ---

  auto identity2 = make_map([]<class S>(std::span<const GJet<S>> x) {
    return std::vector<GJet<S>>(x.begin(), x.end());
  });
  add_transform("X1_real", "X1", identity2, identity2);
  add_transform("XJ1_real", "XJ1_eta", identity2, identity2);

  // Cayley on the base: w = (v - i) / (v + i), v = i (1 + w) / (1 - w)
  add_transform(
      "X1", "D1",
      make_map([]<class S>(std::span<const GJet<S>> x) {
        auto v = cx(x[0], x[1]);
        return to_reals<S>({(v - I) / (v + I)});
      }),
      make_map([]<class S>(std::span<const GJet<S>> x) {
        auto w = cx(x[0], x[1]);
        return to_reals<S>({I * (1.0 + w) / (1.0 - w)});
      }));

  // partial Cayley: (v, u) -> (w, z) with z = 2 i u / (v + i), u = z / (1 - w)
  add_transform(
      "XJ1", "DJ1",
      make_map([]<class S>(std::span<const GJet<S>> x) {
        auto v = cx(x[0], x[1]);
        auto u = cx(x[2], x[3]);
        return to_reals<S>({(v - I) / (v + I), 2.0 * I * u / (v + I)});
      }),
      make_map([]<class S>(std::span<const GJet<S>> x) {
        auto w = cx(x[0], x[1]);
        auto z = cx(x[2], x[3]);
        return to_reals<S>({I * (1.0 + w) / (1.0 - w), z / (1.0 - w)});
      }));

  // fundamental change (w, z) <-> (w, eta): z = eta - w conj(eta),
  // eta = (z + conj(z) w) / (1 - |w|^2)
  add_transform(
      "DJ1", "DJ1_eta",
      make_map([]<class S>(std::span<const GJet<S>> x) {
        auto w = cx(x[0], x[1]);
        auto z = cx(x[2], x[3]);
        auto P = 1.0 - w * conj(w);
        return to_reals<S>({w, (z + conj(z) * w) / P});
      }),
      make_map([]<class S>(std::span<const GJet<S>> x) {
        auto w = cx(x[0], x[1]);
        auto eta = cx(x[2], x[3]);
        return to_reals<S>({w, eta - w * conj(eta)});
      }));

  // fundamental change on the half-plane: (v, u) <-> (v, eta = q + i p),
  // p = Im u / Im v, q = Re u - p Re v, back via u = p v + q
  add_transform(
      "XJ1", "XJ1_eta",
      make_map([]<class S>(std::span<const GJet<S>> x) {
        auto p = x[3] / x[1];
        auto q = x[2] - p * x[0];
        return std::vector<GJet<S>>{x[0], x[1], q, p};
      }),
      make_map([]<class S>(std::span<const GJet<S>> x) {
        auto m = x[3] * x[0] + x[2];
        auto n = x[3] * x[1];
        return std::vector<GJet<S>>{x[0], x[1], m, n};
      }));

  // extended space forgets kappa
  add_transform("XJ1_ext", "XJ1_real",
                make_map([]<class S>(std::span<const GJet<S>> x) {
                  return std::vector<GJet<S>>{x[0], x[1], x[2], x[3]};
                }),
                nullptr);
  add_transform("XJ2_ext", "XJ2_real",
                make_map([]<class S>(std::span<const GJet<S>> x) {
                  return std::vector<GJet<S>>(x.begin(), x.begin() + 10);
                }),
                nullptr);
}

void Atlas::add_chart(Chart c) { charts_.emplace(c.id, std::move(c)); }

void Atlas::add_transform(const std::string& from, const std::string& to, Map fwd, Map inv) {
  edges_[{from, to}] = std::move(fwd);
  if (inv) edges_[{to, from}] = std::move(inv);
}

const Chart& Atlas::chart(const std::string& id) const {
  auto it = charts_.find(id);
  if (it == charts_.end()) throw DomainError("unknown chart: " + id);
  return it->second;
}

std::vector<std::string> Atlas::chart_ids() const {
  std::vector<std::string> out;
  for (const auto& [id, c] : charts_) out.push_back(id);
  return out;
}

Map compose(const Map& first, const Map& second) {
  return make_map([first, second]<class S>(std::span<const GJet<S>> x) {
    auto mid = first->eval(x);
    return second->eval(std::span<const GJet<S>>(mid));
  });
}

Map Atlas::transform(const std::string& from, const std::string& to) const {
  if (from == to)
    return make_map([]<class S>(std::span<const GJet<S>> x) {
      return std::vector<GJet<S>>(x.begin(), x.end());
    });
  // BFS through the bridge graph, composing along the shortest path
  std::map<std::string, std::pair<std::string, Map>> prev;
  std::deque<std::string> queue{from};
  std::set<std::string> seen{from};
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    for (const auto& [key, m] : edges_) {
      if (key.first != cur || seen.count(key.second)) continue;
      prev[key.second] = {cur, m};
      if (key.second == to) {
        // walk back
        std::vector<Map> path;
        std::string node = to;
        while (node != from) {
          path.push_back(prev[node].second);
          node = prev[node].first;
        }
        Map acc = path.back();
        for (int i = int(path.size()) - 2; i >= 0; --i) acc = compose(acc, path[i]);
        return acc;
      }
      seen.insert(key.second);
      queue.push_back(key.second);
    }
  }
  throw DomainError("no transform from " + from + " to " + to);
}

bool Atlas::has_transform(const std::string& from, const std::string& to) const {
  try {
    transform(from, to);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

std::vector<double> Atlas::apply(const std::string& from, const std::string& to,
                                 std::span<const double> x) const {
  return map_apply(transform(from, to), x);
}

std::vector<double> map_apply(const Map& m, std::span<const double> x) {
  auto s = seed(x);
  auto y = m->eval(std::span<const J1>(s));
  std::vector<double> out(y.size());
  for (size_t i = 0; i < y.size(); ++i) out[i] = y[i].v.real();
  return out;
}

Eigen::MatrixXd jacobian(const Map& m, std::span<const double> x) {
  auto s = seed(x);
  auto y = m->eval(std::span<const J1>(s));
  Eigen::MatrixXd J(y.size(), x.size());
  for (size_t j = 0; j < y.size(); ++j)
    for (size_t i = 0; i < x.size(); ++i) J(j, i) = y[j].g[i].real();
  return J;
}

Eigen::MatrixXcd complex_jacobian(const Map& m, const Chart& from, const Chart& to,
                                  std::span<const double> x) {
  auto s = seed(x);
  auto y = m->eval(std::span<const J1>(s));
  int nf = from.cdim(), nt = to.cdim();
  Eigen::MatrixXcd J(nt, nf);
  for (int a = 0; a < nt; ++a) {
    auto [rx, ry] = to.cpairs[a];
    J1 za = y[rx] + I * y[ry];
    for (int b = 0; b < nf; ++b) {
      auto [sx, sy] = from.cpairs[b];
      J(a, b) = wirt_d(za, sx, sy);
    }
  }
  return J;
}

const Atlas& atlas() {
  static Atlas a;
  return a;
}

}  // namespace sjg
