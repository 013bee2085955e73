// Second-order forward-mode jets over real coordinates, nestable for
// higher derivatives.  Values are complex so Wirtinger derivatives of
// functions of z = x + iy fall out of the real partials.
#ifndef SJG_JET_HPP
#define SJG_JET_HPP

#include <cassert>
#include <cmath>
#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace sjg {

using cplx = std::complex<double>;
inline constexpr cplx I{0.0, 1.0};

// Jet carrying value, gradient and (symmetric) Hessian in m variables.
// The scalar type S is either cplx or another GJet, giving derivative
// orders 2, 4, ... by nesting.
template <class S>
struct GJet {
  S v{};
  std::vector<S> g;  // size m
  std::vector<S> h;  // m*m row-major, symmetric
  int m = 0;

  GJet() = default;
  GJet(int m_, const S& val) : v(val), g(m_, zero_of(val)), h(size_t(m_) * m_, zero_of(val)), m(m_) {}

  S& H(int a, int b) { return h[size_t(a) * m + b]; }
  const S& H(int a, int b) const { return h[size_t(a) * m + b]; }

  static S zero_of(const S& x) {
    if constexpr (std::is_same_v<S, cplx>) { (void)x; return cplx(0.0); }
    else return x * 0.0;
  }
};

using J1 = GJet<cplx>;
using J2 = GJet<J1>;
using J3 = GJet<J2>;

// nesting depth: cplx -> 0, J1 -> 1, ...
template <class S>
struct jet_depth { static constexpr int value = 0; };
template <class S>
struct jet_depth<GJet<S>> { static constexpr int value = jet_depth<S>::value + 1; };

// deepest supported level is J3; anything needing one more level past S
// must be guarded with this
template <class S>
inline constexpr bool can_differentiate = jet_depth<GJet<S>>::value < 3;

// ---- arithmetic -----------------------------------------------------------

template <class S>
GJet<S> operator+(const GJet<S>& a, const GJet<S>& b) {
  assert(a.m == b.m);
  GJet<S> r = a;
  r.v = a.v + b.v;
  for (int i = 0; i < a.m; ++i) r.g[i] = a.g[i] + b.g[i];
  for (size_t i = 0; i < a.h.size(); ++i) r.h[i] = a.h[i] + b.h[i];
  return r;
}

template <class S>
GJet<S> operator-(const GJet<S>& a, const GJet<S>& b) {
  assert(a.m == b.m);
  GJet<S> r = a;
  r.v = a.v - b.v;
  for (int i = 0; i < a.m; ++i) r.g[i] = a.g[i] - b.g[i];
  for (size_t i = 0; i < a.h.size(); ++i) r.h[i] = a.h[i] - b.h[i];
  return r;
}

template <class S>
GJet<S> operator-(const GJet<S>& a) {
  GJet<S> r = a;
  r.v = -a.v;
  for (int i = 0; i < a.m; ++i) r.g[i] = -a.g[i];
  for (size_t i = 0; i < a.h.size(); ++i) r.h[i] = -a.h[i];
  return r;
}

template <class S>
GJet<S> operator*(const GJet<S>& a, const GJet<S>& b) {
  assert(a.m == b.m);
  GJet<S> r = a;
  r.v = a.v * b.v;
  for (int i = 0; i < a.m; ++i) r.g[i] = a.g[i] * b.v + b.g[i] * a.v;
  for (int i = 0; i < a.m; ++i)
    for (int j = 0; j < a.m; ++j)
      r.H(i, j) = a.H(i, j) * b.v + b.H(i, j) * a.v + a.g[i] * b.g[j] + b.g[i] * a.g[j];
  return r;
}

// scalar (constant) operands
template <class S, class C>
  requires(std::is_same_v<C, double> || std::is_same_v<C, cplx>)
GJet<S> operator*(const GJet<S>& a, C c) {
  GJet<S> r = a;
  r.v = a.v * c;
  for (int i = 0; i < a.m; ++i) r.g[i] = a.g[i] * c;
  for (size_t i = 0; i < a.h.size(); ++i) r.h[i] = a.h[i] * c;
  return r;
}
template <class S, class C>
  requires(std::is_same_v<C, double> || std::is_same_v<C, cplx>)
GJet<S> operator*(C c, const GJet<S>& a) { return a * c; }

template <class S, class C>
  requires(std::is_same_v<C, double> || std::is_same_v<C, cplx>)
GJet<S> operator+(const GJet<S>& a, C c) {
  GJet<S> r = a;
  r.v = a.v + c;
  return r;
}
template <class S, class C>
  requires(std::is_same_v<C, double> || std::is_same_v<C, cplx>)
GJet<S> operator+(C c, const GJet<S>& a) { return a + c; }

template <class S, class C>
  requires(std::is_same_v<C, double> || std::is_same_v<C, cplx>)
GJet<S> operator-(const GJet<S>& a, C c) { return a + (-1.0 * c); }
template <class S, class C>
  requires(std::is_same_v<C, double> || std::is_same_v<C, cplx>)
GJet<S> operator-(C c, const GJet<S>& a) { return (-a) + c; }

// chain rule for f(u) with f0 = f(u.v), f1 = f'(u.v), f2 = f''(u.v)
template <class S>
GJet<S> chain(const GJet<S>& u, const S& f0, const S& f1, const S& f2) {
  GJet<S> r = u;
  r.v = f0;
  for (int i = 0; i < u.m; ++i) r.g[i] = u.g[i] * f1;
  for (int i = 0; i < u.m; ++i)
    for (int j = 0; j < u.m; ++j)
      r.H(i, j) = u.H(i, j) * f1 + u.g[i] * u.g[j] * f2;
  return r;
}

template <class S>
GJet<S> inv(const GJet<S>& u) {
  S d1 = 1.0 / u.v;
  S m2 = d1 * d1;
  return chain(u, d1, -1.0 * m2, 2.0 * m2 * d1);
}

template <class S>
GJet<S> operator/(const GJet<S>& a, const GJet<S>& b) { return a * inv(b); }
template <class S, class C>
  requires(std::is_same_v<C, double> || std::is_same_v<C, cplx>)
GJet<S> operator/(const GJet<S>& a, C c) { return a * (1.0 / c); }
template <class S, class C>
  requires(std::is_same_v<C, double> || std::is_same_v<C, cplx>)
GJet<S> operator/(C c, const GJet<S>& b) { return inv(b) * c; }

using std::exp;
using std::log;
using std::pow;
using std::sqrt;
using std::cos;
using std::sin;

template <class S>
GJet<S> log(const GJet<S>& u) {
  S d1 = 1.0 / u.v;
  return chain(u, log(u.v), d1, -1.0 * (d1 * d1));
}

template <class S>
GJet<S> exp(const GJet<S>& u) {
  S e = exp(u.v);
  return chain(u, e, e, e);
}

template <class S>
GJet<S> sqrt(const GJet<S>& u) {
  S s = sqrt(u.v);
  S d1 = 0.5 / s;
  return chain(u, s, d1, -0.5 * (d1 / u.v));
}

template <class S>
GJet<S> pow(const GJet<S>& u, double a) {
  S f0 = pow(u.v, a);
  S f1 = a * (f0 / u.v);
  S f2 = (a - 1.0) * (f1 / u.v);
  return chain(u, f0, f1, f2);
}

template <class S>
GJet<S> sin(const GJet<S>& u) {
  S s = sin(u.v), c = cos(u.v);
  return chain(u, s, c, -1.0 * s);
}

template <class S>
GJet<S> cos(const GJet<S>& u) {
  S s = sin(u.v), c = cos(u.v);
  return chain(u, c, -1.0 * s, -1.0 * c);
}

// conj / real / imag act componentwise; valid because the underlying
// differentiation variables are real.
inline cplx conj_s(const cplx& z) { return std::conj(z); }
template <class S>
GJet<S> conj_s(const GJet<S>& u) {
  GJet<S> r = u;
  r.v = conj_s(u.v);
  for (int i = 0; i < u.m; ++i) r.g[i] = conj_s(u.g[i]);
  for (size_t i = 0; i < u.h.size(); ++i) r.h[i] = conj_s(u.h[i]);
  return r;
}

template <class S>
GJet<S> conj(const GJet<S>& u) { return conj_s(u); }

template <class S>
GJet<S> real_part(const GJet<S>& u) { return (u + conj_s(u)) * 0.5; }
template <class S>
GJet<S> imag_part(const GJet<S>& u) { return (u - conj_s(u)) * cplx(0.0, -0.5); }
template <class S>
GJet<S> abs_sq(const GJet<S>& u) { return u * conj_s(u); }

// ---- seeding --------------------------------------------------------------

inline std::vector<J1> seed(std::span<const double> x) {
  int m = int(x.size());
  std::vector<J1> v;
  v.reserve(m);
  for (int i = 0; i < m; ++i) {
    J1 j(m, cplx(x[i]));
    j.g[i] = cplx(1.0);
    v.push_back(std::move(j));
  }
  return v;
}

// seeds for differentiating again with respect to the same variables:
// values are the incoming jets, gradients are structural constants.
template <class S>
std::vector<GJet<S>> reseed(std::span<const S> x) {
  int m = int(x.size());
  std::vector<GJet<S>> v;
  v.reserve(m);
  for (int i = 0; i < m; ++i) {
    GJet<S> j(m, x[i]);
    j.g[i] = GJet<S>::zero_of(x[i]) + 1.0;
    v.push_back(std::move(j));
  }
  return v;
}

inline cplx value_of(const cplx& x) { return x; }
template <class S>
cplx value_of(const GJet<S>& x) { return value_of(x.v); }

// ---- scalar fields, generic over jet level --------------------------------

struct FieldBase {
  virtual ~FieldBase() = default;
  virtual J1 eval(std::span<const J1>) const = 0;
  virtual J2 eval(std::span<const J2>) const = 0;
  virtual J3 eval(std::span<const J3>) const = 0;
};

using ScalarField = std::shared_ptr<const FieldBase>;

template <class F>
struct FieldImpl final : FieldBase {
  F f;
  explicit FieldImpl(F fn) : f(std::move(fn)) {}
  J1 eval(std::span<const J1> x) const override { return f(x); }
  J2 eval(std::span<const J2> x) const override { return f(x); }
  J3 eval(std::span<const J3> x) const override { return f(x); }
};

template <class F>
ScalarField make_field(F f) {
  return std::make_shared<FieldImpl<F>>(std::move(f));
}

inline ScalarField const_field(cplx c) {
  return make_field([c]<class S>(std::span<const GJet<S>> x) { return x[0] * 0.0 + c; });
}

// vector-valued maps (chart transforms)
struct MapBase {
  virtual ~MapBase() = default;
  virtual std::vector<J1> eval(std::span<const J1>) const = 0;
  virtual std::vector<J2> eval(std::span<const J2>) const = 0;
  virtual std::vector<J3> eval(std::span<const J3>) const = 0;
};

using Map = std::shared_ptr<const MapBase>;

template <class F>
struct MapImpl final : MapBase {
  F f;
  explicit MapImpl(F fn) : f(std::move(fn)) {}
  std::vector<J1> eval(std::span<const J1> x) const override { return f(x); }
  std::vector<J2> eval(std::span<const J2> x) const override { return f(x); }
  std::vector<J3> eval(std::span<const J3> x) const override { return f(x); }
};

template <class F>
Map make_map(F f) {
  return std::make_shared<MapImpl<F>>(std::move(f));
}

// ---- evaluation helpers ----------------------------------------------------

inline J1 jet_eval(const FieldBase& f, std::span<const double> x) {
  auto s = seed(x);
  return f.eval(std::span<const J1>(s));
}
inline J1 jet_eval(const ScalarField& f, std::span<const double> x) { return jet_eval(*f, x); }

inline cplx field_value(const ScalarField& f, std::span<const double> x) {
  return jet_eval(*f, x).v;
}

// first partials of f at jets x, each partial carried at the same jet level
template <class S>
std::vector<S> field_partials(const FieldBase& f, std::span<const S> x) {
  auto s = reseed(x);
  if constexpr (std::is_same_v<S, cplx>) {
    auto r = f.eval(std::span<const J1>(s));
    return r.g;
  } else {
    auto r = f.eval(std::span<const GJet<S>>(s));
    return r.g;
  }
}

// Wirtinger derivatives for a complex pair (ix, iy), z = x_ix + i x_iy
template <class S>
S wirt_d(const GJet<S>& j, int ix, int iy) {   // d/dz
  return (j.g[ix] - I * j.g[iy]) * 0.5;
}
template <class S>
S wirt_db(const GJet<S>& j, int ix, int iy) {  // d/dzbar
  return (j.g[ix] + I * j.g[iy]) * 0.5;
}
// d^2/(dz_a dzbar_b), pairs a=(ax,ay), b=(bx,by)
template <class S>
S wirt_ddb(const GJet<S>& j, int ax, int ay, int bx, int by) {
  return (j.H(ax, bx) + I * j.H(ax, by) - I * j.H(ay, bx) + j.H(ay, by)) * 0.25;
}
// d^2/(dz_a dz_b)
template <class S>
S wirt_dd(const GJet<S>& j, int ax, int ay, int bx, int by) {
  return (j.H(ax, bx) - I * j.H(ax, by) - I * j.H(ay, bx) - j.H(ay, by)) * 0.25;
}

}  // namespace sjg

#endif
