// Differential forms with jet-evaluable coefficients.  Coefficients are
// stored on strictly increasing multi-indices in lexicographic order.
#ifndef SJG_FORMS_HPP
#define SJG_FORMS_HPP

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "sjg/jet.hpp"

namespace sjg {

inline long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// rank of a strictly increasing multi-index in lexicographic order
inline int mi_rank(int dim, std::span<const int> idx) {
  int k = int(idx.size());
  long r = 0;
  int prev = -1;
  for (int pos = 0; pos < k; ++pos) {
    for (int j = prev + 1; j < idx[pos]; ++j) r += binom(dim - 1 - j, k - 1 - pos);
    prev = idx[pos];
  }
  return int(r);
}

inline std::vector<int> mi_unrank(int dim, int k, int rank) {
  std::vector<int> idx(k);
  int j = 0;
  long r = rank;
  for (int pos = 0; pos < k; ++pos) {
    for (;; ++j) {
      long c = binom(dim - 1 - j, k - 1 - pos);
      if (r < c) break;
      r -= c;
    }
    idx[pos] = j++;
  }
  return idx;
}

// sign of the permutation sorting the concatenation of two increasing
// multi-indices; 0 if they share an index
inline int shuffle_sign(std::span<const int> a, std::span<const int> b) {
  int sign = 1;
  for (int x : a)
    for (int y : b) {
      if (x == y) return 0;
      if (x > y) sign = -sign;
    }
  return sign;
}

struct Form {
  int dim = 0;
  int degree = 0;
  std::vector<ScalarField> c;  // size binom(dim, degree)

  Form() = default;
  Form(int d, int k) : dim(d), degree(k), c(binom(d, k), const_field(cplx(0.0))) {}

  // coefficient of dx^{i0} ^ ... (indices need not be sorted; sign handled)
  void set(std::initializer_list<int> idx, ScalarField f) {
    std::vector<int> v(idx);
    int sign = 1;
    for (size_t i = 0; i < v.size(); ++i)
      for (size_t j = i + 1; j < v.size(); ++j) {
        if (v[i] == v[j]) throw std::invalid_argument("repeated form index");
        if (v[i] > v[j]) { std::swap(v[i], v[j]); sign = -sign; }
      }
    ScalarField g = (sign == 1) ? f : make_field([f]<class S>(std::span<const GJet<S>> x) {
      return f->eval(x) * -1.0;
    });
    c[mi_rank(dim, v)] = g;
  }

  std::vector<cplx> eval(std::span<const double> x) const {
    std::vector<cplx> out(c.size());
    auto s = seed(x);
    for (size_t i = 0; i < c.size(); ++i) out[i] = c[i]->eval(std::span<const J1>(s)).v;
    return out;
  }

  // coefficient value including sign for arbitrary index order
  cplx coeff(std::span<const double> x, std::initializer_list<int> idx) const {
    std::vector<int> v(idx);
    int sign = 1;
    for (size_t i = 0; i < v.size(); ++i)
      for (size_t j = i + 1; j < v.size(); ++j)
        if (v[i] > v[j]) { std::swap(v[i], v[j]); sign = -sign; }
    auto s = seed(x);
    return double(sign) * c[mi_rank(dim, v)]->eval(std::span<const J1>(s)).v;
  }
};

inline Form operator+(const Form& a, const Form& b) {
  if (a.dim != b.dim || a.degree != b.degree) throw std::invalid_argument("form shape mismatch");
  Form r(a.dim, a.degree);
  for (size_t i = 0; i < r.c.size(); ++i) {
    auto fa = a.c[i], fb = b.c[i];
    r.c[i] = make_field([fa, fb]<class S>(std::span<const GJet<S>> x) {
      return fa->eval(x) + fb->eval(x);
    });
  }
  return r;
}

inline Form operator-(const Form& a, const Form& b) {
  if (a.dim != b.dim || a.degree != b.degree) throw std::invalid_argument("form shape mismatch");
  Form r(a.dim, a.degree);
  for (size_t i = 0; i < r.c.size(); ++i) {
    auto fa = a.c[i], fb = b.c[i];
    r.c[i] = make_field([fa, fb]<class S>(std::span<const GJet<S>> x) {
      return fa->eval(x) - fb->eval(x);
    });
  }
  return r;
}

inline Form operator*(cplx s, const Form& a) {
  Form r(a.dim, a.degree);
  for (size_t i = 0; i < r.c.size(); ++i) {
    auto fa = a.c[i];
    r.c[i] = make_field([fa, s]<class S>(std::span<const GJet<S>> x) { return fa->eval(x) * s; });
  }
  return r;
}

inline Form wedge(const Form& a, const Form& b) {
  if (a.dim != b.dim) throw std::invalid_argument("form dim mismatch");
  int p = a.degree, q = b.degree;
  Form r(a.dim, p + q);
  long nr = binom(a.dim, p + q);
  for (long t = 0; t < nr; ++t) {
    auto K = mi_unrank(a.dim, p + q, int(t));
    // enumerate p-subsets of K
    struct Term { int ra, rb; double sgn; };
    std::vector<Term> terms;
    std::vector<int> sel(p + q, 0);
    std::fill(sel.begin(), sel.begin() + p, 1);
    std::sort(sel.begin(), sel.end());
    // iterate over all combinations via std::next_permutation on selector
    do {
      std::vector<int> iA, iB;
      for (int pos = 0; pos < p + q; ++pos) (sel[pos] ? iA : iB).push_back(K[pos]);
      int sgn = shuffle_sign(iA, iB);
      terms.push_back({mi_rank(a.dim, iA), mi_rank(a.dim, iB), double(sgn)});
    } while (std::next_permutation(sel.begin(), sel.end()));
    auto ca = a.c, cb = b.c;
    r.c[t] = make_field([terms, ca, cb]<class S>(std::span<const GJet<S>> x) {
      GJet<S> acc = x[0] * 0.0;
      for (const auto& tm : terms) acc = acc + ca[tm.ra]->eval(x) * cb[tm.rb]->eval(x) * tm.sgn;
      return acc;
    });
  }
  return r;
}

// exterior derivative; coefficients of the result differentiate the input
// coefficients through one extra jet level
inline Form exterior_derivative(const Form& a) {
  Form r(a.dim, a.degree + 1);
  long nr = binom(a.dim, a.degree + 1);
  for (long t = 0; t < nr; ++t) {
    auto K = mi_unrank(a.dim, a.degree + 1, int(t));
    struct Term { int dir, rank; double sgn; };
    std::vector<Term> terms;
    for (size_t pos = 0; pos < K.size(); ++pos) {
      std::vector<int> rest;
      for (size_t j = 0; j < K.size(); ++j)
        if (j != pos) rest.push_back(K[j]);
      terms.push_back({K[pos], mi_rank(a.dim, rest), (pos % 2 == 0) ? 1.0 : -1.0});
    }
    auto ca = a.c;
    r.c[t] = make_field([terms, ca]<class S>(std::span<const GJet<S>> x) -> GJet<S> {
      if constexpr (!can_differentiate<S>) {
        throw std::runtime_error("exterior derivative: jet nesting depth exhausted");
      } else {
        GJet<S> acc = x[0] * 0.0;
        for (const auto& tm : terms) {
          auto grad = field_partials(*ca[tm.rank], x);
          acc = acc + grad[tm.dir] * tm.sgn;
        }
        return acc;
      }
    });
  }
  return r;
}

// pullback through a map T: new chart -> old chart (forms live on T's target)
// max |(d a)_K| at x from a single first-order evaluation of the
// coefficients; avoids the extra jet level exterior_derivative would cost
inline double exterior_derivative_residual(const Form& a, std::span<const double> x) {
  auto s = seed(x);
  std::span<const J1> js(s);
  std::vector<J1> g;
  g.reserve(a.c.size());
  for (const auto& f : a.c) g.push_back(f->eval(js));
  double worst = 0.0;
  long nr = binom(a.dim, a.degree + 1);
  for (long t = 0; t < nr; ++t) {
    auto K = mi_unrank(a.dim, a.degree + 1, int(t));
    cplx acc = 0.0;
    for (size_t pos = 0; pos < K.size(); ++pos) {
      std::vector<int> rest;
      for (size_t j = 0; j < K.size(); ++j)
        if (j != pos) rest.push_back(K[j]);
      double sgn = (pos % 2 == 0) ? 1.0 : -1.0;
      acc += sgn * g[mi_rank(a.dim, rest)].g[K[pos]];
    }
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

inline Form pullback(const Map& T, const Form& a, int new_dim) {
  Form r(new_dim, a.degree);
  int k = a.degree;
  long nr = binom(new_dim, k);
  auto ca = a.c;
  int old_dim = a.dim;
  for (long t = 0; t < nr; ++t) {
    auto Iidx = mi_unrank(new_dim, k, int(t));
    r.c[t] = make_field([T, ca, Iidx, k, old_dim]<class S>(std::span<const GJet<S>> x) -> GJet<S> {
      if constexpr (!can_differentiate<S>) {
        throw std::runtime_error("pullback: jet nesting depth exhausted");
      } else {
      // Jacobian J[j][i] = d old_j / d new_i via one extra jet level
      std::span<const GJet<S>> xs(x);
      auto sx = reseed(xs);
      auto y = T->eval(std::span<const GJet<GJet<S>>>(sx));
      std::vector<GJet<S>> yv(y.size());
      for (size_t j = 0; j < y.size(); ++j) yv[j] = y[j].v;
      GJet<S> acc = x[0] * 0.0;
      long nold = binom(old_dim, k);
      for (long rj = 0; rj < nold; ++rj) {
        auto Jidx = mi_unrank(old_dim, k, int(rj));
        // minor determinant det( dT_{Jidx[r]} / dx_{Iidx[c]} )
        GJet<S> det = x[0] * 0.0;
        if (k == 0) det = det + 1.0;
        else if (k == 1) det = y[Jidx[0]].g[Iidx[0]];
        else if (k == 2)
          det = y[Jidx[0]].g[Iidx[0]] * y[Jidx[1]].g[Iidx[1]] -
                y[Jidx[0]].g[Iidx[1]] * y[Jidx[1]].g[Iidx[0]];
        else
          throw std::runtime_error("pullback implemented for degree <= 2");
        acc = acc + ca[rj]->eval(std::span<const GJet<S>>(yv)) * det;
      }
      return acc;
      }
    });
  }
  return r;
}

}  // namespace sjg

#endif
