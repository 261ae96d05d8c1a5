#pragma once

// Independent reference implementations for the tests. Nothing here uses the
// library's evaluator, assignment spaces or elimination: scalars are plain
// boost rationals and algebras are concrete matrix representations.

#include "gradedpi/gradedpi.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace oracle {

using Q = boost::multiprecision::cpp_rational;
using Mat = std::vector<std::vector<Q>>;

inline Mat zero(int n) { return Mat(n, std::vector<Q>(n, Q(0))); }

inline Mat mul(const Mat& a, const Mat& b) {
  const int n = static_cast<int>(a.size());
  Mat c = zero(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

inline void axpy(Mat& y, const Q& c, const Mat& x) {
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) y[i][j] += c * x[i][j];
}

inline bool is_zero(const Mat& m) {
  for (const auto& r : m)
    for (const auto& x : r)
      if (x != 0) return false;
  return true;
}

inline Q to_q(const gradedpi::Scalar& s) {
  if (!s.is_rational()) throw std::invalid_argument("oracle: only rational scalars");
  return s.rational().to_big();
}

/// Sign of a permutation by counting inversions.
inline int sign(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

/// A faithful matrix model of a graded algebra: basis element i acts as basis[i].
struct Model {
  int n = 0;
  std::vector<Mat> basis;
  std::vector<int> degree;

  Mat element(const gradedpi::Element& v) const {
    Mat m = zero(n);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) axpy(m, to_q(v[i]), basis[i]);
    return m;
  }
};

/// Matrix units from labels "Eij" (1-based), degrees copied from the algebra.
inline Model matrix_units(const gradedpi::GradedAlgebra& a, int k) {
  Model m;
  m.n = k;
  for (int b = 0; b < a.dim(); ++b) {
    const auto& l = a.label(b);
    if (l.size() != 3 || l[0] != 'E') throw std::invalid_argument("oracle: not a matrix-unit label: " + l);
    Mat e = zero(k);
    e[l[1] - '1'][l[2] - '1'] = 1;
    m.basis.push_back(e);
    m.degree.push_back(a.degree(b));
  }
  return m;
}

/// Left regular representation of the group algebra F[G] with basis "b_h*E11".
inline Model group_algebra(const gradedpi::FiniteGroup& g) {
  Model m;
  m.n = g.order();
  for (int h = 0; h < g.order(); ++h) {
    Mat p = zero(m.n);
    for (int x = 0; x < g.order(); ++x) p[g.table()[h][x]][x] = 1;
    m.basis.push_back(p);
    m.degree.push_back(h);
  }
  return m;
}

/// Product of Grassmann monomials given as sorted generator lists.
inline std::pair<int, std::vector<int>> grassmann_product(const std::vector<int>& s, const std::vector<int>& t) {
  std::vector<int> w = s;
  w.insert(w.end(), t.begin(), t.end());
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (w[i] == w[j]) return {0, {}};
  const int sg = sign(w);  // inversions of the concatenation = swaps needed to sort
  std::sort(w.begin(), w.end());
  return {sg, w};
}

/// Left regular representation of grassmann(N); basis labels "1", "e1e3", ...
inline Model grassmann(const gradedpi::GradedAlgebra& a) {
  auto parse = [](const std::string& l) {
    std::vector<int> g;
    if (l == "1") return g;
    for (std::size_t i = 0; i < l.size();) {
      std::size_t j = i + 1;
      while (j < l.size() && l[j] != 'e') ++j;
      g.push_back(std::stoi(l.substr(i + 1, j - i - 1)));
      i = j;
    }
    return g;
  };
  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>> mono;
  for (int b = 0; b < a.dim(); ++b) {
    mono.push_back(parse(a.label(b)));
    index[mono.back()] = b;
  }
  Model m;
  m.n = a.dim();
  for (int b = 0; b < a.dim(); ++b) {
    Mat l = zero(m.n);
    for (int c = 0; c < a.dim(); ++c) {
      auto [s, w] = grassmann_product(mono[b], mono[c]);
      if (s != 0) l[index.at(w)][c] = s;
    }
    m.basis.push_back(l);
    m.degree.push_back(static_cast<int>(mono[b].size() % 2));
  }
  return m;
}

/// Block-diagonal model of a direct product.
inline Model product(const Model& x, const Model& y) {
  Model m;
  m.n = x.n + y.n;
  for (std::size_t b = 0; b < x.basis.size(); ++b) {
    Mat e = zero(m.n);
    for (int i = 0; i < x.n; ++i)
      for (int j = 0; j < x.n; ++j) e[i][j] = x.basis[b][i][j];
    m.basis.push_back(e);
    m.degree.push_back(x.degree[b]);
  }
  for (std::size_t b = 0; b < y.basis.size(); ++b) {
    Mat e = zero(m.n);
    for (int i = 0; i < y.n; ++i)
      for (int j = 0; j < y.n; ++j) e[x.n + i][x.n + j] = y.basis[b][i][j];
    m.basis.push_back(e);
    m.degree.push_back(y.degree[b]);
  }
  return m;
}

/// Polynomial as plain (word, coefficient) pairs with per-id degrees.
struct Poly {
  std::map<int, int> degree;
  std::vector<std::pair<std::vector<int>, Q>> terms;
};

inline Poly from(const gradedpi::GradedPolynomial& f) {
  Poly p;
  for (const auto& v : f.alphabet()) p.degree[v.id] = v.degree;
  for (const auto& [w, c] : f.terms()) p.terms.emplace_back(w, to_q(c));
  return p;
}

inline Mat evaluate(const Model& m, const Poly& f, const std::map<int, Mat>& values) {
  Mat out = zero(m.n);
  for (const auto& [w, c] : f.terms) {
    Mat acc = values.at(w[0]);
    for (std::size_t i = 1; i < w.size(); ++i) acc = mul(acc, values.at(w[i]));
    axpy(out, c, acc);
  }
  return out;
}

/// Brute force over every admissible basis assignment (odometer over ids).
/// Returns true when f vanishes on all of them.
inline bool is_identity(const Model& m, const Poly& f) {
  std::vector<int> ids;
  std::vector<std::vector<int>> choices;
  for (const auto& [id, d] : f.degree) {
    ids.push_back(id);
    std::vector<int> c;
    for (std::size_t b = 0; b < m.basis.size(); ++b)
      if (m.degree[b] == d) c.push_back(static_cast<int>(b));
    if (c.empty()) return true;
    choices.push_back(c);
  }
  std::vector<std::size_t> pos(ids.size(), 0);
  for (;;) {
    std::map<int, Mat> values;
    for (std::size_t i = 0; i < ids.size(); ++i) values[ids[i]] = m.basis[choices[i][pos[i]]];
    if (!is_zero(evaluate(m, f, values))) return false;
    std::size_t i = 0;
    while (i < ids.size() && ++pos[i] == choices[i].size()) pos[i++] = 0;
    if (i == ids.size()) return true;
  }
}

/// Sum over all permutations of the ids in s, with sign, of f renamed.
inline Poly alternate(const Poly& f, const std::vector<int>& s) {
  std::vector<int> p(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) p[i] = static_cast<int>(i);
  std::map<std::vector<int>, Q> acc;
  do {
    std::map<int, int> ren;
    for (std::size_t i = 0; i < s.size(); ++i) ren[s[i]] = s[p[i]];
    for (const auto& [w, c] : f.terms) {
      std::vector<int> nw;
      for (int x : w) nw.push_back(ren.count(x) ? ren[x] : x);
      acc[nw] += c * sign(p);
    }
  } while (std::next_permutation(p.begin(), p.end()));
  Poly out;
  out.degree = f.degree;
  for (const auto& [w, c] : acc)
    if (c != 0) out.terms.emplace_back(w, c);
  return out;
}

/// c_n straight from the definition: sum over sigma of sgn x_s1 y_1 x_s2 y_2 ... x_sn y_n,
/// x ids 1..n, y ids n+1..2n.
inline Poly capelli(int n, int g, const std::vector<int>& ys) {
  Poly f;
  for (int i = 1; i <= n; ++i) f.degree[i] = g;
  for (int i = 0; i < n; ++i) f.degree[n + 1 + i] = ys[i];
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  do {
    std::vector<int> w;
    for (int i = 0; i < n; ++i) {
      w.push_back(p[i] + 1);
      w.push_back(n + 1 + i);
    }
    f.terms.emplace_back(w, Q(sign(p)));
  } while (std::next_permutation(p.begin(), p.end()));
  return f;
}

inline bool same(const Poly& a, const gradedpi::GradedPolynomial& b) {
  std::map<std::vector<int>, Q> x, y;
  for (const auto& [w, c] : a.terms) x[w] += c;
  for (const auto& [w, c] : b.terms()) y[w] += to_q(c);
  for (auto it = x.begin(); it != x.end();) it = it->second == 0 ? x.erase(it) : std::next(it);
  return x == y;
}

}  // namespace oracle
