#pragma once

// Finite-dimensional G-graded algebras given by structure constants.

#include "gradedpi/group.hpp"
#include "gradedpi/linalg.hpp"

#include <algorithm>
#include <cstddef>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gradedpi {

using Element = Vector;

struct StructureTerm {
  int k;
  Scalar coeff;
};

/// Data behind a twisted group algebra tensored with a matrix algebra,
/// F^f H (x) M_k(F) with the elementary grading given by `tuple`.
struct BszData {
  SubgroupEmbedding subgroup;
  TwoCocycle cocycle;
  std::vector<int> tuple;
  int k = 1;

  /// Basis index of b_h (x) E_{i,j} (0-based i, j).
  int index(int h, int i, int j) const { return (h * k + i) * k + j; }
};

/// Structure-constant algebra with a homogeneous basis.
///
/// Built once through add_product()/set_unit() and then treated as an
/// immutable value; all analysis routines take it by const reference.
class GradedAlgebra {
 public:
  GradedAlgebra(GroupPtr group, std::vector<int> degrees, std::vector<std::string> labels = {})
      : group_(std::move(group)), deg_(std::move(degrees)), labels_(std::move(labels)) {
    const int n = dim();
    for (int d : deg_) {
      if (d < 0 || d >= group_->order()) throw ValidationError("basis degree out of range");
    }
    if (labels_.empty()) {
      for (int i = 0; i < n; ++i) labels_.push_back("b" + std::to_string(i));
    }
    if (static_cast<int>(labels_.size()) != n) throw ValidationError("basis label count mismatch");
    sc_.assign(static_cast<std::size_t>(n) * n, {});
  }

  /// Adds c * b_k to the product b_i b_j.
  void add_product(int i, int j, int k, const Scalar& c) {
    check_index(i);
    check_index(j);
    check_index(k);
    if (c.is_zero()) return;
    order_ = std::lcm(order_, c.order());
    auto& terms = sc_[slot(i, j)];
    for (auto it = terms.begin(); it != terms.end(); ++it) {
      if (it->k == k) {
        it->coeff += c;
        if (it->coeff.is_zero()) terms.erase(it);
        return;
      }
    }
    auto at = terms.begin();
    while (at != terms.end() && at->k < k) ++at;
    terms.insert(at, StructureTerm{k, c});
  }

  void set_unit(Element u) {
    if (static_cast<int>(u.size()) != dim()) throw ValidationError("unit vector has wrong length");
    unit_ = std::move(u);
  }

  /// Embeds every structure constant into the common cyclotomic order.
  void normalize_scalars() {
    for (auto& terms : sc_) {
      for (auto& t : terms) t.coeff = t.coeff.embed(order_);
    }
  }

  int dim() const { return static_cast<int>(deg_.size()); }
  const GroupPtr& group() const { return group_; }
  int degree(int i) const { return deg_.at(i); }
  const std::vector<int>& degrees() const { return deg_; }
  const std::string& label(int i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  unsigned scalar_order() const { return order_; }
  const std::optional<Element>& unit() const { return unit_; }

  const std::vector<StructureTerm>& product(int i, int j) const { return sc_[slot(i, j)]; }

  std::vector<int> basis_of_degree(int g) const {
    std::vector<int> out;
    for (int i = 0; i < dim(); ++i) {
      if (deg_[i] == g) out.push_back(i);
    }
    return out;
  }
  int dim_of_degree(int g) const { return static_cast<int>(basis_of_degree(g).size()); }

  Element zero() const { return Element(dim(), Scalar(0)); }
  Element basis(int i) const {
    Element e = zero();
    e[i] = Scalar(1);
    return e;
  }

  Element multiply(const Element& a, const Element& b) const {
    Element out = zero();
    for (int i = 0; i < dim(); ++i) {
      if (a[i].is_zero()) continue;
      for (int j = 0; j < dim(); ++j) {
        if (b[j].is_zero()) continue;
        const Scalar ab = a[i] * b[j];
        for (const auto& t : sc_[slot(i, j)]) out[t.k].add_product(ab, t.coeff);
      }
    }
    return out;
  }

  /// out = v * b_j
  void right_multiply_basis(const Element& v, int j, Element& out) const {
    out.assign(dim(), Scalar(0));
    for (int i = 0; i < dim(); ++i) {
      if (v[i].is_zero()) continue;
      for (const auto& t : sc_[slot(i, j)]) out[t.k].add_product(v[i], t.coeff);
    }
  }

  bool has_any_product() const {
    for (const auto& t : sc_) {
      if (!t.empty()) return true;
    }
    return false;
  }

  // Provenance metadata used by specialised routines.
  std::optional<BszData> bsz;
  std::optional<int> grassmann_capacity;
  std::string description;

 private:
  std::size_t slot(int i, int j) const { return static_cast<std::size_t>(i) * deg_.size() + j; }
  void check_index(int i) const {
    if (i < 0 || i >= dim()) throw ValidationError("basis index " + std::to_string(i) + " out of range");
  }

  GroupPtr group_;
  std::vector<int> deg_;
  std::vector<std::string> labels_;
  std::vector<std::vector<StructureTerm>> sc_;
  std::optional<Element> unit_;
  unsigned order_ = 1;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

/// First failing check found by validate().
struct AlgebraViolation {
  enum class Kind { kAssociativity, kGrading, kUnit } kind;
  int i = 0, j = 0, k = 0;

  std::string describe() const {
    switch (kind) {
      case Kind::kAssociativity:
        return "associativity fails at (" + std::to_string(i) + "," + std::to_string(j) + "," +
               std::to_string(k) + ")";
      case Kind::kGrading:
        return "grading fails: b" + std::to_string(i) + "*b" + std::to_string(j) + " has a b" +
               std::to_string(k) + " component of the wrong degree";
      case Kind::kUnit:
        return "declared unit is not a two-sided identity (fails at b" + std::to_string(i) + ")";
    }
    return {};
  }
};

/// Exhaustive check of grading compatibility, associativity and the declared unit.
inline std::optional<AlgebraViolation> validate(const GradedAlgebra& a) {
  using K = AlgebraViolation::Kind;
  const int n = a.dim();
  const auto& g = *a.group();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (const auto& t : a.product(i, j)) {
        if (a.degree(t.k) != g.mul(a.degree(i), a.degree(j))) return AlgebraViolation{K::kGrading, i, j, t.k};
      }
    }
  }
  // Sparse accumulators: products of basis elements are usually short.
  std::vector<std::pair<int, Scalar>> left, right;
  auto accumulate = [](std::vector<std::pair<int, Scalar>>& acc, int k, const Scalar& c) {
    for (auto& [idx, val] : acc) {
      if (idx == k) {
        val += c;
        return;
      }
    }
    acc.emplace_back(k, c);
  };
  auto same = [](std::vector<std::pair<int, Scalar>>& x, std::vector<std::pair<int, Scalar>>& y) {
    auto prune = [](std::vector<std::pair<int, Scalar>>& v) {
      std::erase_if(v, [](const auto& p) { return p.second.is_zero(); });
      std::sort(v.begin(), v.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    };
    prune(x);
    prune(y);
    if (x.size() != y.size()) return false;
    for (std::size_t t = 0; t < x.size(); ++t) {
      if (x[t].first != y[t].first || x[t].second != y[t].second) return false;
    }
    return true;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto& ij = a.product(i, j);
      for (int k = 0; k < n; ++k) {
        left.clear();
        right.clear();
        for (const auto& t : ij) {
          for (const auto& u : a.product(t.k, k)) accumulate(left, u.k, t.coeff * u.coeff);
        }
        for (const auto& t : a.product(j, k)) {
          for (const auto& u : a.product(i, t.k)) accumulate(right, u.k, t.coeff * u.coeff);
        }
        if (!same(left, right)) return AlgebraViolation{K::kAssociativity, i, j, k};
      }
    }
  }
  if (a.unit()) {
    const auto& u = *a.unit();
    for (int i = 0; i < n; ++i) {
      if (!u[i].is_zero() && a.degree(i) != 0) return AlgebraViolation{K::kUnit, i};
    }
    for (int i = 0; i < n; ++i) {
      const auto b = a.basis(i);
      if (a.multiply(u, b) != b || a.multiply(b, u) != b) return AlgebraViolation{K::kUnit, i};
    }
  }
  return std::nullopt;
}

inline void require_valid(const GradedAlgebra& a) {
  if (auto v = validate(a)) throw ValidationError("invalid algebra: " + v->describe());
}

// ---------------------------------------------------------------------------
// Constructors

/// F^f H (x) M_k(F) with deg(b_h (x) E_{i,j}) = g_i^{-1} h g_j.
inline GradedAlgebra bsz_simple(const GroupPtr& g, const SubgroupEmbedding& h, const TwoCocycle& f,
                                const std::vector<int>& tuple) {
  if (tuple.empty() || tuple[0] != 0) throw ValidationError("bsz: the first tuple entry must be e");
  if (!g->same_table(*h.ambient)) throw ValidationError("bsz: subgroup is not embedded in the grading group");
  if (!h.sub->same_table(*f.group)) throw ValidationError("bsz: cocycle is defined on a different group");
  if (auto v = validate_cocycle(f)) throw ValidationError("bsz: invalid cocycle: " + v->describe());
  for (int t : tuple) {
    if (t < 0 || t >= g->order()) throw ValidationError("bsz: tuple entry out of range");
  }
  const int k = static_cast<int>(tuple.size());
  const int hr = h.sub->order();
  BszData data{h, f, tuple, k};
  std::vector<int> deg(static_cast<std::size_t>(hr) * k * k);
  std::vector<std::string> labels(deg.size());
  for (int x = 0; x < hr; ++x) {
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        const int idx = data.index(x, i, j);
        deg[idx] = g->mul(g->mul(g->inv(tuple[i]), h.images[x]), tuple[j]);
        std::string unit = "E" + std::to_string(i + 1) + std::to_string(j + 1);
        labels[idx] = hr == 1 ? unit : "b_" + h.sub->label(x) + "*" + unit;
      }
    }
  }
  GradedAlgebra a(g, std::move(deg), std::move(labels));
  for (int x = 0; x < hr; ++x) {
    for (int y = 0; y < hr; ++y) {
      const Scalar c = f.value(x, y);
      const int xy = h.sub->mul(x, y);
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
          for (int l = 0; l < k; ++l) a.add_product(data.index(x, i, j), data.index(y, j, l), data.index(xy, i, l), c);
        }
      }
    }
  }
  a.normalize_scalars();
  Element u = a.zero();
  for (int i = 0; i < k; ++i) u[data.index(0, i, i)] = Scalar(1);
  a.set_unit(std::move(u));
  a.bsz = std::move(data);
  a.description = "bsz(|H|=" + std::to_string(hr) + ",k=" + std::to_string(k) + ")";
  return a;
}

/// M_k(F) with the elementary grading given by tuple (first entry e).
inline GradedAlgebra matrix_algebra(const GroupPtr& g, const std::vector<int>& tuple) {
  auto h = SubgroupEmbedding::trivial_in(g);
  return bsz_simple(g, h, TwoCocycle::trivial(h.sub), tuple);
}

/// A (x) FG graded by the group-algebra factor; the grading of A is ignored.
inline GradedAlgebra group_algebra_grading(const GradedAlgebra& a, const GroupPtr& g) {
  const int n = a.dim(), r = g->order();
  std::vector<int> deg(static_cast<std::size_t>(n) * r);
  std::vector<std::string> labels(deg.size());
  for (int i = 0; i < n; ++i) {
    for (int x = 0; x < r; ++x) {
      deg[i * r + x] = x;
      labels[i * r + x] = a.label(i) + "@" + g->label(x);
    }
  }
  GradedAlgebra out(g, std::move(deg), std::move(labels));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (const auto& t : a.product(i, j)) {
        for (int x = 0; x < r; ++x) {
          for (int y = 0; y < r; ++y) out.add_product(i * r + x, j * r + y, t.k * r + g->mul(x, y), t.coeff);
        }
      }
    }
  }
  out.normalize_scalars();
  if (a.unit()) {
    Element u = out.zero();
    for (int i = 0; i < n; ++i) u[i * r] = (*a.unit())[i];
    out.set_unit(std::move(u));
  }
  out.description = "(" + a.description + ")(x)FG";
  return out;
}

/// Block-diagonal product; basis of a first, then b.
inline GradedAlgebra direct_product(const GradedAlgebra& a, const GradedAlgebra& b) {
  if (!a.group()->same_table(*b.group())) throw ValidationError("direct_product: grading groups differ");
  std::vector<int> deg = a.degrees();
  deg.insert(deg.end(), b.degrees().begin(), b.degrees().end());
  std::vector<std::string> labels;
  for (const auto& l : a.labels()) labels.push_back("L." + l);
  for (const auto& l : b.labels()) labels.push_back("R." + l);
  GradedAlgebra out(a.group(), std::move(deg), std::move(labels));
  const int n = a.dim();
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) {
      for (const auto& t : a.product(i, j)) out.add_product(i, j, t.k, t.coeff);
    }
  }
  for (int i = 0; i < b.dim(); ++i) {
    for (int j = 0; j < b.dim(); ++j) {
      for (const auto& t : b.product(i, j)) out.add_product(n + i, n + j, n + t.k, t.coeff);
    }
  }
  out.normalize_scalars();
  if ((a.unit() || a.dim() == 0) && (b.unit() || b.dim() == 0)) {
    Element u = out.zero();
    for (int i = 0; i < a.dim(); ++i) u[i] = (*a.unit())[i];
    for (int i = 0; i < b.dim(); ++i) u[n + i] = (*b.unit())[i];
    if (out.dim() > 0) out.set_unit(std::move(u));
  }
  if (a.grassmann_capacity || b.grassmann_capacity) {
    out.grassmann_capacity = std::min(a.grassmann_capacity.value_or(1 << 20), b.grassmann_capacity.value_or(1 << 20));
  }
  out.description = a.description + " x " + b.description;
  return out;
}

/// Upper triangular k x k matrices with deg E_{i,j} = g_i^{-1} g_j.
inline GradedAlgebra upper_triangular(const GroupPtr& g, const std::vector<int>& tuple) {
  if (tuple.empty() || tuple[0] != 0) throw ValidationError("upper_triangular: the first tuple entry must be e");
  const int k = static_cast<int>(tuple.size());
  std::vector<std::pair<int, int>> units;
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) units.emplace_back(i, j);
  }
  std::vector<int> deg;
  std::vector<std::string> labels;
  for (auto [i, j] : units) {
    deg.push_back(g->mul(g->inv(tuple[i]), tuple[j]));
    labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
  }
  GradedAlgebra a(g, std::move(deg), std::move(labels));
  const int n = static_cast<int>(units.size());
  auto find = [&](int i, int j) {
    for (int x = 0; x < n; ++x) {
      if (units[x] == std::make_pair(i, j)) return x;
    }
    return -1;
  };
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (units[x].second == units[y].first) a.add_product(x, y, find(units[x].first, units[y].second), Scalar(1));
    }
  }
  Element u = a.zero();
  for (int i = 0; i < k; ++i) u[find(i, i)] = Scalar(1);
  a.set_unit(std::move(u));
  a.description = "UT" + std::to_string(k);
  return a;
}

namespace detail {

/// Sign of e_S e_T for disjoint bitmasks: (-1)^#{(s,t): s in S, t in T, s > t}.
inline int grassmann_sign(unsigned s, unsigned t) {
  int inversions = 0;
  for (unsigned bits = t; bits; bits &= bits - 1) {
    const unsigned low = bits & (~bits + 1);
    // elements of S above this element of T
    inversions += __builtin_popcount(s & ~((low << 1) - 1));
  }
  return (inversions % 2) ? -1 : 1;
}

inline std::string grassmann_label(unsigned mask) {
  if (mask == 0) return "1";
  std::string s;
  for (unsigned i = 0; i < 32; ++i) {
    if (mask & (1u << i)) s += "e" + std::to_string(i + 1);
  }
  return s;
}

}  // namespace detail

/// Grassmann algebra on N generators, Z/2-graded by parity; basis indexed by bitmask.
inline GradedAlgebra grassmann(int n) {
  if (n < 0 || n > 16) throw ValidationError("grassmann: generator count out of range");
  const unsigned size = 1u << n;
  auto z2 = FiniteGroup::cyclic(2);
  std::vector<int> deg(size);
  std::vector<std::string> labels(size);
  for (unsigned m = 0; m < size; ++m) {
    deg[m] = __builtin_popcount(m) % 2;
    labels[m] = detail::grassmann_label(m);
  }
  GradedAlgebra a(z2, std::move(deg), std::move(labels));
  for (unsigned s = 0; s < size; ++s) {
    for (unsigned t = 0; t < size; ++t) {
      if (s & t) continue;
      a.add_product(static_cast<int>(s), static_cast<int>(t), static_cast<int>(s | t), Scalar(detail::grassmann_sign(s, t)));
    }
  }
  a.set_unit(a.basis(0));
  a.grassmann_capacity = n;
  a.description = "E(" + std::to_string(n) + ")";
  return a;
}

/// B* = B_0 (x) E_0 + B_1 (x) E_1 for B graded by Z/2 x G (or by Z/2 alone).
inline GradedAlgebra grassmann_envelope(const GradedAlgebra& b, int n) {
  const auto& bg = *b.group();
  GroupPtr inner;
  if (bg.factors().size() == 2 && bg.factors()[0]->order() == 2) {
    inner = bg.factors()[1];
  } else if (bg.order() == 2 && bg.factors().empty()) {
    inner = FiniteGroup::trivial();
  } else {
    throw ValidationError("grassmann_envelope: grading group is not of the form Z/2 x G");
  }
  if (n < 0 || n > 16) throw ValidationError("grassmann_envelope: generator count out of range");
  const int r = inner->order();
  const unsigned size = 1u << n;
  std::vector<std::pair<int, unsigned>> basis;  // (b index, grassmann mask)
  std::vector<int> deg;
  std::vector<std::string> labels;
  for (int i = 0; i < b.dim(); ++i) {
    const int parity = b.degree(i) / r;
    for (unsigned m = 0; m < size; ++m) {
      if (static_cast<int>(__builtin_popcount(m) % 2) != parity) continue;
      basis.emplace_back(i, m);
      deg.push_back(b.degree(i) % r);
      labels.push_back(b.label(i) + "(x)" + detail::grassmann_label(m));
    }
  }
  std::vector<std::vector<int>> index(b.dim(), std::vector<int>(size, -1));
  for (std::size_t x = 0; x < basis.size(); ++x) index[basis[x].first][basis[x].second] = static_cast<int>(x);
  GradedAlgebra out(inner, std::move(deg), std::move(labels));
  for (std::size_t x = 0; x < basis.size(); ++x) {
    for (std::size_t y = 0; y < basis.size(); ++y) {
      const auto [i, s] = basis[x];
      const auto [j, t] = basis[y];
      if (s & t) continue;
      const int sign = detail::grassmann_sign(s, t);
      for (const auto& term : b.product(i, j)) {
        const int target = index[term.k][s | t];
        if (target < 0) throw ValidationError("grassmann_envelope: parity mismatch in structure constants");
        out.add_product(static_cast<int>(x), static_cast<int>(y), target, term.coeff * Scalar(sign));
      }
    }
  }
  out.normalize_scalars();
  if (b.unit()) {
    Element u = out.zero();
    for (int i = 0; i < b.dim(); ++i) {
      if (!(*b.unit())[i].is_zero()) u[index[i][0]] = (*b.unit())[i];
    }
    out.set_unit(std::move(u));
  }
  out.grassmann_capacity = n;
  out.description = "envelope(" + b.description + "," + std::to_string(n) + ")";
  return out;
}

}  // namespace gradedpi
