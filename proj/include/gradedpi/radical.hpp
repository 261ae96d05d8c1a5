#pragma once

// Jacobson radical, nilpotency index and graded semisimple dimensions.

#include "gradedpi/algebra.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace gradedpi {

/// Thrown when a computed radical fails its ideal/nilpotency/grading checks.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct RadicalData {
  std::vector<Element> basis;  // homogeneous, reduced within each degree
  std::vector<int> basis_degree;
  int nilpotency_index = 1;     // least u with J^u = 0; 1 iff J = 0
  std::vector<int> semisimple_dims;  // d_g = dim A_g - dim J_g, indexed by group element
  std::vector<int> radical_dims;

  int dim() const { return static_cast<int>(basis.size()); }
};

/// (d_{g_1}, ..., d_{g_r}; n_A - 1) in the group's index order.
struct GPar {
  std::vector<int> d;
  int s = 0;

  friend bool operator==(const GPar&, const GPar&) = default;
};

namespace detail {

inline Element project(const Element& v, const GradedAlgebra& a, int g) {
  Element out = a.zero();
  for (int i = 0; i < a.dim(); ++i) {
    if (a.degree(i) == g) out[i] = v[i];
  }
  return out;
}

}  // namespace detail

/// Radical of the trace form T(x, y) = tr(L_x L_y) on the unitalization.
///
/// Over characteristic zero the radical of this form is J(A). The result is
/// checked to be a graded two-sided ideal and nilpotent before returning.
inline RadicalData radical(const GradedAlgebra& a) {
  const int n = a.dim();
  const int r = a.group()->order();
  RadicalData out;
  out.semisimple_dims.assign(r, 0);
  out.radical_dims.assign(r, 0);
  for (int i = 0; i < n; ++i) ++out.semisimple_dims[a.degree(i)];
  if (n == 0) return out;

  // tr(L_{b_k}) = sum_j (coefficient of b_j in b_k b_j)
  std::vector<Scalar> trace(n, Scalar(0));
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      for (const auto& t : a.product(k, j)) {
        if (t.k == j) trace[k] += t.coeff;
      }
    }
  }
  // Conditions on x: sum_i x_i tr(L_{b_i b_j}) = 0 for all j, and sum_i x_i tr(L_{b_i}) = 0
  // (pairing with the adjoined unit).
  RowEchelon conditions(n);
  for (int j = 0; j < n; ++j) {
    Vector row(n, Scalar(0));
    for (int i = 0; i < n; ++i) {
      for (const auto& t : a.product(i, j)) row[i].add_product(t.coeff, trace[t.k]);
    }
    conditions.add(std::move(row));
    if (conditions.full()) break;
  }
  conditions.add(trace);
  const auto kernel = conditions.kernel();

  // Gradedness: J must equal the sum of its homogeneous projections.
  std::size_t projected_rank = 0;
  for (int g = 0; g < r; ++g) {
    RowEchelon part(n);
    for (const auto& v : kernel) part.add(detail::project(v, a, g));
    projected_rank += part.rank();
    for (const auto& row : part.rows()) {
      out.basis.push_back(row);
      out.basis_degree.push_back(g);
    }
    out.radical_dims[g] = static_cast<int>(part.rank());
    out.semisimple_dims[g] -= out.radical_dims[g];
  }
  if (projected_rank != kernel.size()) {
    throw InternalConsistencyError("radical: computed kernel is not graded");
  }

  RowEchelon span_j(n);
  for (const auto& v : out.basis) span_j.add(v);
  for (const auto& v : out.basis) {
    for (int i = 0; i < n; ++i) {
      const auto b = a.basis(i);
      if (!span_j.contains(a.multiply(v, b)) || !span_j.contains(a.multiply(b, v))) {
        throw InternalConsistencyError("radical: computed kernel is not an ideal");
      }
    }
  }

  // J^(p+1) = span(J * J^p) until zero.
  std::vector<Element> power = out.basis;
  int p = 1;
  while (!power.empty()) {
    RowEchelon next(n);
    for (const auto& x : out.basis) {
      for (const auto& y : power) next.add(a.multiply(x, y));
    }
    power = next.rows();
    ++p;
    if (p > n + 1) throw InternalConsistencyError("radical: computed kernel is not nilpotent");
  }
  out.nilpotency_index = out.basis.empty() ? 1 : p;
  return out;
}

inline GPar g_par(const RadicalData& rad) { return GPar{rad.semisimple_dims, rad.nilpotency_index - 1}; }
inline GPar g_par(const GradedAlgebra& a) { return g_par(radical(a)); }

/// A homogeneous basis used for substitutions, with each vector tagged as
/// semisimple-complement or radical.
struct EvalBasis {
  std::vector<Element> vectors;
  std::vector<int> degree;
  std::vector<bool> radical;
  std::vector<int> standard_index;  // -1 when the vector is not a standard basis vector
  bool is_standard = true;

  int size() const { return static_cast<int>(vectors.size()); }
  std::vector<int> of_degree(int g) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i) {
      if (degree[i] == g) out.push_back(i);
    }
    return out;
  }
};

inline EvalBasis standard_basis(const GradedAlgebra& a) {
  EvalBasis b;
  for (int i = 0; i < a.dim(); ++i) {
    b.vectors.push_back(a.basis(i));
    b.degree.push_back(a.degree(i));
    b.radical.push_back(false);
    b.standard_index.push_back(i);
  }
  return b;
}

/// J-basis (reduced, keyed by pivot column) together with the standard basis
/// vectors at the non-pivot columns, ordered by column.
inline EvalBasis adapted_basis(const GradedAlgebra& a, const RadicalData& rad) {
  const int n = a.dim();
  std::vector<int> slot_of_column(n, -1);
  std::vector<Element> j_vectors;
  for (std::size_t t = 0; t < rad.basis.size(); ++t) {
    const auto& v = rad.basis[t];
    int pivot = 0;
    while (pivot < n && v[pivot].is_zero()) ++pivot;
    slot_of_column[pivot] = static_cast<int>(j_vectors.size());
    j_vectors.push_back(v);
  }
  EvalBasis b;
  b.is_standard = true;
  for (int col = 0; col < n; ++col) {
    if (slot_of_column[col] >= 0) {
      const auto& v = j_vectors[slot_of_column[col]];
      bool unit_vector = true;
      for (int i = 0; i < n; ++i) {
        if (i != col && !v[i].is_zero()) unit_vector = false;
      }
      b.vectors.push_back(v);
      b.radical.push_back(true);
      b.standard_index.push_back(unit_vector ? col : -1);
      if (!unit_vector) b.is_standard = false;
    } else {
      b.vectors.push_back(a.basis(col));
      b.radical.push_back(false);
      b.standard_index.push_back(col);
    }
    b.degree.push_back(a.degree(col));
  }
  return b;
}

/// Partition of the basis into blocks with all cross products zero, so that
/// the algebra is the direct product of the spans. Blocks are ordered by
/// their smallest index.
inline std::vector<std::vector<int>> block_decomposition(const GradedAlgebra& a) {
  const int n = a.dim();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int x, int y) {
    x = find(x);
    y = find(y);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (const auto& t : a.product(i, j)) {
        unite(i, j);
        unite(i, t.k);
      }
    }
  }
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of(n, -1);
  for (int i = 0; i < n; ++i) {
    const int root = find(i);
    if (block_of[root] < 0) {
      block_of[root] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[block_of[root]].push_back(i);
  }
  return blocks;
}

/// Restriction to a set of basis indices closed under multiplication.
inline GradedAlgebra restrict_to(const GradedAlgebra& a, const std::vector<int>& indices) {
  std::vector<int> local(a.dim(), -1);
  std::vector<int> deg;
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < indices.size(); ++x) {
    local[indices[x]] = static_cast<int>(x);
    deg.push_back(a.degree(indices[x]));
    labels.push_back(a.label(indices[x]));
  }
  GradedAlgebra out(a.group(), std::move(deg), std::move(labels));
  for (int i : indices) {
    for (int j : indices) {
      for (const auto& t : a.product(i, j)) {
        if (local[t.k] < 0) throw ValidationError("restrict_to: index set is not closed under products");
        out.add_product(local[i], local[j], local[t.k], t.coeff);
      }
    }
  }
  if (a.unit()) {
    Element u = out.zero();
    for (std::size_t x = 0; x < indices.size(); ++x) u[x] = (*a.unit())[indices[x]];
    out.set_unit(std::move(u));
  }
  out.description = a.description + "|block";
  return out;
}

}  // namespace gradedpi
