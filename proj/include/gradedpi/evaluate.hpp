#pragma once

// Evaluation of polynomials on structure-constant algebras: sparse values
// with prefix reuse, and generic elements over commuting indeterminates.

#include "gradedpi/algebra.hpp"
#include "gradedpi/polynomial.hpp"
#include "gradedpi/sparse_poly.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gradedpi {

/// Sparse algebra element, sorted by basis index, no zero entries.
using SparseElement = std::vector<std::pair<int, Scalar>>;

/// var id -> basis index.
using Assignment = std::map<int, int>;

inline SparseElement to_sparse(const Element& v) {
  SparseElement out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) out.emplace_back(static_cast<int>(i), v[i]);
  }
  return out;
}

inline Element to_dense(const SparseElement& v, int dim) {
  Element out(dim, Scalar(0));
  for (const auto& [i, c] : v) out[i] = c;
  return out;
}

inline SparseElement sparse_basis(int i) { return {{i, Scalar(1)}}; }

/// Reusable scratch space for products in one algebra. Not thread-safe;
/// parallel callers keep one per worker.
class Evaluator {
 public:
  explicit Evaluator(const GradedAlgebra& a) : a_(&a), acc_(a.dim(), Scalar(0)), used_(a.dim(), 0) {}

  const GradedAlgebra& algebra() const { return *a_; }

  SparseElement times(const SparseElement& v, const SparseElement& w) {
    if (w.size() == 1 && w[0].second.is_one()) return times_basis(v, w[0].first);
    for (const auto& [j, cw] : w) {
      for (const auto& [i, cv] : v) {
        const auto& terms = a_->product(i, j);
        if (terms.empty()) continue;
        const Scalar c = cv * cw;
        for (const auto& t : terms) accumulate(t.k, c, t.coeff);
      }
    }
    return collect();
  }

  SparseElement times_basis(const SparseElement& v, int j) {
    for (const auto& [i, cv] : v) {
      for (const auto& t : a_->product(i, j)) accumulate(t.k, cv, t.coeff);
    }
    return collect();
  }

  /// Values of each word, sharing work between consecutive words with a
  /// common prefix. `value_of[id]` must be set for every id used.
  std::vector<SparseElement> word_values(const std::vector<const Word*>& words,
                                         const std::vector<const SparseElement*>& value_of) {
    std::vector<SparseElement> out;
    out.reserve(words.size());
    stack_.clear();
    const Word* prev = nullptr;
    for (const Word* w : words) {
      out.push_back(word_value(*w, prev, value_of));
      prev = w;
    }
    return out;
  }

  /// f evaluated at the given values, as a dense vector.
  Element evaluate(const GradedPolynomial& f, const std::vector<const SparseElement*>& value_of) {
    Element out(a_->dim(), Scalar(0));
    stack_.clear();
    const Word* prev = nullptr;
    for (const auto& [w, c] : f.terms()) {
      const SparseElement& v = word_value(w, prev, value_of);
      for (const auto& [i, x] : v) out[i].add_product(c, x);
      prev = &w;
    }
    return out;
  }

 private:
  void accumulate(int k, const Scalar& a, const Scalar& b) {
    if (!used_[k]) {
      used_[k] = 1;
      touched_.push_back(k);
      acc_[k] = a * b;
    } else {
      acc_[k].add_product(a, b);
    }
  }

  SparseElement collect() {
    std::sort(touched_.begin(), touched_.end());
    SparseElement out;
    out.reserve(touched_.size());
    for (int k : touched_) {
      used_[k] = 0;
      if (!acc_[k].is_zero()) out.emplace_back(k, std::move(acc_[k]));
      acc_[k] = Scalar(0);
    }
    touched_.clear();
    return out;
  }

  const SparseElement& word_value(const Word& w, const Word* prev,
                                  const std::vector<const SparseElement*>& value_of) {
    if (w.empty()) throw std::invalid_argument("evaluate: empty word");
    std::size_t common = 0;
    if (prev) {
      while (common < w.size() && common < prev->size() && common < stack_.size() && (*prev)[common] == w[common]) {
        ++common;
      }
    }
    if (common == w.size()) common = w.size() - 1;  // identical prefix; recompute last level for safety
    stack_.resize(common);
    for (std::size_t d = common; d < w.size(); ++d) {
      const SparseElement* v = value_of.at(w[d]);
      if (!v) throw std::invalid_argument("evaluate: variable " + std::to_string(w[d]) + " has no value");
      if (d == 0) {
        stack_.push_back(*v);
      } else {
        stack_.push_back(times(stack_.back(), *v));
      }
    }
    return stack_.back();
  }

  const GradedAlgebra* a_;
  std::vector<Scalar> acc_;
  std::vector<char> used_;
  std::vector<int> touched_;
  std::vector<SparseElement> stack_;
};

namespace detail {

inline std::vector<const SparseElement*> value_table(const GradedPolynomial& f,
                                                     const std::map<int, SparseElement>& values) {
  std::vector<const SparseElement*> table(f.max_id() + 1, nullptr);
  for (const auto& [id, v] : values) {
    if (id >= 0 && id < static_cast<int>(table.size())) table[id] = &v;
  }
  return table;
}

inline void check_admissible(const GradedPolynomial& f, const GradedAlgebra& a, const Assignment& asg) {
  for (const auto& v : f.alphabet()) {
    auto it = asg.find(v.id);
    if (it == asg.end()) throw std::invalid_argument("assignment does not cover variable " + std::to_string(v.id));
    if (it->second < 0 || it->second >= a.dim()) {
      throw std::invalid_argument("assignment of variable " + std::to_string(v.id) + " is out of range");
    }
    if (a.degree(it->second) != v.degree) {
      throw std::invalid_argument("assignment of variable " + std::to_string(v.id) + " is not admissible: degree " +
                                  a.group()->label(a.degree(it->second)) + " != " + a.group()->label(v.degree));
    }
  }
}

}  // namespace detail

/// f at an admissible basis assignment.
inline Element evaluate(const GradedPolynomial& f, const GradedAlgebra& a, const Assignment& asg) {
  detail::check_admissible(f, a, asg);
  std::map<int, SparseElement> values;
  for (const auto& [id, b] : asg) values[id] = sparse_basis(b);
  Evaluator ev(a);
  return ev.evaluate(f, detail::value_table(f, values));
}

/// f at arbitrary values (each must be homogeneous of its variable's degree).
inline Element evaluate_values(const GradedPolynomial& f, const GradedAlgebra& a, const std::map<int, Element>& vals) {
  std::map<int, SparseElement> values;
  for (const auto& v : f.alphabet()) {
    auto it = vals.find(v.id);
    if (it == vals.end()) throw std::invalid_argument("no value for variable " + std::to_string(v.id));
    for (int i = 0; i < a.dim(); ++i) {
      if (!it->second[i].is_zero() && a.degree(i) != v.degree) {
        throw std::invalid_argument("value of variable " + std::to_string(v.id) + " is not homogeneous of its degree");
      }
    }
    values[v.id] = to_sparse(it->second);
  }
  Evaluator ev(a);
  return ev.evaluate(f, detail::value_table(f, values));
}

// ---------------------------------------------------------------------------
// Generic elements

using GenericElement = std::vector<SparsePoly>;

struct GenericFrame {
  std::size_t lambda_count = 0;
  std::map<int, GenericElement> values;  // var id -> generic (or fixed) element
  std::vector<int> unrealizable;         // var ids whose degree has no basis element
};

/// y_i = sum_j b_j lambda_{i,j} over the basis of A of the variable's degree,
/// with variables listed in `fixed` replaced by the given basis element.
inline GenericFrame generic_elements(const GradedAlgebra& a, const std::vector<VarSpec>& alphabet,
                                     const Assignment& fixed = {}) {
  GenericFrame frame;
  for (const auto& v : alphabet) {
    if (!fixed.count(v.id)) frame.lambda_count += a.dim_of_degree(v.degree);
    if (a.dim_of_degree(v.degree) == 0) frame.unrealizable.push_back(v.id);
  }
  std::size_t next = 0;
  for (const auto& v : alphabet) {
    GenericElement y(a.dim(), SparsePoly(frame.lambda_count));
    if (auto it = fixed.find(v.id); it != fixed.end()) {
      y[it->second] = SparsePoly::constant(frame.lambda_count, Scalar(1));
    } else {
      for (int j : a.basis_of_degree(v.degree)) y[j] = SparsePoly::variable(frame.lambda_count, next++);
    }
    frame.values.emplace(v.id, std::move(y));
  }
  return frame;
}

inline GenericElement generic_multiply(const GradedAlgebra& a, const GenericElement& x, const GenericElement& y) {
  GenericElement out(a.dim(), SparsePoly(x.empty() ? 0 : x[0].vars()));
  for (int i = 0; i < a.dim(); ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < a.dim(); ++j) {
      if (y[j].is_zero()) continue;
      for (const auto& t : a.product(i, j)) out[t.k].add_scaled_product(t.coeff, x[i], y[j]);
    }
  }
  return out;
}

struct GenericValue {
  GenericElement value;
  bool vacuous = false;  // some variable has no admissible value at all

  bool is_zero() const {
    for (const auto& p : value) {
      if (!p.is_zero()) return false;
    }
    return true;
  }
};

/// f evaluated on the generic elements of `frame`.
inline GenericValue evaluate_generic(const GradedPolynomial& f, const GradedAlgebra& a, const GenericFrame& frame) {
  GenericValue out;
  out.value.assign(a.dim(), SparsePoly(frame.lambda_count));
  if (!frame.unrealizable.empty()) {
    out.vacuous = true;
    return out;
  }
  std::vector<GenericElement> stack;
  const Word* prev = nullptr;
  for (const auto& [w, c] : f.terms()) {
    if (w.empty()) throw std::invalid_argument("evaluate_generic: empty word");
    std::size_t common = 0;
    if (prev) {
      while (common + 1 < w.size() && common < prev->size() && common < stack.size() && (*prev)[common] == w[common]) {
        ++common;
      }
    }
    stack.resize(common);
    for (std::size_t d = common; d < w.size(); ++d) {
      const auto& y = frame.values.at(w[d]);
      stack.push_back(d == 0 ? y : generic_multiply(a, stack.back(), y));
    }
    const auto& v = stack.back();
    for (int k = 0; k < a.dim(); ++k) {
      if (!v[k].is_zero()) out.value[k] += v[k].scaled(c);
    }
    prev = &w;
  }
  return out;
}

inline GenericValue evaluate_generic(const GradedPolynomial& f, const GradedAlgebra& a) {
  return evaluate_generic(f, a, generic_elements(a, f.alphabet()));
}

}  // namespace gradedpi
