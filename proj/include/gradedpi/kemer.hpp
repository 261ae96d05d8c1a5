#pragma once

// Kemer points: upper bounds from G-Par, budgeted witness searches for lower
// bounds, explicit witnesses for BSZ-simple algebras and product checks.

#include "gradedpi/identities.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace gradedpi {

struct KemerPoint {
  std::vector<int> alpha;  // indexed by group element
  int s = 0;
  bool s_infinite = false;

  friend bool operator==(const KemerPoint&, const KemerPoint&) = default;
  friend bool operator<(const KemerPoint& a, const KemerPoint& b) {
    if (a.alpha != b.alpha) return a.alpha < b.alpha;
    if (a.s_infinite != b.s_infinite) return !a.s_infinite;
    return a.s < b.s;
  }

  std::string str() const {
    std::string out = "((";
    for (std::size_t i = 0; i < alpha.size(); ++i) out += (i ? "," : "") + std::to_string(alpha[i]);
    return out + ");" + (s_infinite ? std::string("inf") : std::to_string(s)) + ")";
  }
};

/// alpha <= beta componentwise.
inline bool alpha_leq(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

/// (a, s) precedes (b, s') iff a < b (componentwise, strict somewhere) or a = b and s <= s'.
inline bool kemer_leq(const KemerPoint& p, const KemerPoint& q) {
  if (p.alpha == q.alpha) {
    if (q.s_infinite) return true;
    if (p.s_infinite) return false;
    return p.s <= q.s;
  }
  return alpha_leq(p.alpha, q.alpha);
}

/// Maximal elements, sorted and deduplicated.
inline std::vector<KemerPoint> maximal_points(std::vector<KemerPoint> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<KemerPoint> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
      if (i != j && kemer_leq(points[i], points[j]) && !(points[i] == points[j])) dominated = true;
    }
    if (!dominated) out.push_back(points[i]);
  }
  return out;
}

inline KemerPoint kemer_upper_bound(const GradedAlgebra& a) {
  const auto p = g_par(a);
  return KemerPoint{p.d, p.s, false};
}

// ---------------------------------------------------------------------------
// Layouts

/// nu folds of small g-sets of size alpha_g plus big sets of size alpha_g + 1.
struct LayoutShape {
  std::vector<int> alpha;
  int nu = 1;
  std::vector<int> big_degrees;  // sorted multiset

  struct SetShape {
    int degree;
    int size;
    bool big;
  };

  std::vector<SetShape> sets() const {
    std::vector<SetShape> out;
    for (int fold = 0; fold < nu; ++fold) {
      for (std::size_t g = 0; g < alpha.size(); ++g) {
        if (alpha[g] > 0) out.push_back({static_cast<int>(g), alpha[g], false});
      }
    }
    // keep interchangeable sets adjacent: order small sets by degree
    std::stable_sort(out.begin(), out.end(), [](const SetShape& x, const SetShape& y) { return x.degree < y.degree; });
    for (int g : big_degrees) out.push_back({g, alpha[g] + 1, true});
    return out;
  }

  int set_variables() const {
    int n = 0;
    for (const auto& s : sets()) n += s.size;
    return n;
  }

  std::string str() const {
    std::string out = "alpha=(";
    for (std::size_t i = 0; i < alpha.size(); ++i) out += (i ? "," : "") + std::to_string(alpha[i]);
    out += ") nu=" + std::to_string(nu) + " big=[";
    for (std::size_t i = 0; i < big_degrees.size(); ++i) out += (i ? "," : "") + std::to_string(big_degrees[i]);
    return out + "]";
  }
};

struct SearchParams {
  int nu = 1;
  std::optional<int> border_budget;  // default: set variables + 1
  std::uint64_t node_budget = 4'000'000;
  unsigned workers = 1;
};

struct LayoutWitness {
  GradedPolynomial polynomial;
  AlternationLayout layout;
  Assignment assignment;
  Element value;
  int borders = 0;
};

enum class LayoutStatus { kFound, kRefutedDimension, kRefutedExhaustive, kBudgetExhausted, kUnrealizable };

inline const char* status_name(LayoutStatus s) {
  switch (s) {
    case LayoutStatus::kFound:
      return "found";
    case LayoutStatus::kRefutedDimension:
      return "refuted_by_dimension";
    case LayoutStatus::kRefutedExhaustive:
      return "refuted_exhaustively";
    case LayoutStatus::kBudgetExhausted:
      return "budget_exhausted";
    case LayoutStatus::kUnrealizable:
      return "unrealizable";
  }
  return "";
}

struct LayoutResult {
  LayoutShape shape;
  LayoutStatus status = LayoutStatus::kBudgetExhausted;
  std::optional<LayoutWitness> witness;
  std::string reason;
  int border_budget = 0;
};

// ---------------------------------------------------------------------------
// Certified refutation

/// Per-block data for the dimension argument.
struct BlockData {
  std::vector<int> dims;        // dim of the block's g-component
  std::vector<int> semisimple;  // d_g of the block
  int nilpotency = 1;
};

inline std::vector<BlockData> block_data(const GradedAlgebra& a) {
  std::vector<BlockData> out;
  for (const auto& idx : block_decomposition(a)) {
    const auto b = restrict_to(a, idx);
    const auto rad = radical(b);
    BlockData d;
    d.dims.assign(a.group()->order(), 0);
    for (int i = 0; i < b.dim(); ++i) ++d.dims[b.degree(i)];
    d.semisimple = rad.semisimple_dims;
    d.nilpotency = rad.nilpotency_index;
    out.push_back(std::move(d));
  }
  return out;
}

/// Reason string when the layout vanishes on every block, else empty.
///
/// On a block B a multilinear polynomial alternating in a g-set larger than
/// dim B_g vanishes; each set larger than d_g(B) needs a radical value, so
/// n_B such sets force a product inside J(B)^{n_B} = 0. Mixed evaluations
/// across blocks vanish because cross products are zero.
inline std::string certify_refutation(const std::vector<BlockData>& blocks, const LayoutShape& shape) {
  const auto sets = shape.sets();
  std::string reason;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& blk = blocks[b];
    bool dead = false;
    std::string why;
    int heavy = 0;
    for (const auto& s : sets) {
      if (s.size > blk.dims[s.degree]) {
        dead = true;
        why = "set of size " + std::to_string(s.size) + " exceeds dim " + std::to_string(blk.dims[s.degree]);
        break;
      }
      if (s.size > blk.semisimple[s.degree]) ++heavy;
    }
    if (!dead && heavy >= blk.nilpotency) {
      dead = true;
      why = std::to_string(heavy) + " sets exceed the semisimple dimension, nilpotency index " +
            std::to_string(blk.nilpotency);
    }
    if (!dead) return {};
    reason += (reason.empty() ? "" : "; ") + std::string("block ") + std::to_string(b) + ": " + why;
  }
  return reason.empty() ? "algebra is zero" : reason;
}

// ---------------------------------------------------------------------------
// Witness search

namespace detail {

struct SearchClass {
  int degree;
  int size;        // 0 for the border class
  bool border;
  int prev_same;   // previous interchangeable set class, -1 if none
};

/// Depth-first search over monomials with border variables.
///
/// A path fixes, position by position, the class (set or border) and a basis
/// value with nonzero prefix product. Leaves are evaluated as the fully
/// alternated monomial; any nonzero alternated value has some nonzero
/// ordering of its values, so no witness is skipped by the pruning.
class LayoutSearch {
 public:
  LayoutSearch(const GradedAlgebra& a, std::vector<SearchClass> classes, int borders, std::uint64_t budget)
      : a_(a), classes_(std::move(classes)), borders_(borders), budget_(budget), ev_(a), inner_(a) {
    by_degree_.assign(a.group()->order(), {});
    for (int i = 0; i < a.dim(); ++i) by_degree_[a.degree(i)].push_back(i);
    length_ = borders_;
    for (const auto& c : classes_) length_ += c.border ? 0 : c.size;
    used_.assign(classes_.size(), 0);
    class_values_.assign(classes_.size(), {});
  }

  /// First-position choices in search order.
  std::vector<std::pair<int, int>> top_choices() const {
    std::vector<std::pair<int, int>> out;
    for (int c = 0; c < static_cast<int>(classes_.size()); ++c) {
      if (!can_open(c, 0)) continue;
      for (int v : values_for(c)) out.emplace_back(c, v);
    }
    return out;
  }

  struct Outcome {
    bool found = false;
    bool complete = true;
    std::vector<int> cls, val;
    Element value;
  };

  Outcome run_branch(std::pair<int, int> first) {
    nodes_ = 0;
    outcome_ = Outcome{};
    cls_.assign(length_, -1);
    val_.assign(length_, -1);
    stack_.clear();
    std::fill(used_.begin(), used_.end(), 0);
    for (auto& v : class_values_) v.clear();
    borders_used_ = 0;
    cache_.clear();
    if (place(0, first.first, first.second)) {
      dfs(1);
      unplace(0, first.first);
    }
    return outcome_;
  }

  int length() const { return length_; }

 private:
  const std::vector<int>& values_for(int c) const {
    if (classes_[c].border) return all_;
    return by_degree_[classes_[c].degree];
  }

  bool can_open(int c, int pos) const {
    const auto& k = classes_[c];
    if (k.border) {
      if (borders_used_ >= borders_) return false;
      if (pos > 0 && classes_[cls_[pos - 1]].border) return false;
      return true;
    }
    if (used_[c] >= k.size) return false;
    if (used_[c] == 0 && k.prev_same >= 0 && used_[k.prev_same] == 0) return false;
    return true;
  }

  bool feasible(int pos) const {
    int set_left = 0;
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      if (!classes_[c].border) set_left += classes_[c].size - used_[c];
    }
    const int border_left = borders_ - borders_used_;
    if (length_ - pos != set_left + border_left) return false;
    const bool last_border = pos > 0 && classes_[cls_[pos - 1]].border;
    return border_left <= set_left + (last_border ? 0 : 1);
  }

  bool place(int pos, int c, int v) {
    if (!classes_[c].border) {
      for (int x : class_values_[c]) {
        if (x == v) return false;
      }
    }
    SparseElement next = pos == 0 ? sparse_basis(v) : ev_.times_basis(stack_.back(), v);
    if (next.empty()) return false;
    stack_.push_back(std::move(next));
    cls_[pos] = c;
    val_[pos] = v;
    if (classes_[c].border) {
      ++borders_used_;
    } else {
      ++used_[c];
      class_values_[c].push_back(v);
    }
    if (!feasible(pos + 1)) {
      unplace(pos, c);
      return false;
    }
    return true;
  }

  void unplace(int pos, int c) {
    stack_.pop_back();
    if (classes_[c].border) {
      --borders_used_;
    } else {
      --used_[c];
      class_values_[c].pop_back();
    }
    cls_[pos] = -1;
    val_[pos] = -1;
  }

  // returns true to stop
  bool dfs(int pos) {
    if (++nodes_ > budget_) {
      outcome_.complete = false;
      return true;
    }
    if (pos == length_) return leaf();
    for (int c = 0; c < static_cast<int>(classes_.size()); ++c) {
      if (!can_open(c, pos)) continue;
      for (int v : values_for(c)) {
        if (!place(pos, c, v)) continue;
        const bool stop = dfs(pos + 1);
        unplace(pos, c);
        if (stop) return true;
      }
    }
    return false;
  }

  bool leaf() {
    std::string key;
    for (int p = 0; p < length_; ++p) key += std::to_string(cls_[p]) + (classes_[cls_[p]].border ? "b" + std::to_string(val_[p]) : "") + ",";
    key += "|";
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      auto vs = class_values_[c];
      std::sort(vs.begin(), vs.end());
      for (int v : vs) key += std::to_string(v) + ",";
      key += ";";
    }
    if (!cache_.insert(key).second) return false;
    const Element total = alternated_value();
    if (outcome_.complete == false) return true;
    if (!is_zero_vector(total)) {
      outcome_.found = true;
      outcome_.cls = cls_;
      outcome_.val = val_;
      outcome_.value = total;
      return true;
    }
    return false;
  }

  /// Sum over per-set permutations of the values, with signs.
  Element alternated_value() {
    Element total = a_.zero();
    std::vector<std::vector<char>> taken(classes_.size());
    for (std::size_t c = 0; c < classes_.size(); ++c) taken[c].assign(class_values_[c].size(), 0);
    std::vector<SparseElement> stack;
    std::function<void(int, int)> rec = [&](int pos, int parity) {
      if (!outcome_.complete) return;
      if (++nodes_ > budget_) {
        outcome_.complete = false;
        return;
      }
      if (pos == length_) {
        const Scalar sign(parity % 2 ? -1 : 1);
        for (const auto& [k, x] : stack.back()) total[k].add_product(sign, x);
        return;
      }
      const int c = cls_[pos];
      auto push = [&](int v) {
        SparseElement next = pos == 0 ? sparse_basis(v) : inner_.times_basis(stack.back(), v);
        if (next.empty()) return false;
        stack.push_back(std::move(next));
        return true;
      };
      if (classes_[c].border) {
        if (push(val_[pos])) {
          rec(pos + 1, parity);
          stack.pop_back();
        }
        return;
      }
      int skipped = 0;
      for (std::size_t t = 0; t < class_values_[c].size(); ++t) {
        if (taken[c][t]) continue;
        if (push(class_values_[c][t])) {
          taken[c][t] = 1;
          rec(pos + 1, parity + skipped);
          taken[c][t] = 0;
          stack.pop_back();
        }
        ++skipped;
      }
    };
    rec(0, 0);
    return total;
  }

  const GradedAlgebra& a_;
  std::vector<SearchClass> classes_;
  int borders_;
  std::uint64_t budget_;
  Evaluator ev_;
  Evaluator inner_;
  std::vector<std::vector<int>> by_degree_;
  std::vector<int> all_ = [this] {
    std::vector<int> v;
    for (int i = 0; i < a_.dim(); ++i) v.push_back(i);
    return v;
  }();
  int length_ = 0;
  std::vector<int> used_;
  std::vector<std::vector<int>> class_values_;
  int borders_used_ = 0;
  std::vector<int> cls_, val_;
  std::vector<SparseElement> stack_;
  std::set<std::string> cache_;
  std::uint64_t nodes_ = 0;
  Outcome outcome_;
};

inline std::vector<SearchClass> search_classes(const LayoutShape& shape) {
  std::vector<SearchClass> out;
  for (const auto& s : shape.sets()) {
    int prev = -1;
    for (int c = static_cast<int>(out.size()) - 1; c >= 0; --c) {
      if (out[c].degree == s.degree && out[c].size == s.size) {
        prev = c;
        break;
      }
    }
    out.push_back({s.degree, s.size, false, prev});
  }
  out.push_back({0, 0, true, -1});
  return out;
}

}  // namespace detail

/// Builds the alternated monomial x_1 ... x_L for a search leaf.
inline LayoutWitness build_layout_witness(const GradedAlgebra& a, const LayoutShape& shape,
                                          const std::vector<detail::SearchClass>& classes, const std::vector<int>& cls,
                                          const std::vector<int>& val) {
  LayoutWitness w;
  std::vector<VarSpec> alphabet;
  std::vector<std::vector<int>> members(classes.size());
  Word word;
  for (std::size_t p = 0; p < cls.size(); ++p) {
    const int id = static_cast<int>(p) + 1;
    const int deg = classes[cls[p]].border ? a.degree(val[p]) : classes[cls[p]].degree;
    alphabet.push_back({id, deg});
    word.push_back(id);
    w.assignment[id] = val[p];
    if (classes[cls[p]].border) {
      w.layout.border.push_back({id, deg});
      ++w.borders;
    } else {
      members[cls[p]].push_back(id);
    }
  }
  GradedPolynomial f = monomial(alphabet, word);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (classes[c].border || members[c].empty()) continue;
    if (members[c].size() > 1) f = alternate(f, members[c]);
  }
  // layout bookkeeping: small sets first, then big sets
  const auto sets = shape.sets();
  for (std::size_t c = 0; c < sets.size(); ++c) {
    if (sets[c].big) {
      w.layout.big_sets.emplace_back(classes[c].degree, members[c]);
    } else {
      w.layout.small_sets[classes[c].degree].push_back(members[c]);
    }
  }
  w.polynomial = std::move(f);
  return w;
}

/// Searches for a non-identity with the given alternating layout.
inline LayoutResult layout_witness(const GradedAlgebra& a, const LayoutShape& shape, const SearchParams& params,
                                   const std::vector<BlockData>* blocks = nullptr) {
  LayoutResult out;
  out.shape = shape;
  const auto sets = shape.sets();
  for (const auto& s : sets) {
    if (a.dim_of_degree(s.degree) == 0) {
      out.status = LayoutStatus::kUnrealizable;
      out.reason = "no basis element of degree " + a.group()->label(s.degree);
      return out;
    }
  }
  const int set_vars = shape.set_variables();
  out.border_budget = params.border_budget.value_or(set_vars + 1);
  std::vector<BlockData> local;
  if (!blocks) {
    local = block_data(a);
    blocks = &local;
  }
  if (auto why = certify_refutation(*blocks, shape); !why.empty()) {
    out.status = LayoutStatus::kRefutedDimension;
    out.reason = why;
    return out;
  }
  const auto classes = detail::search_classes(shape);
  bool complete = true;
  for (int b = 0; b <= out.border_budget; ++b) {
    if (set_vars + b == 0) continue;
    if (b > set_vars + 1) break;
    detail::LayoutSearch probe(a, classes, b, 0);
    const auto tops = probe.top_choices();
    if (tops.empty()) continue;
    const std::uint64_t per_branch = std::max<std::uint64_t>(1, params.node_budget / tops.size());
    const unsigned workers = std::max(1u, params.workers);
    std::optional<detail::LayoutSearch::Outcome> hit;
    for (std::size_t start = 0; start < tops.size() && !hit; start += workers) {
      const std::size_t count = std::min<std::size_t>(workers, tops.size() - start);
      auto results = parallel_map(count, workers, [&](std::size_t i) {
        detail::LayoutSearch search(a, classes, b, per_branch);
        return search.run_branch(tops[start + i]);
      });
      for (auto& r : results) {
        if (!r.complete) complete = false;
        if (r.found && !hit) hit = std::move(r);
      }
    }
    if (hit) {
      auto w = build_layout_witness(a, shape, classes, hit->cls, hit->val);
      w.value = evaluate(w.polynomial, a, w.assignment);
      if (w.value != hit->value || is_zero_vector(w.value)) {
        throw InternalConsistencyError("layout search: alternated evaluation disagrees with direct evaluation");
      }
      out.status = LayoutStatus::kFound;
      out.witness = std::move(w);
      return out;
    }
  }
  const bool exhaustive_borders = out.border_budget >= set_vars + 1;
  if (complete && exhaustive_borders) {
    out.status = LayoutStatus::kRefutedExhaustive;
    out.reason = "no alternated monomial with up to " + std::to_string(out.border_budget) +
                 " non-adjacent border variables is a non-identity";
  } else {
    out.status = LayoutStatus::kBudgetExhausted;
    out.reason = complete ? "border budget below the exhaustive bound" : "node budget exhausted";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lower bounds

struct KemerEstimate {
  KemerPoint upper;
  std::vector<KemerPoint> lower;              // extremal points found, with s
  std::vector<LayoutResult> witnesses;        // one per lower point (the richest layout found)
  std::vector<LayoutResult> refutations;      // certified non-existence results
  std::vector<LayoutResult> undecided;        // searches that ran out of budget
  bool budget_exhausted = false;
  SearchParams params;
};

namespace detail {

inline std::vector<std::vector<int>> box_points(const std::vector<int>& bound) {
  std::vector<std::vector<int>> out;
  std::vector<int> p(bound.size(), 0);
  for (;;) {
    out.push_back(p);
    std::size_t i = 0;
    while (i < p.size() && p[i] == bound[i]) p[i++] = 0;
    if (i == p.size()) break;
    ++p[i];
  }
  // larger total first, then lexicographically larger first
  std::sort(out.begin(), out.end(), [](const std::vector<int>& x, const std::vector<int>& y) {
    int sx = 0, sy = 0;
    for (int v : x) sx += v;
    for (int v : y) sy += v;
    if (sx != sy) return sx > sy;
    return x > y;
  });
  return out;
}

inline std::vector<std::vector<int>> degree_multisets(int group_order, int s) {
  std::vector<std::vector<int>> out;
  std::vector<int> m(s, 0);
  if (s == 0) return {{}};
  for (;;) {
    out.push_back(m);
    int i = s - 1;
    while (i >= 0 && m[i] == group_order - 1) --i;
    if (i < 0) break;
    ++m[i];
    for (int j = i + 1; j < s; ++j) m[j] = m[i];
  }
  return out;
}

}  // namespace detail

/// Budget-relative estimate of the Kemer set from below.
///
/// Candidates alpha inside the G-Par box are tried from the top, skipping any
/// dominated by a point already found; for each found alpha, s grows while a
/// layout with s big sets still has a witness, up to n_A - 1.
inline KemerEstimate kemer_lower_bound(const GradedAlgebra& a, const SearchParams& params) {
  KemerEstimate out;
  out.params = params;
  out.upper = kemer_upper_bound(a);
  const auto blocks = block_data(a);
  const int r = a.group()->order();
  const int s_cap = out.upper.s;

  auto record = [&](const LayoutResult& res) {
    switch (res.status) {
      case LayoutStatus::kRefutedDimension:
      case LayoutStatus::kRefutedExhaustive:
        out.refutations.push_back(res);
        break;
      case LayoutStatus::kBudgetExhausted:
        out.undecided.push_back(res);
        out.budget_exhausted = true;
        break;
      default:
        break;
    }
  };

  // one step beyond the box in each direction
  for (int g = 0; g < r; ++g) {
    LayoutShape shape;
    shape.alpha.assign(r, 0);
    shape.alpha[g] = out.upper.alpha[g] + 1;
    shape.nu = params.nu;
    if (auto why = certify_refutation(blocks, shape); !why.empty()) {
      LayoutResult res;
      res.shape = shape;
      res.status = LayoutStatus::kRefutedDimension;
      res.reason = why;
      out.refutations.push_back(res);
    }
  }

  std::vector<std::pair<std::vector<int>, LayoutResult>> found;
  for (const auto& alpha : detail::box_points(out.upper.alpha)) {
    bool dominated = false;
    for (const auto& [f, res] : found) {
      if (alpha_leq(alpha, f)) dominated = true;
    }
    if (dominated) continue;
    LayoutShape shape{alpha, params.nu, {}};
    auto res = layout_witness(a, shape, params, &blocks);
    if (res.status == LayoutStatus::kFound) {
      found.emplace_back(alpha, std::move(res));
    } else {
      record(res);
    }
  }

  for (auto& [alpha, best] : found) {
    int s = 0;
    for (int next = 1; next <= s_cap; ++next) {
      std::optional<LayoutResult> hit;
      for (const auto& bigs : detail::degree_multisets(r, next)) {
        LayoutShape shape{alpha, params.nu, bigs};
        auto res = layout_witness(a, shape, params, &blocks);
        if (res.status == LayoutStatus::kFound) {
          hit = std::move(res);
          break;
        }
        record(res);
      }
      if (!hit) break;
      s = next;
      best = std::move(*hit);
    }
    out.lower.push_back(KemerPoint{alpha, s, false});
    out.witnesses.push_back(best);
  }
  // report in point order
  std::vector<std::size_t> order(out.lower.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return out.lower[x] < out.lower[y]; });
  std::vector<KemerPoint> lower;
  std::vector<LayoutResult> wit;
  for (auto i : order) {
    lower.push_back(out.lower[i]);
    wit.push_back(out.witnesses[i]);
  }
  out.lower = std::move(lower);
  out.witnesses = std::move(wit);
  return out;
}

// ---------------------------------------------------------------------------
// Explicit witness for BSZ-simple algebras

/// Closed walk through every matrix unit E_{i,j} (i, j < k) starting and
/// ending at index 0, found with Hierholzer's algorithm taking the smallest
/// unused target first. For k = 2 this is E11 E12 E22 E21.
inline std::vector<std::pair<int, int>> matrix_unit_tour(int k) {
  std::vector<int> next_target(k, 0);
  std::vector<int> stack{0};
  std::vector<int> circuit;
  while (!stack.empty()) {
    const int v = stack.back();
    if (next_target[v] < k) {
      stack.push_back(next_target[v]++);
    } else {
      circuit.push_back(v);
      stack.pop_back();
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  std::vector<std::pair<int, int>> tour;
  for (std::size_t i = 0; i + 1 < circuit.size(); ++i) tour.emplace_back(circuit[i], circuit[i + 1]);
  return tour;
}

struct SimpleWitness {
  GradedPolynomial polynomial;
  Assignment assignment;
  Element value;
  AlternationLayout layout;
  std::vector<std::pair<int, int>> tour;
  bool nonzero = false;
  bool sets_alternating = false;
};

/// nu concatenated copies of y_0 x_1 y_1 ... x_N y_N c, one x per basis element
/// b_h (x) E_{i,j} (for each h in order, E_{i,j} along the tour), borders
/// valued 1 (x) E_{i,i}, and c valued at the basis element inverse in degree
/// to the product; in every copy the x's of each degree form one alternating set.
inline SimpleWitness full_witness_simple(const GradedAlgebra& a, int nu) {
  if (!a.bsz) throw std::invalid_argument("full_witness_simple: algebra was not built by bsz_simple");
  if (nu < 1) throw std::invalid_argument("full_witness_simple: nu must be positive");
  const BszData& data = *a.bsz;
  const int k = data.k;
  const auto& sub = *data.subgroup.sub;
  const int hr = sub.order();
  SimpleWitness out;
  out.tour = matrix_unit_tour(k);

  std::vector<VarSpec> alphabet;
  Word word;
  int next_id = 1;
  std::vector<std::vector<int>> copy_sets;
  for (int copy = 0; copy < nu; ++copy) {
    std::map<int, std::vector<int>> by_degree;
    auto add_var = [&](int basis_index, bool is_border) {
      const int id = next_id++;
      alphabet.push_back({id, a.degree(basis_index)});
      word.push_back(id);
      out.assignment[id] = basis_index;
      if (is_border) {
        out.layout.border.push_back({id, a.degree(basis_index)});
      }
      return id;
    };
    int h_total = 0;  // subgroup element of the product, ignoring scalars
    for (int h = 0; h < hr; ++h) {
      for (const auto& [i, j] : out.tour) {
        add_var(data.index(0, i, i), true);
        const int id = add_var(data.index(h, i, j), false);
        by_degree[a.degree(data.index(h, i, j))].push_back(id);
        h_total = sub.mul(h_total, h);
      }
    }
    add_var(data.index(0, 0, 0), true);
    add_var(data.index(sub.inv(h_total), 0, 0), false);
    for (auto& [g, ids] : by_degree) {
      out.layout.small_sets[g].push_back(ids);
      copy_sets.push_back(ids);
    }
  }
  GradedPolynomial f = monomial(alphabet, word);
  for (const auto& s : copy_sets) {
    if (s.size() > 1) f = alternate(f, s);
  }
  out.value = evaluate(f, a, out.assignment);
  out.nonzero = !is_zero_vector(out.value);
  out.sets_alternating = true;
  for (const auto& s : copy_sets) {
    if (!is_alternating(f, s)) out.sets_alternating = false;
  }
  out.polynomial = std::move(f);
  return out;
}

// ---------------------------------------------------------------------------
// Direct products

struct ProductCheck {
  std::vector<KemerEstimate> factors;
  KemerEstimate product;
  std::vector<KemerPoint> factor_points;   // union of factor lower bounds
  std::vector<KemerPoint> expected;        // maximal elements of the union
  std::vector<KemerPoint> product_points;  // maximal elements of the product's lower bound
  bool passed = false;
};

inline ProductCheck kemer_set_product_check(const std::vector<const GradedAlgebra*>& factors,
                                            const SearchParams& params) {
  if (factors.empty()) throw std::invalid_argument("kemer_set_product_check: no factors");
  ProductCheck out;
  std::optional<GradedAlgebra> prod;
  for (const auto* f : factors) {
    out.factors.push_back(kemer_lower_bound(*f, params));
    for (const auto& p : out.factors.back().lower) out.factor_points.push_back(p);
    prod = prod ? direct_product(*prod, *f) : *f;
  }
  out.product = kemer_lower_bound(*prod, params);
  std::sort(out.factor_points.begin(), out.factor_points.end());
  out.factor_points.erase(std::unique(out.factor_points.begin(), out.factor_points.end()), out.factor_points.end());
  out.expected = maximal_points(out.factor_points);
  out.product_points = maximal_points(out.product.lower);
  out.passed = out.expected == out.product_points;
  return out;
}

}  // namespace gradedpi
