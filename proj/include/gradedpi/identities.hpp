#pragma once

// Graded identity decisions, multilinear identity spaces, bounded T-ideal
// comparison, property K and the trace identity check.

#include "gradedpi/evaluate.hpp"
#include "gradedpi/parallel.hpp"
#include "gradedpi/radical.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gradedpi {

/// Raised when a requested sweep is larger than the caller allows.
class SizeGuardError : public std::runtime_error {
 public:
  SizeGuardError(const std::string& what, double estimate) : std::runtime_error(what), estimate(estimate) {}
  double estimate;
};

// ---------------------------------------------------------------------------
// Assignment spaces

/// Mixed-radix enumeration of admissible basis assignments.
///
/// Each slot is either one free variable or a declared alternating set; a set
/// ranges over strictly increasing tuples of basis indices of its degree,
/// mapped to its ids in increasing id order. Slots are ordered by smallest id
/// and the last slot varies fastest, so index order is lexicographic.
class AssignmentSpace {
 public:
  AssignmentSpace(const GradedPolynomial& f, const std::vector<std::vector<int>>& choices_by_degree,
                  std::vector<std::vector<int>> alternating_sets = {}) {
    std::set<int> in_set;
    for (auto& s : alternating_sets) {
      std::sort(s.begin(), s.end());
      for (int id : s) in_set.insert(id);
    }
    std::vector<std::pair<int, Slot>> ordered;
    for (const auto& s : alternating_sets) {
      if (s.empty()) continue;
      Slot slot;
      slot.ids = s;
      slot.pool = choices_by_degree.at(f.degree_of(s[0]));
      ordered.emplace_back(s[0], std::move(slot));
    }
    for (const auto& v : f.alphabet()) {
      if (in_set.count(v.id)) continue;
      Slot slot;
      slot.ids = {v.id};
      slot.pool = choices_by_degree.at(v.degree);
      ordered.emplace_back(v.id, std::move(slot));
    }
    std::sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    size_ = 1;
    for (auto& [first, slot] : ordered) {
      const int k = static_cast<int>(slot.ids.size());
      const int n = static_cast<int>(slot.pool.size());
      if (k == 1) {
        for (int b : slot.pool) slot.tuples.push_back({b});
      } else {
        for_each_combination(n, k, [&](const std::vector<int>& c) {
          std::vector<int> t;
          for (int x : c) t.push_back(slot.pool[x]);
          slot.tuples.push_back(std::move(t));
          return true;
        });
      }
      const double next = static_cast<double>(size_) * static_cast<double>(slot.tuples.size());
      if (next > 9.0e18) throw SizeGuardError("assignment space too large", next);
      size_ *= slot.tuples.size();
      slots_.push_back(std::move(slot));
    }
  }

  std::uint64_t size() const { return size_; }

  /// Writes basis indices for every id into `out` (indexed by id).
  void decode(std::uint64_t index, std::vector<int>& out) const {
    for (std::size_t s = slots_.size(); s-- > 0;) {
      const auto& slot = slots_[s];
      const std::uint64_t r = slot.tuples.size();
      const auto& t = slot.tuples[index % r];
      index /= r;
      for (std::size_t x = 0; x < slot.ids.size(); ++x) out[slot.ids[x]] = t[x];
    }
  }

 private:
  struct Slot {
    std::vector<int> ids;
    std::vector<int> pool;
    std::vector<std::vector<int>> tuples;
  };
  std::vector<Slot> slots_;
  std::uint64_t size_ = 1;
};

namespace detail {

inline std::vector<std::vector<int>> standard_choices(const GradedAlgebra& a) {
  std::vector<std::vector<int>> out(a.group()->order());
  for (int i = 0; i < a.dim(); ++i) out[a.degree(i)].push_back(i);
  return out;
}

inline bool unrealizable(const GradedPolynomial& f, const GradedAlgebra& a) {
  for (const auto& v : f.alphabet()) {
    if (a.dim_of_degree(v.degree) == 0) return true;
  }
  return false;
}

/// Per-worker evaluation state: an evaluator plus id-indexed value slots.
struct SweepState {
  SweepState(const GradedAlgebra& a, int max_id)
      : ev(a), basis_of_id(max_id + 1, -1), values(max_id + 1), value_of(max_id + 1, nullptr) {}

  void load(const std::vector<int>& basis_index, const std::vector<SparseElement>& vectors, bool standard) {
    for (std::size_t id = 0; id < basis_index.size(); ++id) {
      if (basis_index[id] < 0) continue;
      values[id] = standard ? sparse_basis(basis_index[id]) : vectors[basis_index[id]];
      value_of[id] = &values[id];
    }
  }

  Evaluator ev;
  std::vector<int> basis_of_id;
  std::vector<SparseElement> values;
  std::vector<const SparseElement*> value_of;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Identity decision

struct IdentityVerdict {
  bool identity = true;
  bool vacuous = false;        // some variable has no admissible value
  std::optional<Assignment> witness;
  Element witness_value;
  std::uint64_t space_size = 0;
  std::string method;          // "exhaustive", "alternating-sets", "generic"
};

struct IdentityOptions {
  unsigned workers = 1;
  /// Declared alternating sets; used to restrict to increasing tuples.
  std::vector<std::vector<int>> alternating_sets;
};

/// Exhaustive basis-substitution check for multilinear f.
inline IdentityVerdict is_identity_multilinear(const GradedPolynomial& f, const GradedAlgebra& a,
                                               const IdentityOptions& opt = {}) {
  if (!f.multilinear()) throw std::invalid_argument("is_identity_multilinear: f is not multilinear");
  IdentityVerdict out;
  out.method = opt.alternating_sets.empty() ? "exhaustive" : "alternating-sets";
  if (f.is_zero()) return out;
  if (detail::unrealizable(f, a)) {
    out.vacuous = true;
    return out;
  }
  for (const auto& s : opt.alternating_sets) {
    if (!is_alternating(f, s)) throw std::invalid_argument("declared alternating set is not alternating");
  }
  const AssignmentSpace space(f, detail::standard_choices(a), opt.alternating_sets);
  out.space_size = space.size();
  const int max_id = f.max_id();
  const auto hit = find_first_with_state(
      space.size(), opt.workers, [&] { return detail::SweepState(a, max_id); },
      [&](detail::SweepState& st, std::size_t i) {
        space.decode(i, st.basis_of_id);
        st.load(st.basis_of_id, {}, true);
        return !is_zero_vector(st.ev.evaluate(f, st.value_of));
      },
      256);
  if (hit) {
    std::vector<int> idx(max_id + 1, -1);
    space.decode(*hit, idx);
    Assignment asg;
    for (const auto& v : f.alphabet()) asg[v.id] = idx[v.id];
    out.identity = false;
    out.witness_value = evaluate(f, a, asg);
    out.witness = std::move(asg);
  }
  return out;
}

/// Ids occurring exactly once in every word of f.
inline std::vector<int> linear_variables(const GradedPolynomial& f) {
  std::vector<int> out;
  for (const auto& v : f.alphabet()) {
    bool linear = !f.is_zero();
    for (const auto& [w, c] : f.terms()) {
      if (std::count(w.begin(), w.end(), v.id) != 1) {
        linear = false;
        break;
      }
    }
    if (linear) out.push_back(v.id);
  }
  return out;
}

/// Generic-element identity check.
///
/// Variables that occur exactly once in every word are substituted by basis
/// elements (f is linear in them); the remaining variables are generic. With
/// `all_generic` every variable is generic.
inline IdentityVerdict is_identity_generic(const GradedPolynomial& f, const GradedAlgebra& a, unsigned workers = 1,
                                           bool all_generic = false) {
  IdentityVerdict out;
  out.method = "generic";
  if (f.is_zero()) return out;
  if (detail::unrealizable(f, a)) {
    out.vacuous = true;
    return out;
  }
  const std::vector<int> linear = all_generic ? std::vector<int>{} : linear_variables(f);
  GradedPolynomial shape;
  for (int id : linear) shape.add_variable({id, f.degree_of(id)});
  const AssignmentSpace space(shape, detail::standard_choices(a));
  out.space_size = space.size();
  const int max_id = f.max_id();
  auto fixed_at = [&](std::size_t i) {
    std::vector<int> idx(max_id + 1, -1);
    space.decode(i, idx);
    Assignment fixed;
    for (int id : linear) fixed[id] = idx[id];
    return fixed;
  };
  const auto hit = find_first(space.size(), workers, [&](std::size_t i) {
    return !evaluate_generic(f, a, generic_elements(a, f.alphabet(), fixed_at(i))).is_zero();
  }, 8);
  if (hit) {
    out.identity = false;
    out.witness = fixed_at(*hit);
  }
  return out;
}

/// Multilinear f: exhaustive sweep; otherwise the generic-element oracle.
inline IdentityVerdict is_identity(const GradedPolynomial& f, const GradedAlgebra& a, const IdentityOptions& opt = {}) {
  if (f.multilinear()) return is_identity_multilinear(f, a, opt);
  return is_identity_generic(f, a, opt.workers);
}

// ---------------------------------------------------------------------------
// Identity spaces

struct IdentitySpace {
  std::vector<int> profile;            // degree of variable i+1
  std::vector<Word> monomials;         // the m! orderings, lexicographic
  std::vector<Vector> basis;           // kernel vectors over `monomials`
  bool vacuous = false;
  std::size_t rank = 0;                // rank of the evaluation map
  std::uint64_t assignments_used = 0;  // assignments swept before the rank settled

  std::vector<VarSpec> alphabet() const {
    std::vector<VarSpec> out;
    for (std::size_t i = 0; i < profile.size(); ++i) out.push_back({static_cast<int>(i) + 1, profile[i]});
    return out;
  }

  GradedPolynomial polynomial(const Vector& coeffs) const {
    GradedPolynomial f(alphabet());
    for (std::size_t c = 0; c < monomials.size(); ++c) f.add_term(monomials[c], coeffs[c]);
    return f;
  }
};

inline std::vector<Word> multilinear_monomials(int m) {
  std::vector<Word> out;
  for_each_permutation(m, [&](const std::vector<int>& p, int) {
    Word w;
    for (int x : p) w.push_back(x + 1);
    out.push_back(std::move(w));
    return true;
  });
  return out;
}

struct IdentitySpaceOptions {
  unsigned workers = 1;
  int max_degree = 7;
  double max_work = 4.0e8;  // assignments * m!
};

/// Kernel of the evaluation map on multilinear polynomials of the given profile.
inline IdentitySpace identity_space(const GradedAlgebra& a, const std::vector<int>& profile,
                                    const IdentitySpaceOptions& opt = {}) {
  const int m = static_cast<int>(profile.size());
  if (m < 1) throw std::invalid_argument("identity_space: empty profile");
  if (m > opt.max_degree) {
    throw SizeGuardError("identity_space: degree " + std::to_string(m) + " exceeds the guard " +
                             std::to_string(opt.max_degree),
                         static_cast<double>(factorial(m)));
  }
  if (a.grassmann_capacity && *a.grassmann_capacity < 2 * m) {
    throw std::invalid_argument("identity_space: Grassmann capacity " + std::to_string(*a.grassmann_capacity) +
                                " is below 2 * degree = " + std::to_string(2 * m));
  }
  IdentitySpace out;
  out.profile = profile;
  out.monomials = multilinear_monomials(m);
  const std::size_t width = out.monomials.size();
  GradedPolynomial shape;
  for (int i = 0; i < m; ++i) shape.add_variable({i + 1, profile[i]});
  if (detail::unrealizable(shape, a)) {
    out.vacuous = true;
    for (std::size_t c = 0; c < width; ++c) {
      Vector v(width, Scalar(0));
      v[c] = Scalar(1);
      out.basis.push_back(std::move(v));
    }
    return out;
  }
  const AssignmentSpace space(shape, detail::standard_choices(a));
  const double work = static_cast<double>(space.size()) * static_cast<double>(width);
  if (work > opt.max_work) {
    throw SizeGuardError("identity_space: sweep of " + std::to_string(space.size()) + " assignments x " +
                             std::to_string(width) + " monomials exceeds the guard",
                         work);
  }
  std::vector<const Word*> words;
  for (const auto& w : out.monomials) words.push_back(&w);

  RowEchelon echelon(width);
  const std::uint64_t block = 128;
  const std::uint64_t blocks = (space.size() + block - 1) / block;
  const unsigned workers = std::max(1u, opt.workers);
  std::uint64_t done_blocks = 0;
  while (done_blocks < blocks && !echelon.full()) {
    const std::uint64_t wave = std::min<std::uint64_t>(blocks - done_blocks, workers * 2ull);
    auto partial = parallel_map(wave, workers, [&](std::size_t w) {
      detail::SweepState st(a, m);
      RowEchelon local(width);
      const std::uint64_t start = (done_blocks + w) * block;
      const std::uint64_t stop = std::min<std::uint64_t>(space.size(), start + block);
      for (std::uint64_t i = start; i < stop && !local.full(); ++i) {
        space.decode(i, st.basis_of_id);
        st.load(st.basis_of_id, {}, true);
        const auto values = st.ev.word_values(words, st.value_of);
        std::map<int, Vector> rows;
        for (std::size_t c = 0; c < width; ++c) {
          for (const auto& [k, x] : values[c]) {
            auto [it, inserted] = rows.try_emplace(k, Vector(width, Scalar(0)));
            it->second[c] = x;
          }
        }
        for (auto& [k, row] : rows) local.add(std::move(row));
      }
      return local.rows();
    });
    for (auto& rows : partial) {
      for (auto& r : rows) {
        if (echelon.full()) break;
        echelon.add(std::move(r));
      }
    }
    done_blocks += wave;
  }
  out.assignments_used = std::min<std::uint64_t>(space.size(), done_blocks * block);
  out.rank = echelon.rank();
  out.basis = echelon.kernel();
  return out;
}

// ---------------------------------------------------------------------------
// Bounded T-ideal comparison

enum class TIdealRelation { kEqual, kFirstStrictlyContained, kSecondStrictlyContained, kIncomparable };

inline const char* relation_name(TIdealRelation r) {
  switch (r) {
    case TIdealRelation::kEqual:
      return "equal";
    case TIdealRelation::kFirstStrictlyContained:
      return "first_strictly_contained";
    case TIdealRelation::kSecondStrictlyContained:
      return "second_strictly_contained";
    case TIdealRelation::kIncomparable:
      return "incomparable";
  }
  return "";
}

struct Separation {
  std::vector<int> profile;
  GradedPolynomial polynomial;
  bool identity_of_first = false;  // identity of the first algebra, not of the second
};

struct TIdealComparison {
  TIdealRelation relation = TIdealRelation::kEqual;
  std::vector<Separation> witnesses;  // first separation in each direction, if any
  int profiles_compared = 0;
};

/// Non-decreasing degree tuples of length m (every profile up to renaming).
inline std::vector<std::vector<int>> sorted_profiles(int group_order, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> p(m, 0);
  for (;;) {
    out.push_back(p);
    int i = m - 1;
    while (i >= 0 && p[i] == group_order - 1) --i;
    if (i < 0) break;
    ++p[i];
    for (int j = i + 1; j < m; ++j) p[j] = p[i];
  }
  return out;
}

/// Compares the multilinear identities of A and B on every profile up to max_degree.
inline TIdealComparison tideals_compare(const GradedAlgebra& a, const GradedAlgebra& b, int max_degree,
                                        const IdentitySpaceOptions& opt = {}) {
  if (!a.group()->same_table(*b.group())) throw std::invalid_argument("tideals_compare: algebras use different groups");
  TIdealComparison out;
  std::optional<Separation> first_only, second_only;
  for (int m = 1; m <= max_degree; ++m) {
    for (const auto& profile : sorted_profiles(a.group()->order(), m)) {
      ++out.profiles_compared;
      const auto ka = identity_space(a, profile, opt);
      const auto kb = identity_space(b, profile, opt);
      const std::size_t width = ka.monomials.size();
      RowEchelon ea(width), eb(width);
      for (const auto& v : ka.basis) ea.add(v);
      for (const auto& v : kb.basis) eb.add(v);
      if (!first_only) {
        for (const auto& v : ka.basis) {
          if (!eb.contains(v)) {
            first_only = Separation{profile, ka.polynomial(v), true};
            break;
          }
        }
      }
      if (!second_only) {
        for (const auto& v : kb.basis) {
          if (!ea.contains(v)) {
            second_only = Separation{profile, kb.polynomial(v), false};
            break;
          }
        }
      }
    }
  }
  if (first_only) out.witnesses.push_back(*first_only);
  if (second_only) out.witnesses.push_back(*second_only);
  if (!first_only && !second_only) {
    out.relation = TIdealRelation::kEqual;
  } else if (first_only && second_only) {
    out.relation = TIdealRelation::kIncomparable;
  } else if (second_only) {
    out.relation = TIdealRelation::kFirstStrictlyContained;
  } else {
    out.relation = TIdealRelation::kSecondStrictlyContained;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Property K

/// Number of variables sent to radical vectors of the evaluation basis.
inline int count_radical_substitutions(const Assignment& asg, const EvalBasis& basis) {
  int n = 0;
  for (const auto& [id, idx] : asg) n += basis.radical.at(idx) ? 1 : 0;
  return n;
}

struct PropertyKReport {
  bool holds = false;
  bool non_identity = false;
  int radical_threshold = 0;  // evaluations with fewer radical substitutions must vanish
  std::optional<Assignment> non_identity_witness;
  std::optional<Assignment> violation;  // nonzero evaluation below the threshold (adapted-basis indices)
};

/// f is a non-identity vanishing on every evaluation with fewer than n_A - 1
/// radical substitutions (values from the adapted basis).
inline PropertyKReport property_k_check(const GradedPolynomial& f, const GradedAlgebra& a, unsigned workers = 1) {
  if (!f.multilinear()) throw std::invalid_argument("property_k_check: f must be multilinear");
  PropertyKReport out;
  const auto rad = radical(a);
  out.radical_threshold = rad.nilpotency_index - 1;
  const auto verdict = is_identity_multilinear(f, a, {workers, {}});
  out.non_identity = !verdict.identity;
  out.non_identity_witness = verdict.witness;
  const auto eb = adapted_basis(a, rad);
  std::vector<std::vector<int>> choices(a.group()->order());
  for (int i = 0; i < eb.size(); ++i) choices[eb.degree[i]].push_back(i);
  std::vector<SparseElement> vectors;
  for (const auto& v : eb.vectors) vectors.push_back(to_sparse(v));
  const AssignmentSpace space(f, choices);
  const int max_id = f.max_id();
  const auto hit = find_first_with_state(
      space.size(), workers, [&] { return detail::SweepState(a, max_id); },
      [&](detail::SweepState& st, std::size_t i) {
        space.decode(i, st.basis_of_id);
        int radical_count = 0;
        for (const auto& v : f.alphabet()) radical_count += eb.radical[st.basis_of_id[v.id]] ? 1 : 0;
        if (radical_count >= out.radical_threshold) return false;
        st.load(st.basis_of_id, vectors, false);
        return !is_zero_vector(st.ev.evaluate(f, st.value_of));
      },
      256);
  if (hit) {
    std::vector<int> idx(max_id + 1, -1);
    space.decode(*hit, idx);
    Assignment asg;
    for (const auto& v : f.alphabet()) asg[v.id] = idx[v.id];
    out.violation = std::move(asg);
  }
  out.holds = out.non_identity && !out.violation;
  return out;
}

// ---------------------------------------------------------------------------
// Trace identity

struct TheoremJReport {
  Element lhs;
  Element rhs;
  bool equal = false;
};

/// Tr(T) f(a; b) against sum_k f(a_1, ..., T a_k, ..., a_t; b) with
/// T a_k = sum_i T[i][k] a_i.
inline TheoremJReport verify_theorem_j(const GradedAlgebra& a, const GradedPolynomial& f, const std::vector<int>& ids,
                                       const std::map<int, Element>& values,
                                       const std::vector<std::vector<Rational>>& t) {
  const std::size_t n = ids.size();
  if (t.size() != n) throw std::invalid_argument("theorem_j: matrix size does not match the alternating set");
  for (const auto& row : t) {
    if (row.size() != n) throw std::invalid_argument("theorem_j: matrix is not square");
  }
  std::vector<Vector> frame;
  for (int id : ids) frame.push_back(values.at(id));
  if (rank_of(frame, static_cast<std::size_t>(a.dim())) != n) {
    throw std::invalid_argument("theorem_j: substituted values are linearly dependent");
  }
  TheoremJReport out;
  Scalar trace(0);
  for (std::size_t i = 0; i < n; ++i) trace += Scalar(t[i][i]);
  out.lhs = evaluate_values(f, a, values);
  for (auto& x : out.lhs) x = x * trace;
  out.rhs = a.zero();
  for (std::size_t k = 0; k < n; ++k) {
    Element tk = a.zero();
    for (std::size_t i = 0; i < n; ++i) {
      const Scalar c(t[i][k]);
      if (c.is_zero()) continue;
      for (int j = 0; j < a.dim(); ++j) tk[j].add_product(c, frame[i][j]);
    }
    auto replaced = values;
    replaced[ids[k]] = std::move(tk);
    const auto term = evaluate_values(f, a, replaced);
    for (int j = 0; j < a.dim(); ++j) out.rhs[j] += term[j];
  }
  out.equal = out.lhs == out.rhs;
  return out;
}

}  // namespace gradedpi
