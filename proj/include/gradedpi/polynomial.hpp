#pragma once

// Noncommutative polynomials in G-degree-labelled variables.

#include "gradedpi/group.hpp"
#include "gradedpi/permutations.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gradedpi {

struct VarSpec {
  int id;
  int degree;
  friend bool operator==(const VarSpec&, const VarSpec&) = default;
};

using Word = std::vector<int>;

/// Finite linear combination of words over a degree-labelled alphabet.
///
/// Words hold variable ids only; the degree of each id lives in the
/// alphabet. Terms are kept sorted by word with no zero coefficients.
class GradedPolynomial {
 public:
  using Terms = std::map<Word, Scalar>;

  GradedPolynomial() = default;
  explicit GradedPolynomial(std::vector<VarSpec> alphabet) {
    for (const auto& v : alphabet) add_variable(v);
  }

  void add_variable(VarSpec v) {
    auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), v.id,
                               [](const VarSpec& a, int id) { return a.id < id; });
    if (it != alphabet_.end() && it->id == v.id) {
      if (it->degree != v.degree) {
        throw std::invalid_argument("variable " + std::to_string(v.id) + " declared with two degrees");
      }
      return;
    }
    alphabet_.insert(it, v);
  }

  const std::vector<VarSpec>& alphabet() const { return alphabet_; }
  bool has_variable(int id) const { return find(id) != nullptr; }
  int degree_of(int id) const {
    const VarSpec* v = find(id);
    if (!v) throw std::invalid_argument("variable " + std::to_string(id) + " is not in the alphabet");
    return v->degree;
  }
  std::vector<int> ids() const {
    std::vector<int> out;
    for (const auto& v : alphabet_) out.push_back(v.id);
    return out;
  }
  int max_id() const { return alphabet_.empty() ? 0 : alphabet_.back().id; }

  void add_term(const Word& w, const Scalar& c) {
    for (int id : w) {
      if (!has_variable(id)) throw std::invalid_argument("word uses undeclared variable " + std::to_string(id));
    }
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Every word uses every alphabet id exactly once.
  bool multilinear() const {
    for (const auto& [w, c] : terms_) {
      if (w.size() != alphabet_.size()) return false;
      std::vector<int> sorted = w;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] != alphabet_[i].id) return false;
      }
    }
    return true;
  }

  /// Every word contains each id of `ids` exactly once.
  bool multilinear_in(const std::vector<int>& ids) const {
    for (const auto& [w, c] : terms_) {
      for (int id : ids) {
        if (std::count(w.begin(), w.end(), id) != 1) return false;
      }
    }
    return true;
  }

  int word_degree(const Word& w, const FiniteGroup& g) const {
    int acc = g.identity();
    for (int id : w) acc = g.mul(acc, degree_of(id));
    return acc;
  }

  /// All words share the same G-degree.
  bool strongly_homogeneous(const FiniteGroup& g) const {
    std::optional<int> deg;
    for (const auto& [w, c] : terms_) {
      const int d = word_degree(w, g);
      if (deg && *deg != d) return false;
      deg = d;
    }
    return true;
  }

  /// Renames ids through `mapping` (ids not mentioned are kept). Degrees
  /// follow the ids they are renamed from, so swaps must be degree-preserving.
  GradedPolynomial renamed(const std::map<int, int>& mapping) const {
    auto map_id = [&](int id) {
      auto it = mapping.find(id);
      return it == mapping.end() ? id : it->second;
    };
    GradedPolynomial out;
    for (const auto& v : alphabet_) out.add_variable(VarSpec{map_id(v.id), v.degree});
    for (const auto& [w, c] : terms_) {
      Word nw;
      nw.reserve(w.size());
      for (int id : w) nw.push_back(map_id(id));
      out.add_term(nw, c);
    }
    return out;
  }

  GradedPolynomial scaled(const Scalar& s) const {
    GradedPolynomial out(alphabet_);
    for (const auto& [w, c] : terms_) out.add_term(w, c * s);
    return out;
  }

  GradedPolynomial& operator+=(const GradedPolynomial& o) {
    for (const auto& v : o.alphabet_) add_variable(v);
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  GradedPolynomial& operator-=(const GradedPolynomial& o) { return *this += o.scaled(Scalar(-1)); }
  friend GradedPolynomial operator+(GradedPolynomial a, const GradedPolynomial& b) { return a += b; }
  friend GradedPolynomial operator-(GradedPolynomial a, const GradedPolynomial& b) { return a -= b; }
  GradedPolynomial operator-() const { return scaled(Scalar(-1)); }

  /// Equal term maps (alphabets may differ by unused variables).
  friend bool operator==(const GradedPolynomial& a, const GradedPolynomial& b) { return a.terms_ == b.terms_; }

  /// Injective text key of the term map, usable for ordering and dedup.
  std::string key() const {
    std::string k;
    for (const auto& [w, c] : terms_) {
      for (int id : w) k += std::to_string(id) + ",";
      k += ":" + c.str() + ";";
    }
    return k;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [w, c] : terms_) {
      const bool neg = c.is_rational() && c.rational().sign() < 0;
      if (!first) s += neg ? " - " : " + ";
      else if (neg) s += "-";
      first = false;
      const Scalar mag = neg ? -c : c;
      if (!mag.is_one()) s += mag.str() + "*";
      for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " x" : "x") + std::to_string(w[i]);
      if (w.empty()) s += "1";
    }
    return s;
  }

 private:
  const VarSpec* find(int id) const {
    auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), id,
                               [](const VarSpec& a, int x) { return a.id < x; });
    return it != alphabet_.end() && it->id == id ? &*it : nullptr;
  }

  std::vector<VarSpec> alphabet_;
  Terms terms_;
};

/// Partition of variables into alternating small sets, big sets and free
/// border variables.
struct AlternationLayout {
  std::map<int, std::vector<std::vector<int>>> small_sets;  // degree -> id-sets
  std::vector<std::pair<int, std::vector<int>>> big_sets;   // (degree, ids)
  std::vector<VarSpec> border;

  /// Every declared alternating set, small sets first (by degree), then big sets.
  std::vector<std::pair<int, std::vector<int>>> all_sets() const {
    std::vector<std::pair<int, std::vector<int>>> out;
    for (const auto& [g, sets] : small_sets) {
      for (const auto& s : sets) out.emplace_back(g, s);
    }
    for (const auto& b : big_sets) out.push_back(b);
    return out;
  }

  /// Pairwise disjointness and degree consistency against `f`'s alphabet.
  bool consistent_with(const GradedPolynomial& f) const {
    std::set<int> seen;
    for (const auto& [g, ids] : all_sets()) {
      for (int id : ids) {
        if (!seen.insert(id).second) return false;
        if (!f.has_variable(id) || f.degree_of(id) != g) return false;
      }
    }
    for (const auto& v : border) {
      if (!seen.insert(v.id).second) return false;
    }
    return true;
  }
};

// ---------------------------------------------------------------------------
// Constructions

/// sum over sigma of sgn(sigma) x_{sigma(1)} y_1 ... x_{sigma(n)} y_n with
/// x ids 1..n of degree g and y ids n+1..2n of the given degrees.
inline GradedPolynomial capelli(int n, int g, const std::vector<int>& y_degrees) {
  if (n < 1) throw std::invalid_argument("capelli: n must be positive");
  if (static_cast<int>(y_degrees.size()) != n) throw std::invalid_argument("capelli: need n y-degrees");
  GradedPolynomial f;
  for (int i = 1; i <= n; ++i) f.add_variable({i, g});
  for (int i = 1; i <= n; ++i) f.add_variable({n + i, y_degrees[i - 1]});
  for_each_permutation(n, [&](const std::vector<int>& p, int sign) {
    Word w;
    for (int i = 0; i < n; ++i) {
      w.push_back(p[i] + 1);
      w.push_back(n + i + 1);
    }
    f.add_term(w, Scalar(sign));
    return true;
  });
  return f;
}

/// Single-word polynomial.
inline GradedPolynomial monomial(const std::vector<VarSpec>& alphabet, const Word& w, const Scalar& c = Scalar(1)) {
  GradedPolynomial f(alphabet);
  f.add_term(w, c);
  return f;
}

namespace detail {

inline void require_homogeneous_set(const GradedPolynomial& f, const std::vector<int>& s, const char* op) {
  if (s.empty()) return;
  const int g = f.degree_of(s[0]);
  for (int id : s) {
    if (f.degree_of(id) != g) {
      throw std::invalid_argument(std::string(op) + ": alternating set mixes degrees");
    }
  }
  std::vector<int> sorted = s;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument(std::string(op) + ": repeated id in alternating set");
  }
  if (!f.multilinear_in(s)) throw std::invalid_argument(std::string(op) + ": polynomial is not multilinear in the set");
}

inline std::map<int, int> transposition(int a, int b) { return {{a, b}, {b, a}}; }

}  // namespace detail

/// sum over sigma in Sym(S) of sgn(sigma) f^sigma.
inline GradedPolynomial alternate(const GradedPolynomial& f, const std::vector<int>& s) {
  detail::require_homogeneous_set(f, s, "alternate");
  GradedPolynomial out(f.alphabet());
  const int n = static_cast<int>(s.size());
  for_each_permutation(n, [&](const std::vector<int>& p, int sign) {
    std::map<int, int> mapping;
    for (int i = 0; i < n; ++i) mapping[s[i]] = s[p[i]];
    out += f.renamed(mapping).scaled(Scalar(sign));
    return true;
  });
  return out;
}

/// f^tau = -f for every adjacent transposition tau of S (in id order).
inline bool is_alternating(const GradedPolynomial& f, std::vector<int> s) {
  detail::require_homogeneous_set(f, s, "is_alternating");
  std::sort(s.begin(), s.end());
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (!(f.renamed(detail::transposition(s[i], s[i + 1])) == -f)) return false;
  }
  return true;
}

/// Terms grouped by the G-degree of their word, ordered by group index.
inline std::vector<std::pair<int, GradedPolynomial>> homogeneous_components(const GradedPolynomial& f,
                                                                            const FiniteGroup& g) {
  std::map<int, GradedPolynomial> parts;
  for (const auto& [w, c] : f.terms()) {
    auto [it, inserted] = parts.try_emplace(f.word_degree(w, g), GradedPolynomial(f.alphabet()));
    it->second.add_term(w, c);
  }
  return {parts.begin(), parts.end()};
}

namespace detail {

inline void require_e_degree(const GradedPolynomial& f, const std::vector<int>& ids, const char* op) {
  for (int id : ids) {
    if (f.degree_of(id) != 0) throw std::invalid_argument(std::string(op) + ": designated variables must have degree e");
  }
}

}  // namespace detail

/// f - sum_k f(x_1, ..., x_{k-1}, x_{n+1}, x_{k+1}, ..., x_n, x_k; Y).
inline GradedPolynomial zr_tilde(const GradedPolynomial& f, const std::vector<int>& x_ids, int extra) {
  std::vector<int> all = x_ids;
  all.push_back(extra);
  detail::require_e_degree(f, all, "zr_tilde");
  if (!f.multilinear_in(all)) throw std::invalid_argument("zr_tilde: polynomial is not multilinear in the designated set");
  if (!is_alternating(f, x_ids)) throw std::invalid_argument("zr_tilde: polynomial is not alternating in x_ids");
  GradedPolynomial out = f;
  for (int xk : x_ids) out -= f.renamed(detail::transposition(xk, extra));
  return out;
}

/// Sum over j-subsets T of the designated ids of f with z inserted
/// immediately to the left of every occurrence of an id in T.
inline GradedPolynomial u_operator(const GradedPolynomial& f, const std::vector<int>& designated, int z, int j) {
  const int n = static_cast<int>(designated.size());
  if (j < 0 || j > n) throw std::invalid_argument("u_operator: j out of range");
  if (f.has_variable(z)) throw std::invalid_argument("u_operator: z must be a fresh variable");
  detail::require_e_degree(f, designated, "u_operator");
  GradedPolynomial out(f.alphabet());
  out.add_variable({z, 0});
  for_each_combination(n, j, [&](const std::vector<int>& subset) {
    std::set<int> chosen;
    for (int t : subset) chosen.insert(designated[t]);
    for (const auto& [w, c] : f.terms()) {
      Word nw;
      for (int id : w) {
        if (chosen.count(id)) nw.push_back(z);
        nw.push_back(id);
      }
      out.add_term(nw, c);
    }
    return true;
  });
  return out;
}

/// Replaces every occurrence of `id` by `prefix` followed by `id`.
/// Prefix ids must already be in `alphabet` or in f's alphabet.
inline GradedPolynomial prefix_variable(const GradedPolynomial& f, int id, const Word& prefix,
                                        const std::vector<VarSpec>& extra_vars = {}) {
  GradedPolynomial out(f.alphabet());
  for (const auto& v : extra_vars) out.add_variable(v);
  for (const auto& [w, c] : f.terms()) {
    Word nw;
    for (int x : w) {
      if (x == id) nw.insert(nw.end(), prefix.begin(), prefix.end());
      nw.push_back(x);
    }
    out.add_term(nw, c);
  }
  return out;
}

/// sum_{j=0}^{n} (-1)^j u_j^z(f(x_1, ..., x_n, z^{n-j} x_{n+1}; Y)).
inline GradedPolynomial zr_obstruction(const GradedPolynomial& f, const std::vector<int>& x_ids, int extra, int z) {
  std::vector<int> all = x_ids;
  all.push_back(extra);
  detail::require_e_degree(f, all, "zr_obstruction");
  if (!f.multilinear_in(all)) throw std::invalid_argument("zr_obstruction: polynomial is not multilinear in the designated set");
  if (!is_alternating(f, x_ids)) throw std::invalid_argument("zr_obstruction: polynomial is not alternating in x_ids");
  if (f.has_variable(z)) throw std::invalid_argument("zr_obstruction: z must be a fresh variable");
  const int n = static_cast<int>(x_ids.size());
  GradedPolynomial out(f.alphabet());
  out.add_variable({z, 0});
  for (int j = 0; j <= n; ++j) {
    const GradedPolynomial shifted = prefix_variable(f, extra, Word(static_cast<std::size_t>(n - j), z), {{z, 0}});
    // u_j must treat z as already present; insert manually to avoid the freshness check.
    GradedPolynomial uj(shifted.alphabet());
    for_each_combination(n, j, [&](const std::vector<int>& subset) {
      std::set<int> chosen;
      for (int t : subset) chosen.insert(x_ids[t]);
      for (const auto& [w, c] : shifted.terms()) {
        Word nw;
        for (int id : w) {
          if (chosen.count(id)) nw.push_back(z);
          nw.push_back(id);
        }
        uj.add_term(nw, c);
      }
      return true;
    });
    out += (j % 2 ? -uj : uj);
  }
  return out;
}

/// Substitutes each variable id by a word in a new alphabet (missing ids are kept).
inline GradedPolynomial substitute_words(const GradedPolynomial& f, const std::map<int, Word>& subst,
                                         const std::vector<VarSpec>& new_alphabet) {
  GradedPolynomial out(new_alphabet);
  for (const auto& [w, c] : f.terms()) {
    Word nw;
    for (int id : w) {
      auto it = subst.find(id);
      if (it == subst.end()) {
        nw.push_back(id);
      } else {
        nw.insert(nw.end(), it->second.begin(), it->second.end());
      }
    }
    out.add_term(nw, c);
  }
  return out;
}

struct ConsequenceFamily {
  std::vector<GradedPolynomial> polynomials;
  bool complete = true;  // false when the budget cut the enumeration short
  std::string reason;    // set when the family is empty
};

/// Generating family of the multilinear part of the T-ideal of f at a target profile.
///
/// Target variables get ids 1..m with the profile's degrees. Candidates
/// L f(W_1, ..., W_k) R are enumerated over permutations of the targets in
/// lexicographic order and, within each, over compositions
/// (|L|, |W_1|, ..., |W_k|, |R|) in lexicographic order; a candidate is kept
/// when each W_i has the degree of the i-th variable of f and it differs from
/// every earlier one. Enumeration stops after `budget` polynomials.
inline ConsequenceFamily multilinear_consequences(const GradedPolynomial& f, const std::vector<int>& profile,
                                                  const FiniteGroup& g,
                                                  std::size_t budget = std::numeric_limits<std::size_t>::max()) {
  ConsequenceFamily out;
  if (!f.multilinear()) throw std::invalid_argument("multilinear_consequences: f must be multilinear");
  const auto& vars = f.alphabet();
  const int k = static_cast<int>(vars.size());
  const int m = static_cast<int>(profile.size());
  if (m < k) {
    out.reason = "profile has fewer variables than f";
    return out;
  }
  std::vector<VarSpec> target;
  for (int i = 0; i < m; ++i) target.push_back({i + 1, profile[i]});

  std::set<std::string> seen;
  std::vector<int> perm(m);
  for (int i = 0; i < m; ++i) perm[i] = i + 1;
  // composition (a, l_1..l_k) with r = m - a - sum(l) >= 0
  std::vector<int> comp(k + 1);
  bool stopped = false;
  do {
    std::fill(comp.begin(), comp.end(), 0);
    for (int i = 1; i <= k; ++i) comp[i] = 1;
    for (;;) {
      int used = 0;
      for (int c : comp) used += c;
      if (used <= m) {
        std::map<int, Word> subst;
        int pos = comp[0];
        bool degrees_ok = true;
        for (int i = 0; i < k && degrees_ok; ++i) {
          Word w(perm.begin() + pos, perm.begin() + pos + comp[i + 1]);
          int d = g.identity();
          for (int id : w) d = g.mul(d, profile[id - 1]);
          if (d != vars[i].degree) degrees_ok = false;
          subst[vars[i].id] = std::move(w);
          pos += comp[i + 1];
        }
        if (degrees_ok) {
          // Rename f's ids out of the way before substitution.
          std::map<int, int> shift;
          std::map<int, Word> shifted_subst;
          const int offset = m + 1;
          for (const auto& v : vars) shift[v.id] = v.id + offset + f.max_id();
          for (auto& [id, w] : subst) shifted_subst[shift[id]] = w;
          auto body = substitute_words(f.renamed(shift), shifted_subst, target);
          const Word left(perm.begin(), perm.begin() + comp[0]);
          const Word right(perm.begin() + pos, perm.end());
          GradedPolynomial cand(target);
          for (const auto& [w, c] : body.terms()) {
            Word full = left;
            full.insert(full.end(), w.begin(), w.end());
            full.insert(full.end(), right.begin(), right.end());
            cand.add_term(full, c);
          }
          if (!cand.is_zero() && seen.insert(cand.key()).second) {
            if (out.polynomials.size() >= budget) {
              stopped = true;
              break;
            }
            out.polynomials.push_back(std::move(cand));
          }
        }
      }
      // next composition in lexicographic order
      int i = k;
      for (;;) {
        int total = 0;
        for (int c : comp) total += c;
        if (total < m) {
          ++comp[i];
          break;
        }
        // reset position i to its minimum and carry left
        comp[i] = (i == 0) ? 0 : 1;
        --i;
        if (i < 0) break;
      }
      if (i < 0) break;
    }
    if (stopped) break;
  } while (std::next_permutation(perm.begin(), perm.end()));
  out.complete = !stopped;
  if (out.polynomials.empty() && out.reason.empty()) out.reason = "no substitution pattern matches the profile";
  return out;
}

}  // namespace gradedpi
