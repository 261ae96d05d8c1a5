#pragma once

// Finite groups given by multiplication tables, subgroup embeddings and
// root-of-unity valued 2-cocycles.

#include "gradedpi/cyclotomic.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gradedpi {

/// Raised when a group, cocycle or algebra fails validation on construction.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A finite group stored extensionally. Element 0 is the identity.
class FiniteGroup {
 public:
  using Table = std::vector<std::vector<int>>;

  /// Validates the table exhaustively (identity, inverses, associativity).
  static GroupPtr from_table(Table mult, std::vector<std::string> labels = {}) {
    const int r = static_cast<int>(mult.size());
    if (r == 0) throw ValidationError("group table is empty");
    for (int a = 0; a < r; ++a) {
      if (static_cast<int>(mult[a].size()) != r) {
        throw ValidationError("group table row " + std::to_string(a) + " has wrong length");
      }
      for (int b = 0; b < r; ++b) {
        if (mult[a][b] < 0 || mult[a][b] >= r) {
          throw ValidationError("group table entry (" + std::to_string(a) + "," + std::to_string(b) +
                                ") out of range");
        }
      }
    }
    for (int a = 0; a < r; ++a) {
      if (mult[0][a] != a || mult[a][0] != a) {
        throw ValidationError("element 0 is not a two-sided identity (fails at " + std::to_string(a) + ")");
      }
    }
    std::vector<int> inv(r, -1);
    for (int a = 0; a < r; ++a) {
      for (int b = 0; b < r; ++b) {
        if (mult[a][b] == 0 && mult[b][a] == 0) {
          inv[a] = b;
          break;
        }
      }
      if (inv[a] < 0) throw ValidationError("element " + std::to_string(a) + " has no inverse");
    }
    for (int a = 0; a < r; ++a) {
      for (int b = 0; b < r; ++b) {
        for (int c = 0; c < r; ++c) {
          if (mult[mult[a][b]][c] != mult[a][mult[b][c]]) {
            throw ValidationError("group table is not associative at (" + std::to_string(a) + "," +
                                  std::to_string(b) + "," + std::to_string(c) + ")");
          }
        }
      }
    }
    if (labels.empty()) {
      labels.push_back("e");
      for (int a = 1; a < r; ++a) labels.push_back("g" + std::to_string(a));
    }
    if (static_cast<int>(labels.size()) != r) throw ValidationError("group label count mismatch");
    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    g->mult_ = std::move(mult);
    g->inv_ = std::move(inv);
    g->labels_ = std::move(labels);
    return g;
  }

  static GroupPtr cyclic(int n) {
    if (n < 1) throw ValidationError("cyclic group order must be positive");
    Table t(n, std::vector<int>(n));
    std::vector<std::string> labels;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
      labels.push_back(a == 0 ? "e" : a == 1 ? "g" : "g^" + std::to_string(a));
    }
    return from_table(std::move(t), std::move(labels));
  }

  static GroupPtr trivial() { return cyclic(1); }

  /// Lexicographic indexing: (a, b) -> a * |second| + b.
  static GroupPtr direct_product(const GroupPtr& first, const GroupPtr& second) {
    const int r1 = first->order(), r2 = second->order();
    Table t(r1 * r2, std::vector<int>(r1 * r2));
    std::vector<std::string> labels;
    for (int a = 0; a < r1; ++a) {
      for (int b = 0; b < r2; ++b) {
        labels.push_back(a == 0 && b == 0 ? "e" : "(" + first->label(a) + "," + second->label(b) + ")");
        for (int c = 0; c < r1; ++c) {
          for (int d = 0; d < r2; ++d) {
            t[a * r2 + b][c * r2 + d] = first->mul(a, c) * r2 + second->mul(b, d);
          }
        }
      }
    }
    auto g = std::const_pointer_cast<FiniteGroup>(from_table(std::move(t), std::move(labels)));
    g->factors_ = {first, second};
    return g;
  }

  int order() const { return static_cast<int>(mult_.size()); }
  int identity() const { return 0; }
  int mul(int a, int b) const { return mult_[a][b]; }
  int inv(int a) const { return inv_[a]; }
  const Table& table() const { return mult_; }
  const std::string& label(int a) const { return labels_.at(a); }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Index of the element with the given label, if any.
  std::optional<int> find_label(const std::string& l) const {
    for (int a = 0; a < order(); ++a) {
      if (labels_[a] == l) return a;
    }
    return std::nullopt;
  }

  /// Product of a sequence of elements, left to right.
  template <class It>
  int product(It first, It last) const {
    int acc = 0;
    for (; first != last; ++first) acc = mul(acc, *first);
    return acc;
  }

  /// Factors when this group was built by direct_product; empty otherwise.
  const std::vector<GroupPtr>& factors() const { return factors_; }

  bool same_table(const FiniteGroup& o) const { return mult_ == o.mult_; }

 private:
  FiniteGroup() = default;

  Table mult_;
  std::vector<int> inv_;
  std::vector<std::string> labels_;
  std::vector<GroupPtr> factors_;
};

/// Injective homomorphism from a subgroup into an ambient group.
struct SubgroupEmbedding {
  GroupPtr sub;
  GroupPtr ambient;
  std::vector<int> images;

  static SubgroupEmbedding make(GroupPtr sub, GroupPtr ambient, std::vector<int> images) {
    if (static_cast<int>(images.size()) != sub->order()) throw ValidationError("subgroup image count mismatch");
    std::vector<bool> seen(ambient->order(), false);
    for (int h = 0; h < sub->order(); ++h) {
      const int x = images[h];
      if (x < 0 || x >= ambient->order()) throw ValidationError("subgroup image out of range");
      if (seen[x]) throw ValidationError("subgroup embedding is not injective");
      seen[x] = true;
    }
    if (images[0] != 0) throw ValidationError("subgroup embedding does not send e to e");
    for (int a = 0; a < sub->order(); ++a) {
      for (int b = 0; b < sub->order(); ++b) {
        if (images[sub->mul(a, b)] != ambient->mul(images[a], images[b])) {
          throw ValidationError("subgroup embedding is not a homomorphism at (" + std::to_string(a) + "," +
                                std::to_string(b) + ")");
        }
      }
    }
    return SubgroupEmbedding{std::move(sub), std::move(ambient), std::move(images)};
  }

  static SubgroupEmbedding trivial_in(GroupPtr ambient) {
    return make(FiniteGroup::trivial(), std::move(ambient), {0});
  }
  static SubgroupEmbedding whole(GroupPtr g) {
    std::vector<int> id(g->order());
    for (int a = 0; a < g->order(); ++a) id[a] = a;
    return make(g, g, std::move(id));
  }
};

/// Why a cocycle table was rejected.
struct CocycleViolation {
  enum class Kind { kShape, kNormalization, kCocycleIdentity } kind;
  int a = 0, b = 0, c = 0;

  std::string describe() const {
    switch (kind) {
      case Kind::kShape:
        return "exponent table shape does not match the group order";
      case Kind::kNormalization:
        return "not normalized at (" + std::to_string(a) + "," + std::to_string(b) + ")";
      case Kind::kCocycleIdentity:
        return "cocycle identity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
               std::to_string(c) + ")";
    }
    return {};
  }
};

/// f(a, b) = zeta_m^exponents[a][b] on a finite group H.
struct TwoCocycle {
  GroupPtr group;
  unsigned m = 1;
  std::vector<std::vector<int>> exponents;

  static TwoCocycle trivial(GroupPtr h) {
    const int r = h->order();
    return TwoCocycle{std::move(h), 1, std::vector<std::vector<int>>(r, std::vector<int>(r, 0))};
  }

  int exponent(int a, int b) const {
    const int e = exponents[a][b] % static_cast<int>(m);
    return e < 0 ? e + static_cast<int>(m) : e;
  }

  Scalar value(int a, int b) const { return Scalar::root_of_unity(m, exponent(a, b)); }

  /// Multiplies by the coboundary of delta: f'(a,b) = f(a,b) delta(a) delta(b) / delta(ab),
  /// with delta(h) = zeta_m^delta_exp[h] and delta(e) = 1.
  TwoCocycle times_coboundary(const std::vector<int>& delta_exp) const {
    TwoCocycle out = *this;
    const int r = group->order();
    for (int a = 0; a < r; ++a) {
      for (int b = 0; b < r; ++b) {
        const int e = exponent(a, b) + delta_exp[a] + delta_exp[b] - delta_exp[group->mul(a, b)];
        out.exponents[a][b] = ((e % static_cast<int>(m)) + static_cast<int>(m)) % static_cast<int>(m);
      }
    }
    return out;
  }
};

/// Checks normalization and f(a,b) f(ab,c) = f(b,c) f(a,bc); returns the first violation.
inline std::optional<CocycleViolation> validate_cocycle(const TwoCocycle& c) {
  using K = CocycleViolation::Kind;
  const int r = c.group->order();
  if (c.m == 0 || static_cast<int>(c.exponents.size()) != r) return CocycleViolation{K::kShape};
  for (const auto& row : c.exponents) {
    if (static_cast<int>(row.size()) != r) return CocycleViolation{K::kShape};
  }
  for (int h = 0; h < r; ++h) {
    if (c.exponent(0, h) != 0) return CocycleViolation{K::kNormalization, 0, h};
    if (c.exponent(h, 0) != 0) return CocycleViolation{K::kNormalization, h, 0};
  }
  const int m = static_cast<int>(c.m);
  const auto& g = *c.group;
  for (int a = 0; a < r; ++a) {
    for (int b = 0; b < r; ++b) {
      for (int d = 0; d < r; ++d) {
        const int lhs = (c.exponent(a, b) + c.exponent(g.mul(a, b), d)) % m;
        const int rhs = (c.exponent(b, d) + c.exponent(a, g.mul(b, d))) % m;
        if (lhs != rhs) return CocycleViolation{K::kCocycleIdentity, a, b, d};
      }
    }
  }
  return std::nullopt;
}

}  // namespace gradedpi
