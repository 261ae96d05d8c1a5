#pragma once

// Sweeps over families of polynomials: Capelli bounds and the
// Zubrilin-Razmyslov transfer.

#include "gradedpi/identities.hpp"
#include "gradedpi/kemer.hpp"

#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace gradedpi {

// ---------------------------------------------------------------------------
// Capelli

struct CapelliDegree {
  int g = 0;
  int dim = 0;                 // dim A_g
  int upper_n = 0;             // dim A_g + 1
  std::string upper_method;     // "exhaustive" or "dimension"
  std::uint64_t patterns = 0;  // y-degree patterns checked
  int vacuous_patterns = 0;    // some y-degree has no basis element
  std::optional<std::vector<int>> upper_failure;  // y-degrees of a non-identity (never expected)
  std::optional<Assignment> upper_failure_witness;
  bool lower_applicable = false;  // J = 0 and A is G-simple
  std::optional<std::vector<int>> lower_pattern;
  std::optional<Assignment> lower_witness;
};

struct CapelliAudit {
  std::vector<CapelliDegree> degrees;
  bool passed = true;
};

namespace detail {

/// Calls fn(pattern) for every tuple in {0..r-1}^n in lexicographic order; stops on false.
template <class Fn>
void for_each_pattern(int r, int n, Fn&& fn) {
  std::vector<int> p(n, 0);
  for (;;) {
    if (!fn(p)) return;
    int i = n - 1;
    while (i >= 0 && ++p[i] == r) p[i--] = 0;
    if (i < 0) return;
  }
}

}  // namespace detail

/// For every g: c_{dim A_g + 1, g} is an identity for every y-degree pattern,
/// and, on G-simple algebras, some y-pattern makes c_{dim A_g, g} a non-identity.
///
/// Upper checks with more than `max_explicit` x's are not expanded (n! terms);
/// they hold because no dim A_g + 1 independent values of degree g exist.
inline CapelliAudit capelli_audit(const GradedAlgebra& a, unsigned workers = 1, int max_explicit = 6,
                                  double max_patterns = 1.0e6) {
  const int r = a.group()->order();
  const auto rad = radical(a);
  const bool simple = rad.dim() == 0 && block_decomposition(a).size() == 1;
  CapelliAudit out;
  for (int g = 0; g < r; ++g) {
    CapelliDegree d;
    d.g = g;
    d.dim = a.dim_of_degree(g);
    d.upper_n = d.dim + 1;
    if (std::pow(static_cast<double>(r), d.upper_n) > max_patterns) {
      throw SizeGuardError("capelli_audit: too many y-degree patterns", std::pow(static_cast<double>(r), d.upper_n));
    }
    std::vector<int> xs(d.upper_n);
    for (int i = 0; i < d.upper_n; ++i) xs[i] = i + 1;
    d.upper_method = d.upper_n <= max_explicit ? "exhaustive" : "dimension";
    if (d.upper_n <= max_explicit) detail::for_each_pattern(r, d.upper_n, [&](const std::vector<int>& ys) {
      ++d.patterns;
      const auto c = capelli(d.upper_n, g, ys);
      const auto v = is_identity_multilinear(c, a, {workers, {xs}});
      if (v.vacuous) ++d.vacuous_patterns;
      if (!v.identity) {
        d.upper_failure = ys;
        d.upper_failure_witness = v.witness;
        return false;
      }
      return true;
    });
    if (d.upper_failure) out.passed = false;
    d.lower_applicable = simple && d.dim > 0;
    if (d.lower_applicable) {
      std::vector<int> lx(d.dim);
      for (int i = 0; i < d.dim; ++i) lx[i] = i + 1;
      detail::for_each_pattern(r, d.dim, [&](const std::vector<int>& ys) {
        const auto c = capelli(d.dim, g, ys);
        const auto v = is_identity_multilinear(c, a, {workers, {lx}});
        if (!v.identity) {
          d.lower_pattern = ys;
          d.lower_witness = v.witness;
          return false;
        }
        return true;
      });
      if (!d.lower_pattern) out.passed = false;
    }
    out.degrees.push_back(std::move(d));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Zubrilin-Razmyslov

struct ZrCase {
  int n = 0;        // designated set size
  int borders = 0;  // extra variables besides x_1..x_{n+1}
  GradedPolynomial f;
  bool f_identity = false;
  bool obstruction_identity = false;
};

struct ZrFamily {
  int n = 0;
  int borders = 0;
  int monomials = 0;   // alternated monomials spanning the family
  int kernel_dim = 0;  // dimension of {f : tilde(f) is an identity}
  int monomial_tilde_identities = 0;  // spanning monomials that lie in that subspace themselves
};

struct ZrAudit {
  std::vector<ZrFamily> families;
  std::vector<ZrCase> cases;  // one per kernel basis vector
  int nonvacuous = 0;         // tilde(f) is an identity while f is not
  int violations = 0;
  bool passed = false;
};

/// For each n and border count, F is the span of the alternations over
/// x_1..x_n of the monomials in x_1..x_{n+1} and the border e-variables.
/// The subspace of f in F with tilde(f) an identity is computed exactly; since
/// the obstruction is linear in f, checking it on a basis covers the subspace.
inline ZrAudit zr_audit(const GradedAlgebra& a, unsigned workers = 1, int max_n = 2, int max_borders = 2) {
  ZrAudit out;
  const auto e_basis = a.basis_of_degree(0);
  for (int n = 1; n <= max_n; ++n) {
    std::vector<int> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = i + 1;
    const int extra = n + 1;
    for (int b = 0; b <= max_borders; ++b) {
      const int m = n + 1 + b;
      const int z = m + 1;
      std::vector<VarSpec> alphabet;
      for (int id = 1; id <= m; ++id) alphabet.push_back({id, 0});
      std::set<std::string> seen;
      std::vector<GradedPolynomial> family, tildes;
      for (const auto& w : multilinear_monomials(m)) {
        auto f = alternate(monomial(alphabet, w), xs);
        if (f.is_zero() || seen.count(f.key()) || seen.count((-f).key())) continue;
        seen.insert(f.key());
        tildes.push_back(zr_tilde(f, xs, extra));
        family.push_back(std::move(f));
      }
      ZrFamily fam{n, b, static_cast<int>(family.size()), 0, 0};
      const std::size_t width = family.size();
      RowEchelon echelon(width);
      if (!e_basis.empty()) {
        GradedPolynomial shape(alphabet);
        const AssignmentSpace space(shape, detail::standard_choices(a));
        detail::SweepState st(a, m);
        for (std::uint64_t i = 0; i < space.size() && !echelon.full(); ++i) {
          space.decode(i, st.basis_of_id);
          st.load(st.basis_of_id, {}, true);
          std::vector<Element> vals;
          for (const auto& t : tildes) vals.push_back(st.ev.evaluate(t, st.value_of));
          for (int k = 0; k < a.dim() && !echelon.full(); ++k) {
            Vector row(width);
            bool any = false;
            for (std::size_t c = 0; c < width; ++c) {
              row[c] = vals[c][k];
              any = any || !row[c].is_zero();
            }
            if (any) echelon.add(std::move(row));
          }
        }
      }
      const auto kernel = echelon.kernel();
      fam.kernel_dim = static_cast<int>(kernel.size());
      for (std::size_t c = 0; c < width; ++c) {
        bool zero_column = true;
        for (const auto& row : echelon.rows()) zero_column = zero_column && row[c].is_zero();
        fam.monomial_tilde_identities += zero_column ? 1 : 0;
      }
      out.families.push_back(fam);
      for (const auto& coeffs : kernel) {
        GradedPolynomial f(alphabet);
        for (std::size_t c = 0; c < width; ++c) {
          if (!coeffs[c].is_zero()) f += family[c].scaled(coeffs[c]);
        }
        ZrCase cs{n, b, f, false, false};
        cs.f_identity = is_identity(f, a, {workers, {}}).identity;
        cs.obstruction_identity = is_identity_generic(zr_obstruction(f, xs, extra, z), a, workers).identity;
        if (!cs.f_identity) ++out.nonvacuous;
        if (!cs.obstruction_identity) ++out.violations;
        out.cases.push_back(std::move(cs));
      }
    }
  }
  out.passed = out.violations == 0 && out.nonvacuous > 0;
  return out;
}

}  // namespace gradedpi
