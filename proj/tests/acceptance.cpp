// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "gradedpi/gradedpi.hpp"
#include "gradedpi/report.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace gradedpi;

namespace {

GroupPtr z2() { return FiniteGroup::cyclic(2); }
GroupPtr one() { return FiniteGroup::trivial(); }

Json corpus_doc() {
  std::ifstream in(std::string(GRADEDPI_SPECS_DIR) + "/corpus.json");
  return Json::parse(in);
}

Workspace& corpus() {
  static Workspace ws = [] {
    Workspace w;
    w.load(corpus_doc(), "corpus");
    w.resolve_all();
    return w;
  }();
  return ws;
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

bool witness_reverifies(const GradedAlgebra& a, const LayoutWitness& w) {
  if (!w.layout.consistent_with(w.polynomial)) return false;
  for (const auto& [g, ids] : w.layout.all_sets())
    if (!is_alternating(w.polynomial, ids)) return false;
  const auto v = evaluate(w.polynomial, a, w.assignment);
  return v == w.value && !is_zero_vector(v);
}

bool contains(const std::vector<KemerPoint>& pts, const KemerPoint& p) {
  return std::find(pts.begin(), pts.end(), p) != pts.end();
}

KemerPoint pt(std::vector<int> alpha, int s) { return KemerPoint{std::move(alpha), s, false}; }

// ---------------------------------------------------------------------------

void c1(Outcome& o) {
  const auto a = bsz_simple(z2(), SubgroupEmbedding::trivial_in(z2()), TwoCocycle::trivial(one()), {0, 1});
  o.require(!validate(a), "validate");
  const auto rad = radical(a);
  o.require(rad.dim() == 0, "J = 0");
  o.require(rad.semisimple_dims == std::vector<int>{2, 2}, "d = (2,2)");
  o.require(a.unit().has_value(), "unit present");
  if (a.unit()) {
    for (int i = 0; i < a.dim(); ++i)
      if (!(*a.unit())[i].is_zero()) o.require(a.degree(i) == 0, "unit degree e");
  }
  for (int i = 0; i < 2; ++i) o.require(a.degree(a.bsz->index(0, i, i)) == 0, "1(x)E_ii degree e");
  o.detail << " dim=" << a.dim() << " d=(" << rad.semisimple_dims[0] << "," << rad.semisimple_dims[1] << ")";
}

void c2(Outcome& o) {
  int lower_found = 0, lower_applicable = 0;
  for (const char* name : {"FZ2", "M2", "M2eg", "UT2", "UT3", "FxF", "G4"}) {
    const auto& a = *corpus().algebra(name);
    const auto audit = capelli_audit(a, 1, 6);
    o.require(audit.passed, std::string(name) + " audit");
    for (const auto& d : audit.degrees) {
      o.require(!d.upper_failure, std::string(name) + " upper bound");
      if (d.lower_applicable && d.dim > 0) {
        ++lower_applicable;
        o.require(d.lower_witness.has_value(), std::string(name) + " lower witness");
        if (d.lower_witness) {
          // re-evaluate the returned witness
          const auto f = capelli(d.dim, d.g, *d.lower_pattern);
          o.require(!is_zero_vector(evaluate(f, a, *d.lower_witness)), std::string(name) + " witness value");
          ++lower_found;
        }
      }
    }
  }
  o.detail << " lower witnesses " << lower_found << "/" << lower_applicable;
}

void c3(Outcome& o) {
  const auto& m2eg = *corpus().algebra("M2eg");
  const auto up = kemer_upper_bound(m2eg);
  const auto est = kemer_lower_bound(m2eg, SearchParams{1});
  o.require(up == pt({2, 2}, 0), "M2eg upper");
  o.require(est.lower == std::vector<KemerPoint>{pt({2, 2}, 0)}, "M2eg lower");
  o.require(!est.budget_exhausted, "M2eg budget");
  bool certified = false;
  for (const auto& r : est.refutations) {
    if (r.status != LayoutStatus::kRefutedDimension) continue;
    for (const auto& s : r.shape.sets())
      if (s.degree == 0 && s.size == 3) certified = true;
  }
  o.require(certified, "certified size-3 e-set refutation");
  for (const auto& w : est.witnesses) o.require(w.witness && witness_reverifies(m2eg, *w.witness), "M2eg witness");

  const auto& fz2 = *corpus().algebra("FZ2");
  SearchParams p2;
  p2.nu = 2;
  const auto e2 = kemer_lower_bound(fz2, p2);
  o.require(kemer_upper_bound(fz2) == pt({1, 1}, 0), "FZ2 upper");
  o.require(e2.lower == std::vector<KemerPoint>{pt({1, 1}, 0)}, "FZ2 lower at nu=2");
  for (const auto& w : e2.witnesses) o.require(w.witness && witness_reverifies(fz2, *w.witness), "FZ2 witness");
  o.detail << " M2eg " << (est.lower.empty() ? "-" : est.lower[0].str()) << " FZ2 "
           << (e2.lower.empty() ? "-" : e2.lower[0].str()) << " refutations " << est.refutations.size();
}

void c4(Outcome& o) {
  const auto& ut2 = *corpus().algebra("UT2");
  const auto est = kemer_lower_bound(ut2, SearchParams{1});
  o.require(contains(est.lower, pt({2}, 1)), "lower meets ((2);1)");
  o.require(kemer_upper_bound(ut2) == pt({2}, 1), "upper");
  for (std::size_t i = 0; i < est.lower.size(); ++i) {
    const auto& w = est.witnesses[i].witness;
    o.require(w && witness_reverifies(ut2, *w), "witness re-verifies");
    if (w && est.lower[i] == pt({2}, 1)) {
      o.require(!is_identity(w->polynomial, ut2).identity, "witness polynomial is a non-identity");
      o.detail << " witness degree " << w->polynomial.alphabet().size() << " terms " << w->polynomial.size();
    }
  }
}

void c5(Outcome& o) {
  struct Ex {
    std::string name;
    int nu;
  };
  for (const auto& [name, nu] : std::vector<Ex>{{"F", 1}, {"M2eg", 1}, {"FZ2", 2}}) {
    const auto& a = *corpus().algebra(name);
    const auto w = full_witness_simple(a, nu);
    o.require(w.nonzero, name + " nonzero");
    o.require(w.sets_alternating, name + " alternating");
    for (const auto& [g, ids] : w.layout.all_sets()) o.require(is_alternating(w.polynomial, ids), name + " set");
    o.require(!is_identity(w.polynomial, a).identity, name + " non-identity");
    o.detail << " " << name << ":" << w.polynomial.alphabet().size() << "vars";
  }
}

void c6(Outcome& o) {
  std::mt19937_64 rng(6);
  int profiles = 0, checks = 0, disagreements = 0;
  for (const char* name : {"FZ2", "UT2", "M2"}) {
    const auto& a = *corpus().algebra(name);
    const int r = a.group()->order();
    for (int m = 1; m <= 4; ++m) {
      // every ordered degree tuple of length m
      std::vector<int> profile(m, 0);
      for (;;) {
        ++profiles;
        std::vector<VarSpec> alphabet;
        for (int i = 0; i < m; ++i) alphabet.push_back({i + 1, profile[i]});
        const auto monos = multilinear_monomials(m);
        std::vector<GradedPolynomial> polys;
        for (const auto& w : monos) polys.push_back(monomial(alphabet, w));
        const auto k = identity_space(a, profile);
        for (const auto& v : k.basis) polys.push_back(k.polynomial(v));
        for (int t = 0; t < 4; ++t) {
          GradedPolynomial f(alphabet);
          for (const auto& w : monos) {
            const int c = static_cast<int>(rng() % 5) - 2;
            if (c) f.add_term(w, Scalar(c));
          }
          polys.push_back(f);
        }
        for (const auto& f : polys) {
          ++checks;
          const bool ex = is_identity_multilinear(f, a).identity;
          const bool gen = is_identity_generic(f, a).identity;
          if (ex != gen) ++disagreements;
        }
        int i = m - 1;
        while (i >= 0 && ++profile[i] == r) profile[i--] = 0;
        if (i < 0) break;
      }
    }
  }
  o.require(disagreements == 0, "disagreements");
  o.detail << " profiles=" << profiles << " checks=" << checks << " disagreements=" << disagreements;
}

void c7(Outcome& o) {
  for (const char* name : {"UT2", "M2"}) {
    const auto audit = zr_audit(*corpus().algebra(name));
    o.detail << " " << name << ": cases=" << audit.cases.size() << " nonvacuous=" << audit.nonvacuous
             << " violations=" << audit.violations;
    o.require(audit.violations == 0, std::string(name) + " zero violations");
    o.require(audit.nonvacuous > 0, std::string(name) + " non-vacuity");
  }
}

void c8(Outcome& o) {
  const auto& m2 = *corpus().algebra("M2");
  const auto& f = corpus().polynomial("c4");
  std::map<int, Element> values;
  for (int i = 0; i < 4; ++i) values[i + 1] = m2.basis(i);  // E11 E12 E21 E22
  const int ys[4] = {0, 3, 1, 3};                           // E11 E22 E12 E22
  for (int i = 0; i < 4; ++i) values[5 + i] = m2.basis(ys[i]);
  std::mt19937_64 rng(1);
  int failures = 0;
  bool nonzero = false;
  for (int t = 0; t < 20; ++t) {
    std::vector<std::vector<Rational>> tm(4, std::vector<Rational>(4));
    for (auto& row : tm)
      for (auto& x : row) x = Rational(static_cast<std::int64_t>(rng() % 19) - 9);
    const auto rep = verify_theorem_j(m2, f, {1, 2, 3, 4}, values, tm);
    if (!rep.equal) ++failures;
    nonzero = nonzero || !is_zero_vector(rep.lhs);
  }
  o.require(failures == 0, "trace identity");
  o.require(nonzero, "some trial has a nonzero side");
  o.detail << " trials=20 failures=" << failures;
}

void c9(Outcome& o) {
  const auto& m2 = *corpus().algebra("M2");
  const auto& lifted = *corpus().algebra("M2_FZ2");
  int checked = 0, failures = 0;
  for (int m = 1; m <= 4; ++m) {
    const auto k = identity_space(m2, std::vector<int>(m, 0));
    for (const auto& v : k.basis) {
      const auto f = k.polynomial(v);
      for (const auto& profile : [&] {
             std::vector<std::vector<int>> all;
             for (int bits = 0; bits < (1 << m); ++bits) {
               std::vector<int> p(m);
               for (int i = 0; i < m; ++i) p[i] = (bits >> i) & 1;
               all.push_back(p);
             }
             return all;
           }()) {
        GradedPolynomial g;
        for (int i = 0; i < m; ++i) g.add_variable({i + 1, profile[i]});
        for (const auto& [w, c] : f.terms()) g.add_term(w, c);
        ++checked;
        if (!is_identity_multilinear(g, lifted).identity) ++failures;
      }
    }
  }
  o.require(checked > 0, "some identity lifted");
  o.require(failures == 0, "lifted identities");
  o.detail << " lifted=" << checked << " failures=" << failures;
}

void c10(Outcome& o) {
  const auto& g6 = *corpus().algebra("G6");
  int failures = 0;
  for (int bits = 0; bits < 8; ++bits) {
    GradedPolynomial f({{1, bits & 1}, {2, (bits >> 1) & 1}, {3, (bits >> 2) & 1}});
    f.add_term({1, 2, 3}, Scalar(1));
    f.add_term({2, 1, 3}, Scalar(-1));
    f.add_term({3, 1, 2}, Scalar(-1));
    f.add_term({3, 2, 1}, Scalar(1));
    if (!is_identity_multilinear(f, g6).identity) ++failures;
  }
  o.require(failures == 0, "[[x1,x2],x3] on grassmann(6)");
  const auto cmp = tideals_compare(*corpus().algebra("E_M2"), *corpus().algebra("M2"), 3);
  o.require(cmp.relation == TIdealRelation::kEqual, "envelope agrees with B");
  o.detail << " profile failures=" << failures << " envelope vs B: " << relation_name(cmp.relation) << " over "
           << cmp.profiles_compared << " profiles";
}

void c11(Outcome& o) {
  for (const auto& names : std::vector<std::vector<std::string>>{{"FZ2", "FZ2"}, {"FZ2", "M2eg"}, {"M2", "UT2"}}) {
    std::vector<const GradedAlgebra*> factors;
    for (const auto& n : names) factors.push_back(corpus().algebra(n).get());
    const auto chk = kemer_set_product_check(factors, SearchParams{});
    const std::string label = names[0] + "x" + names[1];
    o.require(chk.passed, label + " product check");
    o.require(!chk.product.budget_exhausted, label + " budget");
    o.detail << " " << label << ":{";
    for (std::size_t i = 0; i < chk.product_points.size(); ++i) o.detail << (i ? "," : "") << chk.product_points[i].str();
    o.detail << "}";
    if (names[0] == "M2") {
      o.require(contains(chk.factor_points, pt({4}, 0)) && contains(chk.factor_points, pt({2}, 1)),
                "both ((4);0) and ((2);1) reported");
      o.require(chk.product_points == std::vector<KemerPoint>{pt({4}, 0)}, "Kemer set {((4);0)}");
    }
  }
}

void c12(Outcome& o) {
  struct Run {
    std::string command;
    std::vector<std::string> algebras;
    std::optional<std::string> poly;
    std::optional<std::string> profile;
    int nu = 1;
  };
  std::vector<Run> runs{
      {"validate", {}, {}, {}},
      {"radical", {"UT3"}, {}, {}},
      {"capelli-audit", {"M2eg"}, {}, {}},
      {"capelli-audit", {"UT3"}, {}, {}},
      {"kemer", {"M2eg"}, {}, {}},
      {"kemer", {"FZ2"}, {}, {}, 2},
      {"kemer", {"UT2"}, {}, {}},
      {"kemer", {"M2", "UT2"}, {}, {}},
      {"witness-simple", {"M2eg"}, {}, {}},
      {"zr-audit", {"UT2"}, {}, {}},
      {"theorem-j", {"M2"}, "c4", {}},
      {"check", {"M2"}, "commutator", {}},
      {"kernel", {"M2"}, {}, "e,e,e,e"},
      {"compare", {"E_M2", "M2"}, {}, {}},
      {"property-k", {"UT2"}, "commutator", {}},
  };
  int mismatches = 0;
  for (const auto& r : runs) {
    std::string dumps[2];
    for (int k = 0; k < 2; ++k) {
      CommandOptions opt;
      opt.algebras = r.algebras;
      opt.poly = r.poly;
      opt.profile = r.profile;
      opt.nu = r.nu;
      opt.max_degree = 3;
      opt.workers = k == 0 ? 1 : 4;
      opt.digest = "sha256:acceptance";
      CommandRunner runner(corpus(), opt);
      dumps[k] = runner.run(r.command).report.dump(2);
    }
    if (dumps[0] != dumps[1]) {
      ++mismatches;
      o.detail << " mismatch:" << r.command;
    }
  }
  o.require(mismatches == 0, "byte-identical reports");
  o.detail << " runs=" << runs.size() << " mismatches=" << mismatches;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit_s;  // 0: no runtime limit
    void (*fn)(Outcome&);
  };
  const std::vector<Criterion> criteria{
      {1, "BSZ construction postconditions", 1, c1},
      {2, "Capelli audit", 120, c2},
      {3, "Kemer point of G-simple algebras", 120, c3},
      {4, "UT2 reaches ((2);1)", 60, c4},
      {5, "full_witness_simple on BSZ examples", 60, c5},
      {6, "exhaustive vs generic identity oracle", 0, c6},
      {7, "Zubrilin-Razmyslov audit", 0, c7},
      {8, "trace identity on M2", 0, c8},
      {9, "ungraded identities of M2 lift to M2 (x) FZ/2", 0, c9},
      {10, "Grassmann identity and envelope", 0, c10},
      {11, "Kemer set of direct products", 0, c11},
      {12, "determinism across worker counts", 0, c12},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.fn(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0) o.require(secs < c.limit_s, "runtime limit");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " C" << c.id << " " << c.title << " (" << buf << ")"
              << o.detail.str() << std::endl;
    if (!o.pass) ++failed;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed ? 1 : 0;
}
