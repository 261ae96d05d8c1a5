#pragma once

// Command implementations behind the CLI. Each returns a canonical JSON report
// and an exit code: 0 success, 2 negative verdict, 1 input error.

#include "gradedpi/audits.hpp"
#include "gradedpi/json_io.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace gradedpi {

struct CommandOptions {
  std::vector<std::string> algebras;
  std::optional<std::string> poly;
  int max_degree = 4;
  int nu = 1;
  std::optional<int> border_budget;
  std::optional<std::uint64_t> budget;
  unsigned workers = 1;
  std::optional<std::string> profile;  // comma-separated degrees
  std::optional<std::string> set;      // comma-separated ids (theorem-j)
  std::optional<std::string> assign;   // id=label,... (theorem-j)
  int trials = 20;
  std::uint64_t seed = 1;
  std::string digest;
};

struct CommandResult {
  Json report;
  int exit_code = 0;
};

/// Bad command-line usage (exit 1).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string num(std::int64_t v) { return std::to_string(v); }

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

inline int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(what + ": expected an integer, got '" + s + "'");
  }
}

inline Json points_json(const FiniteGroup& g, const std::vector<KemerPoint>& pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back(point_json(g, p));
  return out;
}

inline std::vector<std::string> point_strings(const std::vector<KemerPoint>& pts) {
  std::vector<std::string> out;
  for (const auto& p : pts) out.push_back(p.str());
  return out;
}

inline Json verdict_json(const GradedAlgebra& a, const IdentityVerdict& v) {
  Json out{{"identity", v.identity}, {"vacuous", v.vacuous}, {"method", v.method},
           {"assignments", num(static_cast<std::int64_t>(v.space_size))}};
  if (v.witness) {
    out["witness"] = assignment_json(a, *v.witness);
    if (!v.witness_value.empty()) out["witness_value"] = element_json(a, v.witness_value);
  }
  return out;
}

inline Json profile_json(const FiniteGroup& g, const std::vector<int>& profile) {
  Json out = Json::array();
  for (int d : profile) out.push_back(g.label(d));
  return out;
}

inline Json estimate_json(const GradedAlgebra& a, const KemerEstimate& e) {
  const auto& g = *a.group();
  Json witnesses = Json::array(), refutations = Json::array(), undecided = Json::array();
  for (const auto& r : e.witnesses) witnesses.push_back(layout_result_json(a, r));
  for (const auto& r : e.refutations) refutations.push_back(layout_result_json(a, r));
  for (const auto& r : e.undecided) undecided.push_back(layout_result_json(a, r));
  return Json{{"upper", point_json(g, e.upper)},
              {"upper_str", e.upper.str()},
              {"lower", points_json(g, e.lower)},
              {"lower_str", point_strings(e.lower)},
              {"witnesses", witnesses},
              {"certified_refutations", refutations},
              {"undecided", undecided},
              {"budget_exhausted", e.budget_exhausted}};
}

}  // namespace detail

class CommandRunner {
 public:
  CommandRunner(Workspace& ws, CommandOptions opt) : ws_(ws), opt_(std::move(opt)) {}

  static const std::vector<std::string>& commands() {
    static const std::vector<std::string> names{"validate",      "radical", "gpar",           "check",
                                                "kernel",        "compare", "capelli-audit",  "kemer",
                                                "witness-simple", "zr-audit", "theorem-j",     "property-k"};
    return names;
  }

  CommandResult run(const std::string& command) {
    static const std::map<std::string, CommandResult (CommandRunner::*)()> table{
        {"validate", &CommandRunner::validate},
        {"radical", &CommandRunner::radical_cmd},
        {"gpar", &CommandRunner::gpar},
        {"check", &CommandRunner::check},
        {"kernel", &CommandRunner::kernel},
        {"compare", &CommandRunner::compare},
        {"capelli-audit", &CommandRunner::capelli},
        {"kemer", &CommandRunner::kemer},
        {"witness-simple", &CommandRunner::witness_simple},
        {"zr-audit", &CommandRunner::zr},
        {"theorem-j", &CommandRunner::theorem_j},
        {"property-k", &CommandRunner::property_k},
    };
    auto it = table.find(command);
    if (it == table.end()) throw UsageError("unknown command '" + command + "'");
    CommandResult r = (this->*(it->second))();
    r.report["schema"] = 1;
    r.report["command"] = command;
    r.report["input_digest"] = opt_.digest;
    return r;
  }

 private:
  std::pair<std::string, AlgebraPtr> one_algebra() {
    if (opt_.algebras.size() != 1) throw UsageError("this command needs exactly one --algebra");
    const auto& name = opt_.algebras[0];
    if (!ws_.has("algebras", name)) throw UsageError("unknown algebra '" + name + "'");
    return {name, ws_.algebra(name)};
  }

  const GradedPolynomial& the_poly(const GradedAlgebra& a) {
    if (!opt_.poly) throw UsageError("this command needs --poly");
    if (!ws_.has("polynomials", *opt_.poly)) throw UsageError("unknown polynomial '" + *opt_.poly + "'");
    const auto& f = ws_.polynomial(*opt_.poly);
    const auto g = ws_.polynomial_group(*opt_.poly);
    if (!g->same_table(*a.group())) {
      bool trivial_ok = true;
      for (const auto& v : f.alphabet()) trivial_ok = trivial_ok && v.degree == 0;
      if (!trivial_ok) throw UsageError("polynomial '" + *opt_.poly + "' is graded by a different group");
    }
    return f;
  }

  SearchParams search_params() const {
    SearchParams p;
    p.nu = opt_.nu;
    p.border_budget = opt_.border_budget;
    if (opt_.budget) p.node_budget = *opt_.budget;
    p.workers = opt_.workers;
    return p;
  }

  Json params_json() const {
    const SearchParams p = search_params();
    Json out{{"nu", detail::num(p.nu)}, {"node_budget", detail::num(static_cast<std::int64_t>(p.node_budget))}};
    out["border_budget"] = p.border_budget ? Json(detail::num(*p.border_budget)) : Json("set-variables+1");
    return out;
  }

  CommandResult validate() {
    ws_.resolve_all();
    Json groups = Json::object(), algebras = Json::object(), polys = Json::object(), cocycles = Json::object();
    for (const auto& n : ws_.names("groups")) {
      const auto g = ws_.group(n);
      groups[n] = Json{{"order", detail::num(g->order())}, {"labels", g->labels()}};
    }
    for (const auto& n : ws_.names("cocycles")) {
      const auto& c = ws_.cocycle(n);
      cocycles[n] = Json{{"group_order", detail::num(c.group->order())}, {"m", detail::num(c.m)}};
    }
    for (const auto& n : ws_.names("algebras")) {
      const auto a = ws_.algebra(n);
      Json dims = Json::object();
      for (int x = 0; x < a->group()->order(); ++x) dims[a->group()->label(x)] = detail::num(a->dim_of_degree(x));
      algebras[n] = Json{{"dim", detail::num(a->dim())}, {"graded_dims", dims}, {"unital", a->unit().has_value()},
                         {"description", a->description}};
    }
    for (const auto& n : ws_.names("polynomials")) {
      const auto& f = ws_.polynomial(n);
      polys[n] = Json{{"variables", detail::num(static_cast<std::int64_t>(f.alphabet().size()))},
                      {"terms", detail::num(static_cast<std::int64_t>(f.size()))},
                      {"multilinear", f.multilinear()}};
    }
    return {Json{{"valid", true}, {"groups", groups}, {"cocycles", cocycles}, {"algebras", algebras},
                 {"polynomials", polys}},
            0};
  }

  CommandResult radical_cmd() {
    auto [name, a] = one_algebra();
    const auto rad = radical(*a);
    const auto& g = *a->group();
    Json basis = Json::array();
    for (const auto& v : rad.basis) basis.push_back(element_json(*a, v));
    return {Json{{"algebra", name},
                 {"dim", detail::num(a->dim())},
                 {"radical_dim", detail::num(rad.dim())},
                 {"radical_dims", degree_map_json(g, rad.radical_dims)},
                 {"semisimple_dims", degree_map_json(g, rad.semisimple_dims)},
                 {"nilpotency_index", detail::num(rad.nilpotency_index)},
                 {"radical_basis", basis}},
            0};
  }

  CommandResult gpar() {
    auto [name, a] = one_algebra();
    const auto p = g_par(*a);
    return {Json{{"algebra", name}, {"gpar", Json{{"d", degree_map_json(*a->group(), p.d)}, {"s", detail::num(p.s)}}}},
            0};
  }

  CommandResult check() {
    auto [name, a] = one_algebra();
    const auto& f = the_poly(*a);
    Json profile = Json::object();
    for (const auto& v : f.alphabet()) profile[std::to_string(v.id)] = a->group()->label(v.degree);
    Json report{{"algebra", name}, {"polynomial", *opt_.poly}, {"profile", profile}, {"budget_exhausted", false}};
    if (opt_.budget && f.multilinear()) {
      double size = 1;
      for (const auto& v : f.alphabet()) size *= a->dim_of_degree(v.degree);
      if (size > static_cast<double>(*opt_.budget)) {
        report["budget_exhausted"] = true;
        report["assignments_required"] = detail::num(static_cast<std::int64_t>(size));
        return {report, 0};
      }
    }
    const auto v = is_identity(f, *a, {opt_.workers, {}});
    report["verdict"] = detail::verdict_json(*a, v);
    return {report, v.identity ? 0 : 2};
  }

  std::vector<int> parse_profile(const FiniteGroup& g) const {
    if (!opt_.profile) throw UsageError("this command needs --profile");
    std::vector<int> out;
    for (const auto& tok : detail::split(*opt_.profile, ',')) {
      if (auto d = g.find_label(tok)) {
        out.push_back(*d);
      } else {
        const int d2 = detail::parse_int(tok, "--profile");
        if (d2 < 0 || d2 >= g.order()) throw UsageError("--profile: degree out of range: " + tok);
        out.push_back(d2);
      }
    }
    if (out.empty()) throw UsageError("--profile is empty");
    return out;
  }

  IdentitySpaceOptions space_options() const {
    IdentitySpaceOptions o;
    o.workers = opt_.workers;
    o.max_degree = std::max(7, opt_.max_degree);
    if (opt_.budget) o.max_work = static_cast<double>(*opt_.budget);
    return o;
  }

  CommandResult kernel() {
    auto [name, a] = one_algebra();
    const auto profile = parse_profile(*a->group());
    Json report{{"algebra", name}, {"profile", detail::profile_json(*a->group(), profile)}, {"budget_exhausted", false}};
    try {
      const auto space = identity_space(*a, profile, space_options());
      Json basis = Json::array();
      bool reverified = true;
      for (const auto& v : space.basis) {
        const auto f = space.polynomial(v);
        basis.push_back(polynomial_json(f, *a->group()));
        reverified = reverified && is_identity(f, *a, {opt_.workers, {}}).identity;
      }
      report["kernel_dim"] = detail::num(static_cast<std::int64_t>(space.basis.size()));
      report["rank"] = detail::num(static_cast<std::int64_t>(space.rank));
      report["vacuous"] = space.vacuous;
      report["basis"] = basis;
      report["reverified"] = reverified;
      return {report, reverified ? 0 : 1};
    } catch (const SizeGuardError& e) {
      report["budget_exhausted"] = true;
      report["reason"] = e.what();
      return {report, 0};
    }
  }

  CommandResult compare() {
    if (opt_.algebras.size() != 2) throw UsageError("compare needs exactly two --algebra");
    for (const auto& n : opt_.algebras) {
      if (!ws_.has("algebras", n)) throw UsageError("unknown algebra '" + n + "'");
    }
    const auto a = ws_.algebra(opt_.algebras[0]);
    const auto b = ws_.algebra(opt_.algebras[1]);
    Json report{{"first", opt_.algebras[0]},
                {"second", opt_.algebras[1]},
                {"max_degree", detail::num(opt_.max_degree)},
                {"budget_exhausted", false}};
    try {
      const auto cmp = tideals_compare(*a, *b, opt_.max_degree, space_options());
      Json witnesses = Json::array();
      for (const auto& s : cmp.witnesses) {
        witnesses.push_back(Json{{"profile", detail::profile_json(*a->group(), s.profile)},
                                 {"polynomial", polynomial_json(s.polynomial, *a->group())},
                                 {"identity_of", s.identity_of_first ? "first" : "second"}});
      }
      report["relation"] = relation_name(cmp.relation);
      report["profiles_compared"] = detail::num(cmp.profiles_compared);
      report["witnesses"] = witnesses;
      return {report, cmp.relation == TIdealRelation::kEqual ? 0 : 2};
    } catch (const SizeGuardError& e) {
      report["budget_exhausted"] = true;
      report["reason"] = e.what();
      return {report, 0};
    }
  }

  CommandResult capelli() {
    auto [name, a] = one_algebra();
    const auto& g = *a->group();
    const auto audit = capelli_audit(*a, opt_.workers);
    Json degrees = Json::array();
    for (const auto& d : audit.degrees) {
      Json upper{{"n", detail::num(d.upper_n)},
                 {"method", d.upper_method},
                 {"patterns", detail::num(static_cast<std::int64_t>(d.patterns))},
                 {"vacuous_patterns", detail::num(d.vacuous_patterns)},
                 {"identity", !d.upper_failure.has_value()}};
      if (d.upper_failure) {
        upper["failure_y_degrees"] = detail::profile_json(g, *d.upper_failure);
        upper["failure_witness"] = assignment_json(*a, *d.upper_failure_witness);
      }
      Json lower{{"applicable", d.lower_applicable}};
      if (d.lower_applicable) {
        lower["n"] = detail::num(d.dim);
        lower["non_identity_found"] = d.lower_pattern.has_value();
        if (d.lower_pattern) {
          lower["y_degrees"] = detail::profile_json(g, *d.lower_pattern);
          lower["witness"] = assignment_json(*a, *d.lower_witness);
        }
      }
      degrees.push_back(Json{{"g", g.label(d.g)}, {"dim", detail::num(d.dim)}, {"upper", upper}, {"lower", lower}});
    }
    return {Json{{"algebra", name}, {"degrees", degrees}, {"passed", audit.passed}}, audit.passed ? 0 : 2};
  }

  CommandResult kemer() {
    if (opt_.algebras.empty()) throw UsageError("kemer needs --algebra");
    const auto params = search_params();
    if (opt_.algebras.size() == 1) {
      auto [name, a] = one_algebra();
      const auto est = kemer_lower_bound(*a, params);
      Json report = detail::estimate_json(*a, est);
      report["algebra"] = name;
      report["params"] = params_json();
      return {report, 0};
    }
    std::vector<AlgebraPtr> held;
    std::vector<const GradedAlgebra*> factors;
    for (const auto& n : opt_.algebras) {
      if (!ws_.has("algebras", n)) throw UsageError("unknown algebra '" + n + "'");
      held.push_back(ws_.algebra(n));
      factors.push_back(held.back().get());
      if (!held.back()->group()->same_table(*held.front()->group())) {
        throw UsageError("kemer: factors must share the group");
      }
    }
    const auto check = kemer_set_product_check(factors, params);
    const auto& g = *held.front()->group();
    GradedAlgebra prod = *held.front();
    for (std::size_t i = 1; i < held.size(); ++i) prod = direct_product(prod, *held[i]);
    Json fj = Json::array();
    bool exhausted = check.product.budget_exhausted;
    for (std::size_t i = 0; i < held.size(); ++i) {
      Json e = detail::estimate_json(*held[i], check.factors[i]);
      e["algebra"] = opt_.algebras[i];
      fj.push_back(e);
      exhausted = exhausted || check.factors[i].budget_exhausted;
    }
    Json report{{"factors", fj},
                {"product", detail::estimate_json(prod, check.product)},
                {"factor_points", detail::points_json(g, check.factor_points)},
                {"expected", detail::points_json(g, check.expected)},
                {"product_points", detail::points_json(g, check.product_points)},
                {"passed", check.passed},
                {"budget_exhausted", exhausted},
                {"params", params_json()}};
    report["product_points_str"] = detail::point_strings(check.product_points);
    return {report, check.passed ? 0 : 2};
  }

  CommandResult witness_simple() {
    auto [name, a] = one_algebra();
    if (!a->bsz) throw UsageError("witness-simple needs an algebra of kind bsz");
    const auto w = full_witness_simple(*a, opt_.nu);
    Json tour = Json::array();
    for (auto [i, j] : w.tour) tour.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
    const bool ok = w.nonzero && w.sets_alternating;
    return {Json{{"algebra", name},
                 {"nu", detail::num(opt_.nu)},
                 {"tour", tour},
                 {"polynomial", polynomial_json(w.polynomial, *a->group())},
                 {"terms", detail::num(static_cast<std::int64_t>(w.polynomial.size()))},
                 {"assignment", assignment_json(*a, w.assignment)},
                 {"value", element_json(*a, w.value)},
                 {"alternation", layout_json(w.layout, *a->group())},
                 {"nonzero", w.nonzero},
                 {"sets_alternating", w.sets_alternating},
                 {"non_identity", w.nonzero}},
            ok ? 0 : 2};
  }

  CommandResult zr() {
    auto [name, a] = one_algebra();
    const auto audit = zr_audit(*a, opt_.workers);
    Json families = Json::array(), violations = Json::array(), nonvacuous = Json::array();
    for (const auto& f : audit.families) {
      families.push_back(Json{{"n", detail::num(f.n)},
                              {"borders", detail::num(f.borders)},
                              {"monomials", detail::num(f.monomials)},
                              {"kernel_dim", detail::num(f.kernel_dim)},
                              {"monomial_tilde_identities", detail::num(f.monomial_tilde_identities)}});
    }
    for (const auto& c : audit.cases) {
      Json cj{{"n", detail::num(c.n)}, {"borders", detail::num(c.borders)}, {"f", c.f.str()},
              {"f_identity", c.f_identity}, {"obstruction_identity", c.obstruction_identity}};
      if (!c.obstruction_identity) violations.push_back(cj);
      if (!c.f_identity && c.obstruction_identity) nonvacuous.push_back(cj);
    }
    return {Json{{"algebra", name},
                 {"families", families},
                 {"cases", detail::num(static_cast<std::int64_t>(audit.cases.size()))},
                 {"nonvacuous", detail::num(audit.nonvacuous)},
                 {"violations", detail::num(audit.violations)},
                 {"violating_cases", violations},
                 {"nonvacuous_passing_cases", nonvacuous},
                 {"passed", audit.passed}},
            audit.passed ? 0 : 2};
  }

  CommandResult theorem_j() {
    auto [name, a] = one_algebra();
    const auto& f = the_poly(*a);
    std::vector<int> ids;
    if (opt_.set) {
      for (const auto& tok : detail::split(*opt_.set, ',')) ids.push_back(detail::parse_int(tok, "--set"));
    } else {
      // longest prefix 1..t on which f alternates
      for (int t = 2; f.has_variable(t) && is_alternating(f, [&] {
                        std::vector<int> s(t);
                        for (int i = 0; i < t; ++i) s[i] = i + 1;
                        return s;
                      }());
           ++t) {
        ids.assign(t, 0);
        for (int i = 0; i < t; ++i) ids[i] = i + 1;
      }
      if (ids.empty() && f.has_variable(1)) ids = {1};
    }
    for (int id : ids) {
      if (!f.has_variable(id)) throw UsageError("--set: polynomial has no variable " + std::to_string(id));
    }
    if (!is_alternating(f, ids)) throw UsageError("polynomial is not alternating in the chosen set");

    std::map<int, int> fixed;
    if (opt_.assign) {
      for (const auto& tok : detail::split(*opt_.assign, ',')) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw UsageError("--assign: expected id=label, got '" + tok + "'");
        const int id = detail::parse_int(tok.substr(0, eq), "--assign");
        const auto label = tok.substr(eq + 1);
        int idx = -1;
        for (int i = 0; i < a->dim(); ++i) {
          if (a->label(i) == label) idx = i;
        }
        if (idx < 0) throw UsageError("--assign: unknown basis label '" + label + "'");
        fixed[id] = idx;
      }
    }
    // the set gets the basis of its degree in order unless assigned
    const int set_degree = f.degree_of(ids.at(0));
    const auto pool = a->basis_of_degree(set_degree);
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (fixed.count(ids[k])) continue;
      if (k >= pool.size()) throw UsageError("theorem-j: the set is larger than the component it lives in");
      fixed[ids[k]] = pool[k];
    }
    // remaining variables: first basis assignment (lexicographic) with a nonzero value
    GradedPolynomial rest;
    for (const auto& v : f.alphabet()) {
      if (!fixed.count(v.id)) rest.add_variable(v);
    }
    Assignment asg = fixed;
    {
      const AssignmentSpace space(rest, detail::standard_choices(*a));
      std::vector<int> idx(f.max_id() + 1, -1);
      std::optional<Assignment> first, nonzero;
      for (std::uint64_t i = 0; i < space.size() && !nonzero; ++i) {
        space.decode(i, idx);
        Assignment cand = fixed;
        for (const auto& v : rest.alphabet()) cand[v.id] = idx[v.id];
        if (!first) first = cand;
        if (!is_zero_vector(evaluate(f, *a, cand))) nonzero = cand;
      }
      if (nonzero) {
        asg = *nonzero;
      } else if (first) {
        asg = *first;
      }
    }
    std::map<int, Element> values;
    for (const auto& [id, b] : asg) values[id] = a->basis(b);

    std::mt19937_64 rng(opt_.seed);
    const std::size_t t = ids.size();
    int failures = 0;
    Json trials = Json::array();
    for (int trial = 0; trial < opt_.trials; ++trial) {
      std::vector<std::vector<Rational>> mat(t, std::vector<Rational>(t));
      Json mj = Json::array();
      for (auto& row : mat) {
        Json rj = Json::array();
        for (auto& x : row) {
          x = Rational(static_cast<std::int64_t>(rng() % 19) - 9);
          rj.push_back(x.str());
        }
        mj.push_back(rj);
      }
      const auto rep = verify_theorem_j(*a, f, ids, values, mat);
      if (!rep.equal) ++failures;
      trials.push_back(Json{{"T", mj}, {"lhs", element_json(*a, rep.lhs)}, {"equal", rep.equal}});
    }
    const Element base = evaluate_values(f, *a, values);
    return {Json{{"algebra", name},
                 {"polynomial", *opt_.poly},
                 {"set", ids},
                 {"assignment", assignment_json(*a, asg)},
                 {"value", element_json(*a, base)},
                 {"seed", detail::num(static_cast<std::int64_t>(opt_.seed))},
                 {"trials", trials},
                 {"failures", detail::num(failures)}},
            failures == 0 ? 0 : 2};
  }

  CommandResult property_k() {
    auto [name, a] = one_algebra();
    const auto& f = the_poly(*a);
    const auto rep = property_k_check(f, *a, opt_.workers);
    Json report{{"algebra", name},
                {"polynomial", *opt_.poly},
                {"holds", rep.holds},
                {"non_identity", rep.non_identity},
                {"radical_threshold", detail::num(rep.radical_threshold)}};
    if (rep.non_identity_witness) report["non_identity_witness"] = assignment_json(*a, *rep.non_identity_witness);
    if (rep.violation) {
      const auto eb = adapted_basis(*a, radical(*a));
      Json v = Json::object();
      for (const auto& [id, idx] : *rep.violation) v[std::to_string(id)] = element_json(*a, eb.vectors[idx]);
      report["violation"] = v;
    }
    return {report, rep.holds ? 0 : 2};
  }

  Workspace& ws_;
  CommandOptions opt_;
};

}  // namespace gradedpi
