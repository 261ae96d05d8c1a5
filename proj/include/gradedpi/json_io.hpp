#pragma once

// JSON specs for groups, cocycles, algebras and polynomials, and exact JSON
// encodings of the computed objects.

#include "gradedpi/kemer.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gradedpi {

using Json = nlohmann::json;

/// Malformed or inconsistent spec; `where` is a dotted path into the input.
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where(where), message(what) {}
  std::string where;
  std::string message;
};

// ---------------------------------------------------------------------------
// Encoding

inline Json to_json(const Scalar& s) {
  if (s.order() == 1) return s.rational().str();
  Json coeffs = Json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(c.str());
  return Json{{"order", s.order()}, {"coeffs", coeffs}};
}

/// Nonzero coordinates as [{basis, coeff}] in basis order.
inline Json element_json(const GradedAlgebra& a, const Element& v) {
  Json out = Json::array();
  for (int i = 0; i < a.dim(); ++i) {
    if (!v[i].is_zero()) out.push_back(Json{{"basis", a.label(i)}, {"coeff", to_json(v[i])}});
  }
  return out;
}

inline Json polynomial_json(const GradedPolynomial& f, const FiniteGroup& g) {
  Json alphabet = Json::array();
  for (const auto& v : f.alphabet()) alphabet.push_back(Json{{"id", v.id}, {"degree", g.label(v.degree)}});
  Json terms = Json::array();
  for (const auto& [w, c] : f.terms()) terms.push_back(Json{{"word", w}, {"coeff", to_json(c)}});
  return Json{{"alphabet", alphabet}, {"terms", terms}};
}

inline Json assignment_json(const GradedAlgebra& a, const Assignment& asg) {
  Json out = Json::object();
  for (const auto& [id, b] : asg) out[std::to_string(id)] = a.label(b);
  return out;
}

inline Json degree_map_json(const FiniteGroup& g, const std::vector<int>& values) {
  Json out = Json::object();
  for (int x = 0; x < g.order(); ++x) out[g.label(x)] = std::to_string(values[x]);
  return out;
}

inline Json point_json(const FiniteGroup& g, const KemerPoint& p) {
  return Json{{"alpha", degree_map_json(g, p.alpha)}, {"s", p.s_infinite ? std::string("inf") : std::to_string(p.s)}};
}

inline Json layout_json(const AlternationLayout& l, const FiniteGroup& g) {
  Json small = Json::object();
  for (const auto& [deg, sets] : l.small_sets) small[g.label(deg)] = sets;
  Json big = Json::array();
  for (const auto& [deg, ids] : l.big_sets) big.push_back(Json{{"g", g.label(deg)}, {"ids", ids}});
  Json border = Json::array();
  for (const auto& v : l.border) border.push_back(Json{{"id", v.id}, {"degree", g.label(v.degree)}});
  return Json{{"small", small}, {"big", big}, {"border", border}};
}

inline Json shape_json(const LayoutShape& s, const FiniteGroup& g) {
  Json big = Json::array();
  for (int d : s.big_degrees) big.push_back(g.label(d));
  return Json{{"alpha", degree_map_json(g, s.alpha)}, {"nu", std::to_string(s.nu)}, {"big", big}};
}

inline Json layout_result_json(const GradedAlgebra& a, const LayoutResult& r) {
  const auto& g = *a.group();
  Json out{{"layout", shape_json(r.shape, g)}, {"status", status_name(r.status)}};
  if (!r.reason.empty()) out["reason"] = r.reason;
  if (r.witness) {
    out["polynomial"] = polynomial_json(r.witness->polynomial, g);
    out["assignment"] = assignment_json(a, r.witness->assignment);
    out["value"] = element_json(a, r.witness->value);
    out["alternation"] = layout_json(r.witness->layout, g);
    out["border_variables"] = std::to_string(r.witness->borders);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Decoding

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw SpecError(where, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline int int_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_number_integer()) throw SpecError(where + "." + key, "expected an integer");
  return v.get<int>();
}

inline int degree_of(const Json& v, const FiniteGroup& g, const std::string& where) {
  if (v.is_number_integer()) {
    const int d = v.get<int>();
    if (d < 0 || d >= g.order()) throw SpecError(where, "group element index out of range");
    return d;
  }
  if (v.is_string()) {
    if (auto d = g.find_label(v.get<std::string>())) return *d;
    throw SpecError(where, "unknown group element '" + v.get<std::string>() + "'");
  }
  throw SpecError(where, "expected a group element index or label");
}

inline std::vector<int> degree_list(const Json& v, const FiniteGroup& g, const std::string& where) {
  if (!v.is_array()) throw SpecError(where, "expected an array");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(degree_of(v[i], g, where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace detail

inline Scalar scalar_from_json(const Json& v, const std::string& where) {
  try {
    if (v.is_number_integer()) return Scalar(v.get<std::int64_t>());
    if (v.is_string()) return Scalar(Rational::parse(v.get<std::string>()));
    if (v.is_object()) {
      const unsigned order = static_cast<unsigned>(detail::int_field(v, "order", where));
      const Json& cs = detail::field(v, "coeffs", where);
      std::vector<Rational> coeffs;
      for (const auto& c : cs) {
        if (c.is_number_integer()) {
          coeffs.emplace_back(c.get<std::int64_t>());
        } else {
          coeffs.push_back(Rational::parse(c.get<std::string>()));
        }
      }
      return Scalar(order, std::move(coeffs));
    }
  } catch (const SpecError&) {
    throw;
  } catch (const std::exception& e) {
    throw SpecError(where, e.what());
  }
  throw SpecError(where, "expected a scalar (\"p/q\", integer or {order, coeffs})");
}

/// Named objects loaded from one or more spec documents.
class Workspace {
 public:
  void load(const Json& doc, const std::string& source = "spec") {
    if (!doc.is_object()) throw SpecError(source, "top level must be an object");
    static const std::set<std::string> sections{"groups", "cocycles", "algebras", "polynomials"};
    for (const auto& [key, value] : doc.items()) {
      if (!sections.count(key)) throw SpecError(source + "." + key, "unknown section");
      if (!value.is_object()) throw SpecError(source + "." + key, "section must be an object");
      for (const auto& [name, body] : value.items()) {
        auto& raw = raw_[key];
        if (raw.count(name)) throw SpecError(source + "." + key + "." + name, "duplicate name");
        raw[name] = Raw{body, source + "." + key + "." + name};
      }
    }
  }

  /// Resolves and validates every object.
  void resolve_all() {
    for (const auto& [name, r] : raw_["groups"]) group(name);
    for (const auto& [name, r] : raw_["cocycles"]) cocycle(name);
    for (const auto& [name, r] : raw_["algebras"]) algebra(name);
    for (const auto& [name, r] : raw_["polynomials"]) polynomial(name);
  }

  std::vector<std::string> names(const std::string& section) const {
    std::vector<std::string> out;
    if (auto it = raw_.find(section); it != raw_.end()) {
      for (const auto& [name, r] : it->second) out.push_back(name);
    }
    return out;
  }

  GroupPtr group(const std::string& name) {
    if (auto it = groups_.find(name); it != groups_.end()) return it->second;
    const Raw& r = lookup("groups", name);
    auto g = group_from(r.body, r.where);
    groups_[name] = g;
    return g;
  }

  const TwoCocycle& cocycle(const std::string& name) {
    if (auto it = cocycles_.find(name); it != cocycles_.end()) return it->second;
    const Raw& r = lookup("cocycles", name);
    auto c = cocycle_from(r.body, r.where);
    return cocycles_.emplace(name, std::move(c)).first->second;
  }

  AlgebraPtr algebra(const std::string& name) {
    if (auto it = algebras_.find(name); it != algebras_.end()) return it->second;
    if (!resolving_.insert(name).second) throw SpecError("algebras." + name, "reference cycle");
    const Raw& r = lookup("algebras", name);
    auto a = std::make_shared<const GradedAlgebra>(algebra_from(r.body, r.where));
    resolving_.erase(name);
    algebras_[name] = a;
    return a;
  }

  const GradedPolynomial& polynomial(const std::string& name) {
    if (auto it = polys_.find(name); it != polys_.end()) return it->second.first;
    const Raw& r = lookup("polynomials", name);
    auto [f, g] = polynomial_from(r.body, r.where);
    return polys_.emplace(name, std::make_pair(std::move(f), g)).first->second.first;
  }

  /// Group used to read the named polynomial's degree labels.
  GroupPtr polynomial_group(const std::string& name) {
    polynomial(name);
    return polys_.at(name).second;
  }

  // Inline-or-reference resolution.

  GroupPtr group_ref(const Json& v, const std::string& where) {
    if (v.is_string()) {
      const auto name = v.get<std::string>();
      if (!has("groups", name)) throw SpecError(where, "unknown group '" + name + "'");
      return group(name);
    }
    return group_from(v, where);
  }

  AlgebraPtr algebra_ref(const Json& v, const std::string& where) {
    if (v.is_string()) {
      const auto name = v.get<std::string>();
      if (!has("algebras", name)) throw SpecError(where, "unknown algebra '" + name + "'");
      return algebra(name);
    }
    return std::make_shared<const GradedAlgebra>(algebra_from(v, where));
  }

  bool has(const std::string& section, const std::string& name) const {
    auto it = raw_.find(section);
    return it != raw_.end() && it->second.count(name);
  }

 private:
  struct Raw {
    Json body;
    std::string where;
  };

  const Raw& lookup(const std::string& section, const std::string& name) const {
    auto it = raw_.find(section);
    if (it == raw_.end() || !it->second.count(name)) throw SpecError(section + "." + name, "not defined");
    return it->second.at(name);
  }

  GroupPtr group_from(const Json& j, const std::string& where) {
    try {
      if (j.is_object() && j.contains("kind")) {
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "cyclic") return FiniteGroup::cyclic(detail::int_field(j, "n", where));
        if (kind == "trivial") return FiniteGroup::trivial();
        if (kind == "product") {
          const Json& fs = detail::field(j, "factors", where);
          if (!fs.is_array() || fs.size() != 2) throw SpecError(where + ".factors", "expected two factors");
          return FiniteGroup::direct_product(group_ref(fs[0], where + ".factors[0]"),
                                             group_ref(fs[1], where + ".factors[1]"));
        }
        throw SpecError(where + ".kind", "unknown group kind '" + kind + "'");
      }
      const int order = detail::int_field(j, "order", where);
      auto mult = detail::field(j, "mult", where).get<FiniteGroup::Table>();
      if (static_cast<int>(mult.size()) != order) throw SpecError(where + ".mult", "row count differs from order");
      std::vector<std::string> labels;
      if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
      return FiniteGroup::from_table(std::move(mult), std::move(labels));
    } catch (const SpecError&) {
      throw;
    } catch (const std::exception& e) {
      throw SpecError(where, e.what());
    }
  }

  TwoCocycle cocycle_from(const Json& j, const std::string& where) {
    try {
      auto h = group_ref(detail::field(j, "group", where), where + ".group");
      TwoCocycle c{h, static_cast<unsigned>(detail::int_field(j, "m", where)),
                   detail::field(j, "exponents", where).get<std::vector<std::vector<int>>>()};
      if (auto bad = validate_cocycle(c)) throw SpecError(where, "invalid cocycle: " + bad->describe());
      return c;
    } catch (const SpecError&) {
      throw;
    } catch (const std::exception& e) {
      throw SpecError(where, e.what());
    }
  }

  GradedAlgebra algebra_from(const Json& j, const std::string& where) {
    try {
      GradedAlgebra a = build_algebra(j, where);
      if (auto bad = validate(a)) throw SpecError(where, "invalid algebra: " + bad->describe());
      return a;
    } catch (const SpecError&) {
      throw;
    } catch (const std::exception& e) {
      throw SpecError(where, e.what());
    }
  }

  GradedAlgebra build_algebra(const Json& j, const std::string& where) {
    const std::string kind = j.is_object() && j.contains("kind") ? j.at("kind").get<std::string>() : "explicit";
    if (kind == "explicit") {
      auto g = group_ref(detail::field(j, "group", where), where + ".group");
      const int dim = detail::int_field(j, "dim", where);
      auto deg = detail::degree_list(detail::field(j, "deg", where), *g, where + ".deg");
      if (static_cast<int>(deg.size()) != dim) throw SpecError(where + ".deg", "length differs from dim");
      std::vector<std::string> labels;
      if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
      GradedAlgebra a(g, std::move(deg), std::move(labels));
      const Json& sc = detail::field(j, "sc", where);
      for (std::size_t e = 0; e < sc.size(); ++e) {
        const std::string w = where + ".sc[" + std::to_string(e) + "]";
        const int i = detail::int_field(sc[e], "i", w), jj = detail::int_field(sc[e], "j", w);
        const Json& terms = detail::field(sc[e], "terms", w);
        for (std::size_t t = 0; t < terms.size(); ++t) {
          const std::string wt = w + ".terms[" + std::to_string(t) + "]";
          a.add_product(i, jj, detail::int_field(terms[t], "k", wt),
                        scalar_from_json(detail::field(terms[t], "coeff", wt), wt + ".coeff"));
        }
      }
      if (j.contains("unit")) {
        Element u;
        for (std::size_t i = 0; i < j.at("unit").size(); ++i) {
          u.push_back(scalar_from_json(j.at("unit")[i], where + ".unit[" + std::to_string(i) + "]"));
        }
        if (static_cast<int>(u.size()) != dim) throw SpecError(where + ".unit", "length differs from dim");
        a.set_unit(std::move(u));
      }
      a.normalize_scalars();
      a.description = "explicit";
      return a;
    }
    if (kind == "bsz") {
      auto g = group_ref(detail::field(j, "group", where), where + ".group");
      SubgroupEmbedding h = SubgroupEmbedding::trivial_in(g);
      if (j.contains("H")) {
        const Json& hj = j.at("H");
        if (hj == "trivial") {
          h = SubgroupEmbedding::trivial_in(g);
        } else if (hj == "whole") {
          h = SubgroupEmbedding::whole(g);
        } else {
          auto sub = group_ref(detail::field(hj, "group", where + ".H"), where + ".H.group");
          h = SubgroupEmbedding::make(sub, g, detail::degree_list(detail::field(hj, "images", where + ".H"), *g,
                                                                   where + ".H.images"));
        }
      }
      TwoCocycle f = TwoCocycle::trivial(h.sub);
      if (j.contains("cocycle")) {
        const Json& cj = j.at("cocycle");
        f = cj.is_string() ? cocycle(cj.get<std::string>()) : cocycle_from(cj, where + ".cocycle");
        if (!f.group->same_table(*h.sub)) throw SpecError(where + ".cocycle", "cocycle group differs from H");
        f.group = h.sub;
      }
      std::vector<int> tuple{0};
      if (j.contains("tuple")) tuple = detail::degree_list(j.at("tuple"), *g, where + ".tuple");
      return bsz_simple(g, h, f, tuple);
    }
    if (kind == "ut") {
      auto g = group_ref(detail::field(j, "group", where), where + ".group");
      const int k = detail::int_field(j, "k", where);
      std::vector<int> tuple(k, 0);
      if (j.contains("tuple")) tuple = detail::degree_list(j.at("tuple"), *g, where + ".tuple");
      if (static_cast<int>(tuple.size()) != k) throw SpecError(where + ".tuple", "length differs from k");
      return upper_triangular(g, tuple);
    }
    if (kind == "grassmann") return grassmann(detail::int_field(j, "N", where));
    if (kind == "envelope") {
      auto inner = algebra_ref(detail::field(j, "inner", where), where + ".inner");
      return grassmann_envelope(*inner, detail::int_field(j, "N", where));
    }
    if (kind == "tensor_fg") {
      auto inner = algebra_ref(detail::field(j, "inner", where), where + ".inner");
      auto g = group_ref(detail::field(j, "group", where), where + ".group");
      return group_algebra_grading(*inner, g);
    }
    if (kind == "product") {
      const Json& fs = detail::field(j, "factors", where);
      if (!fs.is_array() || fs.empty()) throw SpecError(where + ".factors", "expected a non-empty array");
      GradedAlgebra acc = *algebra_ref(fs[0], where + ".factors[0]");
      for (std::size_t i = 1; i < fs.size(); ++i) {
        acc = direct_product(acc, *algebra_ref(fs[i], where + ".factors[" + std::to_string(i) + "]"));
      }
      return acc;
    }
    throw SpecError(where + ".kind", "unknown algebra kind '" + kind + "'");
  }

  std::pair<GradedPolynomial, GroupPtr> polynomial_from(const Json& j, const std::string& where) {
    try {
      GroupPtr g = j.contains("group") ? group_ref(j.at("group"), where + ".group") : FiniteGroup::trivial();
      const std::string kind = j.contains("kind") ? j.at("kind").get<std::string>() : "explicit";
      if (kind == "capelli") {
        const int n = detail::int_field(j, "n", where);
        const int deg = detail::degree_of(detail::field(j, "g", where), *g, where + ".g");
        std::vector<int> ys(n, 0);
        if (j.contains("y_degrees")) ys = detail::degree_list(j.at("y_degrees"), *g, where + ".y_degrees");
        return {capelli(n, deg, ys), g};
      }
      if (kind != "explicit") throw SpecError(where + ".kind", "unknown polynomial kind '" + kind + "'");
      GradedPolynomial f;
      const Json& alphabet = detail::field(j, "alphabet", where);
      for (std::size_t i = 0; i < alphabet.size(); ++i) {
        const std::string w = where + ".alphabet[" + std::to_string(i) + "]";
        f.add_variable({detail::int_field(alphabet[i], "id", w),
                        detail::degree_of(detail::field(alphabet[i], "degree", w), *g, w + ".degree")});
      }
      const Json& terms = detail::field(j, "terms", where);
      for (std::size_t t = 0; t < terms.size(); ++t) {
        const std::string w = where + ".terms[" + std::to_string(t) + "]";
        f.add_term(detail::field(terms[t], "word", w).get<Word>(),
                   scalar_from_json(detail::field(terms[t], "coeff", w), w + ".coeff"));
      }
      return {std::move(f), g};
    } catch (const SpecError&) {
      throw;
    } catch (const std::exception& e) {
      throw SpecError(where, e.what());
    }
  }

  std::map<std::string, std::map<std::string, Raw>> raw_;
  std::map<std::string, GroupPtr> groups_;
  std::map<std::string, TwoCocycle> cocycles_;
  std::map<std::string, AlgebraPtr> algebras_;
  std::map<std::string, std::pair<GradedPolynomial, GroupPtr>> polys_;
  std::set<std::string> resolving_;
};

}  // namespace gradedpi
