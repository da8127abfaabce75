#pragma once

// JSON input documents: named algebras, elements, measures, states, moment
// sequences and bilinear maps. Rationals are always strings ("p/q" or "n").

#include "mvprob/axioms.hpp"
#include "mvprob/independence.hpp"
#include "mvprob/moments.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace mvp::cli {

using json = nlohmann::json;

inline constexpr const char* kDocumentVersion = "1";

struct StateDef {
  std::string algebra;
  std::string kind;  // measure | identity | chang-first-coordinate | table | chain-identity
  std::string measure;
  std::vector<Rational> values;
  friend bool operator==(const StateDef&, const StateDef&) = default;
};

struct BilinearDef {
  std::string kind;  // beta | state-product | table
  std::string left, right, codomain;
  std::vector<json> values;  // element literals in the codomain (table kind)
  std::optional<unsigned> bound;
  friend bool operator==(const BilinearDef&, const BilinearDef&) = default;
};

namespace detail {

[[noreturn]] inline void schema(const std::string& what) { throw input_error("schema: " + what); }

inline const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) schema(where + " is missing '" + key + "'");
  return obj.at(key);
}

inline std::string str_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_string()) schema(where + "." + key + " must be a string");
  return v.get<std::string>();
}

inline bool bool_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) return false;
  if (!obj.at(key).is_boolean()) schema(where + "." + key + " must be a boolean");
  return obj.at(key).get<bool>();
}

inline long int_of(const json& v, const std::string& where) {
  if (!v.is_number_integer()) schema(where + " must be an integer");
  return v.get<long>();
}

inline Rational rational_of(const json& v, const std::string& where) {
  if (!v.is_string()) schema(where + " must be a rational string");
  return parse_rational(v.get<std::string>());
}

inline std::vector<Rational> rationals_of(const json& v, const std::string& where) {
  if (!v.is_array()) schema(where + " must be an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational_of(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<std::string> strings_of(const json& v, const std::string& where) {
  if (!v.is_array()) schema(where + " must be an array");
  std::vector<std::string> out;
  for (const auto& s : v) {
    if (!s.is_string()) schema(where + " entries must be strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

inline std::vector<int> ints_of(const json& v, const std::string& where) {
  if (!v.is_array()) schema(where + " must be an array");
  std::vector<int> out;
  for (const auto& x : v) out.push_back(static_cast<int>(int_of(x, where)));
  return out;
}

inline std::vector<std::vector<int>> table_of(const json& v, const std::string& where) {
  if (!v.is_array()) schema(where + " must be an array of rows");
  std::vector<std::vector<int>> out;
  for (const auto& row : v) out.push_back(ints_of(row, where));
  return out;
}

}  // namespace detail

/// Parses a value literal for `alg`.
inline Element element_of(const Algebra& alg, const json& v, const std::string& where) {
  using namespace detail;
  if (alg.is_chang()) {
    if (!v.is_object()) schema(where + " must be {\"upper\": bool, \"k\": int}");
    long k = int_of(field(v, "k", where), where + ".k");
    return bool_field(v, "upper", where) ? alg.upper(k) : alg.lower(k);
  }
  if (alg.is_functions()) return alg.function(rationals_of(v, where));
  return alg.value(rational_of(v, where));
}

inline json literal_of(const Element& e) {
  const Algebra& alg = e.algebra();
  if (alg.is_chang()) return json{{"k", e.chang().k}, {"upper", e.chang().upper}};
  if (alg.is_functions()) {
    json arr = json::array();
    for (const auto& v : e.values()) arr.push_back(v.get_str());
    return arr;
  }
  return e.scalar().get_str();
}

class Document {
 public:
  static Document parse(const json& root) {
    using namespace detail;
    if (!root.is_object()) schema("document must be an object");
    Document d;
    d.version_ = str_field(root, "version", "document");
    if (d.version_ != kDocumentVersion) schema("unsupported version '" + d.version_ + "'");
    for (const auto& [key, _] : root.items())
      if (key != "version" && key != "algebras" && key != "elements" && key != "measures" && key != "states" &&
          key != "moments" && key != "bilinear")
        schema("unknown section '" + key + "'");

    auto section = [&](const char* name) -> const json& {
      static const json empty = json::object();
      if (!root.contains(name)) return empty;
      if (!root.at(name).is_object()) schema(std::string(name) + " must be an object");
      return root.at(name);
    };

    for (const auto& [name, def] : section("algebras").items()) {
      std::string where = "algebras." + name;
      std::string kind = str_field(def, "kind", where);
      Signature sig{bool_field(def, "product", where), bool_field(def, "scalars", where)};
      if (kind == "standard") {
        d.algebras_.emplace(name, Algebra::standard(sig));
      } else if (kind == "chain") {
        if (sig.scalar_action) schema(where + ": chains have no scalar action");
        d.algebras_.emplace(name, Algebra::chain(static_cast<int>(int_of(field(def, "n", where), where + ".n")),
                                                 sig.internal_product));
      } else if (kind == "function") {
        std::optional<int> chain;
        if (def.contains("chain") && !def.at("chain").is_null())
          chain = static_cast<int>(int_of(def.at("chain"), where + ".chain"));
        d.algebras_.emplace(name, Algebra::functions(strings_of(field(def, "atoms", where), where + ".atoms"),
                                                     chain, sig));
      } else if (kind == "chang") {
        if (sig.internal_product || sig.scalar_action) schema(where + ": Chang has no product or scalars");
        d.algebras_.emplace(name, Algebra::chang());
      } else if (kind == "table") {
        std::vector<std::vector<int>> prod;
        if (def.contains("prod")) prod = table_of(def.at("prod"), where + ".prod");
        d.tables_.emplace(name, TableStructure(name, table_of(field(def, "oplus", where), where + ".oplus"),
                                               ints_of(field(def, "neg", where), where + ".neg"), prod));
      } else {
        schema(where + ": unknown kind '" + kind + "'");
      }
    }

    for (const auto& [name, def] : section("elements").items()) {
      std::string where = "elements." + name;
      std::string alg = str_field(def, "algebra", where);
      d.elements_.emplace(name, element_of(d.algebra(alg), field(def, "value", where), where + ".value"));
      d.element_algebra_.emplace(name, alg);
    }

    for (const auto& [name, def] : section("measures").items()) {
      std::string where = "measures." + name;
      d.measures_.emplace(name, DiscreteMeasure(strings_of(field(def, "atoms", where), where + ".atoms"),
                                                rationals_of(field(def, "weights", where), where + ".weights")));
    }

    for (const auto& [name, def] : section("states").items()) {
      std::string where = "states." + name;
      StateDef sd;
      sd.algebra = str_field(def, "algebra", where);
      sd.kind = str_field(def, "kind", where);
      const Algebra& alg = d.algebra(sd.algebra);
      std::optional<State> s;
      if (sd.kind == "measure") {
        sd.measure = str_field(def, "measure", where);
        s = State::measure(alg, d.measure(sd.measure));
      } else if (sd.kind == "identity") {
        s = State::identity(alg);
      } else if (sd.kind == "chang-first-coordinate") {
        s = State::chang_first_coordinate(alg);
      } else if (sd.kind == "table") {
        sd.values = rationals_of(field(def, "values", where), where + ".values");
        s = State::table(alg, sd.values);
        sd.values = s->table_values();
      } else if (sd.kind == "chain-identity") {
        s = State::chain_identity(alg);
      } else {
        schema(where + ": unknown state kind '" + sd.kind + "'");
      }
      d.states_.emplace(name, *s);
      d.state_defs_.emplace(name, sd);
    }

    for (const auto& [name, def] : section("moments").items())
      d.moments_.emplace(name, MomentSequence(rationals_of(def, "moments." + name)));

    for (const auto& [name, def] : section("bilinear").items()) {
      std::string where = "bilinear." + name;
      BilinearDef bd;
      bd.kind = str_field(def, "kind", where);
      bd.left = str_field(def, "left", where);
      bd.right = str_field(def, "right", where);
      d.state(bd.left);
      d.state(bd.right);
      if (bd.kind == "table") {
        bd.codomain = str_field(def, "codomain", where);
        const Algebra& c = d.state(bd.codomain).algebra();
        const json& vals = field(def, "values", where);
        if (!vals.is_array()) schema(where + ".values must be an array");
        for (std::size_t i = 0; i < vals.size(); ++i)
          bd.values.push_back(literal_of(element_of(c, vals[i], where + ".values[" + std::to_string(i) + "]")));
        if (def.contains("bound")) {
          long k = int_of(def.at("bound"), where + ".bound");
          if (k < 1) schema(where + ".bound must be a positive integer");
          bd.bound = static_cast<unsigned>(k);
        }
      } else if (bd.kind != "beta" && bd.kind != "state-product") {
        schema(where + ": unknown bilinear kind '" + bd.kind + "'");
      }
      d.bilinear_defs_.emplace(name, bd);
      d.bilinear(name);  // validates table sizes
    }
    return d;
  }

  static Document parse_text(const std::string& text) {
    json root;
    try {
      root = json::parse(text);
    } catch (const json::parse_error& e) {
      throw input_error(std::string("malformed document: ") + e.what());
    }
    return parse(root);
  }

  static Document load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot read document '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
  }

  const Algebra& algebra(const std::string& name) const { return lookup(algebras_, name, "algebra"); }
  bool has_table(const std::string& name) const { return tables_.count(name) > 0; }
  const TableStructure& table(const std::string& name) const { return lookup(tables_, name, "table algebra"); }
  const Element& element(const std::string& name) const { return lookup(elements_, name, "element"); }
  const DiscreteMeasure& measure(const std::string& name) const { return lookup(measures_, name, "measure"); }
  const State& state(const std::string& name) const { return lookup(states_, name, "state"); }
  const MomentSequence& moments(const std::string& name) const { return lookup(moments_, name, "moment sequence"); }

  BilinearMap bilinear(const std::string& name) const {
    const BilinearDef& bd = lookup(bilinear_defs_, name, "bilinear map");
    const State& l = state(bd.left);
    const State& r = state(bd.right);
    auto build = [&]() -> BilinearMap {
      if (bd.kind == "beta") return beta_map(IndependenceSetup(l, r));
      if (bd.kind == "state-product") return state_product_map(l, r);
      const State& c = state(bd.codomain);
      std::vector<Element> vals;
      for (const auto& v : bd.values) vals.push_back(element_of(c.algebra(), v, "bilinear." + name));
      return table_map(name, l, r, c, std::move(vals), bd.bound);
    };
    BilinearMap out = build();
    out.name = name;
    return out;
  }

  /// Canonical form, rebuilt from the parsed objects.
  json to_json() const {
    json root;
    root["version"] = version_;
    json algs = json::object();
    for (const auto& [name, a] : algebras_) {
      json j;
      if (a.is_standard()) {
        j = {{"kind", "standard"}, {"product", a.has_product()}, {"scalars", a.has_scalars()}};
      } else if (a.is_chain()) {
        j = {{"kind", "chain"}, {"n", a.chain_n()}, {"product", a.has_product()}};
      } else if (a.is_functions()) {
        j = {{"kind", "function"}, {"atoms", a.atoms()}, {"product", a.has_product()}, {"scalars", a.has_scalars()}};
        if (a.function_carrier().chain) j["chain"] = *a.function_carrier().chain;
      } else {
        j = {{"kind", "chang"}};
      }
      algs[name] = j;
    }
    for (const auto& [name, t] : tables_) {
      json j = {{"kind", "table"}, {"oplus", t.oplus_table()}, {"neg", t.neg_table()}};
      if (t.has_product()) j["prod"] = t.prod_table();
      algs[name] = j;
    }
    if (!algs.empty()) root["algebras"] = algs;

    if (!elements_.empty()) {
      json els = json::object();
      for (const auto& [name, e] : elements_)
        els[name] = {{"algebra", element_algebra_.at(name)}, {"value", literal_of(e)}};
      root["elements"] = els;
    }
    if (!measures_.empty()) {
      json ms = json::object();
      for (const auto& [name, m] : measures_) {
        json w = json::array();
        for (const auto& x : m.weights()) w.push_back(x.get_str());
        ms[name] = {{"atoms", m.atoms()}, {"weights", w}};
      }
      root["measures"] = ms;
    }
    if (!state_defs_.empty()) {
      json ss = json::object();
      for (const auto& [name, sd] : state_defs_) {
        json j = {{"algebra", sd.algebra}, {"kind", sd.kind}};
        if (sd.kind == "measure") j["measure"] = sd.measure;
        if (sd.kind == "table") {
          json v = json::array();
          for (const auto& x : sd.values) v.push_back(x.get_str());
          j["values"] = v;
        }
        ss[name] = j;
      }
      root["states"] = ss;
    }
    if (!moments_.empty()) {
      json mm = json::object();
      for (const auto& [name, m] : moments_) {
        json v = json::array();
        for (const auto& x : m.values()) v.push_back(x.get_str());
        mm[name] = v;
      }
      root["moments"] = mm;
    }
    if (!bilinear_defs_.empty()) {
      json bb = json::object();
      for (const auto& [name, bd] : bilinear_defs_) {
        json j = {{"kind", bd.kind}, {"left", bd.left}, {"right", bd.right}};
        if (bd.kind == "table") {
          j["codomain"] = bd.codomain;
          j["values"] = bd.values;
          if (bd.bound) j["bound"] = *bd.bound;
        }
        bb[name] = j;
      }
      root["bilinear"] = bb;
    }
    return root;
  }

  /// Object-graph equality (names, carriers, values, rules).
  friend bool operator==(const Document& a, const Document& b) {
    if (a.version_ != b.version_ || a.algebras_ != b.algebras_ || a.elements_ != b.elements_ ||
        a.element_algebra_ != b.element_algebra_ || a.measures_ != b.measures_ || a.state_defs_ != b.state_defs_ ||
        a.moments_ != b.moments_ || a.bilinear_defs_ != b.bilinear_defs_ || a.tables_.size() != b.tables_.size())
      return false;
    for (const auto& [name, t] : a.tables_) {
      auto it = b.tables_.find(name);
      if (it == b.tables_.end() || t.oplus_table() != it->second.oplus_table() ||
          t.neg_table() != it->second.neg_table() || t.prod_table() != it->second.prod_table())
        return false;
    }
    return true;
  }

 private:
  template <class M>
  static const typename M::mapped_type& lookup(const M& m, const std::string& name, const char* what) {
    auto it = m.find(name);
    if (it == m.end()) throw input_error(std::string("unresolved ") + what + " '" + name + "'");
    return it->second;
  }

  std::string version_;
  std::map<std::string, Algebra> algebras_;
  std::map<std::string, TableStructure> tables_;
  std::map<std::string, Element> elements_;
  std::map<std::string, std::string> element_algebra_;
  std::map<std::string, DiscreteMeasure> measures_;
  std::map<std::string, State> states_;
  std::map<std::string, StateDef> state_defs_;
  std::map<std::string, MomentSequence> moments_;
  std::map<std::string, BilinearDef> bilinear_defs_;
};

}  // namespace mvp::cli
