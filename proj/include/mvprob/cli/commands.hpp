#pragma once

// Command implementations behind the mvprob executable. Each returns a Report
// whose verdict fixes the exit code: pass -> 0, anything else -> 1. Input and
// schema problems surface as input_error and map to exit code 2.

#include "mvprob/cli/document.hpp"
#include "mvprob/holder.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mvp::cli {

using ojson = nlohmann::ordered_json;

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInput = 2;

struct Report {
  std::string command;
  ojson args = ojson::object();
  std::string verdict = "pass";  // pass | fail | infeasible | inconclusive
  ojson witnesses = ojson::array();
  ojson metrics = ojson::object();
  std::optional<std::uint64_t> seed;
  ojson result = ojson::object();

  int exit_code() const { return verdict == "pass" ? kExitPass : kExitFail; }

  void fail(std::string v, ojson witness) {
    verdict = std::move(v);
    witnesses.push_back(std::move(witness));
  }

  ojson to_json() const {
    ojson j;
    j["command"] = command;
    j["args"] = args;
    j["verdict"] = verdict;
    j["witnesses"] = witnesses;
    j["metrics"] = metrics;
    if (seed) j["seed"] = *seed;
    j["result"] = result;
    return j;
  }

  std::string dump() const { return to_json().dump(2) + "\n"; }
};

/// Options shared by all commands; unused fields stay empty.
struct Options {
  std::string doc;
  std::optional<std::uint64_t> seed;
  long precision = 128;
  std::optional<std::string> algebra, level, mode, state, element, a, b, measure, moments, bilinear, left, right;
  std::optional<std::string> p, q;
  std::optional<long> count, bound, order, grid, samples;
};

namespace detail {

inline std::string need(const std::optional<std::string>& v, const char* flag) {
  if (!v) throw input_error(std::string("missing required option --") + flag);
  return *v;
}

template <class T>
T need(const std::optional<T>& v, const char* flag) {
  if (!v) throw input_error(std::string("missing required option --") + flag);
  return *v;
}

inline std::uint64_t need_seed(const Options& o) {
  if (!o.seed) throw input_error("this command samples; pass --seed");
  return *o.seed;
}

inline ojson rational_array(const std::vector<Rational>& v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

inline ojson measure_json(const DiscreteMeasure& m) {
  ojson j;
  j["atoms"] = m.atoms();
  j["weights"] = rational_array(m.weights());
  return j;
}

inline ojson witness_of(const std::vector<std::string>& w) { return ojson(w); }

inline ojson value_json(const Element& e) { return ojson::parse(literal_of(e).dump()); }

}  // namespace detail

inline Report cmd_check_axioms(const Document& doc, const Options& o) {
  using namespace detail;
  Report r;
  r.command = "check-axioms";
  std::string name = need(o.algebra, "algebra");
  AxiomLevel level = parse_axiom_level(o.level.value_or("MV"));
  r.args["algebra"] = name;
  r.args["level"] = to_string(level);

  bool finite = doc.has_table(name) || doc.algebra(name).is_finite();
  bool chang = !doc.has_table(name) && doc.algebra(name).is_chang();
  std::string mode = o.mode.value_or(finite ? "exhaustive" : (chang ? "bounded" : "sample"));
  CheckMode cm;
  if (mode == "exhaustive") {
    cm = CheckMode::exhaustive();
  } else if (mode == "sample") {
    r.seed = need_seed(o);
    cm = CheckMode::sample(static_cast<std::size_t>(o.count.value_or(1000)), *r.seed);
    r.args["count"] = cm.count;
  } else if (mode == "bounded") {
    cm = CheckMode::bounded(o.bound.value_or(6));
    r.args["bound"] = cm.bound;
  } else {
    throw input_error("unknown mode '" + mode + "'");
  }
  r.args["mode"] = mode;

  AxiomReport rep = doc.has_table(name) ? check_axioms(doc.table(name), level, cm)
                                        : check_axioms(doc.algebra(name), level, cm);
  r.metrics["checks"] = rep.checks;
  r.result["carrier"] = doc.has_table(name) ? doc.table(name).name() : doc.algebra(name).describe();
  if (!rep.pass) {
    r.result["violated"] = rep.axiom;
    r.fail("fail", witness_of(rep.witness));
  }
  return r;
}

inline Report cmd_state(const Document& doc, const std::string& sub, const Options& o) {
  using namespace detail;
  Report r;
  r.command = "state " + sub;
  std::string sname = need(o.state, "state");
  const State& s = doc.state(sname);
  r.args["state"] = sname;
  r.result["carrier"] = s.algebra().describe();
  r.result["rule"] = s.rule_name();

  if (sub == "eval") {
    std::string en = need(o.element, "element");
    r.args["element"] = en;
    r.result["value"] = s(doc.element(en)).get_str();
    r.metrics["checks"] = 1;
  } else if (sub == "faithful") {
    auto rep = is_faithful(s);
    r.result["faithful"] = rep.faithful;
    r.metrics["checks"] = 1;
    if (!rep.faithful) r.fail("fail", ojson::array({"a=" + rep.witness->str(), "s(a)=0"}));
  } else if (sub == "metric") {
    std::string an = need(o.a, "a");
    std::string bn = need(o.b, "b");
    r.args["a"] = an;
    r.args["b"] = bn;
    const Element& x = doc.element(an);
    const Element& y = doc.element(bn);
    Rational d = rho(s, x, y);
    r.result["rho"] = d.get_str();
    r.result["equal"] = x == y;
    r.metrics["checks"] = 1;
    // rho_s(a,b) = 0 with a != b exhibits the failure of the metric law.
    if (d == 0 && !(x == y)) r.fail("fail", ojson::array({"a=" + x.str(), "b=" + y.str(), "rho=0"}));
  } else if (sub == "quotient") {
    StateQuotient sq = state_quotient(s);
    r.result["quotient"] = sq.map.target.describe();
    r.result["complete"] = sq.complete;
    auto faithful = is_faithful(sq.state);
    r.result["induced_faithful"] = faithful.faithful;
    std::size_t checks = 1;
    if (!faithful.faithful) r.fail("fail", ojson::array({"induced state vanishes at " + faithful.witness->str()}));
    std::vector<Element> sweep;
    if (s.algebra().is_finite()) {
      sweep = s.algebra().elements();
    } else if (s.algebra().is_chang()) {
      for (std::int64_t k = 0; k <= 16; ++k) {
        sweep.push_back(s.algebra().lower(k));
        sweep.push_back(s.algebra().upper(k));
      }
    } else {
      r.seed = need_seed(o);
      Rng rng(*r.seed);
      for (long i = 0; i < o.samples.value_or(200); ++i) sweep.push_back(s.algebra().random(rng));
    }
    for (const auto& x : sweep) {
      ++checks;
      if (sq.state(sq.map(x)) != s(x)) {
        r.fail("fail", ojson::array({"a=" + x.str(), "s(a)=" + s(x).get_str(),
                                     "t(pi(a))=" + sq.state(sq.map(x)).get_str()}));
        break;
      }
    }
    r.metrics["checks"] = checks;
  } else {
    throw input_error("unknown state subcommand '" + sub + "'");
  }
  return r;
}

inline Report cmd_spectra(const Document& doc, const std::string& sub, const Options& o) {
  using namespace detail;
  Report r;
  r.command = "spectra " + sub;
  std::string name = need(o.algebra, "algebra");
  const Algebra& alg = doc.algebra(name);
  r.args["algebra"] = name;
  r.result["carrier"] = alg.describe();
  if (sub == "ideals") {
    auto all = ideals(alg);
    auto maxes = maximal_ideals(alg);
    ojson list = ojson::array();
    for (const auto& i : all) list.push_back(i.describe());
    ojson mlist = ojson::array();
    for (const auto& m : maxes) mlist.push_back(m.describe());
    r.result["ideals"] = list;
    r.result["maximal"] = mlist;
    r.metrics["ideals"] = all.size();
    r.metrics["maximal"] = maxes.size();
  } else if (sub == "radical") {
    Ideal rad = radical(alg);
    r.result["radical"] = rad.describe();
    r.result["quotient"] = quotient(alg, rad).target.describe();
  } else if (sub == "semisimple") {
    Ideal rad = radical(alg);
    bool ss = rad.is_zero();
    r.result["semisimple"] = ss;
    r.result["radical"] = rad.describe();
    if (!ss) {
      Element w = alg.is_chang() ? alg.lower(1) : [&] {
        for (const auto& m : rad.members())
          if (!(m == alg.zero())) return m;
        return alg.zero();
      }();
      r.fail("fail", ojson::array({"a=" + w.str(), "a in Rad"}));
    }
  } else {
    throw input_error("unknown spectra subcommand '" + sub + "'");
  }
  return r;
}

inline Report cmd_embed(const Document& doc, const Options& o) {
  using namespace detail;
  Report r;
  r.command = "embed";
  std::string sname = need(o.state, "state");
  const State& s = doc.state(sname);
  r.args["state"] = sname;
  const Algebra& alg = s.algebra();
  bool sampled = !alg.is_finite() && !alg.is_chang();
  std::uint64_t seed = 0;
  std::size_t samples = static_cast<std::size_t>(o.samples.value_or(200));
  if (sampled) {
    seed = need_seed(o);
    r.seed = seed;
    r.args["samples"] = samples;
  }
  MeasureRepresentation rep = embed_L1(s);
  IdentityReport id = rep.verify_integral_identity(samples, seed);
  InjectivityReport inj = rep.injectivity();
  auto faithful = is_faithful(s);
  r.result["carrier"] = alg.describe();
  r.result["radical"] = rep.radical;
  r.result["semisimple_quotient"] = rep.semisimple_quotient.describe();
  r.result["measure"] = measure_json(rep.mu);
  r.result["dropped_atoms"] = rep.dropped_atoms;
  r.result["injective"] = inj.injective;
  r.result["faithful"] = faithful.faithful;
  if (!inj.injective) {
    r.result["note"] = faithful.faithful ? "not injective" : "not injective: state not faithful";
    r.result["collision"] = ojson::array({inj.witness->first.str(), inj.witness->second.str()});
  }
  r.metrics["checks"] = id.checks;
  if (!id.pass) r.fail("fail", witness_of(id.witness));
  if (inj.injective != faithful.faithful)
    r.fail("fail", ojson::array({"injectivity does not match faithfulness"}));
  return r;
}

inline Report cmd_moments(const Document& doc, const std::string& sub, const Options& o) {
  using namespace detail;
  Report r;
  r.command = "moments " + sub;
  if (sub == "check") {
    std::string name = need(o.moments, "moments");
    r.args["moments"] = name;
    const MomentSequence& m = doc.moments(name);
    HausdorffReport h = check_hausdorff(m);
    DeltaTable t(m);
    ojson rows = ojson::array();
    for (const auto& row : t.rows()) rows.push_back(rational_array(row));
    r.result["delta"] = rows;
    r.metrics["checks"] = (m.order() + 1) * (m.order() + 2) / 2;
    if (!h.pass)
      r.fail("fail", ojson::array({"r=" + std::to_string(h.violation->first), "k=" + std::to_string(h.violation->second),
                                   "value=" + h.value.get_str()}));
  } else if (sub == "of-measure") {
    std::string name = need(o.measure, "measure");
    long K = need(o.order, "order");
    if (K < 0) throw input_error("--order must be >= 0");
    r.args["measure"] = name;
    r.args["order"] = K;
    MomentSequence m = moments_of_measure(doc.measure(name), static_cast<std::size_t>(K));
    r.result["moments"] = rational_array(m.values());
    HausdorffReport h = check_hausdorff(m);
    r.metrics["checks"] = (m.order() + 1) * (m.order() + 2) / 2;
    if (!h.pass)
      r.fail("fail", ojson::array({"r=" + std::to_string(h.violation->first), "k=" + std::to_string(h.violation->second),
                                   "value=" + h.value.get_str()}));
  } else if (sub == "reconstruct") {
    std::string name = need(o.moments, "moments");
    long N = need(o.grid, "grid");
    if (N < 1) throw input_error("--grid must be >= 1");
    r.args["moments"] = name;
    r.args["grid"] = N;
    const MomentSequence& m = doc.moments(name);
    HausdorffReport h = check_hausdorff(m);
    if (!h.pass) {
      r.fail("fail", ojson::array({"r=" + std::to_string(h.violation->first),
                                   "k=" + std::to_string(h.violation->second), "value=" + h.value.get_str()}));
      return r;
    }
    DiscreteMeasure mu = hausdorff_reconstruct(m, static_cast<std::size_t>(N));
    r.result["measure"] = measure_json(mu);
    MomentSequence back = moments_of_measure(mu, 1);
    r.result["preserved"] = rational_array(back.values());
    r.metrics["checks"] = 2;
    if (back[0] != m[0] || back[1] != m[1])
      r.fail("fail", ojson::array({"m1=" + m[1].get_str(), "reconstructed m1=" + back[1].get_str()}));
  } else if (sub == "fit") {
    std::string name = need(o.moments, "moments");
    long N = need(o.grid, "grid");
    if (N < 1) throw input_error("--grid must be >= 1");
    r.args["moments"] = name;
    r.args["grid"] = N;
    MomentFit fit = moment_fit_lp(doc.moments(name), static_cast<std::size_t>(N));
    r.result["feasible"] = fit.feasible;
    if (fit.feasible) {
      r.result["measure"] = measure_json(*fit.measure);
    } else {
      r.result["certificate"] = rational_array(fit.certificate);
      r.fail("infeasible", rational_array(fit.certificate));
    }
  } else {
    throw input_error("unknown moments subcommand '" + sub + "'");
  }
  return r;
}

inline Report cmd_holder(const Document& doc, const Options& o) {
  using namespace detail;
  Report r;
  r.command = "holder";
  std::string sname = need(o.state, "state");
  std::string an = need(o.a, "a");
  std::string bn = need(o.b, "b");
  Rational p = parse_rational(o.p.value_or("2"));
  Rational q = parse_rational(o.q.value_or("2"));
  if (o.precision < 16 || o.precision > 65536) throw input_error("--precision must be in [16, 65536]");
  r.args["state"] = sname;
  r.args["a"] = an;
  r.args["b"] = bn;
  r.args["p"] = p.get_str();
  r.args["q"] = q.get_str();
  HolderReport h = holder_check(doc.state(sname), doc.element(an), doc.element(bn), p, q, o.precision);
  r.result["lhs"] = h.lhs.get_str();
  r.result["exact"] = h.exact;
  if (h.exact) {
    r.result["lhs_squared"] = h.lhs_squared.get_str();
    r.result["rhs_squared"] = h.rhs_squared.get_str();
    r.result["equality"] = h.equality;
  } else {
    r.args["precision"] = o.precision;
    r.result["rhs_lower"] = h.rhs_lower.get_str();
    r.result["rhs_upper"] = h.rhs_upper.get_str();
  }
  r.metrics["checks"] = 1;
  if (h.verdict == Verdict::Fail) {
    r.fail("fail", ojson::array({"a=" + doc.element(an).str(), "b=" + doc.element(bn).str(), "lhs=" + h.lhs.get_str()}));
  } else if (h.verdict == Verdict::Inconclusive) {
    r.fail("inconclusive", ojson::array({"lhs=" + h.lhs.get_str(), "rhs_lower=" + h.rhs_lower.get_str(),
                                         "rhs_upper=" + h.rhs_upper.get_str()}));
  }
  return r;
}

inline Report cmd_product(const Document& doc, const std::string& sub, const Options& o) {
  using namespace detail;
  Report r;
  r.command = "product " + sub;
  if (sub == "build" || sub == "verify-independence") {
    std::string ln = need(o.left, "left");
    std::string rn = need(o.right, "right");
    r.args["left"] = ln;
    r.args["right"] = rn;
    const State& sa = doc.state(ln);
    const State& sb = doc.state(rn);
    IndependenceSetup setup(sa, sb);
    const ProductSpace& P = setup.space();
    if (sub == "build") {
      r.result["lambda"] = measure_json(P.lambda());
      bool marg = P.left_marginal() == P.left() && P.right_marginal() == P.right();
      r.result["marginals_match"] = marg;
      r.metrics["checks"] = 2;
      if (!marg) r.fail("fail", ojson::array({"marginal mismatch"}));
      return r;
    }
    if (!sa.algebra().is_finite() || !sb.algebra().is_finite())
      throw input_error("verify-independence enumerates finite algebras");
    State sT = P.s_T();
    std::size_t checks = 0;
    for (const auto& a : sa.algebra().elements())
      for (const auto& b : sb.algebra().elements()) {
        ++checks;
        Rational lhs = sT(setup.beta(a, b));
        Rational rhs = sa(a) * sb(b);
        if (lhs != rhs) {
          r.fail("fail", ojson::array({"a=" + a.str(), "b=" + b.str(), "s_T=" + lhs.get_str(),
                                       "product=" + rhs.get_str()}));
          r.metrics["checks"] = checks;
          return r;
        }
      }
    r.metrics["checks"] = checks;
    r.result["lambda"] = measure_json(P.lambda());
    return r;
  }
  if (sub == "factorize") {
    std::string gn = need(o.bilinear, "bilinear");
    r.args["bilinear"] = gn;
    BilinearMap g = doc.bilinear(gn);
    BilinearReport br = check_bilinear(g);
    if (!br.pass || !g.bound) {
      r.result["bounded_bilinear"] = false;
      r.fail("fail", br.pass ? ojson::array({"no bound K declared"}) : witness_of(br.witness));
      r.metrics["checks"] = br.checks;
      return r;
    }
    IndependenceSetup setup(g.left_state, g.right_state);
    Factorization f = factorize(g, setup);
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    if (o.samples) {
      seed = need_seed(o);
      r.seed = seed;
      samples = static_cast<std::size_t>(*o.samples);
      r.args["samples"] = samples;
    }
    auto fact = f.verify_factorization();
    auto bounded = f.verify_bounded(samples, seed);
    auto uniq = f.uniqueness();
    ojson cols = ojson::array();
    for (const auto& c : f.columns()) cols.push_back(rational_array(c.values()));
    r.result["bound"] = *g.bound;
    r.result["codomain_measure"] = measure_json(f.codomain_representation().mu);
    r.result["omega_columns"] = cols;
    r.result["rank"] = uniq.rank;
    r.result["dimension"] = uniq.dimension;
    r.result["unique"] = uniq.pass;
    r.metrics["bilinear_checks"] = br.checks;
    r.metrics["factorization_checks"] = fact.checks;
    r.metrics["bound_checks"] = bounded.checks;
    if (!fact.pass) r.fail("fail", witness_of(fact.witness));
    if (!bounded.pass) r.fail("fail", witness_of(bounded.witness));
    if (!uniq.pass)
      r.fail("fail", ojson::array({"rank=" + std::to_string(uniq.rank), "dimension=" + std::to_string(uniq.dimension)}));
    return r;
  }
  throw input_error("unknown product subcommand '" + sub + "'");
}

/// Dispatches `command [sub]` on a loaded document.
inline Report run_command(const std::string& command, const std::string& sub, const Options& o) {
  Document doc = Document::load(o.doc);
  if (command == "check-axioms") return cmd_check_axioms(doc, o);
  if (command == "state") return cmd_state(doc, sub, o);
  if (command == "spectra") return cmd_spectra(doc, sub, o);
  if (command == "embed") return cmd_embed(doc, o);
  if (command == "moments") return cmd_moments(doc, sub, o);
  if (command == "holder") return cmd_holder(doc, o);
  if (command == "product") return cmd_product(doc, sub, o);
  throw input_error("unknown command '" + command + "'");
}

}  // namespace mvp::cli
