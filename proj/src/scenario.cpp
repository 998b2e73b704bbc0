#include "fhardy/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "fhardy/error.hpp"

namespace fhardy {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string to_string(Theorem t) {
  switch (t) {
    case Theorem::integral_hardy: return "integral_hardy";
    case Theorem::radial_hardy: return "radial_hardy";
    case Theorem::frac_hardy: return "frac_hardy";
    case Theorem::uncertainty: return "uncertainty";
    case Theorem::hardy_sobolev: return "hardy_sobolev";
    case Theorem::log_holder: return "log_holder";
    case Theorem::log_hs: return "log_hs";
    case Theorem::nash: return "nash";
  }
  return "?";
}

Theorem parse_theorem(const std::string& name) {
  for (Theorem t : {Theorem::integral_hardy, Theorem::radial_hardy, Theorem::frac_hardy, Theorem::uncertainty,
                    Theorem::hardy_sobolev, Theorem::log_holder, Theorem::log_hs, Theorem::nash})
    if (to_string(t) == name) return t;
  throw ConfigError("unknown theorem '" + name + "'");
}

PowerExpr WeightSpec::g_expr() const {
  if (g) return *g;
  if (beta) return PowerExpr::power_of_x(*beta);
  throw ConfigError("integral Hardy needs weights.g or weights.beta");
}

PowerExpr WeightSpec::h_expr() const {
  if (h) return *h;
  if (alpha) return PowerExpr::power_of_x(*alpha);
  throw ConfigError("integral Hardy needs weights.h or weights.alpha");
}

namespace {

// Typed access with the JSON path in every message.
class Obj {
 public:
  Obj(const json& j, std::string path, std::set<std::string> allowed) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw InputError(path_ + ": expected an object");
    for (const auto& [k, v] : j_.items())
      if (!allowed.count(k)) throw InputError(path_ + ": unknown key '" + k + "'");
  }

  bool has(const std::string& k) const { return j_.contains(k); }
  const json& raw(const std::string& k) const { return j_.at(k); }
  std::string where(const std::string& k) const { return path_.empty() ? k : path_ + "." + k; }

  double num(const std::string& k, double def) const { return has(k) ? number(j_.at(k), where(k)) : def; }
  double num(const std::string& k) const {
    need(k);
    return number(j_.at(k), where(k));
  }
  int integer(const std::string& k, int def) const {
    if (!has(k)) return def;
    const double v = number(j_.at(k), where(k));
    if (v != std::floor(v) || std::abs(v) > 2e9) throw InputError(where(k) + ": expected an integer");
    return static_cast<int>(v);
  }
  std::string str(const std::string& k, const std::string& def) const { return has(k) ? text(j_.at(k), where(k)) : def; }
  std::string str(const std::string& k) const {
    need(k);
    return text(j_.at(k), where(k));
  }
  void need(const std::string& k) const {
    if (!has(k)) throw InputError(where(k) + ": required key missing");
  }

  static double number(const json& v, const std::string& at) {
    if (!v.is_number()) throw InputError(at + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw InputError(at + ": must be finite");
    return d;
  }
  static std::string text(const json& v, const std::string& at) {
    if (!v.is_string()) throw InputError(at + ": expected a string");
    return v.get<std::string>();
  }

 private:
  const json& j_;
  std::string path_;
};

PowerExpr expr(const Obj& o, const std::string& k, const PowerExpr& def) {
  if (!o.has(k)) return def;
  const json& v = o.raw(k);
  try {
    if (v.is_number()) return PowerExpr::constant(Obj::number(v, o.where(k)));
    return PowerExpr::parse(Obj::text(v, o.where(k)));
  } catch (const InputError& e) {
    throw InputError(o.where(k) + ": " + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(o.where(k) + ": " + e.what());
  }
}

std::vector<double> numbers(const json& v, const std::string& at) {
  if (!v.is_array()) throw InputError(at + ": expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(Obj::number(v[i], at + "[" + std::to_string(i) + "]"));
  return out;
}

void parse_group(const Obj& top, Scenario& sc) {
  top.need("group");
  const Obj g(top.raw("group"), "group", {"name", "dim", "nu"});
  sc.group_name = g.str("name");
  if (sc.group_name == "euclidean") {
    if (g.has("nu")) throw InputError("group.nu: not used by the euclidean group");
    sc.group = GroupSpec::euclidean(g.integer("dim", 1));
  } else if (sc.group_name == "abelian") {
    if (g.has("dim")) throw InputError("group.dim: the abelian group takes its dimension from nu");
    g.need("nu");
    const auto nu = numbers(g.raw("nu"), "group.nu");
    sc.group = GroupSpec::abelian(nu);
  } else if (sc.group_name == "heisenberg") {
    if (g.has("nu") || g.has("dim")) throw InputError("group: the heisenberg group takes no dim or nu");
    sc.group = GroupSpec::heisenberg();
  } else {
    throw ConfigError("group.name: unknown group '" + sc.group_name + "'");
  }
  NormKind def = NormKind::euclidean;
  if (sc.group.law == GroupLaw::heisenberg)
    def = NormKind::koranyi;
  else if (!sc.group.isotropic())
    def = NormKind::aniso_max;
  sc.norm = def;
  if (top.has("qnorm")) {
    const Obj q(top.raw("qnorm"), "qnorm", {"kind"});
    sc.norm = parse_norm_kind(q.str("kind"));
  }
  QuasiNormSpec::make(sc.norm, sc.group);  // kind/law compatibility
}

TestFunction parse_function(const json& j, const std::string& at) {
  const Obj o(j, at, {"id", "profile", "r0", "R", "height", "height2", "peak", "kappa", "ramp", "sigma", "angular_eps"});
  TestFunction t;
  t.id = o.str("id");
  t.profile = parse_profile(o.str("profile"));
  t.r0 = o.num("r0", t.r0);
  t.R = o.num("R", t.R);
  t.height = o.num("height", t.height);
  t.height2 = o.num("height2", t.height2);
  t.peak = o.num("peak", t.peak);
  t.kappa = o.num("kappa", t.kappa);
  t.ramp = o.num("ramp", t.ramp);
  t.sigma = o.num("sigma", t.sigma);
  t.angular_eps = o.num("angular_eps", t.angular_eps);
  t.validate();
  return t;
}

void parse_quadrature(const Obj& top, QuadratureScheme& q) {
  if (!top.has("quadrature")) return;
  const Obj o(top.raw("quadrature"), "quadrature",
              {"order", "radial_panels", "per_decade", "angular", "cartesian_panels", "r_min_factor",
               "r_max_factor", "rel_tol", "max_level", "budget", "exec"});
  q.order = o.integer("order", q.order);
  q.radial_panels = o.integer("radial_panels", q.radial_panels);
  q.per_decade = o.num("per_decade", q.per_decade);
  q.angular = o.integer("angular", q.angular);
  q.cartesian_panels = o.integer("cartesian_panels", q.cartesian_panels);
  q.r_min_factor = o.num("r_min_factor", q.r_min_factor);
  q.r_max_factor = o.num("r_max_factor", q.r_max_factor);
  q.rel_tol = o.num("rel_tol", q.rel_tol);
  q.max_level = o.integer("max_level", q.max_level);
  const double b = o.num("budget", static_cast<double>(q.budget));
  if (!(b >= 1.0 && b < 9e18)) throw InputError("quadrature.budget: out of range");
  q.budget = static_cast<std::int64_t>(b);
  const std::string ex = o.str("exec", "parallel");
  if (ex == "parallel")
    q.exec = Exec::parallel;
  else if (ex == "serial")
    q.exec = Exec::serial;
  else
    throw InputError("quadrature.exec: expected 'parallel' or 'serial'");
  q.validate();
}

Scenario from_json(const json& j) {
  const Obj top(j, "", {"theorem", "seed", "group", "qnorm", "exponents", "weights", "corpus", "quadrature",
                        "extremal", "search", "override", "output"});
  Scenario sc;
  sc.theorem = parse_theorem(top.str("theorem"));
  top.need("seed");
  {
    const json& s = top.raw("seed");
    if (!s.is_number_integer() || s.get<long long>() < 0) throw InputError("seed: expected a nonnegative integer");
    sc.seed = s.get<std::uint64_t>();
  }
  sc.scheme.seed = sc.seed;
  parse_group(top, sc);

  top.need("exponents");
  const Obj ex(top.raw("exponents"), "exponents", {"p", "q", "s"});
  sc.p = ex.num("p");
  sc.q = ex.num("q", sc.p);
  sc.s = ex.num("s", 0.0);
  if (!(sc.p > 1.0)) throw ConfigError("p>1 required: the inequalities are stated for 1 < p < infinity");
  if (!(sc.q > 1.0)) throw ConfigError("q>1 required");

  if (top.has("weights")) {
    const Obj w(top.raw("weights"), "weights", {"a", "v", "z", "g", "h", "alpha", "beta"});
    sc.weights.a = expr(w, "a", sc.weights.a);
    sc.weights.v = expr(w, "v", sc.weights.v);
    sc.weights.z = expr(w, "z", sc.weights.z);
    if (w.has("g")) sc.weights.g = expr(w, "g", {});
    if (w.has("h")) sc.weights.h = expr(w, "h", {});
    if (w.has("alpha")) sc.weights.alpha = w.num("alpha");
    if (w.has("beta")) sc.weights.beta = w.num("beta");
  }

  if (top.has("corpus")) {
    const json& c = top.raw("corpus");
    if (!c.is_array()) throw InputError("corpus: expected an array");
    std::set<std::string> ids;
    for (std::size_t i = 0; i < c.size(); ++i) {
      sc.corpus.push_back(parse_function(c[i], "corpus[" + std::to_string(i) + "]"));
      if (!ids.insert(sc.corpus.back().id).second)
        throw InputError("corpus[" + std::to_string(i) + "].id: duplicate id '" + sc.corpus.back().id + "'");
    }
  }

  parse_quadrature(top, sc.scheme);

  if (top.has("extremal")) {
    const Obj o(top.raw("extremal"), "extremal", {"epsilons", "ratio_R_r0"});
    if (o.has("epsilons")) sc.extremal.epsilons = numbers(o.raw("epsilons"), "extremal.epsilons");
    sc.extremal.ratio_R_r0 = o.num("ratio_R_r0", sc.extremal.ratio_R_r0);
    if (!(sc.extremal.ratio_R_r0 > 1.0)) throw ConfigError("extremal.ratio_R_r0 must exceed 1");
  }
  if (top.has("search")) {
    const Obj o(top.raw("search"), "search", {"family", "iterations", "restarts", "bounds"});
    sc.search.family = o.str("family", sc.search.family);
    sc.search.iterations = o.integer("iterations", sc.search.iterations);
    sc.search.restarts = o.integer("restarts", sc.search.restarts);
    if (o.has("bounds")) {
      const json& b = o.raw("bounds");
      if (!b.is_array()) throw InputError("search.bounds: expected an array of [lo, hi] pairs");
      for (std::size_t i = 0; i < b.size(); ++i) {
        const auto pr = numbers(b[i], "search.bounds[" + std::to_string(i) + "]");
        if (pr.size() != 2 || !(pr[0] <= pr[1]))
          throw InputError("search.bounds[" + std::to_string(i) + "]: expected [lo, hi] with lo <= hi");
        sc.search.bounds.emplace_back(pr[0], pr[1]);
      }
    }
    if (sc.search.iterations < 1 || sc.search.restarts < 1) throw ConfigError("search iterations and restarts must be positive");
  }
  if (top.has("override")) {
    const Obj o(top.raw("override"), "override", {"front_constant"});
    if (o.has("front_constant")) sc.front_override = o.num("front_constant");
  }
  if (top.has("output")) {
    const Obj o(top.raw("output"), "output", {"path", "formats"});
    sc.output.path = o.str("path", "");
    if (o.has("formats")) {
      const json& f = o.raw("formats");
      if (!f.is_array()) throw InputError("output.formats: expected an array");
      sc.output.formats.clear();
      for (std::size_t i = 0; i < f.size(); ++i) {
        const std::string fm = Obj::text(f[i], "output.formats[" + std::to_string(i) + "]");
        if (fm != "json" && fm != "csv") throw InputError("output.formats: unknown format '" + fm + "'");
        sc.output.formats.push_back(fm);
      }
    }
  }
  return sc;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // the parser reports "... at line L, column C: ..."
    throw InputError(std::string("scenario parse error: ") + e.what());
  } catch (const json::out_of_range& e) {
    // numbers beyond double range, e.g. 1e400
    throw InputError(std::string("scenario parse error: non-finite number: ") + e.what());
  }
  return from_json(j);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read scenario file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

ojson to_json(const Scenario& sc) {
  ojson j;
  j["theorem"] = to_string(sc.theorem);
  j["seed"] = sc.seed;
  ojson g;
  g["name"] = sc.group_name;
  if (sc.group_name == "euclidean") g["dim"] = sc.group.dim;
  if (sc.group_name == "abelian") g["nu"] = std::vector<double>(sc.group.weights().begin(), sc.group.weights().end());
  j["group"] = g;
  j["qnorm"] = {{"kind", to_string(sc.norm)}};
  j["exponents"] = {{"p", sc.p}, {"q", sc.q}, {"s", sc.s}};
  ojson w;
  w["a"] = sc.weights.a.to_string();
  w["v"] = sc.weights.v.to_string();
  w["z"] = sc.weights.z.to_string();
  if (sc.weights.g) w["g"] = sc.weights.g->to_string();
  if (sc.weights.h) w["h"] = sc.weights.h->to_string();
  if (sc.weights.alpha) w["alpha"] = *sc.weights.alpha;
  if (sc.weights.beta) w["beta"] = *sc.weights.beta;
  j["weights"] = w;
  ojson corpus = ojson::array();
  for (const auto& t : sc.corpus) {
    corpus.push_back({{"id", t.id}, {"profile", to_string(t.profile)}, {"r0", t.r0}, {"R", t.R},
                      {"height", t.height}, {"height2", t.height2}, {"peak", t.peak}, {"kappa", t.kappa},
                      {"ramp", t.ramp}, {"sigma", t.sigma}, {"angular_eps", t.angular_eps}});
  }
  j["corpus"] = corpus;
  const auto& q = sc.scheme;
  j["quadrature"] = {{"order", q.order}, {"radial_panels", q.radial_panels}, {"per_decade", q.per_decade},
                     {"angular", q.angular}, {"cartesian_panels", q.cartesian_panels},
                     {"r_min_factor", q.r_min_factor}, {"r_max_factor", q.r_max_factor},
                     {"rel_tol", q.rel_tol}, {"max_level", q.max_level},
                     {"budget", static_cast<double>(q.budget)},
                     {"exec", q.exec == Exec::serial ? "serial" : "parallel"}};
  j["extremal"] = {{"epsilons", sc.extremal.epsilons}, {"ratio_R_r0", sc.extremal.ratio_R_r0}};
  ojson bounds = ojson::array();
  for (const auto& [lo, hi] : sc.search.bounds) bounds.push_back({lo, hi});
  j["search"] = {{"family", sc.search.family}, {"iterations", sc.search.iterations},
                 {"restarts", sc.search.restarts}, {"bounds", bounds}};
  if (sc.front_override) j["override"] = {{"front_constant", *sc.front_override}};
  j["output"] = {{"path", sc.output.path}, {"formats", sc.output.formats}};
  return j;
}

}  // namespace fhardy
