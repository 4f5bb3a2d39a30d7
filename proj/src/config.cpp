#include "bzt/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "bzt/equilibria.hpp"
#include "bzt/error.hpp"

namespace bzt {

namespace {

using nlohmann::json;

// Line of the first occurrence of "key" in the text, 0 if absent.
int line_of_key(const std::string& text, const std::string& key) {
  const std::string needle = "\"" + key + "\"";
  const auto pos = text.find(needle);
  if (pos == std::string::npos) return 0;
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
}

class Reader {
public:
  Reader(const std::string& text, std::string origin) : text_(text), origin_(std::move(origin)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
    const auto slash = path.find_last_of('/');
    const std::string key = slash == std::string::npos ? path : path.substr(slash + 1);
    const int line = key.empty() ? 0 : line_of_key(text_, key);
    std::string where = origin_;
    if (line > 0) where += ":" + std::to_string(line);
    throw Error(ErrorCode::ConfigError, "cli", where + ": field '" + path + "': " + msg);
  }

  void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) const {
    if (!obj.is_object()) fail(path, "expected an object");
    std::set<std::string> ok(keys.begin(), keys.end());
    for (auto it = obj.begin(); it != obj.end(); ++it)
      if (!ok.count(it.key())) fail(path + "/" + it.key(), "unknown key");
  }

  double number(const json& obj, const std::string& path, const char* key) const {
    const json& v = obj.at(key);
    if (!v.is_number()) fail(path + "/" + key, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(path + "/" + key, "must be finite");
    return d;
  }

  void opt(const json& obj, const std::string& path, const char* key, double& out) const {
    if (obj.contains(key)) out = number(obj, path, key);
  }

  void opt_int(const json& obj, const std::string& path, const char* key, int& out) const {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail(path + "/" + key, "expected an integer");
    out = v.get<int>();
  }

  std::string str(const json& obj, const std::string& path, const char* key) const {
    const json& v = obj.at(key);
    if (!v.is_string()) fail(path + "/" + key, "expected a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const json& obj, const std::string& path, const char* key) const {
    const json& v = obj.at(key);
    if (!v.is_array()) fail(path + "/" + key, "expected an array of numbers");
    std::vector<double> r;
    for (const auto& e : v) {
      if (!e.is_number()) fail(path + "/" + key, "expected an array of numbers");
      r.push_back(e.get<double>());
    }
    return r;
  }

  std::vector<int> ints(const json& obj, const std::string& path, const char* key) const {
    const json& v = obj.at(key);
    if (!v.is_array()) fail(path + "/" + key, "expected an array of integers");
    std::vector<int> r;
    for (const auto& e : v) {
      if (!e.is_number_integer()) fail(path + "/" + key, "expected an array of integers");
      r.push_back(e.get<int>());
    }
    return r;
  }

  const std::string& text() const { return text_; }

private:
  const std::string& text_;
  std::string origin_;
};

ChemKinetics read_kinetics(const Reader& r, const json& j) {
  const std::string path = "/kinetics";
  r.only_keys(j, path, {"k1", "k2", "k3", "k4", "k5", "a", "b", "gamma", "sigma1", "sigma2", "sigma3", "length"});
  ChemKinetics k;
  for (const char* key : {"k1", "k2", "k3", "k4", "k5", "a", "b", "gamma"})
    if (!j.contains(key)) r.fail(path + "/" + key, "required");
  k.k1 = r.number(j, path, "k1");
  k.k2 = r.number(j, path, "k2");
  k.k3 = r.number(j, path, "k3");
  k.k4 = r.number(j, path, "k4");
  k.k5 = r.number(j, path, "k5");
  k.a = r.number(j, path, "a");
  k.b = r.number(j, path, "b");
  k.gamma = r.number(j, path, "gamma");
  // Diffusivities and length only matter for spatial runs; 1 keeps validation simple.
  k.sigma1 = k.sigma2 = k.sigma3 = 1;
  k.length = 1;
  r.opt(j, path, "sigma1", k.sigma1);
  r.opt(j, path, "sigma2", k.sigma2);
  r.opt(j, path, "sigma3", k.sigma3);
  r.opt(j, path, "length", k.length);
  return k;
}

NondimParams read_nondim(const Reader& r, const json& j) {
  const std::string path = "/nondim";
  r.only_keys(j, path, {"mu1", "mu2", "mu3", "alpha", "beta", "gamma", "delta"});
  for (const char* key : {"alpha", "beta", "gamma"})
    if (!j.contains(key)) r.fail(path + "/" + key, "required");
  NondimParams p;
  p.alpha = r.number(j, path, "alpha");
  p.beta = r.number(j, path, "beta");
  p.gamma = r.number(j, path, "gamma");
  p.mu1 = p.mu2 = p.mu3 = 1;
  p.delta = 1;
  r.opt(j, path, "mu1", p.mu1);
  r.opt(j, path, "mu2", p.mu2);
  r.opt(j, path, "mu3", p.mu3);
  r.opt(j, path, "delta", p.delta);
  return p;
}

Domain read_domain(const Reader& r, const json& j) {
  const std::string path = "/domain";
  r.only_keys(j, path, {"kind", "lengths", "mode_cap"});
  if (!j.contains("kind")) r.fail(path + "/kind", "required");
  if (!j.contains("lengths")) r.fail(path + "/lengths", "required");
  Domain d;
  const std::string kind = r.str(j, path, "kind");
  if (kind == "interval") d.kind = DomainKind::Interval;
  else if (kind == "rectangle") d.kind = DomainKind::Rectangle;
  else if (kind == "box") d.kind = DomainKind::Box;
  else r.fail(path + "/kind", "expected interval, rectangle or box");
  d.lengths = r.numbers(j, path, "lengths");
  r.opt_int(j, path, "mode_cap", d.mode_cap);
  return d;
}

InitialCondition read_ic(const Reader& r, const json& j) {
  const std::string path = "/sim/ic";
  r.only_keys(j, path, {"kind", "amplitude", "direction", "mode", "values", "seed", "margin"});
  InitialCondition ic;
  if (j.contains("kind")) {
    const std::string k = r.str(j, path, "kind");
    if (k == "near_U1") ic.kind = IcKind::NearU1;
    else if (k == "explicit") ic.kind = IcKind::Explicit;
    else if (k == "random_in_D") ic.kind = IcKind::RandomInD;
    else r.fail(path + "/kind", "expected near_U1, explicit or random_in_D");
  }
  r.opt(j, path, "amplitude", ic.amplitude);
  if (j.contains("direction")) {
    const auto v = r.numbers(j, path, "direction");
    if (v.size() != 3) r.fail(path + "/direction", "expected 3 numbers");
    ic.direction = Vec3(v[0], v[1], v[2]);
  }
  if (j.contains("mode")) ic.mode = r.ints(j, path, "mode");
  if (j.contains("values")) ic.values = r.numbers(j, path, "values");
  if (j.contains("seed")) {
    const json& s = j.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
      r.fail(path + "/seed", "expected a non-negative integer");
    ic.seed = s.get<std::uint64_t>();
  }
  r.opt(j, path, "margin", ic.margin);
  if (ic.kind == IcKind::Explicit && ic.values.empty()) r.fail(path + "/values", "required for explicit");
  return ic;
}

SimSpec read_sim(const Reader& r, const json& j) {
  const std::string path = "/sim";
  r.only_keys(j, path,
              {"model", "grid", "t_end", "dt_init", "abs_tol", "rel_tol", "output_interval", "ic",
               "scheme", "blowup", "stability_factor", "monitor_region", "resolve_mode",
               "transient_fraction", "delta", "delta_factor", "trajectory"});
  SimSpec s;
  SimConfig& c = s.config;
  if (j.contains("model")) {
    s.model_given = true;
    const std::string m = r.str(j, path, "model");
    if (m == "stirred_ode") c.model = ModelKind::StirredOde;
    else if (m == "pde_interval") c.model = ModelKind::PdeInterval;
    else if (m == "pde_rectangle") c.model = ModelKind::PdeRectangle;
    else r.fail(path + "/model", "expected stirred_ode, pde_interval or pde_rectangle");
  }
  r.opt_int(j, path, "grid", c.grid);
  r.opt(j, path, "t_end", c.t_end);
  r.opt(j, path, "dt_init", c.dt_init);
  r.opt(j, path, "abs_tol", c.abs_tol);
  r.opt(j, path, "rel_tol", c.rel_tol);
  r.opt(j, path, "output_interval", c.output_interval);
  if (j.contains("ic")) c.ic = read_ic(r, j.at("ic"));
  if (j.contains("scheme")) {
    const std::string sc = r.str(j, path, "scheme");
    if (sc == "imex") c.scheme = PdeScheme::Imex;
    else if (sc == "explicit") c.scheme = PdeScheme::Explicit;
    else r.fail(path + "/scheme", "expected imex or explicit");
  }
  r.opt(j, path, "blowup", c.blowup);
  r.opt(j, path, "stability_factor", c.stability_factor);
  if (j.contains("monitor_region")) {
    if (!j.at("monitor_region").is_boolean()) r.fail(path + "/monitor_region", "expected a boolean");
    s.monitor_region = j.at("monitor_region").get<bool>();
  }
  if (j.contains("resolve_mode")) c.resolve_mode = r.ints(j, path, "resolve_mode");
  r.opt(j, path, "transient_fraction", s.transient_fraction);
  if (j.contains("delta")) s.delta = r.number(j, path, "delta");
  if (j.contains("delta_factor")) s.delta_factor = r.number(j, path, "delta_factor");
  if (s.delta && s.delta_factor) r.fail(path + "/delta_factor", "give either delta or delta_factor");
  if (j.contains("trajectory")) s.trajectory_path = r.str(j, path, "trajectory");
  if (!(s.transient_fraction >= 0 && s.transient_fraction < 1))
    r.fail(path + "/transient_fraction", "must lie in [0, 1)");
  return s;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n'));
    throw Error(ErrorCode::ConfigError, "cli",
                origin + ":" + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
  const Reader r(text, origin);
  r.only_keys(root, "", {"schema_version", "notes", "kinetics", "nondim", "nondim_options", "domain",
                         "sweep", "sim", "output", "overrides", "transition"});
  if (root.contains("schema_version")) {
    const std::string v = r.str(root, "", "schema_version");
    if (v != "1.0") r.fail("/schema_version", "unsupported version '" + v + "' (expected 1.0)");
  }
  RunConfig cfg;
  const bool has_k = root.contains("kinetics"), has_n = root.contains("nondim");
  if (has_k == has_n)
    r.fail(has_k ? "/nondim" : "/kinetics", "exactly one of 'kinetics' and 'nondim' must be present");
  if (has_k) cfg.kinetics = read_kinetics(r, root.at("kinetics"));
  if (has_n) cfg.nondim = read_nondim(r, root.at("nondim"));

  if (root.contains("nondim_options")) {
    const json& o = root.at("nondim_options");
    r.only_keys(o, "/nondim_options", {"mu_scale"});
    if (o.contains("mu_scale")) {
      const std::string s = r.str(o, "/nondim_options", "mu_scale");
      if (s == "k1k2") cfg.nondim_options.mu_scale = MuScale::K1K2;
      else if (s == "k1k3") cfg.nondim_options.mu_scale = MuScale::K1K3;
      else r.fail("/nondim_options/mu_scale", "expected k1k2 or k1k3");
    }
  }
  if (root.contains("domain")) cfg.domain = read_domain(r, root.at("domain"));
  if (root.contains("sweep")) {
    const json& s = root.at("sweep");
    r.only_keys(s, "/sweep", {"delta_min", "delta_max", "steps"});
    for (const char* key : {"delta_min", "delta_max", "steps"})
      if (!s.contains(key)) r.fail(std::string("/sweep/") + key, "required");
    SweepSpec sw;
    sw.delta_min = r.number(s, "/sweep", "delta_min");
    sw.delta_max = r.number(s, "/sweep", "delta_max");
    r.opt_int(s, "/sweep", "steps", sw.steps);
    if (!(sw.delta_min > 0)) r.fail("/sweep/delta_min", "must be > 0");
    if (!(sw.delta_min < sw.delta_max)) r.fail("/sweep/delta_max", "must exceed delta_min");
    if (sw.steps < 1) r.fail("/sweep/steps", "must be >= 1");
    cfg.sweep = sw;
  }
  if (root.contains("sim")) cfg.sim = read_sim(r, root.at("sim"));
  if (root.contains("output")) {
    const json& o = root.at("output");
    r.only_keys(o, "/output", {"path", "format"});
    if (o.contains("path")) cfg.output_path = r.str(o, "/output", "path");
    if (o.contains("format")) {
      cfg.format = r.str(o, "/output", "format");
      if (cfg.format != "json" && cfg.format != "csv") r.fail("/output/format", "expected json or csv");
    }
  }
  if (root.contains("overrides")) {
    const json& o = root.at("overrides");
    r.only_keys(o, "/overrides", {"sigma"});
    if (o.contains("sigma")) {
      cfg.sigma_override = r.number(o, "/overrides", "sigma");
      if (!(*cfg.sigma_override > 1)) r.fail("/overrides/sigma", "must be > 1");
    }
  }
  if (root.contains("transition")) {
    const json& o = root.at("transition");
    r.only_keys(o, "/transition", {"cube_condition"});
    if (o.contains("cube_condition")) {
      if (!o.at("cube_condition").is_boolean()) r.fail("/transition/cube_condition", "expected a boolean");
      cfg.cube_condition = o.at("cube_condition").get<bool>();
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::ConfigError, "cli", "cannot read config '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), path);
}

void resolve(RunConfig& cfg) {
  if (cfg.kinetics) {
    validate(*cfg.kinetics);
    cfg.params = nondimensionalize(*cfg.kinetics, cfg.nondim_options);
  } else if (cfg.nondim) {
    cfg.params = *cfg.nondim;
  } else {
    throw Error(ErrorCode::ConfigError, "cli", "field '/kinetics': exactly one of 'kinetics' and 'nondim' must be present");
  }
  validate(cfg.params);
  if (cfg.domain) validate(*cfg.domain);
  cfg.sigma = cfg.sigma_override ? *cfg.sigma_override : sigma_root(cfg.params);
  if (cfg.sim) {
    SimConfig& c = cfg.sim->config;
    if (!cfg.sim->model_given) {
      if (!cfg.domain) c.model = ModelKind::StirredOde;
      else if (cfg.domain->kind == DomainKind::Interval) c.model = ModelKind::PdeInterval;
      else c.model = ModelKind::PdeRectangle;
    }
    if (c.model != ModelKind::StirredOde && !cfg.domain)
      throw Error(ErrorCode::ConfigError, "cli", "field '/sim/model': spatial model needs a domain block");
    validate(c);
  }
}

}  // namespace bzt
