#include "rwave/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace rwave {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

struct RawVal {
  std::string text;
  int line = 0;
  mutable bool used = false;
};

struct RawScenario {
  std::string origin;
  // section name ("" = top level) -> key -> value
  std::map<std::string, std::map<std::string, RawVal>> sec;
  std::map<std::string, int> sec_line;

  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw ScenarioError(origin + ":" + std::to_string(line) + ": " + msg);
  }

  bool has(const std::string& s, const std::string& k) const {
    const auto it = sec.find(s);
    return it != sec.end() && it->second.count(k) > 0;
  }

  const RawVal* find(const std::string& s, const std::string& k) const {
    const auto it = sec.find(s);
    if (it == sec.end()) return nullptr;
    const auto jt = it->second.find(k);
    if (jt == it->second.end()) return nullptr;
    jt->second.used = true;
    return &jt->second;
  }

  double num(const std::string& s, const std::string& k, double dflt) const {
    const RawVal* v = find(s, k);
    if (!v) return dflt;
    const char* p = v->text.c_str();
    char* end = nullptr;
    const double x = std::strtod(p, &end);
    if (end == p || *end != '\0')
      fail(v->line, "key '" + k + "': cannot parse number from '" + v->text + "'");
    return x;
  }

  long long integer(const std::string& s, const std::string& k, long long dflt) const {
    const RawVal* v = find(s, k);
    if (!v) return dflt;
    long long x = 0;
    const auto [p, ec] = std::from_chars(v->text.data(), v->text.data() + v->text.size(), x);
    if (ec != std::errc() || p != v->text.data() + v->text.size())
      fail(v->line, "key '" + k + "': cannot parse integer from '" + v->text + "'");
    return x;
  }

  std::uint64_t u64(const std::string& s, const std::string& k, std::uint64_t dflt) const {
    const RawVal* v = find(s, k);
    if (!v) return dflt;
    std::uint64_t x = 0;
    const auto [p, ec] = std::from_chars(v->text.data(), v->text.data() + v->text.size(), x);
    if (ec != std::errc() || p != v->text.data() + v->text.size())
      fail(v->line, "key '" + k + "': cannot parse unsigned integer from '" + v->text + "'");
    return x;
  }

  bool boolean(const std::string& s, const std::string& k, bool dflt) const {
    const RawVal* v = find(s, k);
    if (!v) return dflt;
    if (v->text == "true" || v->text == "on" || v->text == "yes") return true;
    if (v->text == "false" || v->text == "off" || v->text == "no") return false;
    fail(v->line, "key '" + k + "': expected true/false, got '" + v->text + "'");
  }

  std::string str(const std::string& s, const std::string& k, const std::string& dflt) const {
    const RawVal* v = find(s, k);
    return v ? v->text : dflt;
  }

  std::vector<double> list(const std::string& s, const std::string& k,
                           std::vector<double> dflt) const {
    const RawVal* v = find(s, k);
    if (!v) return dflt;
    std::vector<double> out;
    std::stringstream ss(v->text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) fail(v->line, "key '" + k + "': empty list element");
      const char* p = item.c_str();
      char* end = nullptr;
      const double x = std::strtod(p, &end);
      if (end == p || *end != '\0')
        fail(v->line, "key '" + k + "': cannot parse list element '" + item + "'");
      out.push_back(x);
    }
    if (out.empty()) fail(v->line, "key '" + k + "': empty list");
    return out;
  }
};

RawScenario tokenize(const std::string& text, const std::string& origin) {
  RawScenario raw;
  raw.origin = origin;
  raw.sec[""];
  raw.sec_line[""] = 0;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') raw.fail(ln, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) raw.fail(ln, "empty section name");
      if (raw.sec.count(section)) raw.fail(ln, "duplicate section [" + section + "]");
      raw.sec[section];
      raw.sec_line[section] = ln;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) raw.fail(ln, "expected 'key = value' or '[section]'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) raw.fail(ln, "empty key");
    if (val.empty()) raw.fail(ln, "key '" + key + "': empty value");
    auto& dst = raw.sec[section];
    if (dst.count(key))
      raw.fail(ln, "duplicate key '" + key + "' in section [" + section + "]");
    dst[key] = RawVal{val, ln, false};
  }
  return raw;
}

const std::set<std::string> kExperiments = {
    "evolve",         "channel-test",     "steady-census", "bs-spectrum",
    "resolve",        "support-growth",   "scale-robustness", "dependence"};

bool uses_data(const std::string& exp) {
  return exp == "evolve" || exp == "resolve" || exp == "support-growth" ||
         exp == "dependence";
}

bool uses_solver(const std::string& exp) {
  // channel-test runs on the closed-form free engine and takes no solver.
  return exp != "steady-census" && exp != "bs-spectrum" && exp != "channel-test";
}

DataSpec read_data(const RawScenario& raw, const std::string& s) {
  DataSpec d;
  d.kind = raw.str(s, "kind", d.kind);
  const std::set<std::string> kinds = {"zero",  "random_bumps",     "gaussian",
                                       "bump",  "steady_plus_bump", "file"};
  if (!kinds.count(d.kind))
    raw.fail(raw.sec_line.at(s), "section [" + s + "]: unknown data kind '" + d.kind + "'");
  d.r_max = raw.num(s, "r_max", d.r_max);
  if (d.kind == "gaussian") {
    d.amplitude = raw.num(s, "amplitude", d.amplitude);
    d.width = raw.num(s, "width", d.width);
  } else if (d.kind == "bump") {
    d.r_lo = raw.num(s, "r_lo", d.r_lo);
    d.r_hi = raw.num(s, "r_hi", d.r_hi);
    d.norm = raw.num(s, "norm", d.norm);
  } else if (d.kind == "steady_plus_bump") {
    d.slope = raw.num(s, "slope", d.slope);
    d.r_lo = raw.num(s, "r_lo", d.r_lo);
    d.r_hi = raw.num(s, "r_hi", d.r_hi);
    d.norm = raw.num(s, "norm", d.norm);
  } else if (d.kind == "file") {
    d.file = raw.str(s, "file", "");
    if (d.file.empty()) raw.fail(raw.sec_line.at(s), "data kind 'file' needs key 'file'");
  }
  return d;
}

}  // namespace

Potential PotentialSpec::build() const {
  Potential base = Potential::zero();
  if (kind == "zero")
    base = Potential::zero();
  else if (kind == "manufactured_star")
    base = Potential::manufactured_star();
  else if (kind == "gaussian")
    base = Potential::gaussian(alpha, sigma);
  else if (kind == "power_well")
    base = Potential::power_well(alpha, beta);
  else if (kind == "tabulated")
    base = Potential::tabulated_from_file(file);
  else
    throw ScenarioError("unknown potential kind '" + kind + "'");
  if (scale != 1.0) base = Potential::scaled(scale, std::move(base));
  return base;
}

SolverConfig SolverSpec::to_config() const {
  SolverConfig cfg;
  cfg.h = h;
  cfg.cfl = cfl;
  cfg.T = T;
  if (boundary == "causal_pad")
    cfg.boundary = SolverConfig::Boundary::CausalPad;
  else if (boundary == "fixed_domain")
    cfg.boundary = SolverConfig::Boundary::FixedDomain;
  else
    throw ScenarioError("solver boundary must be causal_pad or fixed_domain, got '" +
                        boundary + "'");
  cfg.margin = margin;
  cfg.r_max = r_max;
  cfg.nonlinearity = nonlinearity;
  cfg.blowup_cap = blowup_cap;
  return cfg;
}

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  const RawScenario raw = tokenize(text, origin);

  for (const auto& [name, line] : raw.sec_line)
    if (name != "" && name != "potential" && name != "data" && name != "perturbation" &&
        name != "solver" && name != "params")
      raw.fail(line, "unknown section [" + name + "]");

  Scenario sc;
  if (!raw.has("", "schema_version")) raw.fail(1, "missing required key 'schema_version'");
  sc.schema_version = static_cast<int>(raw.integer("", "schema_version", 1));
  if (sc.schema_version != 1)
    raw.fail(1, "unsupported schema_version " + std::to_string(sc.schema_version));
  sc.experiment = raw.str("", "experiment", "");
  if (sc.experiment.empty()) raw.fail(1, "missing required key 'experiment'");
  if (!kExperiments.count(sc.experiment))
    raw.fail(1, "unknown experiment '" + sc.experiment + "'");
  sc.seed = raw.u64("", "seed", 0);

  if (raw.sec.count("potential")) {
    auto& p = sc.potential;
    p.kind = raw.str("potential", "kind", p.kind);
    const std::set<std::string> kinds = {"zero", "manufactured_star", "gaussian",
                                         "power_well", "tabulated"};
    if (!kinds.count(p.kind))
      raw.fail(raw.sec_line.at("potential"), "unknown potential kind '" + p.kind + "'");
    p.scale = raw.num("potential", "scale", p.scale);
    if (p.kind == "gaussian") {
      p.alpha = raw.num("potential", "alpha", p.alpha);
      p.sigma = raw.num("potential", "sigma", p.sigma);
    } else if (p.kind == "power_well") {
      p.alpha = raw.num("potential", "alpha", p.alpha);
      p.beta = raw.num("potential", "beta", p.beta);
    } else if (p.kind == "tabulated") {
      p.file = raw.str("potential", "file", "");
      if (p.file.empty())
        raw.fail(raw.sec_line.at("potential"), "potential kind 'tabulated' needs key 'file'");
    }
  }
  if (sc.experiment == "channel-test" && sc.potential.kind != "zero")
    raw.fail(raw.sec_line.count("potential") ? raw.sec_line.at("potential") : 1,
             "channel-test runs the free-wave engine; the potential must be zero");

  if (raw.sec.count("data")) {
    if (!uses_data(sc.experiment))
      raw.fail(raw.sec_line.at("data"),
               "experiment '" + sc.experiment + "' does not take a [data] section");
    sc.data = read_data(raw, "data");
  }
  if (raw.sec.count("perturbation")) {
    if (sc.experiment != "dependence")
      raw.fail(raw.sec_line.at("perturbation"),
               "section [perturbation] is only used by the dependence experiment");
    sc.perturbation = read_data(raw, "perturbation");
  }

  if (raw.sec.count("solver")) {
    if (!uses_solver(sc.experiment))
      raw.fail(raw.sec_line.at("solver"),
               "experiment '" + sc.experiment + "' does not take a [solver] section");
    auto& s = sc.solver;
    s.h = raw.num("solver", "h", s.h);
    s.cfl = raw.num("solver", "cfl", s.cfl);
    s.T = raw.num("solver", "T", s.T);
    s.boundary = raw.str("solver", "boundary", s.boundary);
    if (s.boundary != "causal_pad" && s.boundary != "fixed_domain")
      raw.fail(raw.sec_line.at("solver"), "boundary must be causal_pad or fixed_domain");
    s.margin = raw.num("solver", "margin", s.margin);
    s.r_max = raw.num("solver", "r_max", s.r_max);
    s.nonlinearity = raw.boolean("solver", "nonlinearity", s.nonlinearity);
    s.blowup_cap = raw.num("solver", "blowup_cap", s.blowup_cap);
  }

  const std::string& e = sc.experiment;
  if (e == "evolve") {
    sc.snapshots = static_cast<int>(raw.integer("params", "snapshots", sc.snapshots));
    if (sc.snapshots < 2) raw.fail(raw.sec_line.count("params") ? raw.sec_line.at("params") : 1,
                                   "need at least 2 snapshots");
  } else if (e == "channel-test") {
    sc.trials = static_cast<int>(raw.integer("params", "trials", sc.trials));
    sc.R_max = raw.num("params", "R_max", sc.R_max);
  } else if (e == "steady-census" || e == "resolve") {
    sc.a_max = raw.num("params", "a_max", sc.a_max);
    sc.step = raw.num("params", "step", sc.step);
    sc.r_big = raw.num("params", "r_big", sc.r_big);
    sc.rep_dr = raw.num("params", "rep_dr", sc.rep_dr);
    if (e == "resolve") {
      sc.ladder = raw.list("params", "ladder", sc.ladder);
      sc.a_buf = raw.num("params", "a_buf", sc.a_buf);
      sc.a_mismatch = raw.num("params", "a_mismatch", sc.a_mismatch);
      sc.slack = raw.num("params", "slack", sc.slack);
      sc.final_factor = raw.num("params", "final_factor", sc.final_factor);
    }
  } else if (e == "bs-spectrum") {
    sc.r_spec = raw.num("params", "r_spec", sc.r_spec);
    sc.n_quad = static_cast<int>(raw.integer("params", "n_quad", sc.n_quad));
    sc.k_eigs = static_cast<int>(raw.integer("params", "eigs", sc.k_eigs));
  } else if (e == "scale-robustness") {
    sc.lambdas = raw.list("params", "lambdas", sc.lambdas);
  } else if (e == "dependence") {
    sc.eps = raw.list("params", "eps", sc.eps);
    sc.interior_r = raw.num("params", "interior_r", sc.interior_r);
  }

  for (const auto& [sname, keys] : raw.sec)
    for (const auto& [key, val] : keys)
      if (!val.used)
        raw.fail(val.line, "unknown key '" + key + "' in section [" +
                               (sname.empty() ? "top level" : sname) + "] for experiment '" +
                               sc.experiment + "'");
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(path + ": cannot open scenario file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path);
}

namespace {

std::string fmt(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);  // shortest round-trip form
}

std::string fmt(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += fmt(xs[i]);
  }
  return out;
}

void emit_data(std::string& out, const std::string& name, const DataSpec& d) {
  out += "\n[" + name + "]\n";
  out += "kind = " + d.kind + "\n";
  out += "r_max = " + fmt(d.r_max) + "\n";
  if (d.kind == "gaussian") {
    out += "amplitude = " + fmt(d.amplitude) + "\n";
    out += "width = " + fmt(d.width) + "\n";
  } else if (d.kind == "bump" || d.kind == "steady_plus_bump") {
    if (d.kind == "steady_plus_bump") out += "slope = " + fmt(d.slope) + "\n";
    out += "r_lo = " + fmt(d.r_lo) + "\n";
    out += "r_hi = " + fmt(d.r_hi) + "\n";
    out += "norm = " + fmt(d.norm) + "\n";
  } else if (d.kind == "file") {
    out += "file = " + d.file + "\n";
  }
}

}  // namespace

std::string serialize_scenario(const Scenario& sc) {
  std::string out;
  out += "schema_version = " + std::to_string(sc.schema_version) + "\n";
  out += "experiment = " + sc.experiment + "\n";
  out += "seed = " + std::to_string(sc.seed) + "\n";

  out += "\n[potential]\n";
  out += "kind = " + sc.potential.kind + "\n";
  if (sc.potential.kind == "gaussian") {
    out += "alpha = " + fmt(sc.potential.alpha) + "\n";
    out += "sigma = " + fmt(sc.potential.sigma) + "\n";
  } else if (sc.potential.kind == "power_well") {
    out += "alpha = " + fmt(sc.potential.alpha) + "\n";
    out += "beta = " + fmt(sc.potential.beta) + "\n";
  } else if (sc.potential.kind == "tabulated") {
    out += "file = " + sc.potential.file + "\n";
  }
  out += "scale = " + fmt(sc.potential.scale) + "\n";

  if (uses_data(sc.experiment)) emit_data(out, "data", sc.data);
  if (sc.perturbation) emit_data(out, "perturbation", *sc.perturbation);

  if (uses_solver(sc.experiment)) {
    out += "\n[solver]\n";
    out += "h = " + fmt(sc.solver.h) + "\n";
    out += "cfl = " + fmt(sc.solver.cfl) + "\n";
    out += "T = " + fmt(sc.solver.T) + "\n";
    out += "boundary = " + sc.solver.boundary + "\n";
    out += "margin = " + fmt(sc.solver.margin) + "\n";
    out += "r_max = " + fmt(sc.solver.r_max) + "\n";
    out += std::string("nonlinearity = ") + (sc.solver.nonlinearity ? "true" : "false") + "\n";
    out += "blowup_cap = " + fmt(sc.solver.blowup_cap) + "\n";
  }

  const std::string& e = sc.experiment;
  std::string params;
  if (e == "evolve") {
    params += "snapshots = " + std::to_string(sc.snapshots) + "\n";
  } else if (e == "channel-test") {
    params += "trials = " + std::to_string(sc.trials) + "\n";
    params += "R_max = " + fmt(sc.R_max) + "\n";
  } else if (e == "steady-census" || e == "resolve") {
    if (e == "resolve") {
      params += "ladder = " + fmt(sc.ladder) + "\n";
      params += "a_buf = " + fmt(sc.a_buf) + "\n";
      params += "a_mismatch = " + fmt(sc.a_mismatch) + "\n";
      params += "slack = " + fmt(sc.slack) + "\n";
      params += "final_factor = " + fmt(sc.final_factor) + "\n";
    }
    params += "a_max = " + fmt(sc.a_max) + "\n";
    params += "step = " + fmt(sc.step) + "\n";
    params += "r_big = " + fmt(sc.r_big) + "\n";
    params += "rep_dr = " + fmt(sc.rep_dr) + "\n";
  } else if (e == "bs-spectrum") {
    params += "r_spec = " + fmt(sc.r_spec) + "\n";
    params += "n_quad = " + std::to_string(sc.n_quad) + "\n";
    params += "eigs = " + std::to_string(sc.k_eigs) + "\n";
  } else if (e == "scale-robustness") {
    params += "lambdas = " + fmt(sc.lambdas) + "\n";
  } else if (e == "dependence") {
    params += "eps = " + fmt(sc.eps) + "\n";
    params += "interior_r = " + fmt(sc.interior_r) + "\n";
  }
  if (!params.empty()) out += "\n[params]\n" + params;
  return out;
}

}  // namespace rwave
