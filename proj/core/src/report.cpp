#include "lck/report.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"

namespace lck {

namespace {

using ordered_json = nlohmann::ordered_json;

double ms_between(const std::chrono::steady_clock::time_point& a,
                  const std::chrono::steady_clock::time_point& b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

ordered_json complex_list(const std::vector<std::complex<double>>& v) {
  ordered_json arr = ordered_json::array();
  for (const auto& z : v) arr.push_back({z.real(), z.imag()});
  return arr;
}

ordered_json config_json_object(const RunConfig& cfg) {
  ordered_json j;
  j["n"] = cfg.data.n;
  ordered_json a = ordered_json::array();
  for (int i = 0; i < cfg.data.a.size(); ++i) a.push_back(cfg.data.a(i));
  j["a"] = a;
  j["s"] = cfg.data.s;
  j["c"] = complex_list(cfg.data.c);
  j["lambda"] = complex_list(cfg.data.lambda());
  j["seed"] = cfg.seed;
  j["points"] = cfg.points;
  j["t_range"] = cfg.t_range;
  j["suites"] = resolve_suites(cfg.suites);
  ordered_json tols = ordered_json::object();
  for (const auto& [k, v] : cfg.tol_overrides) tols[k] = v;
  j["tol_overrides"] = tols;
  j["output_format"] = cfg.output_format;
  j["parallel"] = cfg.parallel;
  j["include_timing"] = cfg.include_timing;
  return j;
}

}  // namespace

std::vector<std::string> resolve_suites(const std::vector<std::string>& requested) {
  if (requested.empty()) throw std::invalid_argument("suites: list must not be empty");
  const auto& canon = canonical_suite_names();
  bool all = false;
  std::set<std::string> want;
  for (const auto& name : requested) {
    if (name == "all") {
      all = true;
      continue;
    }
    if (std::find(canon.begin(), canon.end(), name) == canon.end())
      throw std::invalid_argument("suites: unknown suite '" + name + "'");
    want.insert(name);
  }
  std::vector<std::string> out;
  for (const auto& name : canon)
    if (all || want.count(name)) out.push_back(name);
  return out;
}

void validate_run_config(const RunConfig& cfg) {
  validate_hopf_data(cfg.data);
  if (cfg.points < 1) throw std::invalid_argument("points: must be >= 1");
  if (!(cfg.t_range > 0.0)) throw std::invalid_argument("t_range: must be > 0");
  if (cfg.parallel < 1) throw std::invalid_argument("parallel: must be >= 1");
  if (cfg.output_format != "json" && cfg.output_format != "text")
    throw std::invalid_argument("output_format: must be 'json' or 'text'");
  resolve_suites(cfg.suites);
  for (const auto& [name, tol] : cfg.tol_overrides)
    if (!(tol > 0.0))
      throw std::invalid_argument("tol_overrides: tolerance for '" + name + "' must be > 0");
}

RunReport run(const RunConfig& cfg) {
  validate_run_config(cfg);
  RunReport rep;
  rep.config = cfg;

  const auto t0 = std::chrono::steady_clock::now();
  HopfStructure hs = build_hopf_structure(cfg.data);
  SuiteContext ctx;
  ctx.hs = &hs;
  ctx.points = cfg.points;
  ctx.t_range = cfg.t_range;
  ctx.seed = cfg.seed;
  ctx.parallel = cfg.parallel;
  ctx.tols.overrides = cfg.tol_overrides;

  for (const auto& name : resolve_suites(cfg.suites)) {
    const auto s0 = std::chrono::steady_clock::now();
    SuiteReport sr;
    sr.name = name;
    sr.checks = run_suite(name, ctx);
    sr.elapsed_ms = ms_between(s0, std::chrono::steady_clock::now());
    for (const auto& c : sr.checks) rep.overall_pass = rep.overall_pass && c.pass;
    rep.suites.push_back(std::move(sr));
  }
  rep.elapsed_ms = ms_between(t0, std::chrono::steady_clock::now());
  return rep;
}

std::string config_to_json(const RunConfig& cfg) {
  return config_json_object(cfg).dump(2) + "\n";
}

std::string report_to_json(const RunReport& rep) {
  ordered_json root;
  root["config"] = config_json_object(rep.config);
  ordered_json suites = ordered_json::array();
  for (const auto& s : rep.suites) {
    ordered_json sj;
    sj["name"] = s.name;
    ordered_json checks = ordered_json::array();
    for (const auto& c : s.checks) {
      ordered_json cj;
      cj["name"] = c.name;
      cj["max_residual"] = c.max_residual;
      cj["tolerance"] = c.tolerance;
      cj["points"] = c.points;
      cj["pass"] = c.pass;
      checks.push_back(cj);
    }
    sj["checks"] = checks;
    suites.push_back(sj);
  }
  root["suites"] = suites;
  root["overall_pass"] = rep.overall_pass;
  root["elapsed_ms"] = rep.config.include_timing ? rep.elapsed_ms : 0.0;
  return root.dump(2) + "\n";
}

std::string report_to_text(const RunReport& rep) {
  const RunConfig& cfg = rep.config;
  std::ostringstream os;
  os << "model: n=" << cfg.data.n << "  a=[";
  for (int i = 0; i < cfg.data.a.size(); ++i) os << (i ? ", " : "") << cfg.data.a(i);
  os << "]  s=" << cfg.data.s << "  c=[";
  for (int i = 0; i < cfg.data.n; ++i)
    os << (i ? ", " : "") << "(" << cfg.data.c[i].real() << "," << cfg.data.c[i].imag() << ")";
  os << "]\n";
  os << "spectrum: lambda=[";
  auto lam = cfg.data.lambda();
  for (int i = 0; i < cfg.data.n; ++i)
    os << (i ? ", " : "") << "(" << lam[i].real() << "," << lam[i].imag() << ")";
  os << "]\n";
  os << "seed=" << cfg.seed << "  points=" << cfg.points << "  t_range=" << cfg.t_range
     << "  parallel=" << cfg.parallel << "\n\n";

  int total = 0, passed = 0;
  for (const auto& s : rep.suites) {
    os << "suite " << s.name << "  (" << s.checks.size() << " checks, " << std::fixed
       << std::setprecision(1) << s.elapsed_ms << " ms)\n";
    os.unsetf(std::ios::fixed);
    for (const auto& c : s.checks) {
      ++total;
      if (c.pass) ++passed;
      os << "  " << (c.pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(34) << c.name
         << std::right << "  max " << std::scientific << std::setprecision(3) << c.max_residual
         << "  tol " << std::setprecision(1) << c.tolerance;
      os.unsetf(std::ios::scientific);
      os << "  pts " << c.points;
      if (!c.notes.empty()) os << "   [" << c.notes << "]";
      os << "\n";
    }
  }
  os << "\noverall: " << (rep.overall_pass ? "PASS" : "FAIL") << "  (" << passed << "/" << total
     << " checks)  total " << std::fixed << std::setprecision(1) << rep.elapsed_ms << " ms\n";
  return os.str();
}

namespace {

RunConfig config_from_json(const ordered_json& j) {
  RunConfig cfg;
  static const std::set<std::string> known = {
      "n",      "a",       "s",           "c",           "seed",           "points",
      "t_range", "suites", "tol_overrides", "output_format", "parallel", "include_timing"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "lambda") continue;  // derived field echoed by the serializer
    if (!known.count(it.key()))
      throw std::invalid_argument("config: unknown key '" + it.key() + "'");
  }

  if (j.contains("a")) {
    const auto& a = j.at("a");
    if (!a.is_array() || a.empty()) throw std::invalid_argument("a: must be a nonempty array");
    cfg.data.n = static_cast<int>(a.size());
    cfg.data.a.resize(cfg.data.n);
    for (int i = 0; i < cfg.data.n; ++i) cfg.data.a(i) = a.at(i).get<double>();
  }
  if (j.contains("n")) {
    const int n = j.at("n").get<int>();
    if (j.contains("a") && n != cfg.data.n)
      throw std::invalid_argument("n: inconsistent with the length of a");
    if (!j.contains("a")) {
      cfg.data.n = n;
      cfg.data.a = Eigen::VectorXd::Ones(n);
    }
  }
  if (j.contains("s")) cfg.data.s = j.at("s").get<double>();
  cfg.data.c.assign(cfg.data.n, std::complex<double>(1.0, 0.0));
  if (j.contains("c")) {
    const auto& c = j.at("c");
    if (!c.is_array() || static_cast<int>(c.size()) != cfg.data.n)
      throw std::invalid_argument("c: must be an array of length n");
    for (int i = 0; i < cfg.data.n; ++i) {
      const auto& e = c.at(i);
      if (e.is_number()) {
        cfg.data.c[i] = std::complex<double>(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2) {
        cfg.data.c[i] = std::complex<double>(e.at(0).get<double>(), e.at(1).get<double>());
      } else {
        throw std::invalid_argument("c: entries must be numbers or [re, im] pairs");
      }
    }
  }
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("points")) cfg.points = j.at("points").get<int>();
  if (j.contains("t_range")) cfg.t_range = j.at("t_range").get<double>();
  if (j.contains("suites")) {
    cfg.suites.clear();
    for (const auto& s : j.at("suites")) cfg.suites.push_back(s.get<std::string>());
  }
  if (j.contains("tol_overrides")) {
    for (auto it = j.at("tol_overrides").begin(); it != j.at("tol_overrides").end(); ++it)
      cfg.tol_overrides[it.key()] = it.value().get<double>();
  }
  if (j.contains("output_format")) cfg.output_format = j.at("output_format").get<std::string>();
  if (j.contains("parallel")) cfg.parallel = j.at("parallel").get<int>();
  if (j.contains("include_timing")) cfg.include_timing = j.at("include_timing").get<bool>();

  validate_run_config(cfg);
  return cfg;
}

}  // namespace

RunConfig config_from_json_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config: JSON parse failure: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  return config_from_json(j);
}

RunConfig config_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json_text(buf.str());
}

}  // namespace lck
