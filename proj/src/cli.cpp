#include "laguerre/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "laguerre/construction.hpp"
#include "laguerre/errors.hpp"
#include "laguerre/families.hpp"

namespace laguerre {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 1-based line and column of a byte offset.
std::pair<int, int> line_col(const std::string& text, std::size_t pos) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < pos && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// Location prefix for a semantic error on key; falls back to the source name.
std::string where(const std::string& source, const std::string& text, const std::string& key) {
  const auto pos = text.find("\"" + key + "\"");
  if (pos == std::string::npos) return source;
  return source + ":" + std::to_string(line_col(text, pos).first);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> numbers(const json& j, const std::string& key) {
  if (j.is_number()) return {j.get<double>()};
  if (!j.is_array()) throw InputError("'" + key + "' must be a list of numbers");
  std::vector<double> v;
  for (const auto& e : j) {
    if (!e.is_number()) throw InputError("'" + key + "' must be a list of numbers");
    v.push_back(e.get<double>());
  }
  return v;
}

double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw InputError("'" + key + "' must be a number");
  return j.get<double>();
}

void allow_keys(const json& j, std::initializer_list<const char*> keys, const std::string& what) {
  if (!j.is_object()) throw InputError(what + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; }))
      throw InputError("unknown key '" + it.key() + "' in " + what);
}

HilfParams hilf_params(const json& p) {
  HilfParams h;
  if (!p.contains("a")) throw InputError("surface needs parameter 'a'");
  h.a = numbers(p["a"], "a");
  if (p.contains("m"))
    for (double v : numbers(p["m"], "m")) {
      if (v != std::floor(v)) throw InputError("'m' must hold integers");
      h.m.push_back(static_cast<int>(v));
    }
  if (p.contains("phi")) h.phi = number(p["phi"], "phi");
  return h;
}

std::string timestamp_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InputError("not a number: '" + item + "'");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw InputError("not a number: '" + item + "'");
    v.push_back(x);
  }
  if (v.empty()) throw InputError("empty list");
  return v;
}

void RunConfig::validate() const {
  if (points_per_axis < 3) throw InputError("points_per_axis must be at least 3");
  if (!(half_width > 0)) throw InputError("half_width must be positive");
  if (!(fd.step > 0) || !(laguerre_step > 0)) throw InputError("steps must be positive");
}

json RunConfig::to_json() const {
  json j;
  j["surface"] = {{"kind", surface}, {"params", params}};
  j["grid"] = {{"center", grid_center ? json(*grid_center) : json(nullptr)},
               {"half_width", half_width},
               {"points_per_axis", points_per_axis}};
  j["fd"] = {{"step", fd.step},
             {"scheme", fd.scheme == FdScheme::Central2 ? "central2" : "central4"},
             {"laguerre_step", laguerre_step}};
  j["tolerances"] = tolerances.to_json();
  j["output"] = {{"report", report_path}, {"samples", samples_path}};
  j["seed"] = seed;
  return j;
}

RunConfig config_from_json(const json& j, const std::string& source, const std::string& text) {
  RunConfig c;
  std::string key = "";
  try {
    allow_keys(j, {"surface", "grid", "fd", "tolerances", "output", "seed", "timestamp"},
               "config");
    if (j.contains("surface")) {
      key = "surface";
      const json& s = j["surface"];
      if (s.is_string()) {
        c.surface = s.get<std::string>();
      } else {
        allow_keys(s, {"kind", "params"}, "surface");
        if (!s.contains("kind") || !s["kind"].is_string())
          throw InputError("surface.kind must be a string");
        c.surface = s["kind"].get<std::string>();
        if (s.contains("params")) {
          key = "params";
          if (!s["params"].is_object()) throw InputError("surface.params must be an object");
          c.params = s["params"];
        }
      }
    }
    if (j.contains("grid")) {
      key = "grid";
      const json& g = j["grid"];
      allow_keys(g, {"center", "half_width", "points_per_axis"}, "grid");
      if (g.contains("center") && !g["center"].is_null()) {
        key = "center";
        c.grid_center = numbers(g["center"], "center");
      }
      if (g.contains("half_width")) {
        key = "half_width";
        c.half_width = number(g["half_width"], "half_width");
        if (!(c.half_width > 0)) throw InputError("half_width must be positive");
      }
      if (g.contains("points_per_axis")) {
        key = "points_per_axis";
        if (!g["points_per_axis"].is_number_integer())
          throw InputError("'points_per_axis' must be an integer");
        c.points_per_axis = g["points_per_axis"].get<int>();
        if (c.points_per_axis < 3) throw InputError("points_per_axis must be at least 3");
      }
    }
    if (j.contains("fd")) {
      key = "fd";
      const json& f = j["fd"];
      allow_keys(f, {"step", "scheme", "laguerre_step"}, "fd");
      for (const char* k : {"step", "laguerre_step"}) {
        if (!f.contains(k)) continue;
        key = k;
        const double v = number(f[k], k);
        if (!(v > 0)) throw InputError(std::string("'") + k + "' must be positive");
        (key == "step" ? c.fd.step : c.laguerre_step) = v;
      }
      if (f.contains("scheme")) {
        key = "scheme";
        const std::string s = f["scheme"].is_string() ? f["scheme"].get<std::string>() : "";
        if (s == "central2")
          c.fd.scheme = FdScheme::Central2;
        else if (s == "central4")
          c.fd.scheme = FdScheme::Central4;
        else
          throw InputError("fd.scheme must be \"central2\" or \"central4\"");
      }
    }
    if (j.contains("tolerances")) {
      key = "tolerances";
      c.tolerances = Tolerances::from_json(j["tolerances"]);
    }
    if (j.contains("output")) {
      key = "output";
      const json& o = j["output"];
      allow_keys(o, {"report", "samples"}, "output");
      for (const char* k : {"report", "samples"})
        if (o.contains(k) && !o[k].is_null() && !o[k].is_string())
          throw InputError(std::string("output.") + k + " must be a string");
      if (o.contains("report") && o["report"].is_string()) c.report_path = o["report"];
      if (o.contains("samples") && o["samples"].is_string()) c.samples_path = o["samples"];
    }
    if (j.contains("seed")) {
      key = "seed";
      if (!j["seed"].is_number_unsigned()) throw InputError("'seed' must be a non-negative integer");
      c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("timestamp")) {
      key = "timestamp";
      if (!j["timestamp"].is_boolean()) throw InputError("'timestamp' must be a boolean");
      c.timestamp = j["timestamp"].get<bool>();
    }
    key = "";
    c.validate();
  } catch (const InputError& e) {
    throw InputError(where(source, text, key) + ": " + e.what());
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  const std::string text = read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw InputError(path + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": malformed JSON (" + e.what() + ")");
  }
  return config_from_json(j, path, text);
}

std::shared_ptr<Chart> make_chart(const std::string& surface, const json& params) {
  if (!params.is_object()) throw InputError("surface parameters must be an object");
  if (surface == "hilf") {
    allow_keys(params, {"a", "m", "phi", "domain"}, "hilf parameters");
    const double dom = params.contains("domain") ? number(params["domain"], "domain") : 2.0;
    return hilf_chart(hilf_params(params), dom);
  }
  if (surface == "degenerate-hilf") {
    allow_keys(params, {"a", "m", "domain"}, "degenerate-hilf parameters");
    const double dom = params.contains("domain") ? number(params["domain"], "domain") : 2.0;
    return tau_chart(hilf_params(params), dom);
  }
  if (surface == "torus") {
    allow_keys(params, {"R", "r"}, "torus parameters");
    return torus_chart(params.contains("R") ? number(params["R"], "R") : 2.0,
                       params.contains("r") ? number(params["r"], "r") : 1.0);
  }
  if (surface == "sphere") {
    allow_keys(params, {"R"}, "sphere parameters");
    return sphere_chart(params.contains("R") ? number(params["R"], "R") : 1.0);
  }
  if (surface == "graph") {
    allow_keys(params, {"a", "c", "d", "domain"}, "graph parameters");
    if (!params.contains("a")) throw InputError("graph needs parameter 'a'");
    return graph_chart(numbers(params["a"], "a"),
                       params.contains("c") ? numbers(params["c"], "c") : std::vector<double>{},
                       params.contains("d") ? number(params["d"], "d") : 0.0,
                       params.contains("domain") ? number(params["domain"], "domain") : 1.0);
  }
  throw InputError("unknown surface '" + surface + "' (see the catalog command)");
}

SampleTable samples_table(const PropertyReport& rep) {
  SampleTable t;
  if (rep.samples.empty()) return t;
  const int n = static_cast<int>(rep.samples.front().u.size());
  auto cols = [&](const std::string& p, int count) {
    for (int i = 1; i <= count; ++i) t.header.push_back(p + "_" + std::to_string(i));
  };
  cols("u", n);
  cols("x", n + 1);
  cols("k", n);
  t.header.push_back("rho");
  t.header.push_back("r");
  cols("b", n);
  cols("C", n);
  for (int i = 1; i <= n; ++i) t.header.push_back("L_" + std::to_string(i) + std::to_string(i));
  for (const auto& s : rep.samples) {
    std::vector<double> row;
    auto put = [&](const Vec& v) { row.insert(row.end(), v.data(), v.data() + v.size()); };
    put(s.u);
    put(s.x);
    put(s.k);
    row.push_back(s.rho);
    row.push_back(s.r);
    put(s.b);
    put(s.C);
    put(s.L_diag);
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_samples_csv(const SampleTable& t, std::ostream& os) {
  os << "# laguerre samples, schema_version " << kSchemaVersion << "\n";
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
    os << "\n";
  }
}

SampleTable read_samples_csv(std::istream& is) {
  SampleTable t;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (t.header.empty()) {
      t.header = cells;
      continue;
    }
    if (cells.size() != t.header.size())
      throw InputError("samples:" + std::to_string(lineno) + ": wrong number of columns");
    std::vector<double> row;
    for (const auto& c : cells) {
      char* end = nullptr;
      const double v = std::strtod(c.c_str(), &end);
      if (end == c.c_str() || *end != '\0')
        throw InputError("samples:" + std::to_string(lineno) + ": bad number '" + c + "'");
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

namespace {

struct Flags {
  std::string config, surface, a, m, center, out, samples;
  std::optional<double> phi, half_width, step, R, tube;
  std::optional<int> grid;
  std::optional<std::uint64_t> seed;
  bool no_timestamp = false;
  // construct
  std::string b, b_from_a, matrix, beta3;
  bool cancelling = false;
};

void add_common(CLI::App* s, Flags& f) {
  s->add_option("--config", f.config, "JSON config file");
  s->add_option("--surface", f.surface, "catalog name");
  s->add_option("--a", f.a, "comma-separated constants a_i");
  s->add_option("--m", f.m, "comma-separated multiplicities");
  s->add_option("--phi", f.phi, "offset phi of the explicit family");
  s->add_option("--R", f.R, "torus or sphere radius");
  s->add_option("--tube", f.tube, "torus tube radius");
  s->add_option("--grid", f.grid, "points per axis");
  s->add_option("--half-width", f.half_width, "grid half width");
  s->add_option("--center", f.center, "comma-separated grid center");
  s->add_option("--step", f.step, "finite-difference step of the chart");
  s->add_option("--seed", f.seed, "random seed");
  s->add_option("--out", f.out, "report path (default stdout)");
  s->add_option("--samples", f.samples, "CSV sample path");
  s->add_flag("--no-timestamp", f.no_timestamp, "omit the timestamp from the report");
}

RunConfig resolve(const Flags& f) {
  RunConfig c = f.config.empty() ? RunConfig{} : load_config(f.config);
  if (!f.surface.empty() && f.surface != c.surface) {
    c.surface = f.surface;
    c.params = json::object();
  }
  if (!f.a.empty()) c.params["a"] = parse_list(f.a);
  if (!f.m.empty()) c.params["m"] = parse_list(f.m);
  if (f.phi) c.params["phi"] = *f.phi;
  if (f.R) c.params["R"] = *f.R;
  if (f.tube) c.params["r"] = *f.tube;
  if (f.grid) c.points_per_axis = *f.grid;
  if (f.half_width) c.half_width = *f.half_width;
  if (!f.center.empty()) c.grid_center = parse_list(f.center);
  if (f.step) c.fd.step = *f.step;
  if (f.seed) c.seed = *f.seed;
  if (!f.out.empty()) c.report_path = f.out;
  if (!f.samples.empty()) c.samples_path = f.samples;
  if (f.no_timestamp) c.timestamp = false;
  c.validate();
  return c;
}

Grid make_grid(const RunConfig& c, int n) {
  Grid g;
  if (c.grid_center) {
    if (static_cast<int>(c.grid_center->size()) != n)
      throw InputError("grid center has the wrong dimension");
    g.center = Eigen::Map<const Vec>(c.grid_center->data(), n);
  } else {
    g.center = Vec::Zero(n);
  }
  g.half_width = c.half_width;
  g.points_per_axis = c.points_per_axis;
  return g;
}

CoreOptions core_options(const RunConfig& c) {
  CoreOptions o;
  o.step = c.laguerre_step;
  o.scheme = c.fd.scheme;
  return o;
}

json report_skeleton(const RunConfig& c, const std::string& command) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["config_echo"] = c.to_json();
  if (c.timestamp) j["generated_at"] = timestamp_now();
  return j;
}

void emit(const json& j, const std::string& path, std::ostream& out) {
  const std::string s = j.dump(2) + "\n";
  if (path.empty()) {
    out << s;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << s;
}

void emit_csv(const SampleTable& t, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    write_samples_csv(t, out);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  write_samples_csv(t, f);
}

void summary(const std::vector<CheckResult>& checks, const std::string& what, std::ostream& err) {
  int failed = 0, skipped = 0;
  for (const auto& c : checks) {
    failed += c.status == CheckStatus::Failed;
    skipped += c.status == CheckStatus::Skipped;
  }
  err << what << ": " << checks.size() << " checks, " << failed << " failed, " << skipped
      << " skipped\n";
  for (const auto& c : checks)
    if (c.status == CheckStatus::Failed)
      err << "  FAILED " << c.name << " residual " << format_double(c.residual) << " > "
          << format_double(c.tolerance) << "\n";
}

json merge_report(json base, const PropertyReport& rep) {
  json r = rep.to_json();
  for (auto it = r.begin(); it != r.end(); ++it) base[it.key()] = it.value();
  return base;
}

int cmd_suite(const Flags& f, bool invariants_mode, std::ostream& out, std::ostream& err) {
  const RunConfig c = resolve(f);
  auto chart = make_chart(c.surface, c.params);
  chart->fd = c.fd;
  const Grid grid = make_grid(c, chart->n());
  const PropertyReport rep = run_suite(*chart, grid, c.tolerances, core_options(c));
  const json j = merge_report(report_skeleton(c, invariants_mode ? "invariants" : "verify"), rep);
  if (invariants_mode) {
    emit_csv(samples_table(rep), c.samples_path, out);
    if (!c.report_path.empty()) emit(j, c.report_path, out);
  } else {
    emit(j, c.report_path, out);
    if (!c.samples_path.empty()) emit_csv(samples_table(rep), c.samples_path, out);
  }
  summary(rep.checks, invariants_mode ? "invariants" : "verify", err);
  if (rep.samples.empty()) {
    err << "no valid grid points\n";
    return 1;
  }
  return rep.all_passed() ? 0 : 1;
}

CheckResult check(const std::string& name, const std::string& anchor, double r, double tol) {
  if (!std::isfinite(r)) r = 1e300;
  return {name, anchor, r, tol, r <= tol ? CheckStatus::Passed : CheckStatus::Failed, ""};
}

json checks_json(const std::vector<CheckResult>& cs) {
  json a = json::array();
  for (const auto& c : cs) {
    json e = {{"name", c.name},
              {"anchor", c.anchor},
              {"residual", c.residual},
              {"tolerance", c.tolerance},
              {"status", to_string(c.status)}};
    if (!c.note.empty()) e["note"] = c.note;
    a.push_back(e);
  }
  return a;
}

bool all_pass(const std::vector<CheckResult>& cs) {
  return std::none_of(cs.begin(), cs.end(),
                      [](const CheckResult& c) { return c.status == CheckStatus::Failed; });
}

int cmd_tau(const Flags& f, std::ostream& out, std::ostream& err) {
  Flags g = f;
  if (g.surface.empty()) g.surface = "hilf";
  const RunConfig c = resolve(g);
  if (c.surface != "hilf" && c.surface != "degenerate-hilf")
    throw InputError("tau compares the explicit family; use --surface hilf");
  json p = c.params;
  p.erase("phi");
  p.erase("domain");
  const HilfParams hp = hilf_params(p);
  const DegenerateChart deg = degenerate_example(hp);
  auto hilf = hilf_chart(hp, 2.0);
  const int n = hp.n();
  const Grid grid = make_grid(c, n);
  double dx = 0, dxi = 0, cons = 0;
  for (const Vec& u : grid.points()) {
    const auto [xp, xip] = laguerre_immersion_tau(deg.x(u), deg.xi(u));
    Vec x(n + 1), xi(n + 1);
    hilf->impl().position(u.data(), x.data());
    hilf->impl().normal(u.data(), xi.data());
    dx = std::max(dx, (xp - x).cwiseAbs().maxCoeff());
    dxi = std::max(dxi, (xip - xi).cwiseAbs().maxCoeff());
    cons = std::max(cons, deg.constraint_residual(u));
  }
  std::vector<CheckResult> cs{
      check("tau.position", "tau:x' matches explicit family", dx, c.tolerances.tau),
      check("tau.normal", "tau:xi' matches explicit family normal", dxi, c.tolerances.tau),
      check("degenerate.constraints", "degenerate model:<x,nu>=0,<xi,xi>=0,<xi,nu>=1,<xi,dx>=0",
            cons, c.tolerances.tau)};
  json j = report_skeleton(c, "tau");
  j["orientation"] = "explicit family normal";
  j["checks"] = checks_json(cs);
  j["classification"] = nullptr;
  j["warnings"] = json::array();
  j["all_passed"] = all_pass(cs);
  emit(j, c.report_path, out);
  summary(cs, "tau", err);
  return all_pass(cs) ? 0 : 1;
}

Mat read_matrix(const std::string& path) {
  const std::string text = read_file(path);
  std::vector<std::vector<double>> rows;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
      throw InputError(path + ":" + std::to_string(line) + ":" + std::to_string(col) +
                       ": malformed JSON matrix");
    }
    if (!j.is_array()) throw InputError(path + ": matrix must be a list of rows");
    for (const auto& r : j) rows.push_back(numbers(r, "matrix row"));
  } else {
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
      ++lineno;
      std::replace(line.begin(), line.end(), ',', ' ');
      std::stringstream ls(line);
      std::vector<double> row;
      std::string tok;
      while (ls >> tok) {
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (*end != '\0')
          throw InputError(path + ":" + std::to_string(lineno) + ": bad number '" + tok + "'");
        row.push_back(v);
      }
      if (!row.empty()) rows.push_back(row);
    }
  }
  if (rows.empty()) throw InputError(path + ": empty matrix");
  Mat M(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size()) throw InputError(path + ": ragged matrix");
    for (std::size_t k = 0; k < rows[i].size(); ++k) M(i, k) = rows[i][k];
  }
  return M;
}

bool cancelling_shaped(const ConstructionConstants& k) {
  const int n = k.n();
  if ((k.C - Mat::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-15) return false;
  for (int i = 0; i < n; ++i) {
    if (std::abs(k.beta1[i] - k.beta3[i] * k.b[i]) > 1e-15) return false;
    if (std::abs(k.gamma1[i] - k.beta3[i] * k.beta3[i] * k.b[i] / 2) > 1e-15) return false;
  }
  return true;
}

int cmd_construct(const Flags& f, bool grid_given, std::ostream& out, std::ostream& err) {
  RunConfig c = resolve(f);
  Vec b;
  if (!f.b.empty() && !f.b_from_a.empty()) throw InputError("give either --b or --b-from-a");
  if (!f.b.empty()) {
    const auto v = parse_list(f.b);
    b = Eigen::Map<const Vec>(v.data(), v.size());
    c.params = {{"b", v}};
  } else if (!f.b_from_a.empty()) {
    const auto a = parse_list(f.b_from_a);
    b = b_from_a(a);
    c.params = {{"b_from_a", a}};
  } else {
    throw InputError("construct needs --b or --b-from-a");
  }
  c.surface = "constructed";
  const int n = static_cast<int>(b.size());
  ConstructionConstants k;
  if (f.cancelling) {
    Vec beta3 = Vec::Ones(n);
    if (!f.beta3.empty()) {
      const auto v = parse_list(f.beta3);
      if (static_cast<int>(v.size()) != n) throw InputError("--beta3 has the wrong length");
      beta3 = Eigen::Map<const Vec>(v.data(), n);
    }
    k = cancelling_constants(b, beta3);
    c.params["cancelling"] = true;
  } else {
    k = random_constants(b, c.seed);
  }
  if (!f.matrix.empty()) {
    const Mat M = read_matrix(f.matrix);
    if (M.rows() != n || M.cols() != n) throw InputError(f.matrix + ": matrix must be n x n");
    k.C = M;
    c.params["matrix"] = f.matrix;
  }
  const ValidationReport vr = validate_constants(k);
  if (!vr.ok) {
    std::string msg = "invalid construction constants:";
    for (const auto& s : vr.failures) msg += " " + s + ";";
    throw InputError(msg);
  }
  if (!grid_given) {
    c.half_width = 0.5;
    c.points_per_axis = 5;
  }
  const ConstructedMaps maps = build_immersion(k, 1.0);
  const Grid grid = make_grid(c, n);
  const CoreOptions opt = core_options(c);
  const FrobeniusReport fr = frobenius_report(maps, grid.points(), opt);
  const double tc = c.tolerances.construction;
  std::vector<CheckResult> cs{
      check("frobenius.lambda_zero", "construction:lambda=0", std::abs(fr.lambda_hat), tc),
      check("frobenius.mixed_partials", "construction:Y_,ij=0 for i!=j", fr.mixed_partials, tc),
      check("frobenius.gram_off_diagonal", "construction:<Y_,i,Y_,j>=0 for i!=j",
            fr.gram_off_diagonal, tc),
      check("frobenius.second_equation", "construction:Y_,ii equation", fr.second_equation, tc),
      check("frobenius.eta_relation", "construction:eta_,i=b_i Y_,i", fr.eta_relation, tc),
      check("frobenius.n_constant", "construction:N constant", fr.n_spread, tc),
      check("frobenius.b_constant", "construction:b_i constant", fr.b_spread, tc),
      check("frobenius.b_match", "construction:computed b equals input b", fr.b_match,
            c.tolerances.classify_b),
      check("classification.isotropic", "construction:L-isotropic",
            fr.classification.is_isotropic ? 0.0 : 1.0, 0.5),
      check("classification.isoparametric", "construction:L-isoparametric",
            fr.classification.is_isoparametric ? 0.0 : 1.0, 0.5)};
  std::vector<std::string> warnings;
  if (cancelling_shaped(k)) {
    HilfParams hp;
    for (int i = 0; i < n; ++i) hp.a.push_back(1.0 / b[i]);
    const double scale = std::sqrt(2.0) * grid.half_width * b.cwiseAbs().maxCoeff() + 1.0;
    auto h = hilf_chart(hp, scale);
    double w = 0;
    for (const Vec& v : grid.points()) {
      const Vec u = std::sqrt(2.0) * v.cwiseProduct(b);
      w = std::max(w, (maps.x(v) - h->position(u)).cwiseAbs().maxCoeff());
    }
    cs.push_back(check("roundtrip.explicit_family",
                       "construction:x(v) equals explicit family with a_i=1/b_i at u=sqrt2 b v",
                       w, c.tolerances.roundtrip));
  } else {
    warnings.push_back("constants not of the cancelling form; explicit-family comparison skipped");
  }
  json j = report_skeleton(c, "construct");
  j["orientation"] = "constructed normal";
  j["constants"] = {{"b", vec_json(k.b)},
                    {"beta1", vec_json(k.beta1)},
                    {"beta3", vec_json(k.beta3)},
                    {"gamma1", vec_json(k.gamma1)},
                    {"phi", k.phi()}};
  json C = json::array();
  for (int i = 0; i < n; ++i) C.push_back(vec_json(k.C.row(i).transpose()));
  j["constants"]["C"] = C;
  j["checks"] = checks_json(cs);
  j["classification"] = classification_json(fr.classification);
  j["warnings"] = warnings;
  j["all_passed"] = all_pass(cs);
  emit(j, c.report_path, out);
  summary(cs, "construct", err);
  return all_pass(cs) ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Laguerre invariants of hypersurfaces", "laguerre"};
  app.require_subcommand(1);
  Flags f;
  auto* inv = app.add_subcommand("invariants", "per-point invariants as CSV");
  auto* ver = app.add_subcommand("verify", "run the property suite");
  auto* con = app.add_subcommand("construct", "build an immersion from constants");
  auto* tau = app.add_subcommand("tau", "compare the degenerate model through tau");
  auto* cat = app.add_subcommand("catalog", "list built-in surfaces");
  for (auto* s : {inv, ver, con, tau}) add_common(s, f);
  con->add_option("--b", f.b, "comma-separated Laguerre principal curvatures");
  con->add_option("--b-from-a", f.b_from_a, "derive b from explicit-family constants");
  con->add_option("--matrix", f.matrix, "orthogonal matrix file replacing the seeded one");
  con->add_flag("--cancelling", f.cancelling, "identity matrix with the cancelling constants");
  con->add_option("--beta3", f.beta3, "beta3 constants for --cancelling (default ones)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (cat->parsed()) {
      for (const auto& e : catalog()) out << e.name << "\t" << e.description << "\n";
      return 0;
    }
    if (inv->parsed()) return cmd_suite(f, true, out, err);
    if (ver->parsed()) return cmd_suite(f, false, out, err);
    if (tau->parsed()) return cmd_tau(f, out, err);
    if (con->parsed()) {
      const bool grid_given = con->count("--grid") || con->count("--half-width") ||
                              !f.config.empty();
      return cmd_construct(f, grid_given, out, err);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace laguerre
