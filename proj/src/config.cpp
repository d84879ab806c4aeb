#include "sedflow/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

namespace sedflow {

namespace {

const std::pair<CaseKind, const char*> kCaseNames[] = {
    {CaseKind::c_property, "c-property"}, {CaseKind::dambreak1d, "dambreak1d"}, {CaseKind::multigrain, "multigrain"},
    {CaseKind::bedmotion, "bedmotion"},   {CaseKind::riemann2d, "riemann2d"},   {CaseKind::custom, "custom"},
};

std::string trim(std::string_view s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& v)
{
  double out = 0.0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ConfigError(key + ": expected a number, got '" + v + "'");
  return out;
}

long to_long(const std::string& key, const std::string& v)
{
  long out = 0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ConfigError(key + ": expected an integer, got '" + v + "'");
  return out;
}

int to_int(const std::string& key, const std::string& v)
{
  const long x = to_long(key, v);
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
    throw ConfigError(key + ": integer out of range");
  return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& v)
{
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  throw ConfigError(key + ": expected true/false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v)
{
  std::vector<double> out;
  if (v.empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  return out;
}

std::string list_text(const std::vector<double>& xs)
{
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += format_double(xs[i]);
  }
  return out;
}

BoundaryKind to_boundary(const std::string& key, const std::string& v)
{
  if (v == "outflow") return BoundaryKind::outflow;
  if (v == "wall") return BoundaryKind::wall;
  if (v == "periodic") return BoundaryKind::periodic;
  throw ConfigError(key + ": expected outflow, wall or periodic, got '" + v + "'");
}

std::string boundary_text(BoundaryKind k)
{
  switch (k) {
    case BoundaryKind::wall: return "wall";
    case BoundaryKind::periodic: return "periodic";
    case BoundaryKind::outflow: break;
  }
  return "outflow";
}

Quadrature to_quadrature(const std::string& key, const std::string& v)
{
  if (v == "midpoint") return Quadrature::midpoint;
  if (v == "gauss3") return Quadrature::gauss3;
  if (v == "single-point") return Quadrature::single_point;
  throw ConfigError(key + ": expected midpoint, gauss3 or single-point, got '" + v + "'");
}

std::string quadrature_text(Quadrature q)
{
  switch (q) {
    case Quadrature::gauss3: return "gauss3";
    case Quadrature::single_point: return "single-point";
    case Quadrature::midpoint: break;
  }
  return "midpoint";
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

struct Entry {
  const char* key;
  std::function<void(CaseConfig&, const std::string&)> set;
  std::function<std::string(const CaseConfig&)> get;
};

#define SEDFLOW_DOUBLE(name, member)                                                      \
  Entry                                                                                   \
  {                                                                                       \
    name, [](CaseConfig& c, const std::string& v) { c.member = to_double(name, v); },     \
        [](const CaseConfig& c) { return format_double(c.member); }                      \
  }
#define SEDFLOW_BOOL(name, member)                                                        \
  Entry                                                                                   \
  {                                                                                       \
    name, [](CaseConfig& c, const std::string& v) { c.member = to_bool(name, v); },       \
        [](const CaseConfig& c) { return bool_text(c.member); }                          \
  }
#define SEDFLOW_BOUNDARY(name, member)                                                    \
  Entry                                                                                   \
  {                                                                                       \
    name, [](CaseConfig& c, const std::string& v) { c.member = to_boundary(name, v); },   \
        [](const CaseConfig& c) { return boundary_text(c.member); }                      \
  }

const std::vector<Entry>& entries()
{
  static const std::vector<Entry> table = {
      {"case", [](CaseConfig& c, const std::string& v) { c.kind = parse_case_name(v); },
       [](const CaseConfig& c) { return case_name(c.kind); }},
      {"nx", [](CaseConfig& c, const std::string& v) { c.nx = to_int("nx", v); },
       [](const CaseConfig& c) { return std::to_string(c.nx); }},
      {"ny", [](CaseConfig& c, const std::string& v) { c.ny = to_int("ny", v); },
       [](const CaseConfig& c) { return std::to_string(c.ny); }},
      SEDFLOW_DOUBLE("x_min", bounds.x_min),
      SEDFLOW_DOUBLE("x_max", bounds.x_max),
      SEDFLOW_DOUBLE("y_min", bounds.y_min),
      SEDFLOW_DOUBLE("y_max", bounds.y_max),
      SEDFLOW_BOUNDARY("bc_left", bc.left),
      SEDFLOW_BOUNDARY("bc_right", bc.right),
      SEDFLOW_BOUNDARY("bc_bottom", bc.bottom),
      SEDFLOW_BOUNDARY("bc_top", bc.top),
      SEDFLOW_DOUBLE("cfl", cfl),
      SEDFLOW_DOUBLE("t_end", t_end),
      SEDFLOW_DOUBLE("dt_max", dt_max),
      {"max_steps", [](CaseConfig& c, const std::string& v) { c.max_steps = to_long("max_steps", v); },
       [](const CaseConfig& c) { return std::to_string(c.max_steps); }},
      {"snapshot_times", [](CaseConfig& c, const std::string& v) { c.snapshot_times = to_list("snapshot_times", v); },
       [](const CaseConfig& c) { return list_text(c.snapshot_times); }},
      {"output_dir", [](CaseConfig& c, const std::string& v) { c.output_dir = v; },
       [](const CaseConfig& c) { return c.output_dir; }},
      {"quadrature", [](CaseConfig& c, const std::string& v) { c.scheme.quadrature = to_quadrature("quadrature", v); },
       [](const CaseConfig& c) { return quadrature_text(c.scheme.quadrature); }},
      SEDFLOW_DOUBLE("aeno_l", scheme.aeno.l),
      SEDFLOW_DOUBLE("aeno_eps", scheme.aeno.eps),
      SEDFLOW_BOOL("nonconservative", scheme.nonconservative),
      SEDFLOW_BOOL("exchange", scheme.exchange),
      SEDFLOW_BOOL("friction", scheme.friction),
      SEDFLOW_BOOL("implicit_friction", scheme.implicit_friction),
      SEDFLOW_BOOL("diffusion", scheme.diffusion),
      SEDFLOW_DOUBLE("rho_w", params.rho_w),
      SEDFLOW_DOUBLE("rho_s", params.rho_s),
      SEDFLOW_DOUBLE("g", params.g),
      SEDFLOW_DOUBLE("porosity", params.porosity),
      SEDFLOW_DOUBLE("manning", params.manning),
      SEDFLOW_DOUBLE("d50", params.d50),
      SEDFLOW_DOUBLE("nu", params.nu),
      SEDFLOW_DOUBLE("phi_e", params.phi_e),
      SEDFLOW_DOUBLE("hindered_m", params.hindered_m),
      SEDFLOW_DOUBLE("kappa", params.kappa),
      SEDFLOW_DOUBLE("nu_m", params.nu_m),
      SEDFLOW_DOUBLE("grass_a", params.grass_a),
      SEDFLOW_DOUBLE("grass_b", params.grass_b),
      SEDFLOW_DOUBLE("fr_clamp", params.fr_clamp),
      SEDFLOW_DOUBLE("h_cut", params.h_cut),
      SEDFLOW_DOUBLE("h_exchange", params.h_exchange),
      SEDFLOW_BOOL("fs_unity_at_rest", params.fs_unity_at_rest),
      {"grain_sizes", [](CaseConfig& c, const std::string& v) { c.grain_sizes = to_list("grain_sizes", v); },
       [](const CaseConfig& c) { return list_text(c.grain_sizes); }},
      {"initial_state", [](CaseConfig& c, const std::string& v) { c.initial_state = v; },
       [](const CaseConfig& c) { return c.initial_state; }},
      {"experimental_data", [](CaseConfig& c, const std::string& v) { c.experimental_data = v; },
       [](const CaseConfig& c) { return c.experimental_data; }},
      {"threads", [](CaseConfig& c, const std::string& v) { c.threads = to_int("threads", v); },
       [](const CaseConfig& c) { return std::to_string(c.threads); }},
  };
  return table;
}

#undef SEDFLOW_DOUBLE
#undef SEDFLOW_BOOL
#undef SEDFLOW_BOUNDARY

}  // namespace

std::string format_double(double value)
{
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string case_name(CaseKind kind)
{
  for (const auto& [k, name] : kCaseNames)
    if (k == kind) return name;
  return "custom";
}

CaseKind parse_case_name(const std::string& name)
{
  for (const auto& [k, n] : kCaseNames)
    if (name == n) return k;
  throw ConfigError("case: unknown case '" + name + "'");
}

void CaseConfig::validate() const
{
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  require(nx >= 1, "nx: must be >= 1");
  require(ny >= 1, "ny: must be >= 1");
  require(bounds.x_max > bounds.x_min, "x_max: must exceed x_min");
  require(bounds.y_max > bounds.y_min, "y_max: must exceed y_min");
  bc.validate();
  params.validate();
  require(cfl > 0.0 && cfl <= 1.0, "cfl: must lie in (0, 1]");
  require(!std::isnan(t_end), "t_end: required for case " + case_name(kind));
  require(t_end >= 0.0 && std::isfinite(t_end), "t_end: must be finite and >= 0");
  require(dt_max > 0.0, "dt_max: must be positive");
  require(max_steps >= 1, "max_steps: must be >= 1");
  for (double t : snapshot_times) require(t >= 0.0 && t <= t_end, "snapshot_times: every time must lie in [0, t_end]");
  require(scheme.aeno.l > 0.0, "aeno_l: must be positive");
  require(scheme.aeno.eps > 0.0, "aeno_eps: must be positive");
  require(threads >= 0, "threads: must be >= 0");
  for (double d : grain_sizes) require(d > 0.0, "grain_sizes: diameters must be positive");
  if (kind == CaseKind::multigrain) require(!grain_sizes.empty(), "grain_sizes: required for case multigrain");
  if (kind == CaseKind::custom) {
    require(!initial_state.empty(), "initial_state: required for case custom");
    require(std::filesystem::exists(initial_state), "initial_state: file not found: " + initial_state);
  }
  if (!experimental_data.empty())
    require(std::filesystem::exists(experimental_data), "experimental_data: file not found: " + experimental_data);
}

CaseConfig default_config(CaseKind kind)
{
  CaseConfig c;
  c.kind = kind;
  switch (kind) {
    case CaseKind::c_property:
      c.t_end = 1.0;
      c.snapshot_times = {0.25, 0.5, 0.75, 1.0};
      c.scheme.exchange = false;
      break;
    case CaseKind::dambreak1d:
    case CaseKind::multigrain:
      c.nx = 100;
      c.ny = 1;
      c.bounds = {-1.25, 1.25, 0.0, 0.1};
      c.cfl = 0.1;
      c.scheme.exchange = false;
      c.t_end = 1.0;
      c.snapshot_times = {0.5, 0.7, 1.0};
      if (kind == CaseKind::multigrain) {
        c.scheme.exchange = true;
        c.scheme.diffusion = true;
        c.t_end = 0.25;
        c.snapshot_times = {0.25};
        c.grain_sizes = {0.002, 0.0032, 0.008, 0.02};
      }
      break;
    case CaseKind::bedmotion:
      c.t_end = 0.3;
      c.snapshot_times = {0.1, 0.2, 0.3};
      break;
    case CaseKind::riemann2d:
      c.bounds = {-1.0, 1.0, -1.0, 1.0};
      c.t_end = std::numeric_limits<double>::quiet_NaN();
      break;
    case CaseKind::custom: break;
  }
  return c;
}

CaseConfig parse_config(std::string_view text, std::optional<CaseKind> case_override, bool validate)
{
  std::vector<std::pair<std::string, std::string>> pairs;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    pairs.emplace_back(trim(std::string_view(body).substr(0, eq)), trim(std::string_view(body).substr(eq + 1)));
  }

  std::map<std::string, const Entry*> by_key;
  for (const Entry& e : entries()) by_key[e.key] = &e;
  std::map<std::string, int> seen;
  CaseKind kind = CaseKind::c_property;
  for (const auto& [k, v] : pairs) {
    if (!by_key.count(k)) throw ConfigError(k + ": unknown key");
    if (++seen[k] > 1) throw ConfigError(k + ": given more than once");
    if (k == "case") kind = parse_case_name(v);
  }
  if (case_override) kind = *case_override;

  CaseConfig c = default_config(kind);
  for (const auto& [k, v] : pairs)
    if (k != "case") by_key[k]->set(c, v);
  if (validate) c.validate();
  return c;
}

CaseConfig load_config(const std::filesystem::path& path, std::optional<CaseKind> case_override, bool validate)
{
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), case_override, validate);
}

std::vector<std::pair<std::string, std::string>> config_entries(const CaseConfig& config)
{
  std::vector<std::pair<std::string, std::string>> out;
  for (const Entry& e : entries()) out.emplace_back(e.key, e.get(config));
  return out;
}

std::string write_config(const CaseConfig& config)
{
  std::string out;
  for (const auto& [k, v] : config_entries(config)) out += k + " = " + v + "\n";
  return out;
}

}  // namespace sedflow
