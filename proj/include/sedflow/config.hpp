#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sedflow/grid.hpp"
#include "sedflow/physics.hpp"
#include "sedflow/scheme.hpp"

namespace sedflow {

enum class CaseKind { c_property, dambreak1d, multigrain, bedmotion, riemann2d, custom };

std::string case_name(CaseKind kind);
CaseKind parse_case_name(const std::string& name);  // throws ConfigError

struct CaseConfig {
  CaseKind kind = CaseKind::c_property;
  int nx = 100;
  int ny = 100;
  Bounds bounds;
  BoundarySpec bc;
  PhysParams params;
  SchemeOptions scheme;
  double cfl = 0.5;
  double t_end = 1.0;  // NaN means "not set"
  double dt_max = 0.01;
  long max_steps = 10'000'000;
  std::vector<double> snapshot_times;
  std::string output_dir = "out";
  std::vector<double> grain_sizes;  // multigrain sweep
  std::string initial_state;        // custom: snapshot CSV holding the initial fields
  std::string experimental_data;    // optional two-column (x, value) file
  int threads = 0;                  // 0: OpenMP default

  // Throws ConfigError naming the offending key.
  void validate() const;

  bool operator==(const CaseConfig&) const = default;
};

// Built-in defaults for a case (domain, boundaries, switches, times).
CaseConfig default_config(CaseKind kind);

// `key = value` lines, '#' starts a comment, lists are comma separated. The case is taken from
// `case_override` when given, else from the `case` key, else c-property; its defaults are applied
// first and every other key overrides them.
CaseConfig parse_config(std::string_view text, std::optional<CaseKind> case_override = {}, bool validate = true);
CaseConfig load_config(const std::filesystem::path& path, std::optional<CaseKind> case_override = {},
                       bool validate = true);

// Every key with its current value, in documented order.
std::vector<std::pair<std::string, std::string>> config_entries(const CaseConfig& config);
std::string write_config(const CaseConfig& config);

std::string format_double(double value);  // shortest text that reads back bitwise

}  // namespace sedflow
