#include "sedflow/snapshot.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <string>

namespace sedflow {

std::filesystem::path sidecar_path(const std::filesystem::path& csv)
{
  std::filesystem::path p = csv;
  p.replace_extension(".json");
  return p;
}

void write_snapshot(const StateField& s, const Grid2D& grid, const std::filesystem::path& path,
                    const SnapshotMeta& meta)
{
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw ConfigError("snapshot: cannot write " + path.string());
  std::fputs("x,y,h,hu,hv,hC,zb,eta\n", f);
  for (int k = 0; k < grid.ny(); ++k) {
    for (int i = 0; i < grid.nx(); ++i) {
      const double h = s[kH](i, k);
      const double zb = s[kZB](i, k);
      std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", grid.x_center(i), grid.y_center(k), h,
                   s[kHU](i, k), s[kHV](i, k), s[kHC](i, k), zb, h + zb);
    }
  }
  const bool ok = std::ferror(f) == 0;
  if (std::fclose(f) != 0 || !ok) throw ConfigError("snapshot: write failed for " + path.string());

  nlohmann::ordered_json j;
  j["time"] = meta.time;
  j["nx"] = grid.nx();
  j["ny"] = grid.ny();
  if (meta.config) {
    nlohmann::ordered_json cfg;
    for (const auto& [k, v] : config_entries(*meta.config)) cfg[k] = v;
    j["config"] = cfg;
  }
  if (meta.log) {
    nlohmann::ordered_json steps = nlohmann::ordered_json::array();
    for (const StepRecord& r : *meta.log)
      steps.push_back({{"step", r.step}, {"t", r.t}, {"dt", r.dt}, {"min_h", r.min_h}, {"max_speed", r.max_speed}});
    j["steps"] = steps;
  }
  std::ofstream side(sidecar_path(path));
  if (!side) throw ConfigError("snapshot: cannot write " + sidecar_path(path).string());
  side << j.dump(1) << '\n';
}

Snapshot read_snapshot(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) throw ConfigError("snapshot: cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "x,y,h,hu,hv,hC,zb,eta")
    throw ConfigError("snapshot: unexpected header in " + path.string());
  Snapshot snap;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double v[8];
    const char* p = line.c_str();
    for (int c = 0; c < 8; ++c) {
      char* end = nullptr;
      v[c] = std::strtod(p, &end);
      if (end == p || (c < 7 && *end != ',') || (c == 7 && *end != '\0'))
        throw ConfigError("snapshot: malformed record in " + path.string());
      p = end + 1;
    }
    snap.records.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]});
  }
  if (snap.records.empty()) throw ConfigError("snapshot: no records in " + path.string());
  const double y0 = snap.records.front().y;
  std::size_t nx = 0;
  while (nx < snap.records.size() && snap.records[nx].y == y0) ++nx;
  if (snap.records.size() % nx != 0) throw ConfigError("snapshot: ragged grid in " + path.string());
  snap.nx = static_cast<int>(nx);
  snap.ny = static_cast<int>(snap.records.size() / nx);
  return snap;
}

StateField snapshot_state(const Snapshot& snap, const Grid2D& grid)
{
  if (snap.nx != grid.nx() || snap.ny != grid.ny())
    throw ConfigError("snapshot: grid is " + std::to_string(snap.nx) + "x" + std::to_string(snap.ny) +
                      ", configuration expects " + std::to_string(grid.nx()) + "x" + std::to_string(grid.ny()));
  StateField s(grid);
  std::size_t r = 0;
  for (int k = 0; k < grid.ny(); ++k)
    for (int i = 0; i < grid.nx(); ++i, ++r) {
      const SnapshotRecord& rec = snap.records[r];
      s.set(i, k, {rec.h, rec.hu, rec.hv, rec.hc, rec.zb});
    }
  return s;
}

}  // namespace sedflow
