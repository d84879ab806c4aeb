#pragma once

#include <filesystem>
#include <vector>

#include "sedflow/config.hpp"
#include "sedflow/grid.hpp"
#include "sedflow/timeint.hpp"

namespace sedflow {

struct SnapshotRecord {
  double x, y, h, hu, hv, hc, zb, eta;
};

struct Snapshot {
  int nx = 0;
  int ny = 0;
  std::vector<SnapshotRecord> records;  // row-major over (k, i)
};

struct SnapshotMeta {
  double time = 0.0;
  const CaseConfig* config = nullptr;
  const std::vector<StepRecord>* log = nullptr;
};

// CSV with header x,y,h,hu,hv,hC,zb,eta and 17 significant digits, plus a JSON sidecar
// (same stem, .json) with the time, resolved config and step log.
void write_snapshot(const StateField& state, const Grid2D& grid, const std::filesystem::path& path,
                    const SnapshotMeta& meta);

// Parses a snapshot CSV; nx is inferred from the first run of equal y values.
Snapshot read_snapshot(const std::filesystem::path& path);

// Interior fields of `grid` from a snapshot of matching size.
StateField snapshot_state(const Snapshot& snap, const Grid2D& grid);

std::filesystem::path sidecar_path(const std::filesystem::path& csv);

}  // namespace sedflow
