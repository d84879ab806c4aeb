#include "sedflow/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace sedflow {

namespace {

double pick(const SnapshotRecord& r, const std::string& field)
{
  if (field == "h") return r.h;
  if (field == "hu") return r.hu;
  if (field == "hv") return r.hv;
  if (field == "hC") return r.hc;
  if (field == "zb") return r.zb;
  if (field == "eta") return r.eta;
  throw ConfigError("field: unknown field '" + field + "'");
}

}  // namespace

ScalarField extract(const StateField& s, const Grid2D& grid, const std::string& field)
{
  ScalarField out{grid.nx(), grid.ny(), {}};
  out.values.reserve(grid.interior_size());
  for (int k = 0; k < grid.ny(); ++k) {
    for (int i = 0; i < grid.nx(); ++i) {
      const SnapshotRecord r{0.0, 0.0, s[kH](i, k), s[kHU](i, k), s[kHV](i, k), s[kHC](i, k), s[kZB](i, k),
                             s[kH](i, k) + s[kZB](i, k)};
      out.values.push_back(pick(r, field));
    }
  }
  return out;
}

double l1_diff(const ScalarField& a, const ScalarField& b)
{
  if (a.nx != b.nx || a.ny != b.ny || a.values.size() != b.values.size())
    throw ContractViolation("l1_diff: fields differ in shape");
  double sum = 0.0;
  for (std::size_t n = 0; n < a.values.size(); ++n) sum += std::abs(a.values[n] - b.values[n]);
  return sum / static_cast<double>(a.values.size());
}

ScalarField restrict_average(const ScalarField& fine, int fx, int fy)
{
  if (fx < 1 || fy < 1 || fine.nx % fx != 0 || fine.ny % fy != 0)
    throw ContractViolation("restrict_average: fine grid is not divisible by the block size");
  ScalarField out{fine.nx / fx, fine.ny / fy, {}};
  out.values.assign(static_cast<std::size_t>(out.nx) * out.ny, 0.0);
  const double w = 1.0 / (fx * fy);
  for (int k = 0; k < out.ny; ++k) {
    for (int i = 0; i < out.nx; ++i) {
      double sum = 0.0;
      for (int b = 0; b < fy; ++b)
        for (int a = 0; a < fx; ++a) sum += fine(i * fx + a, k * fy + b);
      out.values[static_cast<std::size_t>(k) * out.nx + i] = sum * w;
    }
  }
  return out;
}

double convergence_rate(double coarse_diff, double fine_diff) { return std::log2(coarse_diff / fine_diff); }

RateEstimate convergence_rate(const ScalarField& quarter, const ScalarField& half, const ScalarField& full)
{
  auto restrict_once = [](const ScalarField& f) { return restrict_average(f, 2, f.ny == 1 ? 1 : 2); };
  RateEstimate r;
  r.coarse_diff = l1_diff(restrict_once(half), quarter);
  r.fine_diff = l1_diff(restrict_once(full), half);
  r.rate = convergence_rate(r.coarse_diff, r.fine_diff);
  if (!std::isfinite(r.rate)) {
    std::ostringstream os;
    os << "rate undefined: coarse diff " << r.coarse_diff << ", fine diff " << r.fine_diff;
    r.diagnostic = os.str();
  }
  return r;
}

std::vector<std::pair<double, double>> read_xy(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) throw ConfigError("data: cannot read " + path.string());
  std::vector<std::pair<double, double>> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::replace(line.begin(), line.end(), '\t', ' ');
    const auto first = line.find_first_not_of(' ');
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    double x = 0.0;
    double v = 0.0;
    if (!(ls >> x >> v)) {
      if (out.empty() && line_no == 1) continue;  // header row
      throw ConfigError("data: malformed line " + std::to_string(line_no) + " in " + path.string());
    }
    out.emplace_back(x, v);
  }
  if (out.empty()) throw ConfigError("data: no points in " + path.string());
  return out;
}

Misfit profile_misfit(const Snapshot& snap, const std::vector<std::pair<double, double>>& data,
                      const std::string& field)
{
  if (snap.records.empty()) throw ContractViolation("profile_misfit: empty snapshot");
  // Row closest to mid-height.
  const double y_lo = snap.records.front().y;
  const double y_hi = snap.records.back().y;
  const double y_mid = 0.5 * (y_lo + y_hi);
  int row = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < snap.ny; ++k) {
    const double d = std::abs(snap.records[static_cast<std::size_t>(k) * snap.nx].y - y_mid);
    if (d < best) {
      best = d;
      row = k;
    }
  }
  const SnapshotRecord* r = &snap.records[static_cast<std::size_t>(row) * snap.nx];
  Misfit m;
  double sum = 0.0;
  for (const auto& [x, value] : data) {
    if (x < r[0].x || x > r[snap.nx - 1].x) continue;
    int i = 0;
    while (i + 1 < snap.nx - 1 && r[i + 1].x < x) ++i;
    double sim = pick(r[0], field);
    if (snap.nx > 1) {
      const double t = (x - r[i].x) / (r[i + 1].x - r[i].x);
      sim = (1.0 - t) * pick(r[i], field) + t * pick(r[i + 1], field);
    }
    sum += std::abs(sim - value);
    ++m.points;
  }
  if (m.points) m.l1 = sum / static_cast<double>(m.points);
  return m;
}

}  // namespace sedflow
