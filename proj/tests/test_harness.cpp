#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "oracles.hpp"
#include "sedflow/analysis.hpp"
#include "sedflow/cases.hpp"
#include "sedflow/config.hpp"
#include "sedflow/runner.hpp"
#include "sedflow/snapshot.hpp"

using namespace sedflow;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name)
{
  const fs::path dir = fs::temp_directory_path() / ("sedflow_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_text(const fs::path& path)
{
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

ScalarField make_field(int nx, int ny, std::vector<double> values) { return {nx, ny, std::move(values)}; }

}  // namespace

TEST_CASE("empty config gives the reference parameters")
{
  const CaseConfig c = parse_config("", CaseKind::c_property);
  CHECK(c.kind == CaseKind::c_property);
  CHECK(c.params.rho_w == 1000.0);
  CHECK(c.params.rho_s == 2650.0);
  CHECK(c.params.phi_e == 0.015);
  CHECK(c.params.nu == 1.2e-5);
  CHECK(c.params.porosity == 0.4);
  CHECK(c.params.g == 9.8);
  CHECK(c.params.d50 == 0.001);
  CHECK(c.params.manning == 0.028);
  CHECK(c.params.hindered_m == 2.0);
  CHECK(c.bounds == Bounds{0.0, 1.0, 0.0, 1.0});
  CHECK(parse_config("") == c);
}

TEST_CASE("config errors name the key")
{
  CHECK_THROWS_AS(parse_config("cfl = 1.5"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("cfl = 1.5"), doctest::Contains("cfl"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("no_such_key = 1"), doctest::Contains("no_such_key"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("nx = ten"), doctest::Contains("nx"), ConfigError);
  CHECK_THROWS_AS(parse_config("case = riemann2d"), ConfigError);
  CHECK_NOTHROW(parse_config("case = riemann2d\nt_end = 0.1"));
  CHECK_THROWS_AS(parse_config("porosity = 1.2"), ConfigError);
  CHECK_THROWS_AS(parse_case_name("tsunami"), ConfigError);
}

TEST_CASE("config round trip")
{
  CaseConfig c = default_config(CaseKind::multigrain);
  c.nx = 64;
  c.cfl = 0.3;
  c.params.d50 = 0.0032;
  c.params.nu = 1.0 / 3.0 * 1e-5;
  c.scheme.quadrature = Quadrature::gauss3;
  c.scheme.aeno.eps = 1e-6;
  c.snapshot_times = {0.1, 0.25};
  c.output_dir = "results/run one";
  const CaseConfig back = parse_config(write_config(c));
  CHECK(back == c);

  for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5})
    CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("initial conditions")
{
  CaseConfig c = default_config(CaseKind::c_property);
  c.nx = c.ny = 1;
  c.bounds = {0.0, 1.0, 0.0, 1.0};
  StateField s = init_case(c, make_grid(c));
  CHECK(s[kZB](0, 0) == doctest::Approx(0.12).epsilon(1e-15));
  CHECK(s[kH](0, 0) == doctest::Approx(1.88).epsilon(1e-15));
  CHECK(s[kHU](0, 0) == 0.0);

  CaseConfig d = default_config(CaseKind::dambreak1d);
  const Grid2D gd = make_grid(d);
  const StateField sd = init_case(d, gd);
  for (int i = 0; i < gd.nx(); ++i) {
    if (gd.x_center(i) > 0.0) CHECK(sd[kH](i, 0) == 0.0);
    if (gd.x_center(i) < 0.0) CHECK(sd[kH](i, 0) == 0.1);
  }

  CaseConfig r = default_config(CaseKind::riemann2d);
  r.t_end = 0.1;
  r.nx = r.ny = 20;
  const Grid2D gr = make_grid(r);
  const StateField sr = init_case(r, gr);
  // Cells (9, 9)/(10, 10) touch the origin; (19, 19) holds (0.95, 0.95).
  CHECK(sr[kH](9, 9) == 2.0);
  CHECK(sr[kZB](10, 10) == 2.0);
  CHECK(sr[kH](19, 19) == 1.0);
  CHECK(sr[kZB](19, 19) == 1.0);
  CHECK(sr[kHC](19, 19) == doctest::Approx(0.001));

  // With dx = 0.2 the cell spanning [0.4, 0.6] is half inside the square.
  r.nx = r.ny = 10;
  const StateField half = init_case(r, make_grid(r));
  CHECK(half[kH](7, 5) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(half[kH](7, 7) == doctest::Approx(1.25).epsilon(1e-14));
}

TEST_CASE("l1 difference")
{
  const ScalarField a = make_field(2, 2, {0.0, 1.0, 2.0, 3.0});
  CHECK(l1_diff(a, a) == 0.0);
  const ScalarField b = make_field(2, 2, {0.1, 0.7, 2.2, 3.2});
  CHECK(l1_diff(a, b) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK_THROWS_AS(l1_diff(a, make_field(4, 1, {0, 0, 0, 0})), ContractViolation);

  oracle::Rng rng(1);
  for (int n = 0; n < 100; ++n) {
    std::vector<double> x(12), y(12), z(12), sx(12);
    const double s = rng.uniform(-3.0, 3.0);
    for (int j = 0; j < 12; ++j) {
      x[j] = rng.uniform(-1.0, 1.0);
      y[j] = rng.uniform(-1.0, 1.0);
      z[j] = rng.uniform(-1.0, 1.0);
    }
    for (int j = 0; j < 12; ++j) sx[j] = s * x[j];
    const ScalarField fx = make_field(4, 3, x), fy = make_field(4, 3, y), fz = make_field(4, 3, z);
    std::vector<double> sy(12);
    for (int j = 0; j < 12; ++j) sy[j] = s * y[j];
    CHECK(l1_diff(fx, fy) == doctest::Approx(l1_diff(fy, fx)));
    CHECK(l1_diff(fx, fz) <= l1_diff(fx, fy) + l1_diff(fy, fz) + 1e-15);
    CHECK(l1_diff(make_field(4, 3, sx), make_field(4, 3, sy)) == doctest::Approx(std::abs(s) * l1_diff(fx, fy)));
  }
}

TEST_CASE("convergence rate")
{
  CHECK(convergence_rate(4e-2, 1e-2) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(convergence_rate(2.11e-2, 5.83e-3) == doctest::Approx(1.856).epsilon(1e-3));
  CHECK(convergence_rate(3e-3, 3e-3) == 0.0);
  CHECK(convergence_rate(7e-5 * 2.11e-2, 7e-5 * 5.83e-3) == doctest::Approx(convergence_rate(2.11e-2, 5.83e-3)));
  CHECK_FALSE(std::isfinite(convergence_rate(1e-3, 0.0)));

  // Fields with a known error law: phi_N = phi + K / N^2 restricts to the same mean shift.
  auto field = [](int n, double offset) { return ScalarField{n, n, std::vector<double>(n * n, 1.0 + offset)}; };
  const RateEstimate r = convergence_rate(field(4, 1.0 / 16), field(8, 1.0 / 64), field(16, 1.0 / 256));
  CHECK(r.rate == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.diagnostic.empty());

  const RateEstimate flat = convergence_rate(field(4, 0.0), field(8, 0.0), field(16, 0.0));
  CHECK_FALSE(std::isfinite(flat.rate));
  CHECK_FALSE(flat.diagnostic.empty());
}

TEST_CASE("restriction by block averaging")
{
  // Piecewise constant on the coarse cells restricts exactly.
  std::vector<double> fine(8 * 6);
  for (int k = 0; k < 6; ++k)
    for (int i = 0; i < 8; ++i) fine[k * 8 + i] = 10.0 * (k / 2) + (i / 2);
  const ScalarField c = restrict_average(make_field(8, 6, fine), 2, 2);
  CHECK(c.nx == 4);
  CHECK(c.ny == 3);
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 4; ++i) CHECK(c(i, k) == 10.0 * k + i);

  const ScalarField row = restrict_average(make_field(4, 1, {1.0, 3.0, 5.0, 9.0}), 2, 1);
  CHECK(row.values == std::vector<double>{2.0, 7.0});
  CHECK_THROWS_AS(restrict_average(make_field(3, 1, {1.0, 2.0, 3.0}), 2, 1), ContractViolation);
}

TEST_CASE("snapshot files")
{
  const fs::path dir = scratch_dir("snapshot");
  const Grid2D one = Grid2D::build({0.0, 1.0, 0.0, 1.0}, 1, 1);
  StateField s(one);
  s.set(0, 0, {1.0 / 3.0, 0.1, -0.2, 1e-17, 0.7});
  const CaseConfig cfg = default_config(CaseKind::c_property);
  write_snapshot(s, one, dir / "one.csv", {0.5, &cfg, nullptr});
  const std::string text = read_text(dir / "one.csv");
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  CHECK(text.rfind("x,y,h,hu,hv,hC,zb,eta\n", 0) == 0);
  CHECK(fs::exists(sidecar_path(dir / "one.csv")));
  CHECK(read_text(sidecar_path(dir / "one.csv")).find("\"time\"") != std::string::npos);

  const Grid2D g = Grid2D::build({-1.0, 1.0, 0.0, 0.5}, 7, 3);
  StateField w(g);
  oracle::Rng rng(6);
  for (int k = 0; k < g.ny(); ++k)
    for (int i = 0; i < g.nx(); ++i) w.set(i, k, oracle::random_state(rng));
  write_snapshot(w, g, dir / "w.csv", {0.0, &cfg, nullptr});
  const Snapshot snap = read_snapshot(dir / "w.csv");
  CHECK(snap.nx == 7);
  CHECK(snap.ny == 3);
  for (const SnapshotRecord& r : snap.records) CHECK(r.eta == r.h + r.zb);
  const StateField back = snapshot_state(snap, g);
  for (int k = 0; k < g.ny(); ++k)
    for (int i = 0; i < g.nx(); ++i) CHECK(back.at(i, k) == w.at(i, k));

  write_snapshot(w, g, dir / "w2.csv", {0.0, &cfg, nullptr});
  CHECK(read_text(dir / "w.csv") == read_text(dir / "w2.csv"));
  CHECK_THROWS_AS(snapshot_state(snap, Grid2D::build({0.0, 1.0, 0.0, 1.0}, 3, 3)), ConfigError);
  fs::remove_all(dir);
}

TEST_CASE("experimental data and profile misfit")
{
  const fs::path dir = scratch_dir("misfit");
  {
    std::ofstream out(dir / "data.txt");
    out << "# x eta\n0.0, 0.5\n\n0.25\t0.5\n 0.5 0.5\n";
  }
  const auto data = read_xy(dir / "data.txt");
  REQUIRE(data.size() == 3);
  CHECK(data[1] == std::pair<double, double>{0.25, 0.5});

  const Grid2D g = Grid2D::build({0.0, 1.0, 0.0, 0.1}, 10, 1);
  StateField s(g);
  for (int i = 0; i < g.nx(); ++i) s.set(i, 0, {0.5 + 0.1 * g.x_center(i), 0.0, 0.0, 0.0, 0.0});
  const CaseConfig cfg = default_config(CaseKind::dambreak1d);
  write_snapshot(s, g, dir / "s.csv", {0.0, &cfg, nullptr});
  const Misfit m = profile_misfit(read_snapshot(dir / "s.csv"), data, "eta");
  // x = 0 lies before the first cell centre and is skipped.
  CHECK(m.points == 2);
  CHECK(m.l1 == doctest::Approx((0.1 * 0.25 + 0.1 * 0.5) / 2.0).epsilon(1e-12));
  {
    std::ofstream bad(dir / "bad.txt");
    bad << "1.0 abc\n";
  }
  CHECK_THROWS_AS(read_xy(dir / "bad.txt"), ConfigError);
  fs::remove_all(dir);
}

TEST_CASE("run reports and snapshot files")
{
  const fs::path dir = scratch_dir("run");
  CaseConfig c = default_config(CaseKind::c_property);
  c.nx = c.ny = 10;
  c.t_end = 0.05;
  c.snapshot_times = {0.0, 0.05};
  c.output_dir = dir.string();
  const std::vector<RunReport> reports = run_case(c);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].snapshots.size() == 2);
  for (const std::string& f : reports[0].snapshots) CHECK(fs::exists(f));
  CHECK(fs::exists(dir / "report.json"));
  CHECK(reports[0].t_final == 0.05);
  CHECK(reports[0].energy.size() >= 2);

  CaseConfig r = default_config(CaseKind::riemann2d);
  r.nx = r.ny = 20;
  r.t_end = 0.01;
  RunOptions quiet;
  quiet.write_files = false;
  const RunResult rr = run_single(r, quiet);
  CHECK(rr.report.min_h >= 0.0);
  for (int k = 0; k < rr.grid.ny(); ++k)
    for (int i = 0; i < rr.grid.nx(); ++i)
      for (std::size_t m = 0; m < 5; ++m) CHECK(std::isfinite(rr.state[m](i, k)));
  fs::remove_all(dir);
}

TEST_CASE("custom case starts from a snapshot")
{
  const fs::path dir = scratch_dir("custom");
  CaseConfig b = default_config(CaseKind::bedmotion);
  b.nx = b.ny = 6;
  const Grid2D g = make_grid(b);
  const StateField s = init_case(b, g);
  write_snapshot(s, g, dir / "init.csv", {0.0, &b, nullptr});

  CaseConfig c = parse_config("case = custom\nnx = 6\nny = 6\nt_end = 0\ninitial_state = " + (dir / "init.csv").string());
  CHECK(init_case(c, make_grid(c)) == s);
  fs::remove_all(dir);
}
