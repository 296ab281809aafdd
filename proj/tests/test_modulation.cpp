#include <doctest.h>

#include <cmath>

#include "dnlslab/modulation.hpp"
#include "dnlslab/soliton.hpp"

using namespace dnlslab;

namespace {

struct Setup {
  GridPtr grid;
  DegenerateInfo deg;
  ComplexField target; // phi_{1, 2 kappa0} at b = 0.5
  double b = 0.5;
};

const Setup& setup() {
  static const Setup s = [] {
    Setup out;
    out.grid = make_grid(40.0, 1024);
    out.deg = kappa0(0.5, 1e-9, out.grid);
    const SolitonParams p = SolitonParams::make(1.0, 2.0 * out.deg.kappa0, 0.5);
    out.target = build_soliton(p, out.grid);
    return out;
  }();
  return s;
}

} // namespace

TEST_CASE("lambda0: degenerate soliton, scaling law, b = 0 reduction") {
  const Setup& s = setup();
  const double mstar = mass(s.target);
  CHECK(std::abs(lambda0(s.target, 1.0, s.b, mstar) - 1.0) < 1e-8);

  // lambda0(u_mu) = lambda0(u) / mu
  for (double mu : {0.5, 1.7}) {
    const ComplexField um = scale_field(s.target, mu);
    CHECK(std::abs(lambda0(um, 1.0, s.b, mstar) -
                   lambda0(s.target, 1.0, s.b, mstar) / mu) < 1e-8);
  }

  // b = 0: lambda0 = ||target'|| / ||u'||
  auto g = s.grid;
  const SolitonParams p0 = SolitonParams::make(1.0, 2.0, 0.0);
  const ComplexField phi0 = build_soliton(p0, g);
  const double m0 = mass(phi0);
  ComplexField u(g);
  for (int j = 0; j < u.size(); ++j) {
    const double x = g->node(j);
    u.values[static_cast<size_t>(j)] = std::exp(-x * x / 3.0) *
                                       std::polar(1.0, 0.2 * x);
  }
  const double lam = lambda0(u, 1.0, 0.0, m0);
  // with M* from the grid target, w M* = ||target'||^2 up to tail effects
  const double ratio = std::sqrt(norms(phi0).hdot1_sq / norms(u).hdot1_sq);
  CHECK(std::abs(lam - ratio) < 2e-3 * ratio);

  CHECK_THROWS_AS(lambda0(ComplexField(g), 1.0, 0.0, m0),
                  std::invalid_argument);
}

TEST_CASE("orbit_distance: self distance and planted symmetry recovery") {
  const Setup& s = setup();
  const ModulationFit self = orbit_distance(s.target, s.target, 1.0, s.b);
  CHECK(self.distance < 1e-10);
  CHECK(std::abs(self.lambda0 - 1.0) < 1e-8);
  CHECK(std::min(self.theta, 2 * M_PI - self.theta) < 1e-8);
  CHECK(std::abs(self.shift) < 1e-8);

  // planted phase and node shift
  const double alpha = 1.0, y = 16 * s.grid->spacing();
  const ComplexField planted =
      shift_field(std::polar(1.0, alpha) * s.target, y);
  const ModulationFit fit = orbit_distance(planted, s.target, 1.0, s.b);
  CHECK(fit.distance < 1e-9);
  // residual convention target - e^{i theta} v(. - y): recovered angle is
  // -alpha mod 2 pi, recovered shift -y
  CHECK(std::abs(std::remainder(fit.theta + alpha, 2 * M_PI)) < 1e-6);
  CHECK(std::abs(fit.shift + y) < 1e-6);
}

TEST_CASE("orbit_distance recovers off-grid shifts") {
  const Setup& s = setup();
  const double y = 7.37 * s.grid->spacing(); // not a node multiple
  const ComplexField planted =
      shift_field(std::polar(1.0, -0.6) * s.target, y);
  const ModulationFit fit = orbit_distance(planted, s.target, 1.0, s.b);
  CHECK(fit.distance < 1e-9);
  CHECK(std::abs(fit.shift + y) < 1e-6);
}

TEST_CASE("amplitude perturbations give small, strictly decreasing distance") {
  const Setup& s = setup();
  double prev = 1e9;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const ComplexField u = cplx(1.0 + eps, 0.0) * s.target;
    const ModulationFit fit = orbit_distance(u, s.target, 1.0, s.b);
    CHECK(fit.distance > 0.0);
    CHECK(fit.distance < prev);
    prev = fit.distance;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("fit parameters reproduce the reported distance") {
  const Setup& s = setup();
  const ComplexField u =
      shift_field(std::polar(1.0, 0.9) * (cplx(1.01, 0.0) * s.target),
                  3.3 * s.grid->spacing());
  const ModulationFit fit = orbit_distance(u, s.target, 1.0, s.b);
  // recompute from stored (theta, y, lambda0)
  const ComplexField v = scale_field(u, fit.lambda0);
  const ComplexField moved = shift_field(v, fit.shift);
  const ComplexField residual =
      s.target - (std::polar(1.0, fit.theta) * moved);
  const FieldNorms nm = norms(residual);
  const double d = std::sqrt(nm.l2_sq + nm.hdot1_sq);
  CHECK(std::abs(d - fit.distance) < 1e-10);
}

TEST_CASE("symmetry invariance and scaling compatibility of the distance") {
  const Setup& s = setup();
  const ComplexField u = cplx(1.02, 0.0) * s.target; // slightly off the orbit
  const double base = orbit_distance(u, s.target, 1.0, s.b).distance;
  for (double th : {0.7, 2.9}) {
    const ComplexField moved =
        shift_field(std::polar(1.0, th) * u, 9 * s.grid->spacing());
    const double d = orbit_distance(moved, s.target, 1.0, s.b).distance;
    CHECK(std::abs(d - base) < 1e-9 * std::max(1.0, base));
  }
  for (double mu : {0.8, 1.25}) {
    const ComplexField um = scale_field(u, mu);
    const double d = orbit_distance(um, s.target, 1.0, s.b).distance;
    CHECK(std::abs(d - base) < 1e-8 * std::max(1.0, base) + 1e-8);
  }
}

TEST_CASE("returned phase is a strict local optimum") {
  const Setup& s = setup();
  const ComplexField u = cplx(1.05, 0.0) * s.target;
  const ModulationFit fit = orbit_distance(u, s.target, 1.0, s.b);
  const ComplexField v = scale_field(u, fit.lambda0);
  const ComplexField moved = shift_field(v, fit.shift);
  auto dist_at = [&](double theta) {
    const ComplexField res = s.target - (std::polar(1.0, theta) * moved);
    const FieldNorms nm = norms(res);
    return std::sqrt(nm.l2_sq + nm.hdot1_sq);
  };
  CHECK(dist_at(fit.theta + 1e-3) > fit.distance);
  CHECK(dist_at(fit.theta - 1e-3) > fit.distance);
}

TEST_CASE("off-grid refinement beats the best node shift") {
  const Setup& s = setup();
  const double y = 4.61 * s.grid->spacing(); // deliberately off-grid
  const ComplexField planted = shift_field(s.target, y);
  // restrict to node shifts: distance at the nearest node is worse than the
  // refined fit
  const ModulationFit fit = align_orbit(planted, s.target);
  const double y_node = std::round(-y / s.grid->spacing()) * s.grid->spacing();
  const ComplexField at_node = shift_field(planted, y_node);
  const ModulationFit node_only = [&] {
    ModulationFit raw;
    const ComplexField res =
        s.target - (std::polar(1.0, 0.0) * at_node);
    const FieldNorms nm = norms(res);
    raw.distance = std::sqrt(nm.l2_sq + nm.hdot1_sq);
    return raw;
  }();
  CHECK(fit.distance <= node_only.distance);
}

TEST_CASE("proximity_series: zero-length trajectory and soliton data") {
  const Setup& s = setup();
  Trajectory traj;
  TrajectorySample smp;
  smp.t = 0.0;
  smp.u = s.target;
  smp.cons = conserved(s.target, s.b);
  traj.samples.push_back(smp);
  const std::vector<ModulationFit> fits = proximity_series(traj, 1.0, s.b);
  REQUIRE(fits.size() == 1);
  CHECK(fits[0].distance < 1e-8);
  CHECK(std::abs(fits[0].lambda() - 1.0) < 1e-6);
}

TEST_CASE("proximity_series stays small along an evolved soliton") {
  const Setup& s = setup();
  EvolveConfig ec;
  ec.dt = 2e-4;
  ec.t_end = 0.5;
  ec.b = s.b;
  ec.record_every = 500;
  const Trajectory traj = run(s.target, ec);
  REQUIRE(traj.status == RunStatus::completed);
  const std::vector<ModulationFit> fits = proximity_series(traj, 1.0, s.b);
  REQUIRE(fits.size() == traj.samples.size());
  for (const ModulationFit& f : fits) CHECK(f.distance < 1e-3);
}
