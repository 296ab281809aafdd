#include <doctest.h>

#include <cmath>
#include <random>

#include "dnlslab/functionals.hpp"
#include "dnlslab/soliton.hpp"

using namespace dnlslab;

namespace {

// Random smooth field localized by a gaussian envelope, so the line
// identities (scaling laws in particular) hold on the box.
ComplexField random_smooth(GridPtr g, unsigned seed, int modes = 10) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> coef(static_cast<size_t>(g->num_points()), cplx(0, 0));
  const int n = g->num_points();
  for (int m = -modes; m <= modes; ++m)
    coef[static_cast<size_t>((m + n) % n)] =
        cplx(gauss(rng), gauss(rng)) / (2.0 + m * m);
  ComplexField f = field_from_spectrum(g, coef);
  // narrow enough that half-scaling (support doubling) stays in the box
  const double w = g->half_width() / 8.0;
  for (int j = 0; j < f.size(); ++j) {
    const double x = g->node(j);
    f.values[static_cast<size_t>(j)] *= std::exp(-x * x / (w * w));
  }
  return f;
}

} // namespace

TEST_CASE("mass: zero, tail-corrected threshold, symmetry invariance") {
  auto g = make_grid(40.0, 1024);
  CHECK(mass(ComplexField(g)) == 0.0);

  // endpoint soliton with the analytic tail reaches 4 pi
  const SolitonParams p = SolitonParams::make(1.0, 2.0, 0.0);
  auto gl = make_grid(200.0, 8192);
  const ComplexField phi = build_soliton(p, gl);
  const TailCorrections t = endpoint_tail_corrections(p, *gl);
  CHECK(std::abs(mass(phi) + t.mass - 4 * M_PI) < 1e-8);

  const ComplexField f = random_smooth(g, 4);
  const ComplexField moved = shift_field(std::polar(1.0, 1.1) * f,
                                         7 * g->spacing());
  CHECK(std::abs(mass(moved) - mass(f)) < 1e-12 * mass(f));
}

TEST_CASE("momentum: real fields, phase twist, degenerate zero") {
  auto g = make_grid(40.0, 1024);
  ComplexField real_f(g);
  for (int j = 0; j < real_f.size(); ++j)
    real_f.values[static_cast<size_t>(j)] =
        std::exp(-0.1 * g->node(j) * g->node(j));
  CHECK(std::abs(momentum(real_f)) < 1e-12);

  // P(e^{irx} u) = P(u) - r M(u); start from a field with P = 0
  const double r = 6.0 * M_PI / 40.0; // on-grid wavenumber
  ComplexField twisted(g);
  for (int j = 0; j < twisted.size(); ++j)
    twisted.values[static_cast<size_t>(j)] =
        real_f.values[static_cast<size_t>(j)] *
        std::polar(1.0, r * g->node(j));
  CHECK(std::abs(momentum(twisted) - (-r * mass(real_f))) <
        1e-8 * r * mass(real_f));

  const DegenerateInfo deg = kappa0(0.5, 1e-9);
  const SolitonParams p = SolitonParams::make(1.0, 2.0 * deg.kappa0, 0.5);
  CHECK(std::abs(momentum(build_soliton(p, g))) < 1e-7);
}

TEST_CASE("energy: zero field, degenerate zeros, E = -(c/4) P across the family") {
  auto g = make_grid(40.0, 2048);
  CHECK(energy(ComplexField(g), 1.0) == 0.0);

  for (double b : {0.5, 1.0}) {
    const DegenerateInfo deg = kappa0(b, 1e-9);
    const SolitonParams p = SolitonParams::make(1.0, 2.0 * deg.kappa0, b);
    CHECK(std::abs(energy(build_soliton(p, g), b)) < 1e-7);
  }
  // b = 0 degenerate member: tail-corrected energy vanishes
  const SolitonParams p0 = SolitonParams::make(1.0, 2.0, 0.0);
  const EndpointFunctionals ef =
      endpoint_corrected_functionals(p0, make_grid(200.0, 8192));
  CHECK(std::abs(ef.energy) < 1e-8);

  for (const SolitonParams& p :
       {SolitonParams::make(1.0, 1.0, 0.0), SolitonParams::make(1.0, -1.0, 0.5),
        SolitonParams::make(2.0, 1.0, 1.0)}) {
    const ComplexField phi = build_soliton(p, g);
    const double e = energy(phi, p.b);
    const double pm = momentum(phi);
    CHECK(std::abs(e - (-p.c / 4.0 * pm)) <= 1e-8 * std::max(std::abs(e), 1.0));
  }
}

TEST_CASE("N1 and N2 basics and the degenerate combination") {
  auto g = make_grid(40.0, 1024);
  ComplexField real_f(g);
  for (int j = 0; j < real_f.size(); ++j)
    real_f.values[static_cast<size_t>(j)] =
        std::exp(-0.2 * g->node(j) * g->node(j));
  CHECK(std::abs(n1(real_f)) < 1e-12);

  for (unsigned seed : {1u, 2u, 3u, 4u})
    CHECK(n2(random_smooth(g, seed), 0.8) >= 0.0);

  // on the degenerate soliton, E = 0 forces N1 = 2||phi'||^2 - (2b/3)||phi||^6
  const double b = 0.5;
  const DegenerateInfo deg = kappa0(b, 1e-9);
  const SolitonParams p = SolitonParams::make(1.0, 2.0 * deg.kappa0, b);
  const ComplexField phi = build_soliton(p, g);
  const FieldNorms nm = norms(phi);
  CHECK(std::abs(n1(phi) - (2.0 * nm.hdot1_sq - 2.0 * b / 3.0 * nm.l6_pow6)) <
        1e-7);
}

TEST_CASE("K vanishes on family members and the dual formulas agree") {
  auto g = make_grid(40.0, 2048);
  for (const SolitonParams& p :
       {SolitonParams::make(1.0, 1.0, 0.0), SolitonParams::make(1.0, 0.0, 0.5),
        SolitonParams::make(2.0, -1.0, 1.0)}) {
    const ComplexField phi = build_soliton(p, g);
    CHECK(std::abs(nehari_K(phi, p.omega, p.c, p.b)) < 1e-6);
  }
  CHECK(nehari_K(ComplexField(g), 1.0, 1.0, 1.0) == 0.0);

  for (unsigned seed = 0; seed < 100; ++seed) {
    const ComplexField f = random_smooth(g, seed);
    const double w = 0.5 + 0.02 * seed, c = -1.0 + 0.02 * seed, b = 0.01 * seed;
    const double k1 = nehari_K(f, w, c, b);
    const double k2 = nehari_K_expanded(f, w, c, b);
    const double scale = std::max({std::abs(k1), std::abs(k2), 1e-12});
    CHECK(std::abs(k1 - k2) <= 1e-9 * scale);
  }
}

TEST_CASE("K and S scaling expansions under the mass-critical scaling") {
  auto g = make_grid(40.0, 1024);
  const DegenerateInfo deg = kappa0(0.5, 1e-9);
  for (unsigned seed : {3u, 5u, 8u}) {
    const ComplexField u = random_smooth(g, seed);
    const double w = 1.3;
    const double c = 2.0 * deg.kappa0 * std::sqrt(w);
    const double b = 0.5;
    const ConservedTriple emp = conserved(u, b);
    const FieldNorms nm = norms(u);
    for (double lam : {0.5, 1.0, 2.0}) {
      const ComplexField ul = scale_field(u, lam);
      // K_w(u_lam) = lam^2(-||u'||^2 - b/3 ||u||^6) + 4 lam^2 E + w M + c lam P
      const double lhs = nehari_K(ul, w, c, b);
      const double rhs = lam * lam * (-nm.hdot1_sq - b / 3.0 * nm.l6_pow6) +
                         4.0 * lam * lam * emp.energy + w * emp.mass +
                         c * lam * emp.momentum;
      CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs)));
      // 2 S_w(u_lam) = 2 lam^2 E + w M + c lam P
      const double s2 = 2.0 * action_S(ul, w, c, b);
      const double s2_expected = 2.0 * lam * lam * emp.energy + w * emp.mass +
                                 c * lam * emp.momentum;
      CHECK(std::abs(s2 - s2_expected) <=
            1e-8 * std::max(1.0, std::abs(s2_expected)));
    }
  }
}

TEST_CASE("action: zero field and the threshold identity 2 S = w M*") {
  auto g = make_grid(40.0, 2048);
  CHECK(action_S(ComplexField(g), 1.0, 0.5, 0.3) == 0.0);

  const double b = 0.5;
  const DegenerateInfo deg = kappa0(b, 1e-9);
  for (double w : {0.5, 1.0, 2.0}) {
    const double c = 2.0 * deg.kappa0 * std::sqrt(w);
    const SolitonParams p = SolitonParams::make(w, c, b);
    const ComplexField phi = build_soliton(p, g);
    const double s = action_S(phi, w, c, b);
    CHECK(std::abs(2.0 * s - w * deg.threshold_mass) <
          1e-7 * std::max(1.0, w * deg.threshold_mass));
  }
}

TEST_CASE("all functionals are gauge and translation invariant") {
  auto g = make_grid(40.0, 512);
  const ComplexField f = random_smooth(g, 12);
  const ComplexField moved =
      shift_field(std::polar(1.0, 2.0) * f, 11 * g->spacing());
  const double b = 0.8, w = 1.1, c = -0.4;
  CHECK(std::abs(mass(moved) - mass(f)) <= 1e-12 * std::abs(mass(f)));
  CHECK(std::abs(momentum(moved) - momentum(f)) <=
        1e-10 * std::max(1.0, std::abs(momentum(f))));
  CHECK(std::abs(energy(moved, b) - energy(f, b)) <=
        1e-10 * std::max(1.0, std::abs(energy(f, b))));
  CHECK(std::abs(n1(moved) - n1(f)) <= 1e-10 * std::max(1.0, std::abs(n1(f))));
  CHECK(std::abs(n2(moved, b) - n2(f, b)) <= 1e-12 * std::abs(n2(f, b)));
  CHECK(std::abs(nehari_K(moved, w, c, b) - nehari_K(f, w, c, b)) <=
        1e-10 * std::max(1.0, std::abs(nehari_K(f, w, c, b))));
  CHECK(std::abs(action_S(moved, w, c, b) - action_S(f, w, c, b)) <=
        1e-10 * std::max(1.0, std::abs(action_S(f, w, c, b))));
}

TEST_CASE("Galilean phase-twist law on random fields") {
  auto g = make_grid(40.0, 1024);
  for (unsigned seed : {21u, 22u}) {
    const ComplexField f = random_smooth(g, seed);
    const double r = 4.0 * M_PI / 40.0;
    ComplexField tw(g);
    for (int j = 0; j < tw.size(); ++j)
      tw.values[static_cast<size_t>(j)] =
          f.values[static_cast<size_t>(j)] * std::polar(1.0, r * g->node(j));
    const double expected = momentum(f) - r * mass(f);
    CHECK(std::abs(momentum(tw) - expected) <=
          1e-9 * std::max(1.0, std::abs(expected)));
  }
}
