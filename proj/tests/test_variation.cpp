#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "bergvar/presets.hpp"
#include "bergvar/variation.hpp"
#include "doctest.h"

using namespace bergvar;

namespace {

EngineOptions fast_options() {
  EngineOptions opt;
  opt.basis_size = 16;
  opt.n_radial = 32;
  opt.n_angular = 160;
  return opt;
}

VariationEngine make_engine(FamilyPreset fp, WeightPreset wp = WeightPreset::zero,
                            EngineOptions opt = fast_options()) {
  return VariationEngine(make_family(fp), make_weight(wp), opt);
}

}  // namespace

TEST_CASE("fiber integral derivative: scaled disk closed forms") {
  auto fam = make_family(FamilyPreset::scaled_disk);
  const Integrand one = integrand_from_id("one");
  const Integrand abs2 = integrand_from_id("abs2");

  // area = pi |1+t|^2, moment = pi |1+t|^4 / 2; both derivatives are pi at t=0
  CHECK(std::abs(fiber_integral_derivative(fam, one, {cplx(0.0)}, 0, 48, 256) - kPi) < 1e-10);
  CHECK(std::abs(fiber_integral_derivative(fam, abs2, {cplx(0.0)}, 0, 48, 256) - kPi) <
        1e-10);
  // generic t: d(area)/dt = pi (1 + conj(t))
  const cplx t(0.15, -0.1);
  CHECK(std::abs(fiber_integral_derivative(fam, one, {t}, 0, 48, 256) -
                 kPi * (1.0 + std::conj(t))) < 1e-10);
}

TEST_CASE("fiber integral derivative vanishes for the t-independent disk") {
  auto fam = make_family(FamilyPreset::unit_disk);
  const Integrand one = integrand_from_id("one");
  CHECK(std::abs(fiber_integral_derivative(fam, one, {cplx(0.1, 0.1)}, 0, 32, 128)) <
        1e-12);
}

TEST_CASE("transport formula matches the FD oracle across presets and integrands") {
  const Stencil s{1e-3, true};
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (FamilyPreset p : {FamilyPreset::scaled_disk, FamilyPreset::squeezed_disk,
                         FamilyPreset::double_squeeze, FamilyPreset::motion_at2}) {
    auto fam = make_family(p);
    ParamPoint t;
    for (int j = 0; j < fam.m; ++j) {
      const double r = 0.5 * fam.box_radius(j) / std::sqrt(2.0);
      t.push_back(cplx(r * uni(rng), r * uni(rng)));
    }
    for (const std::string& fid : integrand_ids()) {
      const Integrand f = integrand_from_id(fid);
      for (int j = 0; j < fam.m; ++j) {
        const cplx formula = fiber_integral_derivative(fam, f, t, j, 32, 160);
        const cplx oracle = fiber_integral_fd_oracle(fam, f, t, j, 32, 160, s);
        CHECK(std::abs(formula - oracle) <= std::max(1e-6, 1e-4 * std::abs(oracle)));
      }
    }
  }
}

TEST_CASE("first variation: scaled disk reproduces -1/pi") {
  auto engine = make_engine(FamilyPreset::scaled_disk);
  const auto fv = engine.first_variation({cplx(0.0)}, 0.0, 0.0, 0);
  CHECK(std::abs(fv.value - cplx(-1.0 / kPi)) < 1e-8);
  CHECK(std::abs(fv.oracle - cplx(-1.0 / kPi)) < 1e-7);
  CHECK(std::abs(fv.weight_term) == 0.0);
}

TEST_CASE("first variation vanishes for the t-independent disk") {
  auto engine = make_engine(FamilyPreset::unit_disk);
  const auto fv = engine.first_variation({cplx(0.0)}, cplx(0.2, 0.1), cplx(-0.1, 0.3), 0);
  CHECK(std::abs(fv.value) < 1e-12);
  CHECK(std::abs(fv.oracle) < 1e-9);
}

TEST_CASE("first variation matches the FD oracle on the squeezed disk") {
  auto engine = make_engine(FamilyPreset::squeezed_disk);
  for (const ParamPoint t : {ParamPoint{cplx(0.0)}, ParamPoint{cplx(0.2, 0.0)},
                             ParamPoint{cplx(-0.1, 0.15)}}) {
    const auto fv = engine.first_variation(t, 0.0, 0.0, 0);
    const double scale = std::abs(engine.kernel_value(t, 0.0, 0.0));
    CHECK(std::abs(fv.value - fv.oracle) <=
          std::max(1e-6 * scale, 1e-4 * std::abs(fv.oracle)));
  }
}

TEST_CASE("weighted first variation: scaled disk with phi = |z|^2") {
  EngineOptions opt = fast_options();
  opt.basis_size = 20;
  auto engine = make_engine(FamilyPreset::scaled_disk, WeightPreset::abs2, opt);
  const auto fv = engine.first_variation({cplx(0.0)}, 0.0, 0.0, 0);
  // K^t(0,0) = 1/(pi (1 - e^{-|1+t|^2})); K_t at 0 = -e^{-1}/(pi (1-e^{-1})^2)
  const double want = -std::exp(-1.0) / (kPi * sqr(1.0 - std::exp(-1.0)));
  CHECK(std::abs(fv.value - cplx(want)) < 1e-6);
  CHECK(std::abs(fv.value - fv.oracle) <= 1e-4 * std::abs(fv.oracle));
  CHECK(std::abs(fv.weight_term) == 0.0);  // phi is t-independent
}

TEST_CASE("first variation with two parameters matches the oracle per axis") {
  auto engine = VariationEngine(make_family(FamilyPreset::double_squeeze),
                                make_weight(WeightPreset::zero), fast_options());
  const ParamPoint t{cplx(0.05, 0.02), cplx(-0.04, 0.06)};
  for (int j = 0; j < 2; ++j) {
    const auto fv = engine.first_variation(t, 0.0, 0.0, j);
    const double scale = std::abs(engine.kernel_value(t, 0.0, 0.0));
    CHECK(std::abs(fv.value - fv.oracle) <=
          std::max(1e-6 * scale, 1e-4 * std::abs(fv.oracle)));
  }
}

TEST_CASE("first variation rejects points near the boundary") {
  auto engine = make_engine(FamilyPreset::unit_disk);
  CHECK_THROWS_AS(engine.first_variation({cplx(0.0)}, cplx(0.97, 0.0), 0.0, 0),
                  NumericError);
}

TEST_CASE("kernel dbar sections lie in the Bergman space") {
  auto engine = make_engine(FamilyPreset::squeezed_disk);
  const auto sec = engine.kernel_dbar_section({cplx(0.1, 0.05)}, cplx(0.1, -0.2), 0);
  CHECK(sec.membership_residual < 1e-6);
}

TEST_CASE("second variation: scaled disk worked example (0, 1/pi, 0)") {
  auto engine = make_engine(FamilyPreset::scaled_disk);
  const auto sv = engine.second_variation_planar({cplx(0.0)}, 0.0, 0.0, 0, 0);
  CHECK(std::abs(sv.boundary_term) < 1e-6);
  CHECK(std::abs(sv.derivative_term - cplx(1.0 / kPi)) < 1e-6);
  CHECK(std::abs(sv.harmonic_term) < 1e-6);
  CHECK(std::abs(sv.sum - cplx(1.0 / kPi)) < 1e-5);
  CHECK(std::abs(sv.oracle - cplx(1.0 / kPi)) < 1e-5);
}

TEST_CASE("second variation: t-independent disk gives three zero terms") {
  auto engine = make_engine(FamilyPreset::unit_disk);
  const auto sv = engine.second_variation_planar({cplx(0.0)}, 0.0, cplx(0.2, 0.1), 0, 0);
  CHECK(std::abs(sv.boundary_term) < 1e-12);
  CHECK(std::abs(sv.derivative_term) < 1e-12);
  CHECK(std::abs(sv.harmonic_term) < 1e-12);
  CHECK(std::abs(sv.oracle) < 1e-8);
}

TEST_CASE("second variation: squeezed disk at t = 0 equals 1/(4 pi)") {
  // Gram-matrix perturbation gives K(0,0)(t) = (1/pi)(1 + |t|^2/4 + O(t^4)),
  // so K_ttbar(0,0) = 1/(4 pi); the boundary term carries the whole sum here.
  auto engine = make_engine(FamilyPreset::squeezed_disk);
  const auto sv = engine.second_variation_planar({cplx(0.0)}, 0.0, 0.0, 0, 0);
  CHECK(std::abs(sv.oracle - cplx(1.0 / (4.0 * kPi))) < 1e-6);
  CHECK(std::abs(sv.boundary_term - cplx(1.0 / (4.0 * kPi))) < 1e-6);
  CHECK(std::abs(sv.derivative_term) < 1e-8);
  CHECK(std::abs(sv.harmonic_term) < 1e-10);
  CHECK(std::abs(sv.sum - sv.oracle) <= std::max(1e-5, 1e-3 * std::abs(sv.oracle)));
}

TEST_CASE("second variation matches the FD oracle away from t = 0") {
  auto engine = make_engine(FamilyPreset::squeezed_disk);
  for (const ParamPoint t : {ParamPoint{cplx(0.15, 0.0)}, ParamPoint{cplx(-0.05, 0.2)}}) {
    const auto sv = engine.second_variation_planar(t, 0.0, 0.0, 0, 0);
    CHECK(std::abs(sv.sum - sv.oracle) <= std::max(1e-5, 1e-3 * std::abs(sv.oracle)));
    CHECK(std::abs(sv.harmonic_term) > 0.0);  // motion genuinely non-holomorphic
  }
}

TEST_CASE("second variation holds off the diagonal") {
  auto engine = make_engine(FamilyPreset::squeezed_disk);
  const ParamPoint t{cplx(0.1, 0.05)};
  const cplx zeta(0.2, 0.1), eta(-0.15, 0.25);
  const auto sv = engine.second_variation_planar(t, zeta, eta, 0, 0);
  CHECK(std::abs(sv.sum - sv.oracle) <=
        std::max(1e-5, 1e-3 * std::max(std::abs(sv.oracle), std::abs(sv.sum))));
  // swapping the points conjugates the mixed derivative
  const auto sw = engine.second_variation_planar(t, eta, zeta, 0, 0);
  CHECK(std::abs(sv.sum - std::conj(sw.sum)) <= 1e-7);
}

TEST_CASE("second variation on a motion family: boundary term drops out") {
  auto engine = make_engine(FamilyPreset::motion_at);
  const ParamPoint t{cplx(0.15, 0.1)};
  const auto sv = engine.second_variation_planar(t, 0.0, 0.0, 0, 0);
  CHECK(std::abs(sv.boundary_term) < 1e-10);
  CHECK(std::abs(sv.sum - sv.oracle) <= std::max(1e-5, 1e-3 * std::abs(sv.oracle)));
}

TEST_CASE("kernel boundary trace converges under basis refinement") {
  // Boundary integrals consume the kernel only through its boundary trace;
  // the trace must stabilize as the basis grows.
  auto fam = make_family(FamilyPreset::squeezed_disk);
  const ParamPoint t{cplx(0.2, 0.1)};
  const auto quad = build_quadrature(fam, t, 64, 384);
  double prev = -1.0;
  std::vector<double> values;
  for (int N : {16, 24, 32}) {
    const BergmanSpace space(quad, make_weight(WeightPreset::zero), N);
    cplx acc = 0.0;
    for (const auto& b : quad.boundary)
      acc += b.weight * std::norm(space.kernel(b.position, cplx(0.0)));
    values.push_back(std::real(acc));
    (void)prev;
    prev = std::real(acc);
  }
  CHECK(std::abs(values[1] - values[2]) <= std::abs(values[0] - values[1]) + 1e-12);
  CHECK(std::abs(values[2] - values[1]) <= 1e-8 * std::abs(values[2]));
}

TEST_CASE("l2 identity: disk examples") {
  auto fam = make_family(FamilyPreset::unit_disk);
  const BergmanSpace space(build_quadrature(fam, {cplx(0.0)}, 48, 256),
                           make_weight(WeightPreset::zero), 16);

  // g = zeta: b2 = pi/2 = a2, b1 = 0
  {
    RZPoly g = RZPoly::zero(1, 0);
    g.at(1, 0) = 1.0;
    const auto id = l2_identity_check(space, g);
    CHECK(id.b2 == doctest::Approx(kPi / 2).epsilon(1e-10));
    CHECK(id.a2 == doctest::Approx(kPi / 2).epsilon(1e-10));
    CHECK(id.b12 < 1e-12);
    CHECK(id.residual <= 1e-7);
  }
  // g = -1/pi: conjugate-holomorphic input, a = 0, ||b1||^2 = 1/pi
  {
    RZPoly g = RZPoly::zero(0, 0);
    g.at(0, 0) = -1.0 / kPi;
    const auto id = l2_identity_check(space, g);
    CHECK(id.a2 < 1e-14);
    CHECK(id.b12 == doctest::Approx(1.0 / kPi).epsilon(1e-12));
    CHECK(id.residual <= 1e-12);
  }
  // g = |z|^2: pi/3 = pi/12 + pi/4 split
  {
    RZPoly g = RZPoly::zero(1, 1);
    g.at(1, 1) = 1.0;
    const auto id = l2_identity_check(space, g);
    CHECK(id.b2 == doctest::Approx(kPi / 3).epsilon(1e-10));
    CHECK(id.a2 == doctest::Approx(kPi / 12).epsilon(1e-8));
    CHECK(id.b12 == doctest::Approx(kPi / 4).epsilon(1e-10));
    CHECK(id.residual <= 1e-6 * id.b2);
  }
  // conjugate-holomorphic input g = conj(e_2): purely harmonic, a = 0
  {
    RZPoly g = RZPoly::zero(0, 2);
    g.at(0, 2) = std::sqrt(3.0 / kPi);
    const auto id = l2_identity_check(space, g);
    CHECK(id.a2 < 1e-14);
    CHECK(id.b12 == doctest::Approx(id.b2).epsilon(1e-12));
    CHECK(id.residual <= 1e-10);
  }
}

TEST_CASE("l2 identity holds for seeded polynomial coefficients") {
  auto fam = make_family(FamilyPreset::unit_disk);
  const BergmanSpace space(build_quadrature(fam, {cplx(0.0)}, 48, 256),
                           make_weight(WeightPreset::zero), 24);
  std::mt19937_64 rng(77);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 20; ++trial) {
    RZPoly g = RZPoly::zero(3, 3);
    for (int p = 0; p <= 3; ++p)
      for (int q = 0; q <= 3; ++q)
        g.at(p, q) = cplx(gauss(rng), gauss(rng)) / (1.0 + p + q);
    const auto id = l2_identity_check(space, g);
    CHECK(id.residual <= 1e-6 * id.b2);
  }
}

TEST_CASE("nakano form: scaled disk r = 1 has zero curvature") {
  auto engine = make_engine(FamilyPreset::scaled_disk);
  const auto form = engine.nakano_form({cplx(0.0)}, {cplx(0.0)});
  CHECK(std::abs(form.min_eigenvalue) < 1e-6);
}

TEST_CASE("nakano form: t-independent disk gives the zero matrix") {
  auto engine = make_engine(FamilyPreset::unit_disk);
  const auto form =
      engine.nakano_form({cplx(0.0)}, {cplx(0.0), cplx(0.3, 0.0), cplx(0.0, 0.25)});
  CHECK(form.matrix.cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("nakano form: squeezed disk is strictly positive at r = 1") {
  auto engine = make_engine(FamilyPreset::squeezed_disk);
  const auto form = engine.nakano_form({cplx(0.0)}, {cplx(0.0)});
  CHECK(form.min_eigenvalue > 1e-3);
  CHECK(std::abs(form.min_eigenvalue - 1.0 / (4.0 * kPi)) < 1e-5);
}

TEST_CASE("nakano form is PSD for pseudoconvex presets, r up to 3") {
  for (FamilyPreset p : {FamilyPreset::squeezed_disk, FamilyPreset::motion_at2}) {
    auto engine = make_engine(p);
    for (int r = 1; r <= 3; ++r) {
      std::vector<cplx> etas{cplx(0.0), cplx(0.3, 0.0), cplx(0.0, 0.25)};
      etas.resize(static_cast<size_t>(r));
      const auto form = engine.nakano_form({cplx(0.1, 0.05)}, etas);
      CHECK(form.hermitian_defect <= 1e-8 * std::max(form.scale, 1e-12));
      CHECK(form.min_eigenvalue >= -1e-5 * std::max(form.scale, 1e-12));
    }
  }
}

TEST_CASE("nakano form with two parameters (double squeeze)") {
  EngineOptions opt = fast_options();
  auto engine =
      VariationEngine(make_family(FamilyPreset::double_squeeze), make_weight(WeightPreset::zero), opt);
  const ParamPoint t0{cplx(0.0), cplx(0.0)};
  const auto form = engine.nakano_form(t0, {cplx(0.0), cplx(0.25, 0.1)});
  CHECK(form.matrix.rows() == 4);
  CHECK(form.hermitian_defect <= 1e-7 * std::max(form.scale, 1e-12));
  CHECK(form.min_eigenvalue >= -1e-5 * std::max(form.scale, 1e-12));
}

TEST_CASE("weighted nakano positivity with phi = |z|^2 (inequality route)") {
  auto engine = make_engine(FamilyPreset::squeezed_disk, WeightPreset::abs2);
  for (int r = 1; r <= 3; ++r) {
    std::vector<cplx> etas{cplx(0.0), cplx(0.3, 0.0), cplx(0.0, 0.25)};
    etas.resize(static_cast<size_t>(r));
    const auto form = engine.nakano_form({cplx(0.0)}, etas);
    CHECK(form.min_eigenvalue >= -1e-5 * std::max(form.scale, 1e-12));
  }
}

TEST_CASE("psh scan: scaled disk diagonal is pluriharmonic") {
  auto engine = make_engine(FamilyPreset::scaled_disk);
  std::vector<ParamPoint> grid;
  for (double x : {-0.2, 0.0, 0.2})
    for (double y : {-0.2, 0.0, 0.2}) grid.push_back({cplx(x, y)});
  const auto scan = psh_scan(
      [&](const ParamPoint& t) { return std::real(engine.kernel_value(t, 0.0, 0.0)); },
      grid, Stencil{1e-3, true}, 1);
  CHECK(std::abs(scan.min_levi) < 1e-6);
}

TEST_CASE("psh scan: squeezed disk diagonal is plurisubharmonic") {
  auto engine = make_engine(FamilyPreset::squeezed_disk);
  std::vector<ParamPoint> grid;
  for (double x : {-0.2, 0.0, 0.2})
    for (double y : {-0.2, 0.0, 0.2}) grid.push_back({cplx(x, y)});
  const auto scan = psh_scan(
      [&](const ParamPoint& t) { return std::real(engine.kernel_value(t, 0.0, 0.0)); },
      grid, Stencil{1e-3, true}, 1);
  CHECK(scan.min_levi >= -1e-4 * std::max(1.0, scan.max_abs_levi));
  // theory predicts (1/4)/(1 + |t|^2/4)^2 at the center, about 0.25
  CHECK(scan.max_abs_levi > 0.1);
}

TEST_CASE("psh scan: t-independent family is flat") {
  auto engine = make_engine(FamilyPreset::unit_disk);
  std::vector<ParamPoint> grid{{cplx(0.0)}, {cplx(0.2, 0.1)}, {cplx(-0.1, -0.3)}};
  const auto scan = psh_scan(
      [&](const ParamPoint& t) { return std::real(engine.kernel_value(t, 0.0, 0.0)); },
      grid, Stencil{1e-3, true}, 1);
  CHECK(std::abs(scan.min_levi) < 1e-7);
}

TEST_CASE("psh scan rejects non-positive fields") {
  std::vector<ParamPoint> grid{{cplx(0.0)}};
  CHECK_THROWS_AS(psh_scan([](const ParamPoint&) { return -1.0; }, grid,
                           Stencil{1e-3, false}, 1),
                  NumericError);
}

TEST_CASE("stencil margin guards the parameter box") {
  EngineOptions opt = fast_options();
  opt.stencil.h = 0.05;
  auto engine = VariationEngine(make_family(FamilyPreset::squeezed_disk),
                                make_weight(WeightPreset::zero), opt);
  CHECK_THROWS_AS(engine.first_variation({cplx(0.39, 0.0)}, 0.0, 0.0, 0), ConfigError);
}
