#include "bergvar/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "bergvar/motions.hpp"
#include "bergvar/presets.hpp"
#include "bergvar/variation.hpp"
#include "json.hpp"

namespace bergvar {

namespace {

using nlohmann::json;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

cplx cplx_from_json(const json& j) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2)
    return cplx(j[0].get<double>(), j[1].get<double>());
  throw ConfigError("expected a number or [re, im] pair");
}

std::vector<cplx> cplx_list(const json& j) {
  std::vector<cplx> out;
  for (const auto& v : j) out.push_back(cplx_from_json(v));
  return out;
}

json cplx_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

// Square grid in one complex parameter, clamped so that the grid corners and
// the stencil footprint stay inside the box.
std::vector<cplx> axis_grid(double radius, int points, double box, double margin) {
  const double r = std::min(radius, std::max(0.0, (box - 1.1 * margin) / std::sqrt(2.0)));
  std::vector<cplx> grid;
  if (points <= 1) {
    grid.push_back(cplx(0.0, 0.0));
    return grid;
  }
  for (int a = 0; a < points; ++a) {
    for (int b = 0; b < points; ++b) {
      const double x = -r + 2.0 * r * a / (points - 1);
      const double y = -r + 2.0 * r * b / (points - 1);
      grid.push_back(cplx(x, y));
    }
  }
  return grid;
}

std::vector<ParamPoint> family_t_grid(const ScenarioConfig& cfg, const DomainFamily& fam) {
  const double margin = stencil_margin(cfg.stencil);
  std::vector<ParamPoint> out;
  if (fam.m == 1) {
    for (cplx t : axis_grid(cfg.t_grid_radius, cfg.t_grid_points, fam.box_radius(0), margin))
      out.push_back(ParamPoint{t});
  } else {
    // Scan the two coordinate planes.
    for (cplx t : axis_grid(cfg.t_grid_radius, cfg.t_grid_points, fam.box_radius(0), margin))
      out.push_back(ParamPoint{t, cplx(0.0, 0.0)});
    for (cplx t : axis_grid(cfg.t_grid_radius, cfg.t_grid_points, fam.box_radius(1), margin)) {
      if (std::abs(t) == 0.0) continue;  // center already present
      out.push_back(ParamPoint{cplx(0.0, 0.0), t});
    }
  }
  return out;
}

ParamPoint origin_t(const DomainFamily& fam) {
  return ParamPoint(static_cast<size_t>(fam.m), cplx(0.0, 0.0));
}

std::string t_string(const ParamPoint& t) {
  std::ostringstream os;
  os << "t=(";
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) os << ';';
    os << t[i].real() << (t[i].imag() < 0 ? "-" : "+") << std::abs(t[i].imag()) << "i";
  }
  os << ")";
  return os.str();
}

EngineOptions engine_options(const ScenarioConfig& cfg) {
  EngineOptions opt;
  opt.basis_size = cfg.basis_size;
  opt.n_radial = cfg.n_radial;
  opt.n_angular = cfg.n_angular;
  opt.stencil = cfg.stencil;
  return opt;
}

// Seeded interior points, uniform over a safe disk about the star center.
std::vector<cplx> seeded_interior_points(const FiberQuadrature& quad, std::mt19937_64& rng,
                                         int count) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<cplx> out;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double r = 0.55 * quad.mean_radius * std::sqrt(uni(rng));
    const double th = 2.0 * kPi * uni(rng);
    out.push_back(quad.center + std::polar(r, th));
  }
  return out;
}

RZPoly seeded_poly(std::mt19937_64& rng, int max_deg) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  RZPoly g = RZPoly::zero(max_deg, max_deg);
  for (int p = 0; p <= max_deg; ++p)
    for (int q = 0; q <= max_deg; ++q)
      g.at(p, q) = cplx(gauss(rng), gauss(rng)) / (1.0 + p + q);
  return g;
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

std::vector<ReportRow> suite_kernel(const ScenarioConfig& cfg) {
  std::vector<ReportRow> rows;
  const std::string suite = "kernel";
  DomainFamily fam = family_from_id(cfg.family_id, cfg.family_params);
  WeightFamily wgt = weight_from_id(cfg.weight_id, cfg.weight_params);
  wgt.m = fam.m;
  const ParamPoint t0 = origin_t(fam);
  FiberQuadrature quad = build_quadrature(fam, t0, cfg.n_radial, cfg.n_angular);
  const BergmanSpace space(std::move(quad), wgt, cfg.basis_size);
  std::mt19937_64 rng(cfg.seed ^ fnv1a(suite));

  rows.push_back(row_compare(suite, "gram-identity", space.gram_residual(), 0.0, 1e-10));

  // Reproducing property over seeded interior points and basis functions.
  {
    const auto pts = seeded_interior_points(space.quadrature(), rng, 50);
    const auto& E = space.basis_at_nodes();
    double worst = 0.0;
    for (cplx z : pts) {
      const Eigen::VectorXcd bz = space.basis_at(z);
      const Eigen::VectorXcd kvals = E.conjugate() * bz;  // K(z, node_i bar)
      const Eigen::VectorXcd wk =
          (space.weighted_weights().array() * kvals.array()).matrix();
      const int kmax = std::min(space.rank(), 8);
      for (int k = 0; k < kmax; ++k) {
        const cplx integral = (wk.array() * E.col(k).array()).sum();
        worst = std::max(worst, std::abs(integral - bz(k)));
      }
    }
    rows.push_back(row_compare(suite, "reproducing-property", worst, 0.0, 1e-8));
  }

  // Hermitian symmetry and diagonal positivity.
  {
    const auto pts = seeded_interior_points(space.quadrature(), rng, 40);
    double defect = 0.0, scale = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); i += 2) {
      const cplx a = space.kernel(pts[i], pts[i + 1]);
      const cplx b = space.kernel(pts[i + 1], pts[i]);
      defect = std::max(defect, std::abs(a - std::conj(b)));
      scale = std::max(scale, std::abs(a));
    }
    rows.push_back(
        row_compare(suite, "hermitian-symmetry", defect, 0.0, 1e-12 * std::max(scale, 1.0)));

    double min_diag = 1e300;
    for (const cplx& z : space.quadrature().nodes)
      min_diag = std::min(min_diag, std::real(space.kernel(z, z)));
    rows.push_back(row_lower_bound(suite, "diagonal-positivity", min_diag, 0.0));
  }

  // Every catalog fiber at t = 0 is the unit disk.
  if (cfg.weight_id == "zero") {
    rows.push_back(row_compare(suite, "K(0,0)=1/pi@t=0", space.kernel(0.0, 0.0), 1.0 / kPi,
                               1e-8 / kPi));
  }

  if (cfg.weight_id == "zero") {
    // Disk reference of the L2 identity: g = zeta -> (pi/2, pi/2, 0).
    {
      RZPoly g = RZPoly::zero(1, 0);
      g.at(1, 0) = 1.0;
      const L2Identity id = l2_identity_check(space, g);
      rows.push_back(row_compare(suite, "l2-identity/disk-example/b2", id.b2, kPi / 2, 1e-7));
      rows.push_back(row_compare(suite, "l2-identity/disk-example/a2", id.a2, kPi / 2, 1e-7));
      rows.push_back(row_compare(suite, "l2-identity/disk-example/b12", id.b12, 0.0, 1e-7));
    }
    for (int trial = 0; trial < 20; ++trial) {
      const RZPoly g = seeded_poly(rng, 3);
      const L2Identity id = l2_identity_check(space, g);
      rows.push_back(row_compare(suite, "l2-identity/seeded-" + std::to_string(trial),
                                 id.residual, 0.0, 1e-6 * id.b2));
    }
  }
  return rows;
}

std::vector<ReportRow> suite_first_variation(const ScenarioConfig& cfg) {
  std::vector<ReportRow> rows;
  const std::string suite = "first-variation";
  DomainFamily fam = family_from_id(cfg.family_id, cfg.family_params);
  WeightFamily wgt = weight_from_id(cfg.weight_id, cfg.weight_params);
  VariationEngine engine(fam, wgt, engine_options(cfg));

  // Fiber-integral calculus against the FD oracle.
  const double margin = stencil_margin(cfg.stencil);
  const double r1 = 0.5 * std::max(0.0, fam.box_radius(0) - 2.0 * margin);
  std::vector<ParamPoint> tpts{origin_t(fam)};
  if (fam.m == 1) {
    tpts.push_back(ParamPoint{cplx(r1, 0.5 * r1)});
  } else {
    tpts.push_back(ParamPoint{cplx(r1, 0.0), cplx(0.0, 0.5 * r1)});
  }
  for (const std::string& fid : integrand_ids()) {
    const Integrand f = integrand_from_id(fid);
    for (const ParamPoint& t : tpts) {
      for (int j = 0; j < fam.m; ++j) {
        const cplx formula =
            fiber_integral_derivative(fam, f, t, j, cfg.n_radial, cfg.n_angular);
        const cplx oracle = fiber_integral_fd_oracle(fam, f, t, j, cfg.n_radial,
                                                     cfg.n_angular, cfg.stencil);
        rows.push_back(row_compare(
            suite, "transport/" + fid + "/" + t_string(t) + "/j" + std::to_string(j),
            formula, oracle, std::max(1e-6, 1e-4 * std::abs(oracle))));
      }
    }
  }
  if (cfg.family_id == "scaled_disk") {
    const Integrand one = integrand_from_id("one");
    const cplx d_area =
        fiber_integral_derivative(fam, one, origin_t(fam), 0, cfg.n_radial, cfg.n_angular);
    rows.push_back(row_compare(suite, "transport/area-derivative=pi@t=0", d_area, kPi, 1e-6));
  }

  // Hadamard first variation of the kernel.
  const ParamPoint t0 = origin_t(fam);
  for (cplx zeta : cfg.zeta_points) {
    for (cplx eta : cfg.eta_points) {
      for (int j = 0; j < fam.m; ++j) {
        const auto fv = engine.first_variation(t0, zeta, eta, j);
        const double scale = std::abs(engine.kernel_value(t0, zeta, eta));
        rows.push_back(row_compare(
            suite,
            "K_j/" + t_string(t0) + "/zeta=" + format_complex(zeta) +
                "/eta=" + format_complex(eta) + "/j" + std::to_string(j),
            fv.value, fv.oracle,
            std::max(1e-6 * std::max(scale, 1.0), 1e-4 * std::abs(fv.oracle))));
      }
    }
  }
  if (cfg.family_id == "scaled_disk" && cfg.weight_id == "zero") {
    const auto fv = engine.first_variation(t0, 0.0, 0.0, 0);
    rows.push_back(
        row_compare(suite, "K_t(0,0)=-1/pi@scaled_disk", fv.value, -1.0 / kPi, 1e-8));
  }
  return rows;
}

std::vector<ReportRow> suite_second_variation(const ScenarioConfig& cfg) {
  std::vector<ReportRow> rows;
  const std::string suite = "second-variation";
  DomainFamily fam = family_from_id(cfg.family_id, cfg.family_params);
  WeightFamily wgt = weight_from_id(cfg.weight_id, cfg.weight_params);
  VariationEngine engine(fam, wgt, engine_options(cfg));
  const ParamPoint t0 = origin_t(fam);

  for (cplx zeta : cfg.zeta_points) {
    for (cplx eta : cfg.eta_points) {
      for (int j = 0; j < fam.m; ++j) {
        for (int k = j; k < fam.m; ++k) {
          const auto sv = engine.second_variation_planar(t0, zeta, eta, j, k);
          const std::string id = t_string(t0) + "/zeta=" + format_complex(zeta) +
                                 "/eta=" + format_complex(eta) + "/j" + std::to_string(j) +
                                 "k" + std::to_string(k);
          rows.push_back(row_compare(suite, "sum-vs-oracle/" + id, sv.sum, sv.oracle,
                                     std::max(1e-5, 1e-3 * std::abs(sv.oracle))));
          rows.push_back(row_compare(suite, "section-membership/" + id,
                                     sv.membership_residual, 0.0, 1e-6));
        }
      }
    }
  }

  if (cfg.family_id == "scaled_disk") {
    const auto sv = engine.second_variation_planar(t0, 0.0, 0.0, 0, 0);
    rows.push_back(
        row_compare(suite, "worked-example/boundary-term", sv.boundary_term, 0.0, 1e-6));
    rows.push_back(row_compare(suite, "worked-example/derivative-term", sv.derivative_term,
                               1.0 / kPi, 1e-6));
    rows.push_back(
        row_compare(suite, "worked-example/harmonic-term", sv.harmonic_term, 0.0, 1e-6));
    rows.push_back(
        row_compare(suite, "worked-example/sum=1/pi", sv.sum, 1.0 / kPi, 1e-5));
  }
  return rows;
}

std::vector<ReportRow> suite_nakano(const ScenarioConfig& cfg) {
  std::vector<ReportRow> rows;
  const std::string suite = "nakano";
  DomainFamily fam = family_from_id(cfg.family_id, cfg.family_params);
  WeightFamily wgt = weight_from_id(cfg.weight_id, cfg.weight_params);
  VariationEngine engine(fam, wgt, engine_options(cfg));
  const ParamPoint t0 = origin_t(fam);

  for (int r = 1; r <= static_cast<int>(cfg.nakano_etas.size()) && r <= 3; ++r) {
    std::vector<cplx> etas(cfg.nakano_etas.begin(), cfg.nakano_etas.begin() + r);
    const auto form = engine.nakano_form(t0, etas);
    const std::string id = "r" + std::to_string(r);
    rows.push_back(row_compare(suite, "hermitian-defect/" + id, form.hermitian_defect, 0.0,
                               1e-8 * std::max(form.scale, 1e-12)));
    rows.push_back(row_lower_bound(suite, "min-eig/" + id, form.min_eigenvalue,
                                   -1e-5 * std::max(form.scale, 1e-12)));
    if (r == 1) {
      if (cfg.family_id == "scaled_disk" && cfg.weight_id == "zero") {
        rows.push_back(row_compare(suite, "scaled-disk-zero-curvature/r1",
                                   form.min_eigenvalue, 0.0, 1e-6));
      }
      if (cfg.family_id == "squeezed_disk" && cfg.weight_id == "zero") {
        rows.push_back(row_lower_bound(suite, "squeezed-disk-strictly-positive/r1",
                                       form.min_eigenvalue, 1e-3));
      }
    }
  }
  return rows;
}

std::vector<ReportRow> suite_motion(const ScenarioConfig& cfg) {
  std::vector<ReportRow> rows;
  const std::string suite = "motion";
  const MotionSpec motion = motion_from_id(cfg.motion_id, cfg.motion_eps);
  const DomainFamily fam = motion_to_family(motion);
  const double margin = stencil_margin(cfg.stencil);

  std::vector<cplx> t_grid =
      axis_grid(cfg.t_grid_radius, cfg.t_grid_points, fam.box_radius(0), margin);

  const TrivialityReport report =
      triviality_decision(motion, t_grid, cfg.eta_points, engine_options(cfg));

  const bool expected_trivial = motion.kind == MotionPreset::a0 ||
                                (motion.kind == MotionPreset::aeps &&
                                 std::abs(motion.eps) == 0.0);
  const std::string expected = expected_trivial ? "trivial-consistent" : "nontrivial";
  {
    ReportRow row;
    row.suite = suite;
    row.scenario = "verdict=" + report.verdict + "/expected=" + expected +
                   "/max@t=" + format_complex(report.argmax.t) +
                   ";eta=" + format_complex(report.argmax.eta);
    row.formula_value = report.max_modulus;
    row.oracle_value = report.scale;
    row.abs_residual = 0.0;
    row.rel_residual = report.scale > 0 ? report.max_modulus / report.scale : 0.0;
    row.tolerance = 0.0;
    row.pass = report.verdict == expected;
    rows.push_back(row);
  }

  // Reference value 1 at t = 0 for a(t) = t.
  if (motion.kind == MotionPreset::at) {
    const ParamPoint t0{cplx(0.0, 0.0)};
    FiberQuadrature quad = build_quadrature(fam, t0, cfg.n_radial, cfg.n_angular);
    const BergmanSpace space(std::move(quad), make_weight(WeightPreset::zero), cfg.basis_size);
    const auto ti = triviality_integral(motion, space, 0.0, cfg.eta_points.front());
    rows.push_back(row_compare(suite, "integral=1@t=0/a=t", ti.value, 1.0, 1e-6));
  }

  // Levi-flatness of the motion graph and the projection cross-check.
  double levi_flat = 0.0;
  double chain = 0.0;
  for (cplx t : t_grid) {
    const ParamPoint tp{t};
    FiberQuadrature quad = build_quadrature(fam, tp, cfg.n_radial, cfg.n_angular);
    for (const BoundaryNode& b : quad.boundary) {
      const DefiningJet jet = evaluate_jet(fam, tp, b.position);
      const Eigen::MatrixXcd bmat = boundary_density(jet, fam.m);
      const double scale = std::max(boundary_density_scale(jet, fam.m), 1e-12);
      levi_flat = std::max(levi_flat, bmat.cwiseAbs().maxCoeff() / scale);
    }
    const BergmanSpace space(std::move(quad), make_weight(WeightPreset::zero), cfg.basis_size);
    for (cplx eta : cfg.eta_points) {
      const auto ti = triviality_integral(motion, space, t, eta);
      chain = std::max(chain, std::abs(ti.value - ti.via_projection) /
                                  std::max(1.0, std::abs(ti.value)));
    }
  }
  rows.push_back(row_compare(suite, "levi-flat-boundary-density", levi_flat, 0.0, 1e-7));
  rows.push_back(row_compare(suite, "integral-vs-projection-chain", chain, 0.0, 1e-8));
  return rows;
}

std::vector<ReportRow> suite_psh_scan(const ScenarioConfig& cfg) {
  std::vector<ReportRow> rows;
  const std::string suite = "psh-scan";
  DomainFamily fam = family_from_id(cfg.family_id, cfg.family_params);
  WeightFamily wgt = weight_from_id(cfg.weight_id, cfg.weight_params);
  VariationEngine engine(fam, wgt, engine_options(cfg));
  const std::vector<ParamPoint> grid = family_t_grid(cfg, fam);

  const cplx zeta0 = cfg.zeta_points.front();
  const auto kernel_diag = [&](const ParamPoint& t) -> double {
    return std::real(engine.kernel_value(t, zeta0, zeta0));
  };
  const PshScan scan_k = psh_scan(kernel_diag, grid, cfg.stencil, fam.m);
  rows.push_back(row_lower_bound(suite,
                                 "logK-diagonal/min-levi@" + t_string(scan_k.argmin),
                                 scan_k.min_levi,
                                 -1e-4 * std::max(1.0, scan_k.max_abs_levi)));
  if (cfg.family_id == "scaled_disk" && cfg.weight_id == "zero") {
    rows.push_back(row_compare(suite, "logK-diagonal/scaled-disk-flat",
                               scan_k.min_levi, 0.0, 1e-6));
  }

  if (cfg.weight_id == "zero") {
    const BumpSpec bump{};
    const auto kf = [&](const ParamPoint& t) -> double {
      return kf_functional(*engine.space_at(t), bump).value;
    };
    const PshScan scan_f = psh_scan(kf, grid, cfg.stencil, fam.m);
    rows.push_back(row_lower_bound(suite, "logKf/min-levi@" + t_string(scan_f.argmin),
                                   scan_f.min_levi,
                                   -1e-4 * std::max(1.0, scan_f.max_abs_levi)));

    // The two K_f routes must agree.
    const auto kfv = kf_functional(*engine.space_at(origin_t(fam)), bump);
    rows.push_back(row_compare(suite, "Kf-route-agreement", kfv.value,
                               kfv.via_double_integral,
                               1e-8 * std::max(1.0, kfv.value)));
  }
  return rows;
}

std::vector<ReportRow> run_one_suite(const ScenarioConfig& cfg, const std::string& name) {
  try {
    if (name == "kernel") return suite_kernel(cfg);
    if (name == "first-variation") return suite_first_variation(cfg);
    if (name == "second-variation") return suite_second_variation(cfg);
    if (name == "nakano") return suite_nakano(cfg);
    if (name == "motion") return suite_motion(cfg);
    if (name == "psh-scan") return suite_psh_scan(cfg);
    throw ConfigError("unknown suite: " + name);
  } catch (const NumericError& e) {
    ReportRow row;
    row.suite = name;
    row.scenario = std::string("numeric-error: ") + e.what();
    row.pass = false;
    row.tolerance = 0.0;
    row.abs_residual = 1.0;
    return {row};
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"kernel",  "first-variation",
                                              "second-variation", "nakano",
                                              "motion",  "psh-scan"};
  return names;
}

ScenarioConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  ScenarioConfig cfg;
  try {
    if (j.contains("version")) cfg.version = j["version"].get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("family")) {
      cfg.family_id = j["family"].value("preset", cfg.family_id);
      if (j["family"].contains("params")) cfg.family_params = cplx_list(j["family"]["params"]);
    }
    if (j.contains("weight")) {
      cfg.weight_id = j["weight"].value("preset", cfg.weight_id);
      if (j["weight"].contains("params")) cfg.weight_params = cplx_list(j["weight"]["params"]);
    }
    if (j.contains("basis_size")) cfg.basis_size = j["basis_size"].get<int>();
    if (j.contains("quadrature")) {
      cfg.n_radial = j["quadrature"].value("n_radial", cfg.n_radial);
      cfg.n_angular = j["quadrature"].value("n_angular", cfg.n_angular);
    }
    if (j.contains("stencil")) {
      cfg.stencil.h = j["stencil"].value("h", cfg.stencil.h);
      const std::string scheme = j["stencil"].value("scheme", std::string("richardson"));
      if (scheme == "richardson") {
        cfg.stencil.richardson = true;
      } else if (scheme == "central-2nd") {
        cfg.stencil.richardson = false;
      } else {
        throw ConfigError("stencil.scheme must be richardson or central-2nd");
      }
    }
    if (j.contains("t_grid")) {
      cfg.t_grid_radius = j["t_grid"].value("radius", cfg.t_grid_radius);
      cfg.t_grid_points = j["t_grid"].value("points_per_axis", cfg.t_grid_points);
    }
    if (j.contains("points")) {
      if (j["points"].contains("zeta")) cfg.zeta_points = cplx_list(j["points"]["zeta"]);
      if (j["points"].contains("eta")) cfg.eta_points = cplx_list(j["points"]["eta"]);
      if (j["points"].contains("nakano_eta"))
        cfg.nakano_etas = cplx_list(j["points"]["nakano_eta"]);
    }
    if (j.contains("motion")) {
      cfg.motion_id = j["motion"].value("preset", cfg.motion_id);
      if (j["motion"].contains("eps")) cfg.motion_eps = cplx_from_json(j["motion"]["eps"]);
    }
    if (j.contains("suites")) {
      cfg.suites.clear();
      for (const auto& s : j["suites"]) cfg.suites.push_back(s.get<std::string>());
    }
    if (j.contains("out")) cfg.out_dir = j["out"].get<std::string>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }
  return cfg;
}

ScenarioConfig config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json_text(ss.str());
}

std::string normalize_config(const ScenarioConfig& cfg) {
  json j;
  j["version"] = cfg.version;
  j["seed"] = cfg.seed;
  j["family"] = {{"preset", cfg.family_id}, {"params", json::array()}};
  for (cplx p : cfg.family_params) j["family"]["params"].push_back(cplx_to_json(p));
  j["weight"] = {{"preset", cfg.weight_id}, {"params", json::array()}};
  for (cplx p : cfg.weight_params) j["weight"]["params"].push_back(cplx_to_json(p));
  j["basis_size"] = cfg.basis_size;
  j["quadrature"] = {{"n_radial", cfg.n_radial}, {"n_angular", cfg.n_angular}};
  j["stencil"] = {{"h", cfg.stencil.h},
                  {"scheme", cfg.stencil.richardson ? "richardson" : "central-2nd"}};
  j["t_grid"] = {{"radius", cfg.t_grid_radius}, {"points_per_axis", cfg.t_grid_points}};
  j["points"] = {{"zeta", json::array()}, {"eta", json::array()}, {"nakano_eta", json::array()}};
  for (cplx p : cfg.zeta_points) j["points"]["zeta"].push_back(cplx_to_json(p));
  for (cplx p : cfg.eta_points) j["points"]["eta"].push_back(cplx_to_json(p));
  for (cplx p : cfg.nakano_etas) j["points"]["nakano_eta"].push_back(cplx_to_json(p));
  j["motion"] = {{"preset", cfg.motion_id}, {"eps", cplx_to_json(cfg.motion_eps)}};
  j["suites"] = cfg.suites;
  // out_dir and threads are execution details: reports must be byte-identical
  // for the same scientific config at any thread count.
  return j.dump(2);
}

void validate_config(const ScenarioConfig& cfg) {
  if (cfg.version != 1) throw ConfigError("unsupported config version");
  family_from_id(cfg.family_id, cfg.family_params);  // throws on unknown preset
  weight_from_id(cfg.weight_id, cfg.weight_params);
  motion_from_id(cfg.motion_id, cfg.motion_eps);
  if (cfg.basis_size < 1) throw ConfigError("basis_size must be >= 1");
  if (cfg.n_radial < 2 || cfg.n_angular < 4) throw ConfigError("quadrature resolution too small");
  if (cfg.n_angular < 4 * cfg.basis_size)
    throw ConfigError("n_angular must be at least 4 * basis_size");
  if (!(cfg.stencil.h > 0.0)) throw ConfigError("stencil step must be positive");
  if (cfg.t_grid_points < 1) throw ConfigError("t_grid.points_per_axis must be >= 1");
  if (!(cfg.t_grid_radius >= 0.0)) throw ConfigError("t_grid.radius must be >= 0");
  if (cfg.threads < 1) throw ConfigError("threads must be >= 1");
  if (cfg.zeta_points.empty() || cfg.eta_points.empty() || cfg.nakano_etas.empty())
    throw ConfigError("point lists must be non-empty");
  const DomainFamily fam = family_from_id(cfg.family_id, cfg.family_params);
  if (fam.box_margin(origin_t(fam)) <= stencil_margin(cfg.stencil))
    throw ConfigError("stencil step exceeds the family parameter box");
  const DomainFamily mfam = motion_to_family(motion_from_id(cfg.motion_id, cfg.motion_eps));
  if (mfam.box_margin(origin_t(mfam)) <= stencil_margin(cfg.stencil))
    throw ConfigError("stencil step exceeds the motion parameter box");
  std::vector<std::string> known = suite_names();
  known.push_back("all");
  for (const std::string& s : cfg.suites) {
    bool ok = false;
    for (const std::string& k : known) ok = ok || k == s;
    if (!ok) throw ConfigError("unknown suite: " + s);
  }
  // Weighted runs cannot evaluate the planar (phi = 0) second variation;
  // "all" silently skips it instead.
  if (cfg.weight_id != "zero" &&
      std::count(cfg.suites.begin(), cfg.suites.end(), std::string("second-variation")))
    throw ConfigError("second-variation suite requires the zero weight preset");
}

RunReport run_suites(const ScenarioConfig& cfg) {
  validate_config(cfg);
  std::vector<std::string> selected;
  for (const std::string& s : cfg.suites) {
    if (s == "all") {
      for (const std::string& k : suite_names()) {
        if (k == "second-variation" && cfg.weight_id != "zero") continue;
        selected.push_back(k);
      }
    } else {
      selected.push_back(s);
    }
  }

  std::vector<std::vector<ReportRow>> results(selected.size());
  const int workers = std::min<int>(cfg.threads, static_cast<int>(selected.size()));
  if (workers <= 1) {
    for (size_t i = 0; i < selected.size(); ++i) results[i] = run_one_suite(cfg, selected[i]);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        while (true) {
          const size_t i = next.fetch_add(1);
          if (i >= selected.size()) return;
          results[i] = run_one_suite(cfg, selected[i]);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  RunReport report;
  report.version = kToolVersion;
  report.config_echo = normalize_config(cfg);
  for (auto& rows : results)
    report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  return report;
}

int run_and_write(const ScenarioConfig& cfg) {
  const RunReport report = run_suites(cfg);
  std::filesystem::create_directories(cfg.out_dir);
  {
    std::ofstream out(cfg.out_dir + "/report.json", std::ios::binary);
    out << report.to_json();
  }
  {
    std::ofstream out(cfg.out_dir + "/report.csv", std::ios::binary);
    out << report.to_csv();
  }
  std::cout << report.summary_text();
  std::cout << (report.all_pass() ? "ALL SUITES PASS" : "SUITE FAILURES PRESENT") << "\n";
  return report.all_pass() ? 0 : 1;
}

std::string list_presets_text() {
  std::ostringstream os;
  for (const PresetInfo& p : preset_catalog()) {
    os << p.kind << "  " << p.id << "  [" << p.box << "]\n";
  }
  return os.str();
}

}  // namespace bergvar
