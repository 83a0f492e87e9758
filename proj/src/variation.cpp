#include "bergvar/variation.hpp"

#include <cmath>

namespace bergvar {

namespace {

std::vector<double> cache_key(const ParamPoint& t) {
  std::vector<double> key;
  key.reserve(2 * t.size());
  for (const cplx& v : t) {
    key.push_back(v.real());
    key.push_back(v.imag());
  }
  return key;
}

}  // namespace

VariationEngine::VariationEngine(DomainFamily family, WeightFamily weight, EngineOptions opt)
    : family_(std::move(family)), weight_(std::move(weight)), opt_(opt) {
  weight_.m = family_.m;
}

std::shared_ptr<const BergmanSpace> VariationEngine::space_at(const ParamPoint& t) {
  auto key = cache_key(t);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  // Spaces are pure functions of t, so eviction only costs a rebuild; this
  // keeps long grid scans from holding hundreds of basis matrices alive.
  if (cache_.size() >= 128) cache_.clear();
  FiberQuadrature quad = build_quadrature(family_, t, opt_.n_radial, opt_.n_angular);
  auto space = std::make_shared<const BergmanSpace>(std::move(quad), weight_, opt_.basis_size);
  cache_.emplace(std::move(key), space);
  return space;
}

cplx VariationEngine::kernel_value(const ParamPoint& t, cplx zeta, cplx eta) {
  return space_at(t)->kernel(zeta, eta);
}

cplx VariationEngine::kernel_fd_d(const ParamPoint& t, cplx zeta, cplx eta, int j) {
  require_margin(t);
  return fd_d([&](const ParamPoint& tp) { return kernel_value(tp, zeta, eta); }, t, j,
              opt_.stencil);
}

cplx VariationEngine::kernel_fd_mixed(const ParamPoint& t, cplx zeta, cplx eta, int j,
                                      int k) {
  require_margin(t);
  return fd_mixed([&](const ParamPoint& tp) { return kernel_value(tp, zeta, eta); }, t, j,
                  k, opt_.stencil);
}

Eigen::VectorXcd VariationEngine::kernel_samples(const BergmanSpace& space, cplx eta) const {
  // K(node_i, etabar) over the interior nodes.
  return space.basis_at_nodes() * space.basis_at(eta).conjugate();
}

VariationEngine::KernelSection VariationEngine::kernel_dbar_section(const ParamPoint& t,
                                                                    cplx eta, int k) {
  require_margin(t);
  const auto base_ptr = space_at(t);
  const BergmanSpace& base = *base_ptr;
  const auto& nodes = base.quadrature().nodes;

  KernelSection out;
  out.values = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(nodes.size()));
  for (const FdTerm& term : fd_dbar_terms(opt_.stencil)) {
    ParamPoint tp = t;
    tp[static_cast<size_t>(k)] += term.offset_j;
    const auto sp = space_at(tp);
    // K^{t'}(node_i, etabar) with the nodes of the center fiber.
    out.values += term.coeff * (sp->basis_matrix(nodes) * sp->basis_at(eta).conjugate());
  }

  out.projected = project(base, out.values).at_nodes();
  // Sections can vanish identically (e.g. first-order kernel response of the
  // squeezed disk at t = 0); floor the scale with the kernel norm so the
  // membership ratio stays meaningful.
  const double raw = std::sqrt(base.norm2(out.values));
  const double floor = std::sqrt(base.norm2(kernel_samples(base, eta)));
  const double denom = std::max(raw, floor);
  out.membership_residual =
      denom > 0.0 ? std::sqrt(base.norm2(out.values - out.projected)) / denom : 0.0;
  return out;
}

VariationEngine::FirstVariation VariationEngine::first_variation(const ParamPoint& t,
                                                                 cplx zeta, cplx eta,
                                                                 int j) {
  require_margin(t);
  const auto sp_ptr = space_at(t);
  const BergmanSpace& sp = *sp_ptr;
  require_interior(sp, zeta);
  require_interior(sp, eta);

  FirstVariation out;

  const Eigen::VectorXcd k_eta = kernel_samples(sp, eta);
  const Eigen::VectorXcd k_zeta = kernel_samples(sp, zeta);
  const auto& quad = sp.quadrature();

  cplx weight_term = 0.0;
  for (Eigen::Index i = 0; i < k_eta.size(); ++i) {
    const WeightJet wj = evaluate_weight(weight_, t, quad.nodes[static_cast<size_t>(i)]);
    weight_term += sp.weighted_weights()(i) * wj.phi_t[static_cast<size_t>(j)] * k_eta(i) *
                   std::conj(k_zeta(i));
  }
  out.weight_term = weight_term;

  cplx boundary = 0.0;
  for (const BoundaryNode& b : quad.boundary) {
    const DefiningJet jet = evaluate_jet(family_, t, b.position);
    const cplx v = quasi_ke_v(jet, j);
    const double phi = evaluate_phi(weight_, t, b.position);
    boundary += b.weight * sp.kernel(b.position, eta) *
                std::conj(sp.kernel(b.position, zeta)) * std::exp(-phi) * v * jet.rho_mu /
                std::abs(jet.rho_mu);
  }
  out.boundary_term = 0.5 * boundary;
  out.value = out.weight_term + out.boundary_term;
  out.oracle = kernel_fd_d(t, zeta, eta, j);
  return out;
}

Eigen::VectorXcd VariationEngine::ks_coefficients(const ParamPoint& t,
                                                  const BergmanSpace& space, int j) {
  // lambda_j = -dv/dmubar of the quasi-KE field, so that the (0,1)-data of
  // the contracted kernel section is lambda_j K(., etabar).
  const auto& nodes = space.quadrature().nodes;
  Eigen::VectorXcd lam(static_cast<Eigen::Index>(nodes.size()));
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    lam(i) = -quasi_ke_field(family_, t, nodes[static_cast<size_t>(i)], j).v_mub;
  return lam;
}

VariationEngine::SecondVariation VariationEngine::second_variation_planar(
    const ParamPoint& t, cplx zeta, cplx eta, int j, int k) {
  if (weight_.preset != WeightPreset::zero)
    throw ConfigError("second_variation_planar: weight must be the zero preset");
  require_margin(t);
  const auto sp_ptr = space_at(t);
  const BergmanSpace& sp = *sp_ptr;
  require_interior(sp, zeta);
  require_interior(sp, eta);

  SecondVariation out;
  const auto& quad = sp.quadrature();

  cplx boundary = 0.0;
  for (const BoundaryNode& b : quad.boundary) {
    const DefiningJet jet = evaluate_jet(family_, t, b.position);
    const Eigen::MatrixXcd bmat = boundary_density(jet, family_.m);
    boundary += b.weight * bmat(j, k) * sp.kernel(b.position, eta) *
                std::conj(sp.kernel(b.position, zeta));
  }
  out.boundary_term = 0.5 * boundary;

  const KernelSection sec_eta = kernel_dbar_section(t, eta, k);
  const KernelSection sec_zeta = kernel_dbar_section(t, zeta, j);
  out.membership_residual =
      std::max(sec_eta.membership_residual, sec_zeta.membership_residual);
  out.derivative_term = sp.inner(sec_eta.projected, sec_zeta.projected);

  const Eigen::VectorXcd lam_j = ks_coefficients(t, sp, j);
  const Eigen::VectorXcd lam_k = ks_coefficients(t, sp, k);
  const Eigen::VectorXcd k_eta = kernel_samples(sp, eta);
  const Eigen::VectorXcd k_zeta = kernel_samples(sp, zeta);
  const AntiHoloFunction h_eta = conj_project(sp, lam_j.cwiseProduct(k_eta));
  const AntiHoloFunction h_zeta = conj_project(sp, lam_k.cwiseProduct(k_zeta));
  out.harmonic_term = h_zeta.coeffs.dot(h_eta.coeffs);

  out.sum = out.boundary_term + out.derivative_term + out.harmonic_term;
  out.oracle = kernel_fd_mixed(t, zeta, eta, j, k);
  return out;
}

VariationEngine::NakanoForm VariationEngine::nakano_form(const ParamPoint& t,
                                                         const std::vector<cplx>& etas) {
  require_margin(t);
  const auto base_ptr = space_at(t);
  const BergmanSpace& base = *base_ptr;
  for (cplx e : etas) require_interior(base, e);

  const int m = family_.m;
  const int r = static_cast<int>(etas.size());
  const int dim = m * r;

  // dbar sections for every (axis, point) pair.
  std::vector<Eigen::VectorXcd> sections(static_cast<size_t>(dim));
  for (int k = 0; k < m; ++k)
    for (int p = 0; p < r; ++p)
      sections[static_cast<size_t>(k * r + p)] =
          kernel_dbar_section(t, etas[static_cast<size_t>(p)], k).projected;

  NakanoForm out;
  out.matrix.resize(dim, dim);
  double scale = 0.0;  // pre-cancellation magnitude: entries can vanish exactly
  for (int j = 0; j < m; ++j) {
    for (int p = 0; p < r; ++p) {
      for (int k = 0; k < m; ++k) {
        for (int q = 0; q < r; ++q) {
          const cplx mixed = kernel_fd_mixed(t, etas[static_cast<size_t>(q)],
                                             etas[static_cast<size_t>(p)], j, k);
          const cplx dv = base.inner(sections[static_cast<size_t>(k * r + p)],
                                     sections[static_cast<size_t>(j * r + q)]);
          out.matrix(j * r + p, k * r + q) = mixed - dv;
          scale = std::max(scale, std::abs(mixed) + std::abs(dv));
        }
      }
    }
  }

  out.hermitian_defect = (out.matrix - out.matrix.adjoint()).cwiseAbs().maxCoeff();
  const Eigen::MatrixXcd sym = 0.5 * (out.matrix + out.matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(sym);
  out.min_eigenvalue = eig.eigenvalues().minCoeff();
  out.max_eigenvalue = eig.eigenvalues().maxCoeff();
  out.scale = scale;
  return out;
}

void VariationEngine::require_interior(const BergmanSpace& space, cplx point) const {
  const auto& quad = space.quadrature();
  if (quad.boundary_distance(point) < opt_.interior_margin * quad.mean_radius)
    throw NumericError("evaluation point too close to the fiber boundary");
}

void VariationEngine::require_margin(const ParamPoint& t) const {
  if (family_.box_margin(t) < stencil_margin(opt_.stencil) * 1.0000001)
    throw ConfigError("stencil footprint exits the parameter box");
}

cplx fiber_integral_derivative(const DomainFamily& family, const Integrand& f,
                               const ParamPoint& t, int j, int n_radial, int n_angular) {
  const FiberQuadrature quad = build_quadrature(family, t, n_radial, n_angular);
  cplx interior = 0.0;
  for (size_t i = 0; i < quad.nodes.size(); ++i)
    interior += quad.weights[i] * f.df_dt(t, quad.nodes[i], j);
  cplx boundary = 0.0;
  for (const BoundaryNode& b : quad.boundary) {
    const DefiningJet jet = evaluate_jet(family, t, b.position);
    const cplx v = quasi_ke_v(jet, j);
    boundary += b.weight * f.f(t, b.position) * v * jet.rho_mu / std::abs(jet.rho_mu);
  }
  return interior - 0.5 * boundary;
}

cplx fiber_integral_fd_oracle(const DomainFamily& family, const Integrand& f,
                              const ParamPoint& t, int j, int n_radial, int n_angular,
                              const Stencil& s) {
  const auto F = [&](const ParamPoint& tp) -> cplx {
    const FiberQuadrature quad = build_quadrature(family, tp, n_radial, n_angular);
    cplx acc = 0.0;
    for (size_t i = 0; i < quad.nodes.size(); ++i)
      acc += quad.weights[i] * f.f(tp, quad.nodes[i]);
    return acc;
  };
  return fd_d(F, t, j, s);
}

L2Identity l2_identity_check(const BergmanSpace& space, const RZPoly& g) {
  if (space.weight().preset != WeightPreset::zero)
    throw ConfigError("l2_identity_check: weight must be the zero preset");
  const Eigen::VectorXcd gs =
      sample(space.quadrature(), [&](cplx z) { return g.eval(z); });
  L2Identity out;
  out.b2 = space.norm2(gs);
  out.b12 = conj_project(space, gs).norm2();
  out.a2 = minimal_dbar_solve(space, g.dz().scaled(-1.0)).norm2;
  out.residual = std::abs(out.b2 - out.a2 - out.b12);
  return out;
}

PshScan psh_scan(const std::function<double(const ParamPoint&)>& F,
                 const std::vector<ParamPoint>& grid, const Stencil& s, int m) {
  if (grid.empty()) throw ConfigError("psh_scan: empty grid");
  const auto logF = [&](const ParamPoint& t) -> cplx {
    const double v = F(t);
    if (!(v > 0.0)) throw NumericError("psh_scan: non-positive field sample");
    return std::log(v);
  };

  PshScan out;
  out.min_levi = 1e300;
  for (const ParamPoint& t : grid) {
    double levi;
    if (m == 1) {
      levi = fd_mixed(logF, t, 0, 0, s).real();
    } else {
      Eigen::Matrix2cd h;
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) h(j, k) = fd_mixed(logF, t, j, k, s);
      const Eigen::Matrix2cd sym = 0.5 * (h + h.adjoint());
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eig(sym);
      levi = eig.eigenvalues().minCoeff();
    }
    out.max_abs_levi = std::max(out.max_abs_levi, std::abs(levi));
    if (levi < out.min_levi) {
      out.min_levi = levi;
      out.argmin = t;
    }
  }
  return out;
}

}  // namespace bergvar
