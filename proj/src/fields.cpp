#include "bergvar/fields.hpp"

#include <cmath>

namespace bergvar {

cplx quasi_ke_v(const DefiningJet& jet, int j) {
  const size_t sj = static_cast<size_t>(j);
  const double denom = std::norm(jet.rho_mu) - jet.value * jet.rho_mumub;
  if (!(denom > 0.0))
    throw NumericError("quasi_ke_v: degenerate denominator |rho_mu|^2 - rho rho_mumub");
  return (jet.rho_t[sj] * jet.rho_mub - jet.value * jet.rho_tmub[sj]) / denom;
}

FieldJet quasi_ke_field(const DomainFamily& family, const ParamPoint& t, cplx zeta, int j,
                        double fd_step) {
  FieldJet out;
  const DefiningJet jet = evaluate_jet(family, t, zeta);
  out.v = quasi_ke_v(jet, j);
  out.tangency_residual =
      std::abs(jet.rho_t[static_cast<size_t>(j)] - out.v * jet.rho_mu);

  const double h = fd_step;
  const auto v_at = [&](cplx z) { return quasi_ke_v(evaluate_jet(family, t, z), j); };
  const cplx vx = (v_at(zeta + h) - v_at(zeta - h)) / (2.0 * h);
  const cplx vy = (v_at(zeta + cplx(0.0, h)) - v_at(zeta - cplx(0.0, h))) / (2.0 * h);
  out.v_mub = 0.5 * (vx + cplx(0.0, 1.0) * vy);
  return out;
}

Eigen::MatrixXcd boundary_density(const DefiningJet& jet, int m) {
  const double g2 = std::norm(jet.rho_mu);
  if (!(g2 > 0.0)) throw NumericError("boundary_density: vanishing fiber gradient");
  const double g3 = g2 * std::abs(jet.rho_mu);
  Eigen::MatrixXcd b(m, m);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      const size_t sj = static_cast<size_t>(j), sk = static_cast<size_t>(k);
      const cplx num = jet.ttb(j, k, m) * g2 - jet.rho_tmub[sj] * jet.rho_tb[sk] * jet.rho_mu -
                       jet.rho_tbmu[sk] * jet.rho_t[sj] * jet.rho_mub +
                       jet.rho_t[sj] * jet.rho_tb[sk] * jet.rho_mumub;
      b(j, k) = num / g3;
    }
  }
  return b;
}

Eigen::MatrixXcd boundary_density_from_fields(const DefiningJet& jet,
                                              const std::vector<cplx>& v, int m) {
  const double g = std::abs(jet.rho_mu);
  if (!(g > 0.0)) throw NumericError("boundary_density_from_fields: vanishing gradient");
  Eigen::MatrixXcd b(m, m);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      const size_t sj = static_cast<size_t>(j), sk = static_cast<size_t>(k);
      const cplx pair = jet.ttb(j, k, m) - jet.rho_tmub[sj] * std::conj(v[sk]) -
                        jet.rho_tbmu[sk] * v[sj] +
                        jet.rho_mumub * v[sj] * std::conj(v[sk]);
      b(j, k) = pair / g;
    }
  }
  return b;
}

double boundary_density_scale(const DefiningJet& jet, int m) {
  const double g2 = std::norm(jet.rho_mu);
  const double g3 = g2 * std::abs(jet.rho_mu);
  double s = 0.0;
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      const size_t sj = static_cast<size_t>(j), sk = static_cast<size_t>(k);
      s = std::max(s, (std::abs(jet.ttb(j, k, m)) * g2 +
                       std::abs(jet.rho_tmub[sj] * jet.rho_tb[sk] * jet.rho_mu) +
                       std::abs(jet.rho_tbmu[sk] * jet.rho_t[sj] * jet.rho_mub) +
                       std::abs(jet.rho_t[sj] * jet.rho_tb[sk]) * jet.rho_mumub) /
                          g3);
    }
  }
  return s;
}

CurvatureData geodesic_curvature(const WeightJet& phi, const std::vector<cplx>& v, int m) {
  if (!(phi.phi_mumub > 0.0))
    throw NumericError("geodesic_curvature: fiber Hessian of phi not positive");
  CurvatureData out;
  out.c_phi.resize(m, m);
  out.c_phi_v.resize(m, m);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      const size_t sj = static_cast<size_t>(j), sk = static_cast<size_t>(k);
      out.c_phi(j, k) =
          phi.ttb(j, k, m) - phi.phi_tmub[sj] * phi.phi_tbmu[sk] / phi.phi_mumub;
      const cplx wj = phi.phi_tmub[sj] - v[sj] * phi.phi_mumub;
      const cplx wk = phi.phi_tmub[sk] - v[sk] * phi.phi_mumub;
      out.c_phi_v(j, k) = out.c_phi(j, k) + wj * std::conj(wk) / phi.phi_mumub;
    }
  }
  return out;
}

cplx motion_ks_coefficient(const MotionJet& jet) {
  const cplx J = jet.f_zb / jet.f_z;
  const double J2 = std::norm(J);
  if (J2 >= 1.0) throw NumericError("motion_ks_coefficient: |J| >= 1, motion invalid");
  const cplx J_j = (jet.f_jzb * jet.f_z - jet.f_zb * jet.f_jz) / (jet.f_z * jet.f_z);
  return jet.f_z * jet.f_z * J_j / (std::norm(jet.f_z) * (1.0 - J2));
}

}  // namespace bergvar
