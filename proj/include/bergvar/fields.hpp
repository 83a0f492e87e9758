#pragma once

#include <Eigen/Dense>

#include "bergvar/domain.hpp"
#include "bergvar/types.hpp"
#include "bergvar/weight.hpp"

namespace bergvar {

/// Horizontal lift data at one point for one parameter index j:
/// V_j = d/dt^j - v d/dmu.
struct FieldJet {
  cplx v{};                       // fiber coefficient
  cplx v_mub{};                   // dv/dmubar (Kodaira-Spencer representative
                                  // of V_j is -v_mub dmubar (x) d/dmu)
  double tangency_residual{0.0};  // |V_j(rho)| = |rho_j - v rho_mu|
};

/// Fiber coefficient of the quasi-Kaehler-Einstein lift,
///   v = (rho_j rho_mubar - rho rho_{j mubar}) / (|rho_mu|^2 - rho rho_{mu mubar}).
/// Throws NumericError when the denominator degenerates.
cplx quasi_ke_v(const DefiningJet& jet, int j);

/// Full field jet; v_mub is obtained by central differences of v in the
/// fiber variable (the closed form needs third partials of rho).
FieldJet quasi_ke_field(const DomainFamily& family, const ParamPoint& t, cplx zeta, int j,
                        double fd_step = 1e-5);

/// Boundary density b_{j kbar}(rho), closed planar form
///   (rho_{j kbar}|rho_mu|^2 - rho_{j mubar} rho_kbar rho_mu
///    - rho_{kbar mu} rho_j rho_mubar + rho_j rho_kbar rho_{mu mubar}) / |rho_mu|^3.
/// Hermitian m x m; requires rho_mu != 0.
Eigen::MatrixXcd boundary_density(const DefiningJet& jet, int m);

/// Levi-form pairing <V_j, V_k>_{i ddbar rho} / |rho_mu| assembled from
/// explicit tangent-field coefficients (cross-check of the closed form).
Eigen::MatrixXcd boundary_density_from_fields(const DefiningJet& jet,
                                              const std::vector<cplx>& v, int m);

/// Natural magnitude of the b_{j kbar} cancellation (sum of term moduli),
/// used to scale Levi-flatness tolerances.
double boundary_density_scale(const DefiningJet& jet, int m);

struct CurvatureData {
  Eigen::MatrixXcd c_phi;    // geodesic curvature c_{j kbar}(phi)
  Eigen::MatrixXcd c_phi_v;  // with the tangent-field extension term
};

/// c_{j kbar}(phi) = phi_{j kbar} - phi_{j mubar} phi_{kbar mu} / phi_{mu mubar},
/// extension term <(dbar phi)_{V_j}, (dbar phi)_{V_k}> / phi_{mu mubar} with
/// (dbar phi)_{V_j} coefficient phi_{j mubar} - v_j phi_{mu mubar}.
/// Requires phi_{mu mubar} > 0.
CurvatureData geodesic_curvature(const WeightJet& phi, const std::vector<cplx>& v, int m);

/// Jet of a holomorphic motion map f(t, z) at one (t, z).
struct MotionJet {
  cplx f_z{};
  cplx f_zb{};
  cplx f_j{};    // df/dt^j
  cplx f_jz{};
  cplx f_jzb{};
};

/// Kodaira-Spencer coefficient of the motion-induced field, the value
///   f_{j zetabar} = (f_z)^2 J_j / (|f_z|^2 (1 - |J|^2)),  J = f_zb / f_z.
/// This equals -v_mub of the induced field. Throws if |J| >= 1.
cplx motion_ks_coefficient(const MotionJet& jet);

}  // namespace bergvar
