#pragma once

#include <map>
#include <memory>
#include <string>

#include "bergvar/bergman.hpp"
#include "bergvar/dbar.hpp"
#include "bergvar/fields.hpp"
#include "bergvar/finitediff.hpp"

namespace bergvar {

struct EngineOptions {
  int basis_size{24};
  int n_radial{48};
  int n_angular{256};
  Stencil stencil{};
  double interior_margin{0.1};  // fraction of the mean radius
};

/// Evaluates the variational formulas of one (family, weight) pair and their
/// finite-difference oracles. Spaces at stencil points are rebuilt per t and
/// cached; kernel differences act on evaluated kernel values, never on basis
/// coefficients. Not thread-safe; use one engine per worker.
class VariationEngine {
 public:
  VariationEngine(DomainFamily family, WeightFamily weight, EngineOptions opt = {});

  const DomainFamily& family() const { return family_; }
  const WeightFamily& weight() const { return weight_; }
  const EngineOptions& options() const { return opt_; }

  /// Cached space of the fiber at t. Shared ownership: the cache may be
  /// evicted during long grid scans while callers still hold the space.
  std::shared_ptr<const BergmanSpace> space_at(const ParamPoint& t);

  cplx kernel_value(const ParamPoint& t, cplx zeta, cplx eta);

  /// FD oracles for K_j and K_{j kbar} at fixed (zeta, eta).
  cplx kernel_fd_d(const ParamPoint& t, cplx zeta, cplx eta, int j);
  cplx kernel_fd_mixed(const ParamPoint& t, cplx zeta, cplx eta, int j, int k);

  struct KernelSection {
    Eigen::VectorXcd values;     // raw FD of kernel values at the interior nodes
    Eigen::VectorXcd projected;  // Bergman projection of the section
    double membership_residual{0.0};
  };
  /// d/dtbar^k of mu -> K^t(mu, etabar), sampled on the fiber at t.
  KernelSection kernel_dbar_section(const ParamPoint& t, cplx eta, int k);

  struct FirstVariation {
    cplx weight_term;    // int phi_j K(.,etabar) conj(K(.,zetabar)) e^{-phi} dA
    cplx boundary_term;  // (1/2) oint K conj(K) e^{-phi} v rho_mu / |rho_mu| dsigma
    cplx value;
    cplx oracle;         // FD of t -> K^t(zeta, etabar)
  };
  FirstVariation first_variation(const ParamPoint& t, cplx zeta, cplx eta, int j);

  struct SecondVariation {
    cplx boundary_term;    // (1/2) oint b_{j kbar} K conj(K) dsigma
    cplx derivative_term;  // << dbar_k section(eta), dbar_j section(zeta) >>
    cplx harmonic_term;    // << harm(-v_mub K(.,etabar)), harm(-v_mub K(.,zetabar)) >>
    cplx sum;
    cplx oracle;           // FD mixed derivative
    double membership_residual{0.0};
  };
  /// Planar second variation, weight must be the zero preset.
  SecondVariation second_variation_planar(const ParamPoint& t, cplx zeta, cplx eta, int j,
                                          int k);

  struct NakanoForm {
    Eigen::MatrixXcd matrix;  // (m r) x (m r), rows (j,p), cols (k,q)
    double min_eigenvalue{0.0};
    double max_eigenvalue{0.0};
    double scale{0.0};  // max |mixed| + |derivative term| before cancellation
    double hermitian_defect{0.0};
  };
  NakanoForm nakano_form(const ParamPoint& t, const std::vector<cplx>& eta_points);

  /// Throws unless the point is deep enough inside the fiber.
  void require_interior(const BergmanSpace& space, cplx point) const;
  /// Throws if the stencil footprint leaves the parameter box around t.
  void require_margin(const ParamPoint& t) const;

 private:
  DomainFamily family_;
  WeightFamily weight_;
  EngineOptions opt_;
  std::map<std::vector<double>, std::shared_ptr<const BergmanSpace>> cache_;

  Eigen::VectorXcd kernel_samples(const BergmanSpace& space, cplx eta) const;
  Eigen::VectorXcd ks_coefficients(const ParamPoint& t, const BergmanSpace& space, int j);
};

/// Integrand f(t, zeta) with its analytic t-derivative.
struct Integrand {
  std::string name;
  std::function<cplx(const ParamPoint&, cplx)> f;
  std::function<cplx(const ParamPoint&, cplx, int)> df_dt;
};

/// d/dt^j of F(t) = int_{D_t} f dA via the transport formula
///   F_j = int_{D_t} f_j dA - (1/2) oint f v rho_mu / |rho_mu| dsigma
/// with v the quasi-Kaehler-Einstein coefficient on the boundary.
cplx fiber_integral_derivative(const DomainFamily& family, const Integrand& f,
                               const ParamPoint& t, int j, int n_radial, int n_angular);

/// FD oracle for the same derivative.
cplx fiber_integral_fd_oracle(const DomainFamily& family, const Integrand& f,
                              const ParamPoint& t, int j, int n_radial, int n_angular,
                              const Stencil& s);

struct L2Identity {
  double b2;        // ||b||^2
  double a2;        // ||a||^2, a = minimal dbar solution of the d-data of b
  double b12;       // ||b_1||^2, harmonic part
  double residual;  // | b2 - a2 - b12 |
};

/// Checks ||b||^2 = ||a||^2 + ||b_1||^2 for b = g dmubar, weight zero.
L2Identity l2_identity_check(const BergmanSpace& space, const RZPoly& g);

struct PshScan {
  double min_levi{0.0};
  ParamPoint argmin;
  double max_abs_levi{0.0};
};

/// Minimum FD Levi form of log F over the grid (m = 1: t-Laplacian / 4,
/// m = 2: smallest eigenvalue of the 2x2 complex Hessian).
/// Throws NumericError on a non-positive sample of F.
PshScan psh_scan(const std::function<double(const ParamPoint&)>& F,
                 const std::vector<ParamPoint>& grid, const Stencil& s, int m);

}  // namespace bergvar
