#pragma once

#include <string>
#include <vector>

#include "bergvar/types.hpp"

namespace bergvar {

/// Catalog of defining-function families rho(t, zeta).
///
/// Every preset is star-shaped about its center for all t inside the
/// configured parameter box, with rho < 0 inside the fiber and
/// rho_{mu mubar} > 0 near the closed fiber.
enum class FamilyPreset {
  unit_disk,       // rho = |z|^2 - 1, independent of t
  scaled_disk,     // rho = |z|^2 - |1+t|^2
  squeezed_disk,   // rho = |z|^2 - 1 + Re(t z^2)
  double_squeeze,  // rho = |z|^2 - 1 + Re(t1 z^2) + Re(t2 z^3), m = 2
  motion_a0,       // fiber = image of the unit disk under z + a(t) zbar, a = 0
  motion_at,       // a(t) = t
  motion_at2,      // a(t) = t^2
  motion_aeps,     // a(t) = eps * t, eps = params[0]
};

struct DomainFamily {
  FamilyPreset preset{FamilyPreset::unit_disk};
  std::vector<cplx> params;  // preset-specific constants
  cplx center{0.0, 0.0};     // star center, contained in every fiber
  int m{1};                  // number of complex parameters t^j

  /// Radius of the parameter box |t^j| <= box_radius(j).
  double box_radius(int j) const;
  bool in_box(const ParamPoint& t) const;
  /// Largest finite-difference step the box allows around t (stencil guard).
  double box_margin(const ParamPoint& t) const;
};

DomainFamily make_family(FamilyPreset preset, std::vector<cplx> params = {});

/// Second-order jet of rho at one point (t, zeta), Wirtinger convention.
/// Index j runs over the t-parameters, mu is the fiber coordinate.
struct DefiningJet {
  double value{0.0};
  std::vector<cplx> rho_t;     // rho_j
  std::vector<cplx> rho_tb;    // rho_{kbar} = conj(rho_k)
  cplx rho_mu{};
  cplx rho_mub{};              // conj(rho_mu)
  std::vector<cplx> rho_ttb;   // rho_{j kbar}, row-major m x m
  std::vector<cplx> rho_tmub;  // rho_{j mubar}
  std::vector<cplx> rho_tbmu;  // rho_{kbar mu} = conj(rho_{k mubar})
  double rho_mumub{0.0};       // rho_{mu mubar}, real

  cplx ttb(int j, int k, int m) const { return rho_ttb[static_cast<size_t>(j * m + k)]; }
};

/// Evaluates the analytic jet of the preset defining function.
/// Throws ConfigError for parameters outside the configured box.
DefiningJet evaluate_jet(const DomainFamily& family, const ParamPoint& t, cplx zeta);

/// rho only (used by root finding and finite-difference cross checks).
double evaluate_rho(const DomainFamily& family, const ParamPoint& t, cplx zeta);

const char* family_preset_name(FamilyPreset preset);
FamilyPreset family_preset_from_name(const std::string& name);

}  // namespace bergvar
