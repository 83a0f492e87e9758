#include "bergvar/domain.hpp"

#include <cmath>

namespace bergvar {

namespace {

int preset_param_count(FamilyPreset preset) {
  return preset == FamilyPreset::double_squeeze ? 2 : 1;
}

// a(t), a'(t) for the motion presets f = z + a(t) zbar.
void motion_coefficient(const DomainFamily& family, cplx t, cplx& a, cplx& da) {
  switch (family.preset) {
    case FamilyPreset::motion_a0:
      a = 0.0;
      da = 0.0;
      return;
    case FamilyPreset::motion_at:
      a = t;
      da = 1.0;
      return;
    case FamilyPreset::motion_at2:
      a = t * t;
      da = 2.0 * t;
      return;
    case FamilyPreset::motion_aeps: {
      const cplx eps = family.params.empty() ? cplx(0.1, 0.0) : family.params[0];
      a = eps * t;
      da = eps;
      return;
    }
    default:
      throw ConfigError("motion_coefficient: not a motion preset");
  }
}

}  // namespace

double DomainFamily::box_radius(int) const {
  switch (preset) {
    case FamilyPreset::unit_disk:
      return 1.0;
    case FamilyPreset::scaled_disk:
      return 0.4;
    case FamilyPreset::squeezed_disk:
      return 0.4;
    case FamilyPreset::double_squeeze:
      return 0.2;
    case FamilyPreset::motion_a0:
      return 1.0;
    case FamilyPreset::motion_at:
      return 0.35;
    case FamilyPreset::motion_at2:
      return 0.45;  // |a| = |t|^2 <= 0.2025
    case FamilyPreset::motion_aeps: {
      const double eps = params.empty() ? 0.1 : std::abs(params[0]);
      return std::min(2.0, 0.5 / std::max(eps, 1e-9));
    }
  }
  return 0.0;
}

bool DomainFamily::in_box(const ParamPoint& t) const {
  if (static_cast<int>(t.size()) != m) return false;
  for (int j = 0; j < m; ++j)
    if (std::abs(t[static_cast<size_t>(j)]) > box_radius(j)) return false;
  return true;
}

double DomainFamily::box_margin(const ParamPoint& t) const {
  double margin = 1e300;
  for (int j = 0; j < m; ++j)
    margin = std::min(margin, box_radius(j) - std::abs(t[static_cast<size_t>(j)]));
  return margin;
}

DomainFamily make_family(FamilyPreset preset, std::vector<cplx> params) {
  DomainFamily family;
  family.preset = preset;
  family.params = std::move(params);
  family.center = cplx(0.0, 0.0);
  family.m = preset_param_count(preset);
  return family;
}

DefiningJet evaluate_jet(const DomainFamily& family, const ParamPoint& t, cplx zeta) {
  if (static_cast<int>(t.size()) != family.m)
    throw ConfigError("evaluate_jet: wrong parameter dimension");
  if (!family.in_box(t)) throw ConfigError("evaluate_jet: parameter outside preset box");

  const int m = family.m;
  DefiningJet jet;
  jet.rho_t.assign(static_cast<size_t>(m), cplx(0.0));
  jet.rho_tb.assign(static_cast<size_t>(m), cplx(0.0));
  jet.rho_ttb.assign(static_cast<size_t>(m * m), cplx(0.0));
  jet.rho_tmub.assign(static_cast<size_t>(m), cplx(0.0));
  jet.rho_tbmu.assign(static_cast<size_t>(m), cplx(0.0));

  const cplx z = zeta;
  const cplx zb = std::conj(zeta);

  switch (family.preset) {
    case FamilyPreset::unit_disk: {
      jet.value = std::norm(z) - 1.0;
      jet.rho_mu = zb;
      jet.rho_mumub = 1.0;
      break;
    }
    case FamilyPreset::scaled_disk: {
      const cplx s = 1.0 + t[0];
      jet.value = std::norm(z) - std::norm(s);
      jet.rho_mu = zb;
      jet.rho_mumub = 1.0;
      jet.rho_t[0] = -std::conj(s);
      jet.rho_ttb[0] = -1.0;
      break;
    }
    case FamilyPreset::squeezed_disk: {
      const cplx u = t[0];
      jet.value = std::norm(z) - 1.0 + std::real(u * z * z);
      jet.rho_mu = zb + u * z;
      jet.rho_mumub = 1.0;
      jet.rho_t[0] = 0.5 * z * z;
      break;
    }
    case FamilyPreset::double_squeeze: {
      const cplx u1 = t[0], u2 = t[1];
      jet.value = std::norm(z) - 1.0 + std::real(u1 * z * z) + std::real(u2 * z * z * z);
      jet.rho_mu = zb + u1 * z + 1.5 * u2 * z * z;
      jet.rho_mumub = 1.0;
      jet.rho_t[0] = 0.5 * z * z;
      jet.rho_t[1] = 0.5 * z * z * z;
      break;
    }
    case FamilyPreset::motion_a0:
    case FamilyPreset::motion_at:
    case FamilyPreset::motion_at2:
    case FamilyPreset::motion_aeps: {
      // Fiber = f(t, D_0) with f = w + a(t) wbar; rho = |w(t,zeta)|^2 - 1
      // where w = alpha (zeta - a zetabar), alpha = 1/(1-|a|^2).
      cplx a, da;
      motion_coefficient(family, t[0], a, da);
      const double a2 = std::norm(a);
      if (a2 >= 1.0) throw ConfigError("motion family: |a(t)| >= 1");
      const double alpha = 1.0 / (1.0 - a2);
      const cplx w = alpha * (z - a * zb);
      const cplx wb = std::conj(w);
      const cplx beta = alpha * a;

      jet.value = std::norm(w) - 1.0;
      jet.rho_mu = alpha * wb - std::conj(beta) * w;
      jet.rho_mumub = alpha * alpha + std::norm(beta);
      // rho_t = -a'(t) wbar rho_mu  (from rho(t, f(t,w)) = |w|^2 - 1)
      jet.rho_t[0] = -da * wb * jet.rho_mu;
      jet.rho_tmub[0] = -da * (alpha * jet.rho_mu + wb * jet.rho_mumub);
      // z_tbar = conj(z_t) with z_t = -alpha a' wbar
      const cplx wb_tb = -alpha * std::conj(da) * w;
      jet.rho_ttb[0] = -da * (wb_tb * jet.rho_mu + wb * std::conj(jet.rho_tmub[0]));
      break;
    }
  }

  for (int j = 0; j < m; ++j) {
    jet.rho_tb[static_cast<size_t>(j)] = std::conj(jet.rho_t[static_cast<size_t>(j)]);
    jet.rho_tbmu[static_cast<size_t>(j)] = std::conj(jet.rho_tmub[static_cast<size_t>(j)]);
  }
  jet.rho_mub = std::conj(jet.rho_mu);
  return jet;
}

double evaluate_rho(const DomainFamily& family, const ParamPoint& t, cplx zeta) {
  return evaluate_jet(family, t, zeta).value;
}

const char* family_preset_name(FamilyPreset preset) {
  switch (preset) {
    case FamilyPreset::unit_disk:
      return "unit_disk";
    case FamilyPreset::scaled_disk:
      return "scaled_disk";
    case FamilyPreset::squeezed_disk:
      return "squeezed_disk";
    case FamilyPreset::double_squeeze:
      return "double_squeeze";
    case FamilyPreset::motion_a0:
      return "motion:z+a(t)zbar:a=0";
    case FamilyPreset::motion_at:
      return "motion:z+a(t)zbar:a=t";
    case FamilyPreset::motion_at2:
      return "motion:z+a(t)zbar:a=t2";
    case FamilyPreset::motion_aeps:
      return "motion:z+a(t)zbar:a=eps*t";
  }
  return "?";
}

FamilyPreset family_preset_from_name(const std::string& name) {
  for (FamilyPreset p : {FamilyPreset::unit_disk, FamilyPreset::scaled_disk,
                         FamilyPreset::squeezed_disk, FamilyPreset::double_squeeze,
                         FamilyPreset::motion_a0, FamilyPreset::motion_at,
                         FamilyPreset::motion_at2, FamilyPreset::motion_aeps}) {
    if (name == family_preset_name(p)) return p;
  }
  throw ConfigError("unknown family preset: " + name);
}

}  // namespace bergvar
