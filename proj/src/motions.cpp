#include "bergvar/motions.hpp"

#include <cmath>

namespace bergvar {

double MotionSpec::box_radius() const {
  switch (kind) {
    case MotionPreset::a0:
      return 1.0;
    case MotionPreset::at:
      return 0.35;
    case MotionPreset::at2:
      return 0.45;
    case MotionPreset::aeps:
      return std::min(2.0, 0.5 / std::max(std::abs(eps), 1e-9));
  }
  return 0.0;
}

void MotionSpec::coefficient(cplx t, cplx& a, cplx& da) const {
  switch (kind) {
    case MotionPreset::a0:
      a = 0.0;
      da = 0.0;
      return;
    case MotionPreset::at:
      a = t;
      da = 1.0;
      return;
    case MotionPreset::at2:
      a = t * t;
      da = 2.0 * t;
      return;
    case MotionPreset::aeps:
      a = eps * t;
      da = eps;
      return;
  }
}

cplx MotionSpec::map(cplx t, cplx z) const {
  cplx a, da;
  coefficient(t, a, da);
  return z + a * std::conj(z);
}

cplx MotionSpec::inverse(cplx t, cplx zeta) const {
  cplx a, da;
  coefficient(t, a, da);
  const double a2 = std::norm(a);
  if (a2 >= 1.0) throw NumericError("motion inverse: |a| >= 1");
  return (zeta - a * std::conj(zeta)) / (1.0 - a2);
}

MotionJet MotionSpec::jet(cplx t, cplx z) const {
  cplx a, da;
  coefficient(t, a, da);
  MotionJet jet;
  jet.f_z = 1.0;
  jet.f_zb = a;
  jet.f_j = da * std::conj(z);
  jet.f_jz = 0.0;
  jet.f_jzb = da;
  return jet;
}

MotionSpec make_motion(MotionPreset kind, cplx eps) {
  MotionSpec m;
  m.kind = kind;
  m.eps = eps;
  return m;
}

const char* motion_preset_name(MotionPreset kind) {
  switch (kind) {
    case MotionPreset::a0:
      return "motion:z+a(t)zbar:a=0";
    case MotionPreset::at:
      return "motion:z+a(t)zbar:a=t";
    case MotionPreset::at2:
      return "motion:z+a(t)zbar:a=t2";
    case MotionPreset::aeps:
      return "motion:z+a(t)zbar:a=eps*t";
  }
  return "?";
}

MotionPreset motion_preset_from_name(const std::string& name) {
  for (MotionPreset p :
       {MotionPreset::a0, MotionPreset::at, MotionPreset::at2, MotionPreset::aeps}) {
    if (name == motion_preset_name(p)) return p;
  }
  throw ConfigError("unknown motion preset: " + name);
}

DomainFamily motion_to_family(const MotionSpec& motion) {
  switch (motion.kind) {
    case MotionPreset::a0:
      return make_family(FamilyPreset::motion_a0);
    case MotionPreset::at:
      return make_family(FamilyPreset::motion_at);
    case MotionPreset::at2:
      return make_family(FamilyPreset::motion_at2);
    case MotionPreset::aeps:
      return make_family(FamilyPreset::motion_aeps, {motion.eps});
  }
  throw ConfigError("motion_to_family: bad preset");
}

BeltramiField beltrami_field(const MotionSpec& motion, cplx t, const FiberQuadrature& quad) {
  cplx a, da;
  motion.coefficient(t, a, da);
  BeltramiField field;
  field.values.assign(quad.nodes.size(), a);  // J = f_zb / f_z = a for the catalog
  field.sup_abs = std::abs(a);
  if (field.sup_abs >= 1.0) throw NumericError("beltrami_field: |J| >= 1");
  return field;
}

cplx motion_ks_at(const MotionSpec& motion, cplx t, cplx zeta) {
  return motion_ks_coefficient(motion.jet(t, motion.inverse(t, zeta)));
}

TrivialityIntegral triviality_integral(const MotionSpec& motion, const BergmanSpace& space,
                                       cplx t, cplx eta) {
  const auto& quad = space.quadrature();
  const Eigen::VectorXcd k_eta =
      space.basis_at_nodes() * space.basis_at(eta).conjugate();
  Eigen::VectorXcd g(k_eta.size());
  for (Eigen::Index i = 0; i < g.size(); ++i)
    g(i) = motion_ks_at(motion, t, quad.nodes[static_cast<size_t>(i)]) * k_eta(i);

  TrivialityIntegral out;
  cplx direct = 0.0;
  for (Eigen::Index i = 0; i < g.size(); ++i)
    direct += quad.weights[static_cast<size_t>(i)] * g(i);
  out.value = direct;

  // Same pairing through the harmonic part: <harm(g), 1>.
  const AntiHoloFunction h = conj_project(space, g);
  const Eigen::VectorXcd hn = h.at_nodes();
  cplx paired = 0.0;
  for (Eigen::Index i = 0; i < hn.size(); ++i)
    paired += quad.weights[static_cast<size_t>(i)] * hn(i);
  out.via_projection = paired;
  return out;
}

double bump_value(const BumpSpec& bump, cplx z) {
  // Gaussian truncated where it underflows double rounding (exp(-36)), so the
  // integrand is analytic to machine precision inside the hard support. A
  // classical exp(-s^2/(r^2-s^2)) profile is only Gevrey at the edge and its
  // quadrature error is not smooth in t, which poisons FD Levi forms.
  const double s2 = std::norm(z - bump.center);
  const double r2 = bump.radius * bump.radius;
  if (s2 >= r2) return 0.0;
  const double w2 = r2 / 36.0;
  return std::exp(-s2 / w2);
}

KfValue kf_functional(const BergmanSpace& space, const BumpSpec& bump,
                      double interior_margin) {
  const auto& quad = space.quadrature();
  for (const BoundaryNode& b : quad.boundary) {
    if (std::abs(b.position - bump.center) <
        bump.radius + interior_margin * quad.mean_radius)
      throw ConfigError("kf_functional: bump support touches the boundary region");
  }

  const Eigen::Index n = static_cast<Eigen::Index>(quad.nodes.size());
  Eigen::VectorXcd f(n), proj_data(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double fv = bump_value(bump, quad.nodes[static_cast<size_t>(i)]);
    f(i) = fv;
    proj_data(i) = fv * std::exp(space.phi_at_nodes()(i));  // conj(f) e^{phi}, f real
  }

  KfValue out;
  out.value = project(space, proj_data).norm2();

  // Direct route: y_k = int f e_k dA, K_f = sum |y_k|^2.
  Eigen::VectorXcd wf(n);
  for (Eigen::Index i = 0; i < n; ++i)
    wf(i) = quad.weights[static_cast<size_t>(i)] * f(i);
  const Eigen::VectorXcd y = space.basis_at_nodes().transpose() * wf;
  out.via_double_integral = y.squaredNorm();
  return out;
}

TrivialityReport triviality_decision(const MotionSpec& motion,
                                     const std::vector<cplx>& t_grid,
                                     const std::vector<cplx>& eta_points,
                                     const EngineOptions& opt) {
  const DomainFamily family = motion_to_family(motion);
  const WeightFamily weight = make_weight(WeightPreset::zero);

  TrivialityReport report;
  report.max_modulus = -1.0;
  for (cplx t : t_grid) {
    const ParamPoint tp{t};
    if (!family.in_box(tp)) throw ConfigError("triviality_decision: t outside motion box");
    FiberQuadrature quad = build_quadrature(family, tp, opt.n_radial, opt.n_angular);
    const BergmanSpace space(std::move(quad), weight, opt.basis_size);
    const double area = space.quadrature().area();
    for (cplx eta : eta_points) {
      report.scale = std::max(report.scale,
                              std::real(space.kernel(eta, eta)) * area);
      const TrivialityIntegral ti = triviality_integral(motion, space, t, eta);
      TrivialityReport::Entry entry{t, eta, ti.value};
      report.entries.push_back(entry);
      if (std::abs(ti.value) > report.max_modulus) {
        report.max_modulus = std::abs(ti.value);
        report.argmax = entry;
      }
    }
  }

  if (report.max_modulus > 1e-3 * report.scale) {
    report.verdict = "nontrivial";
  } else if (report.max_modulus < 1e-8 * report.scale) {
    report.verdict = "trivial-consistent";
  } else {
    report.verdict = "inconclusive";
  }
  return report;
}

}  // namespace bergvar
