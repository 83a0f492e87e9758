#pragma once

#include <string>
#include <vector>

#include "bergvar/bergman.hpp"
#include "bergvar/fields.hpp"
#include "bergvar/variation.hpp"

namespace bergvar {

/// Holomorphic motions of the unit disk from the catalog f = z + a(t) zbar.
enum class MotionPreset { a0, at, at2, aeps };

struct MotionSpec {
  MotionPreset kind{MotionPreset::a0};
  cplx eps{0.1, 0.0};  // a(t) = eps t for the aeps preset

  double box_radius() const;
  void coefficient(cplx t, cplx& a, cplx& da) const;
  cplx map(cplx t, cplx z) const;      // f(t, z)
  cplx inverse(cplx t, cplx zeta) const;
  MotionJet jet(cplx t, cplx z) const;
};

MotionSpec make_motion(MotionPreset kind, cplx eps = cplx(0.1, 0.0));

const char* motion_preset_name(MotionPreset kind);
MotionPreset motion_preset_from_name(const std::string& name);

/// Defining-function family of the moved fibers D_t = f(t, D_0).
DomainFamily motion_to_family(const MotionSpec& motion);

struct BeltramiField {
  std::vector<cplx> values;  // J at the interior nodes
  double sup_abs{0.0};
};

BeltramiField beltrami_field(const MotionSpec& motion, cplx t, const FiberQuadrature& quad);

/// Kodaira-Spencer coefficient of the motion at (t, zeta in D_t).
cplx motion_ks_at(const MotionSpec& motion, cplx t, cplx zeta);

struct TrivialityIntegral {
  cplx value;           // int K(zeta, etabar) f_{j zetabar} dA(zeta)
  cplx via_projection;  // same pairing through the harmonic part
};

/// Triviality integral at one (t, eta); space must be a zero-weight space
/// of the fiber at t.
TrivialityIntegral triviality_integral(const MotionSpec& motion, const BergmanSpace& space,
                                       cplx t, cplx eta);

/// Compactly supported radial bump: a Gaussian of width radius/6 cut off at
/// s = |z - c| = radius, where it has already underflowed double rounding.
struct BumpSpec {
  cplx center{0.0, 0.0};
  double radius{0.35};
};

double bump_value(const BumpSpec& bump, cplx z);

struct KfValue {
  double value;                // squared norm of the Bergman projection
  double via_double_integral;  // direct double quadrature of K f conj(f)
};

/// K_f = int int K^t(z, wbar) f(z) conj(f(w)); support must stay inside the
/// interior accuracy region (throws otherwise).
KfValue kf_functional(const BergmanSpace& space, const BumpSpec& bump,
                      double interior_margin = 0.1);

struct TrivialityReport {
  struct Entry {
    cplx t;
    cplx eta;
    cplx value;
  };
  std::vector<Entry> entries;
  double max_modulus{0.0};
  Entry argmax{};
  double scale{0.0};  // max over grid of K^t(eta, etabar) * fiber area
  std::string verdict;  // grid-relative: trivial-consistent | nontrivial | inconclusive
};

/// Samples the triviality integral over a (t, eta) grid and classifies the
/// motion; thresholds are 1e-3 (nontrivial) and 1e-8 (trivial-consistent)
/// of the kernel-area scale.
TrivialityReport triviality_decision(const MotionSpec& motion,
                                     const std::vector<cplx>& t_grid,
                                     const std::vector<cplx>& eta_points,
                                     const EngineOptions& opt);

}  // namespace bergvar
