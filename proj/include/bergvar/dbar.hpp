#pragma once

#include <Eigen/Dense>

#include "bergvar/bergman.hpp"
#include "bergvar/quadrature.hpp"
#include "bergvar/types.hpp"

namespace bergvar {

/// Polynomial in (z, zbar): sum_{p,q} c(p,q) z^p zbar^q.
struct RZPoly {
  int deg_z{0};
  int deg_zb{0};
  std::vector<cplx> c;  // (deg_z+1) x (deg_zb+1), row-major in p

  static RZPoly zero(int dz = 0, int dzb = 0);
  cplx& at(int p, int q);
  cplx at(int p, int q) const;
  cplx eval(cplx z) const;
  RZPoly dz() const;
  RZPoly dzbar() const;
  /// Antiderivative in zbar: d/dzbar of the result equals *this.
  RZPoly antiderivative_zbar() const;
  RZPoly scaled(cplx factor) const;
};

/// Exact Cauchy transform of the constant 1 over the fiber,
/// T1(zeta) = (1/pi) int_D dA(w)/(zeta - w), via the Pompeiu boundary
/// formula T1 = zetabar - (1/2 pi i) oint wbar/(w - zeta) dw.
cplx transform_of_one(const FiberQuadrature& quad, cplx zeta);

/// u with d(u)/dzetabar = g, evaluated at one point. The singular kernel is
/// desingularized by subtracting g(zeta) and adding back its exact transform:
///   u(zeta) = (1/pi) sum_j w_j (g_j - g(zeta)) / (zeta - w_j) + g(zeta) T1(zeta).
cplx cauchy_transform_at(const FiberQuadrature& quad, const Eigen::VectorXcd& g,
                         cplx zeta, cplx g_at_zeta);

/// Cauchy transform at every interior node (self node excluded from the sum).
Eigen::VectorXcd cauchy_transform(const FiberQuadrature& quad, const Eigen::VectorXcd& g);

struct MinimalDbarSolution {
  Eigen::VectorXcd values;  // at the interior nodes
  double norm2{0.0};        // weighted L^2 norm of the minimal solution
};

/// L^2-minimal solution of dbar u = g from node samples of g:
/// u = (I - P)[cauchy_transform(g)].
MinimalDbarSolution minimal_dbar_solve(const BergmanSpace& space,
                                       const Eigen::VectorXcd& g_samples);

/// Same, for polynomial data: the particular solution is the exact zbar
/// antiderivative, keeping the quadrature error spectrally small.
MinimalDbarSolution minimal_dbar_solve(const BergmanSpace& space, const RZPoly& g);

}  // namespace bergvar
