#pragma once

#include <functional>
#include <vector>

#include "bergvar/domain.hpp"
#include "bergvar/types.hpp"

namespace bergvar {

/// Gauss-Legendre nodes/weights on [0, 1]; exact for polynomials of
/// degree <= 2n - 1.
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct BoundaryNode {
  cplx position;
  double weight;  // arclength weight (d sigma)
  cplx normal;    // outward unit normal
  cplx tangent;   // unit tangent, counterclockwise
  double radius;  // distance from the star center
  double theta;   // ray angle
};

/// Interior + boundary quadrature of one fiber D_t, area measure dA.
struct FiberQuadrature {
  ParamPoint t;
  cplx center;
  std::vector<cplx> nodes;       // interior nodes
  std::vector<double> weights;   // positive dA weights
  std::vector<BoundaryNode> boundary;
  int n_radial{0};
  int n_angular{0};
  double mean_radius{0.0};       // mean boundary radius about the center

  double area() const;
  double perimeter() const;

  /// Sum f over interior nodes against dA weights.
  cplx integrate(const std::function<cplx(cplx)>& f) const;
  /// Sum f over boundary nodes against arclength weights.
  cplx integrate_boundary(const std::function<cplx(const BoundaryNode&)>& f) const;

  /// Approximate distance from an interior point to the traced boundary.
  double boundary_distance(cplx zeta) const;
};

/// Boundary root along each of n_angular equispaced rays from the center.
/// Safeguarded Newton with bisection fallback; residual |rho| <= 1e-13.
/// Throws NumericError if a ray fails to bracket a sign change.
std::vector<BoundaryNode> trace_boundary(const DomainFamily& family, const ParamPoint& t,
                                         int n_angular);

FiberQuadrature build_quadrature(const DomainFamily& family, const ParamPoint& t,
                                 int n_radial, int n_angular);

}  // namespace bergvar
