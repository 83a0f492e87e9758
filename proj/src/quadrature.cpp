#include "bergvar/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace bergvar {

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  // Zeros of the Legendre polynomial on [-1,1] by Newton iteration,
  // then mapped to [0,1].
  nodes.assign(static_cast<size_t>(n), 0.0);
  weights.assign(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Recurrence for P_n(x) and P_n'(x).
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = -p1 / dp;
      x += dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<size_t>(i)] = 0.5 * (1.0 - x);
    nodes[static_cast<size_t>(n - 1 - i)] = 0.5 * (1.0 + x);
    weights[static_cast<size_t>(i)] = 0.5 * w;
    weights[static_cast<size_t>(n - 1 - i)] = 0.5 * w;
  }
}

namespace {

// rho and d(rho)/dr along the ray center + r e^{i theta}.
void ray_values(const DomainFamily& family, const ParamPoint& t, cplx center, double theta,
                double r, double& rho, double& drho) {
  const cplx dir = std::polar(1.0, theta);
  const DefiningJet jet = evaluate_jet(family, t, center + r * dir);
  rho = jet.value;
  drho = 2.0 * std::real(jet.rho_mu * dir);
}

double find_root_on_ray(const DomainFamily& family, const ParamPoint& t, cplx center,
                        double theta, double r_hint) {
  // Bracket the sign change first.
  double lo = 0.0;
  double rho_lo = evaluate_rho(family, t, center);
  if (rho_lo >= 0.0) throw NumericError("trace_boundary: star center not inside fiber");
  double hi = r_hint > 0.0 ? r_hint : 1.0;
  double rho_hi, drho;
  ray_values(family, t, center, theta, hi, rho_hi, drho);
  int expand = 0;
  while (rho_hi < 0.0) {
    lo = hi;
    rho_lo = rho_hi;
    hi *= 1.5;
    ray_values(family, t, center, theta, hi, rho_hi, drho);
    if (++expand > 60) throw NumericError("trace_boundary: no sign change along ray");
  }

  // Safeguarded Newton: fall back to bisection whenever the Newton step
  // leaves the bracket or stalls.
  double r = 0.5 * (lo + hi);
  const double tol = 1e-13;
  for (int iter = 0; iter < 200; ++iter) {
    double rho, dr;
    ray_values(family, t, center, theta, r, rho, dr);
    if (std::abs(rho) <= tol) return r;
    if (rho < 0.0) {
      lo = r;
    } else {
      hi = r;
    }
    double next = r - rho / dr;
    if (!(next > lo && next < hi) || dr == 0.0) next = 0.5 * (lo + hi);
    if (next == r) next = 0.5 * (lo + hi);
    r = next;
  }
  throw NumericError("trace_boundary: root find did not converge");
}

}  // namespace

std::vector<BoundaryNode> trace_boundary(const DomainFamily& family, const ParamPoint& t,
                                         int n_angular) {
  if (n_angular < 4) throw ConfigError("trace_boundary: n_angular < 4");
  std::vector<BoundaryNode> nodes(static_cast<size_t>(n_angular));
  const double dtheta = 2.0 * kPi / n_angular;
  double r_prev = 0.0;
  for (int i = 0; i < n_angular; ++i) {
    const double theta = i * dtheta;
    const double r = find_root_on_ray(family, t, family.center, theta, r_prev);
    r_prev = r;
    BoundaryNode& b = nodes[static_cast<size_t>(i)];
    b.theta = theta;
    b.radius = r;
    b.position = family.center + std::polar(r, theta);
  }
  // Arclength weights and frames from the jet:
  //   d sigma = sqrt(R'^2 + R^2) dtheta,  R' = R Im(rho_mu e^{i theta}) / Re(rho_mu e^{i theta}).
  for (auto& b : nodes) {
    const DefiningJet jet = evaluate_jet(family, t, b.position);
    const cplx dir = std::polar(1.0, b.theta);
    const double denom = std::real(jet.rho_mu * dir);
    const double rprime = b.radius * std::imag(jet.rho_mu * dir) / denom;
    b.weight = std::sqrt(rprime * rprime + b.radius * b.radius) * dtheta;
    const double gmod = std::abs(jet.rho_mu);
    if (gmod == 0.0) throw NumericError("trace_boundary: vanishing gradient on boundary");
    b.normal = jet.rho_mub / gmod;
    b.tangent = cplx(0.0, 1.0) * b.normal;
  }
  return nodes;
}

FiberQuadrature build_quadrature(const DomainFamily& family, const ParamPoint& t,
                                 int n_radial, int n_angular) {
  if (n_radial < 2) throw ConfigError("build_quadrature: n_radial < 2");
  FiberQuadrature quad;
  quad.t = t;
  quad.center = family.center;
  quad.n_radial = n_radial;
  quad.n_angular = n_angular;
  quad.boundary = trace_boundary(family, t, n_angular);

  std::vector<double> gx, gw;
  gauss_legendre_01(n_radial, gx, gw);

  const double dtheta = 2.0 * kPi / n_angular;
  quad.nodes.reserve(static_cast<size_t>(n_radial * n_angular));
  quad.weights.reserve(static_cast<size_t>(n_radial * n_angular));
  double rsum = 0.0;
  for (const auto& b : quad.boundary) {
    rsum += b.radius;
    const cplx dir = std::polar(1.0, b.theta);
    for (int k = 0; k < n_radial; ++k) {
      const double r = gx[static_cast<size_t>(k)] * b.radius;
      quad.nodes.push_back(family.center + r * dir);
      // dA = r dr dtheta with r = x R(theta): weight = w_k x_k R^2 dtheta
      quad.weights.push_back(gw[static_cast<size_t>(k)] * gx[static_cast<size_t>(k)] *
                             b.radius * b.radius * dtheta);
    }
  }
  quad.mean_radius = rsum / n_angular;
  return quad;
}

double FiberQuadrature::area() const {
  double a = 0.0;
  for (double w : weights) a += w;
  return a;
}

double FiberQuadrature::perimeter() const {
  double p = 0.0;
  for (const auto& b : boundary) p += b.weight;
  return p;
}

cplx FiberQuadrature::integrate(const std::function<cplx(cplx)>& f) const {
  cplx acc = 0.0;
  for (size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
  return acc;
}

cplx FiberQuadrature::integrate_boundary(
    const std::function<cplx(const BoundaryNode&)>& f) const {
  cplx acc = 0.0;
  for (const auto& b : boundary) acc += b.weight * f(b);
  return acc;
}

double FiberQuadrature::boundary_distance(cplx zeta) const {
  double d = 1e300;
  for (const auto& b : boundary) d = std::min(d, std::abs(zeta - b.position));
  return d;
}

}  // namespace bergvar
