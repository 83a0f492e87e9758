#include "bergvar/dbar.hpp"

namespace bergvar {

RZPoly RZPoly::zero(int dz, int dzb) {
  RZPoly p;
  p.deg_z = dz;
  p.deg_zb = dzb;
  p.c.assign(static_cast<size_t>((dz + 1) * (dzb + 1)), cplx(0.0));
  return p;
}

cplx& RZPoly::at(int p, int q) { return c[static_cast<size_t>(p * (deg_zb + 1) + q)]; }
cplx RZPoly::at(int p, int q) const { return c[static_cast<size_t>(p * (deg_zb + 1) + q)]; }

cplx RZPoly::eval(cplx z) const {
  const cplx zb = std::conj(z);
  cplx acc = 0.0;
  cplx zp = 1.0;
  for (int p = 0; p <= deg_z; ++p) {
    cplx zbq = 1.0;
    cplx row = 0.0;
    for (int q = 0; q <= deg_zb; ++q) {
      row += at(p, q) * zbq;
      zbq *= zb;
    }
    acc += zp * row;
    zp *= z;
  }
  return acc;
}

RZPoly RZPoly::dz() const {
  if (deg_z == 0) return zero(0, deg_zb);
  RZPoly out = zero(deg_z - 1, deg_zb);
  for (int p = 1; p <= deg_z; ++p)
    for (int q = 0; q <= deg_zb; ++q) out.at(p - 1, q) = static_cast<double>(p) * at(p, q);
  return out;
}

RZPoly RZPoly::dzbar() const {
  if (deg_zb == 0) return zero(deg_z, 0);
  RZPoly out = zero(deg_z, deg_zb - 1);
  for (int p = 0; p <= deg_z; ++p)
    for (int q = 1; q <= deg_zb; ++q) out.at(p, q - 1) = static_cast<double>(q) * at(p, q);
  return out;
}

RZPoly RZPoly::antiderivative_zbar() const {
  RZPoly out = zero(deg_z, deg_zb + 1);
  for (int p = 0; p <= deg_z; ++p)
    for (int q = 0; q <= deg_zb; ++q) out.at(p, q + 1) = at(p, q) / (q + 1.0);
  return out;
}

RZPoly RZPoly::scaled(cplx factor) const {
  RZPoly out = *this;
  for (auto& v : out.c) v *= factor;
  return out;
}

namespace {

// Trigonometric resampling of the traced boundary curve. The trace lives on
// equispaced rays, so a direct DFT reconstructs the analytic curve to
// spectral accuracy; the dense contour keeps the Cauchy integral usable for
// evaluation points much closer to the boundary than one trace spacing.
struct DenseContour {
  std::vector<cplx> w;   // positions
  std::vector<cplx> dw;  // w'(theta) * (2 pi / M)
};

DenseContour upsample_contour(const FiberQuadrature& quad, int factor) {
  const int n = static_cast<int>(quad.boundary.size());
  const int m = n * factor;
  std::vector<cplx> coef(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    cplx acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const double ang = -2.0 * kPi * k * i / n;
      acc += quad.boundary[static_cast<size_t>(i)].position * std::polar(1.0, ang);
    }
    coef[static_cast<size_t>(k)] = acc / static_cast<double>(n);
  }
  DenseContour out;
  out.w.resize(static_cast<size_t>(m));
  out.dw.resize(static_cast<size_t>(m));
  for (int s = 0; s < m; ++s) {
    const double theta = 2.0 * kPi * s / m;
    cplx w = 0.0, dw = 0.0;
    for (int k = 0; k < n; ++k) {
      const int freq = k <= n / 2 ? k : k - n;  // signed harmonics
      const cplx e = std::polar(1.0, freq * theta);
      w += coef[static_cast<size_t>(k)] * e;
      dw += coef[static_cast<size_t>(k)] * cplx(0.0, static_cast<double>(freq)) * e;
    }
    out.w[static_cast<size_t>(s)] = w;
    out.dw[static_cast<size_t>(s)] = dw * (2.0 * kPi / m);
  }
  return out;
}

cplx contour_cauchy_wbar(const DenseContour& c, cplx zeta) {
  cplx acc = 0.0;
  for (size_t s = 0; s < c.w.size(); ++s)
    acc += std::conj(c.w[s]) * c.dw[s] / (c.w[s] - zeta);
  return acc / cplx(0.0, 2.0 * kPi);
}

}  // namespace

cplx transform_of_one(const FiberQuadrature& quad, cplx zeta) {
  // (1/2 pi i) oint wbar/(w - zeta) dw, dw = tangent * dsigma.
  cplx contour = 0.0;
  for (const auto& b : quad.boundary)
    contour += b.weight * std::conj(b.position) * b.tangent / (b.position - zeta);
  contour /= cplx(0.0, 2.0 * kPi);
  return std::conj(zeta) - contour;
}

cplx cauchy_transform_at(const FiberQuadrature& quad, const Eigen::VectorXcd& g,
                         cplx zeta, cplx g_at_zeta) {
  cplx acc = 0.0;
  for (size_t j = 0; j < quad.nodes.size(); ++j) {
    const cplx d = zeta - quad.nodes[j];
    if (std::abs(d) < 1e-14) continue;
    acc += quad.weights[j] * (g(static_cast<Eigen::Index>(j)) - g_at_zeta) / d;
  }
  return acc / kPi + g_at_zeta * transform_of_one(quad, zeta);
}

Eigen::VectorXcd cauchy_transform(const FiberQuadrature& quad, const Eigen::VectorXcd& g) {
  const Eigen::Index n = g.size();
  // The coarse contour handles deep-interior points; near the boundary the
  // pole sits closer than one trace spacing and needs the dense contour.
  const double near = 0.15 * quad.mean_radius;
  DenseContour dense;
  bool have_dense = false;

  Eigen::VectorXcd u(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const cplx zeta = quad.nodes[static_cast<size_t>(i)];
    cplx acc = 0.0;
    for (size_t j = 0; j < quad.nodes.size(); ++j) {
      const cplx d = zeta - quad.nodes[j];
      if (std::abs(d) < 1e-14) continue;
      acc += quad.weights[j] * (g(static_cast<Eigen::Index>(j)) - g(i)) / d;
    }
    cplx t1;
    if (quad.boundary_distance(zeta) < near) {
      if (!have_dense) {
        dense = upsample_contour(quad, 64);
        have_dense = true;
      }
      t1 = std::conj(zeta) - contour_cauchy_wbar(dense, zeta);
    } else {
      t1 = transform_of_one(quad, zeta);
    }
    u(i) = acc / kPi + g(i) * t1;
  }
  return u;
}

namespace {

MinimalDbarSolution remove_holomorphic_part(const BergmanSpace& space,
                                            Eigen::VectorXcd particular) {
  const HoloFunction h = project(space, particular);
  MinimalDbarSolution sol;
  sol.values = particular - h.at_nodes();
  sol.norm2 = space.norm2(sol.values);
  return sol;
}

}  // namespace

MinimalDbarSolution minimal_dbar_solve(const BergmanSpace& space,
                                       const Eigen::VectorXcd& g_samples) {
  return remove_holomorphic_part(space, cauchy_transform(space.quadrature(), g_samples));
}

MinimalDbarSolution minimal_dbar_solve(const BergmanSpace& space, const RZPoly& g) {
  const RZPoly particular = g.antiderivative_zbar();
  return remove_holomorphic_part(space,
                                 sample(space.quadrature(), [&](cplx z) { return particular.eval(z); }));
}

}  // namespace bergvar
