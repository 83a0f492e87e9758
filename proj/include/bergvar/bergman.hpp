#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bergvar/quadrature.hpp"
#include "bergvar/types.hpp"
#include "bergvar/weight.hpp"

namespace bergvar {

/// Weighted Bergman space of one fiber, spanned by an orthonormal polynomial
/// basis e_k under <g,h> = int g conj(h) e^{-phi} dA.
///
/// Monomials are shifted to the star center and scaled by the mean boundary
/// radius before orthonormalization; the Gram matrix is diagonalized and
/// eigenvalues below 1e-12 of the largest are discarded (numerical rank).
class BergmanSpace {
 public:
  BergmanSpace(FiberQuadrature quad, WeightFamily weight, int basis_size);

  const FiberQuadrature& quadrature() const { return quad_; }
  const WeightFamily& weight() const { return weight_; }
  int requested_size() const { return requested_; }
  int rank() const { return rank_; }
  double scale() const { return scale_; }

  /// Orthonormal basis values (e_0(z), ..., e_{rank-1}(z)).
  Eigen::VectorXcd basis_at(cplx zeta) const;
  /// Basis values at an arbitrary point list, points x rank.
  Eigen::MatrixXcd basis_matrix(const std::vector<cplx>& points) const;
  /// Cached basis values at the interior quadrature nodes, nodes x rank.
  const Eigen::MatrixXcd& basis_at_nodes() const { return basis_nodes_; }
  /// Quadrature weights with the e^{-phi} factor folded in.
  const Eigen::VectorXd& weighted_weights() const { return wweights_; }
  /// phi at the interior nodes.
  const Eigen::VectorXd& phi_at_nodes() const { return phi_nodes_; }

  /// K(zeta, etabar) = sum_k e_k(zeta) conj(e_k(eta)).
  cplx kernel(cplx zeta, cplx eta) const;

  /// Max |<e_k, e_l> - delta_kl| recomputed on the build quadrature.
  double gram_residual() const;

  /// <f, g> = sum_i w_i f_i conj(g_i) e^{-phi_i} over interior nodes.
  cplx inner(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) const;
  double norm2(const Eigen::VectorXcd& f) const;

 private:
  FiberQuadrature quad_;
  WeightFamily weight_;
  int requested_;
  int rank_{0};
  double scale_{1.0};
  Eigen::MatrixXcd coeffs_;       // rank x N over shifted-scaled monomials
  Eigen::MatrixXcd basis_nodes_;  // nodes x rank
  Eigen::VectorXd wweights_;
  Eigen::VectorXd phi_nodes_;
};

struct KernelValue {
  cplx zeta;
  cplx eta;
  cplx value;
};

inline KernelValue eval_kernel(const BergmanSpace& space, cplx zeta, cplx eta) {
  return {zeta, eta, space.kernel(zeta, eta)};
}

/// Holomorphic element sum_k c_k e_k of the space.
struct HoloFunction {
  const BergmanSpace* space{nullptr};
  Eigen::VectorXcd coeffs;

  cplx eval(cplx zeta) const {
    return (coeffs.array() * space->basis_at(zeta).array()).sum();
  }
  Eigen::VectorXcd at_nodes() const { return space->basis_at_nodes() * coeffs; }
  double norm2() const { return coeffs.squaredNorm(); }
};

/// Anti-holomorphic element sum_k c_k conj(e_k).
struct AntiHoloFunction {
  const BergmanSpace* space{nullptr};
  Eigen::VectorXcd coeffs;

  cplx eval(cplx zeta) const {
    return (coeffs.array() * space->basis_at(zeta).array().conjugate()).sum();
  }
  Eigen::VectorXcd at_nodes() const { return space->basis_at_nodes().conjugate() * coeffs; }
  double norm2() const { return coeffs.squaredNorm(); }
};

/// L^2-orthogonal projection of node samples onto span{e_k}.
HoloFunction project(const BergmanSpace& space, const Eigen::VectorXcd& samples);

/// Projection onto span{conj(e_k)} (the harmonic (0,1)-coefficients for
/// phi = 0 in fiber dimension one).
AntiHoloFunction conj_project(const BergmanSpace& space, const Eigen::VectorXcd& samples);

/// Samples of an arbitrary function at the interior nodes.
Eigen::VectorXcd sample(const FiberQuadrature& quad, const std::function<cplx(cplx)>& f);

}  // namespace bergvar
