#include "bergvar/bergman.hpp"

#include <cmath>

namespace bergvar {

BergmanSpace::BergmanSpace(FiberQuadrature quad, WeightFamily weight, int basis_size)
    : quad_(std::move(quad)), weight_(std::move(weight)), requested_(basis_size) {
  weight_.m = static_cast<int>(quad_.t.size());
  if (requested_ < 1) throw ConfigError("build_space: basis size must be >= 1");
  if (quad_.n_angular < 4 * requested_)
    throw ConfigError("build_space: need at least 4N angular quadrature nodes");

  const int n_nodes = static_cast<int>(quad_.nodes.size());
  const int N = requested_;
  scale_ = quad_.mean_radius;

  phi_nodes_.resize(n_nodes);
  wweights_.resize(n_nodes);
  for (int i = 0; i < n_nodes; ++i) {
    phi_nodes_(i) = evaluate_phi(weight_, quad_.t, quad_.nodes[static_cast<size_t>(i)]);
    wweights_(i) = quad_.weights[static_cast<size_t>(i)] * std::exp(-phi_nodes_(i));
  }

  // Vandermonde of shifted-scaled monomials.
  Eigen::MatrixXcd V(n_nodes, N);
  for (int i = 0; i < n_nodes; ++i) {
    const cplx u = (quad_.nodes[static_cast<size_t>(i)] - quad_.center) / scale_;
    cplx p = 1.0;
    for (int k = 0; k < N; ++k) {
      V(i, k) = p;
      p *= u;
    }
  }

  const Eigen::MatrixXcd G = V.adjoint() * wweights_.asDiagonal() * V;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(
      cplx(0.5, 0.0) * (G + G.adjoint()));
  if (eig.info() != Eigen::Success)
    throw NumericError("build_space: Gram eigendecomposition failed");

  const Eigen::VectorXd lambda = eig.eigenvalues();  // ascending
  const double lmax = lambda(N - 1);
  if (!(lmax > 0.0) || lambda(0) < -1e-12 * lmax)
    throw NumericError(
        "build_space: Gram matrix numerically indefinite; rebuild with higher "
        "quadrature resolution");

  int kept = 0;
  for (int k = 0; k < N; ++k)
    if (lambda(k) >= 1e-12 * lmax) ++kept;
  rank_ = kept;

  // The assembled G is (V^H W V)_{pq} = <m_q, m_p>, the transpose of the
  // inner-product Gram, so the orthonormal rows come from the eigenvector
  // transpose: e_k = lambda_k^{-1/2} sum_p U_{pk} m_p, descending eigenvalues.
  coeffs_.resize(rank_, N);
  for (int k = 0; k < rank_; ++k) {
    const int src = N - 1 - k;
    coeffs_.row(k) =
        eig.eigenvectors().col(src).transpose() / std::sqrt(lambda(src));
  }

  basis_nodes_ = V * coeffs_.transpose();
}

Eigen::VectorXcd BergmanSpace::basis_at(cplx zeta) const {
  const int N = requested_;
  Eigen::VectorXcd mono(N);
  const cplx u = (zeta - quad_.center) / scale_;
  cplx p = 1.0;
  for (int k = 0; k < N; ++k) {
    mono(k) = p;
    p *= u;
  }
  return coeffs_ * mono;
}

Eigen::MatrixXcd BergmanSpace::basis_matrix(const std::vector<cplx>& points) const {
  const int N = requested_;
  Eigen::MatrixXcd V(static_cast<Eigen::Index>(points.size()), N);
  for (Eigen::Index i = 0; i < V.rows(); ++i) {
    const cplx u = (points[static_cast<size_t>(i)] - quad_.center) / scale_;
    cplx p = 1.0;
    for (int k = 0; k < N; ++k) {
      V(i, k) = p;
      p *= u;
    }
  }
  return V * coeffs_.transpose();
}

cplx BergmanSpace::kernel(cplx zeta, cplx eta) const {
  const Eigen::VectorXcd bz = basis_at(zeta);
  const Eigen::VectorXcd be = basis_at(eta);
  return be.dot(bz);  // sum_k e_k(zeta) conj(e_k(eta))
}

double BergmanSpace::gram_residual() const {
  const Eigen::MatrixXcd G =
      basis_nodes_.adjoint() * wweights_.asDiagonal() * basis_nodes_;
  return (G - Eigen::MatrixXcd::Identity(rank_, rank_)).cwiseAbs().maxCoeff();
}

cplx BergmanSpace::inner(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) const {
  return (wweights_.array() * f.array() * g.array().conjugate()).sum();
}

double BergmanSpace::norm2(const Eigen::VectorXcd& f) const {
  return (wweights_.array() * f.array().abs2()).sum();
}

HoloFunction project(const BergmanSpace& space, const Eigen::VectorXcd& samples) {
  HoloFunction h;
  h.space = &space;
  h.coeffs = space.basis_at_nodes().adjoint() *
             (space.weighted_weights().array() * samples.array()).matrix();
  return h;
}

AntiHoloFunction conj_project(const BergmanSpace& space, const Eigen::VectorXcd& samples) {
  AntiHoloFunction h;
  h.space = &space;
  h.coeffs = space.basis_at_nodes().transpose() *
             (space.weighted_weights().array() * samples.array()).matrix();
  return h;
}

Eigen::VectorXcd sample(const FiberQuadrature& quad, const std::function<cplx(cplx)>& f) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(quad.nodes.size()));
  for (Eigen::Index i = 0; i < out.size(); ++i)
    out(i) = f(quad.nodes[static_cast<size_t>(i)]);
  return out;
}

}  // namespace bergvar
