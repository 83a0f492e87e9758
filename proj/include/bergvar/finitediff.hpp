#pragma once

#include <functional>
#include <vector>

#include "bergvar/types.hpp"

namespace bergvar {

/// Central Wirtinger differences in the complex parameters, order 2;
/// Richardson extrapolation over steps {h, h/2} upgrades to order 4.
struct Stencil {
  double h{1e-3};
  bool richardson{true};
};

/// One evaluation point of a difference formula: t' = t + offset_j e_j
/// (+ offset_k e_k for cross derivatives), weighted by coeff.
struct FdTerm {
  cplx offset_j{};
  cplx offset_k{};
  cplx coeff{};
};

std::vector<FdTerm> fd_d_terms(const Stencil& s);            // d/dt^j
std::vector<FdTerm> fd_dbar_terms(const Stencil& s);         // d/dtbar^j
std::vector<FdTerm> fd_mixed_same_terms(const Stencil& s);   // d^2/dt^j dtbar^j
std::vector<FdTerm> fd_mixed_cross_terms(const Stencil& s);  // d^2/dt^j dtbar^k

/// Largest |offset| any formula uses (parameter-box guard).
inline double stencil_margin(const Stencil& s) { return s.h; }

using ParamField = std::function<cplx(const ParamPoint&)>;

cplx fd_d(const ParamField& F, const ParamPoint& t, int j, const Stencil& s);
cplx fd_dbar(const ParamField& F, const ParamPoint& t, int j, const Stencil& s);
cplx fd_mixed(const ParamField& F, const ParamPoint& t, int j, int k, const Stencil& s);

/// Wirtinger differences in the fiber variable (same formulas, complex plane).
cplx fd_dz(const std::function<cplx(cplx)>& f, cplx z, double h);
cplx fd_dzbar(const std::function<cplx(cplx)>& f, cplx z, double h);

}  // namespace bergvar
