#include "bergvar/finitediff.hpp"

namespace bergvar {

namespace {

const cplx kI(0.0, 1.0);

std::vector<FdTerm> d_terms_plain(double h, bool bar) {
  // (F_x -+ i F_y) / 2 with central differences on both real axes.
  const cplx iy = bar ? kI : -kI;
  return {
      {cplx(h, 0.0), 0.0, cplx(1.0 / (4.0 * h), 0.0)},
      {cplx(-h, 0.0), 0.0, cplx(-1.0 / (4.0 * h), 0.0)},
      {cplx(0.0, h), 0.0, iy / (4.0 * h)},
      {cplx(0.0, -h), 0.0, -iy / (4.0 * h)},
  };
}

std::vector<FdTerm> mixed_same_plain(double h) {
  // Quarter of the 5-point real Laplacian.
  const double c = 1.0 / (4.0 * h * h);
  return {
      {cplx(h, 0.0), 0.0, cplx(c, 0.0)},
      {cplx(-h, 0.0), 0.0, cplx(c, 0.0)},
      {cplx(0.0, h), 0.0, cplx(c, 0.0)},
      {cplx(0.0, -h), 0.0, cplx(c, 0.0)},
      {cplx(0.0, 0.0), 0.0, cplx(-4.0 * c, 0.0)},
  };
}

std::vector<FdTerm> mixed_cross_plain(double h) {
  std::vector<FdTerm> out;
  for (const auto& a : d_terms_plain(h, false)) {
    for (const auto& b : d_terms_plain(h, true)) {
      out.push_back({a.offset_j, b.offset_j, a.coeff * b.coeff});
    }
  }
  return out;
}

std::vector<FdTerm> richardson(std::vector<FdTerm> coarse, std::vector<FdTerm> fine) {
  std::vector<FdTerm> out;
  out.reserve(coarse.size() + fine.size());
  for (auto t : fine) {
    t.coeff *= 4.0 / 3.0;
    out.push_back(t);
  }
  for (auto t : coarse) {
    t.coeff *= -1.0 / 3.0;
    out.push_back(t);
  }
  return out;
}

std::vector<FdTerm> maybe_richardson(const Stencil& s,
                                     std::vector<FdTerm> (*plain)(double)) {
  if (!s.richardson) return plain(s.h);
  return richardson(plain(s.h), plain(s.h / 2.0));
}

cplx apply_terms(const ParamField& F, const ParamPoint& t, int j, int k,
                 const std::vector<FdTerm>& terms) {
  cplx acc = 0.0;
  ParamPoint tp = t;
  for (const auto& term : terms) {
    tp = t;
    tp[static_cast<size_t>(j)] += term.offset_j;
    tp[static_cast<size_t>(k)] += term.offset_k;
    acc += term.coeff * F(tp);
  }
  return acc;
}

std::vector<FdTerm> d_plain_fwd(double h) { return d_terms_plain(h, false); }
std::vector<FdTerm> d_plain_bar(double h) { return d_terms_plain(h, true); }

}  // namespace

std::vector<FdTerm> fd_d_terms(const Stencil& s) { return maybe_richardson(s, d_plain_fwd); }

std::vector<FdTerm> fd_dbar_terms(const Stencil& s) {
  return maybe_richardson(s, d_plain_bar);
}

std::vector<FdTerm> fd_mixed_same_terms(const Stencil& s) {
  return maybe_richardson(s, mixed_same_plain);
}

std::vector<FdTerm> fd_mixed_cross_terms(const Stencil& s) {
  return maybe_richardson(s, mixed_cross_plain);
}

cplx fd_d(const ParamField& F, const ParamPoint& t, int j, const Stencil& s) {
  return apply_terms(F, t, j, j, fd_d_terms(s));
}

cplx fd_dbar(const ParamField& F, const ParamPoint& t, int j, const Stencil& s) {
  return apply_terms(F, t, j, j, fd_dbar_terms(s));
}

cplx fd_mixed(const ParamField& F, const ParamPoint& t, int j, int k, const Stencil& s) {
  if (j == k) return apply_terms(F, t, j, j, fd_mixed_same_terms(s));
  return apply_terms(F, t, j, k, fd_mixed_cross_terms(s));
}

cplx fd_dz(const std::function<cplx(cplx)>& f, cplx z, double h) {
  const cplx fx = (f(z + h) - f(z - h)) / (2.0 * h);
  const cplx fy = (f(z + cplx(0.0, h)) - f(z - cplx(0.0, h))) / (2.0 * h);
  return 0.5 * (fx - kI * fy);
}

cplx fd_dzbar(const std::function<cplx(cplx)>& f, cplx z, double h) {
  const cplx fx = (f(z + h) - f(z - h)) / (2.0 * h);
  const cplx fy = (f(z + cplx(0.0, h)) - f(z - cplx(0.0, h))) / (2.0 * h);
  return 0.5 * (fx + kI * fy);
}

}  // namespace bergvar
