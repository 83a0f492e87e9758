#pragma once

#include <string>
#include <vector>

#include "bergvar/types.hpp"

namespace bergvar {

enum class WeightPreset {
  zero,           // phi = 0
  abs2,           // phi = |z|^2
  abs2_t2,        // phi = |z|^2 + sum_j |t^j|^2
  moving_center,  // phi = |z - alpha t^1|^2, alpha = params[0]
};

struct WeightFamily {
  WeightPreset preset{WeightPreset::zero};
  std::vector<cplx> params;
  int m{1};
};

/// Jet of the weight phi at (t, zeta); same index conventions as DefiningJet.
struct WeightJet {
  double value{0.0};
  std::vector<cplx> phi_t;
  std::vector<cplx> phi_tb;
  cplx phi_mu{};
  cplx phi_mub{};
  std::vector<cplx> phi_ttb;   // m x m row-major
  std::vector<cplx> phi_tmub;
  std::vector<cplx> phi_tbmu;
  double phi_mumub{0.0};

  cplx ttb(int j, int k, int m) const { return phi_ttb[static_cast<size_t>(j * m + k)]; }
};

WeightFamily make_weight(WeightPreset preset, std::vector<cplx> params = {}, int m = 1);

WeightJet evaluate_weight(const WeightFamily& weight, const ParamPoint& t, cplx zeta);

/// phi value only.
double evaluate_phi(const WeightFamily& weight, const ParamPoint& t, cplx zeta);

const char* weight_preset_name(WeightPreset preset);
WeightPreset weight_preset_from_name(const std::string& name);

}  // namespace bergvar
