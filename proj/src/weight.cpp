#include "bergvar/weight.hpp"

#include <cmath>

namespace bergvar {

WeightFamily make_weight(WeightPreset preset, std::vector<cplx> params, int m) {
  WeightFamily w;
  w.preset = preset;
  w.params = std::move(params);
  w.m = m;
  return w;
}

WeightJet evaluate_weight(const WeightFamily& weight, const ParamPoint& t, cplx zeta) {
  const int m = weight.m;
  if (static_cast<int>(t.size()) != m)
    throw ConfigError("evaluate_weight: wrong parameter dimension");

  WeightJet jet;
  jet.phi_t.assign(static_cast<size_t>(m), cplx(0.0));
  jet.phi_tb.assign(static_cast<size_t>(m), cplx(0.0));
  jet.phi_ttb.assign(static_cast<size_t>(m * m), cplx(0.0));
  jet.phi_tmub.assign(static_cast<size_t>(m), cplx(0.0));
  jet.phi_tbmu.assign(static_cast<size_t>(m), cplx(0.0));

  switch (weight.preset) {
    case WeightPreset::zero:
      break;
    case WeightPreset::abs2:
      jet.value = std::norm(zeta);
      jet.phi_mu = std::conj(zeta);
      jet.phi_mumub = 1.0;
      break;
    case WeightPreset::abs2_t2: {
      jet.value = std::norm(zeta);
      jet.phi_mu = std::conj(zeta);
      jet.phi_mumub = 1.0;
      for (int j = 0; j < m; ++j) {
        jet.value += std::norm(t[static_cast<size_t>(j)]);
        jet.phi_t[static_cast<size_t>(j)] = std::conj(t[static_cast<size_t>(j)]);
        jet.phi_ttb[static_cast<size_t>(j * m + j)] = 1.0;
      }
      break;
    }
    case WeightPreset::moving_center: {
      const cplx alpha = weight.params.empty() ? cplx(0.3, 0.0) : weight.params[0];
      const cplx d = zeta - alpha * t[0];
      jet.value = std::norm(d);
      jet.phi_mu = std::conj(d);
      jet.phi_mumub = 1.0;
      jet.phi_t[0] = -alpha * std::conj(d);
      jet.phi_ttb[0] = std::norm(alpha);
      jet.phi_tmub[0] = -alpha;
      break;
    }
  }

  for (int j = 0; j < m; ++j) {
    jet.phi_tb[static_cast<size_t>(j)] = std::conj(jet.phi_t[static_cast<size_t>(j)]);
    jet.phi_tbmu[static_cast<size_t>(j)] = std::conj(jet.phi_tmub[static_cast<size_t>(j)]);
  }
  jet.phi_mub = std::conj(jet.phi_mu);
  return jet;
}

double evaluate_phi(const WeightFamily& weight, const ParamPoint& t, cplx zeta) {
  return evaluate_weight(weight, t, zeta).value;
}

const char* weight_preset_name(WeightPreset preset) {
  switch (preset) {
    case WeightPreset::zero:
      return "zero";
    case WeightPreset::abs2:
      return "abs2";
    case WeightPreset::abs2_t2:
      return "abs2+t2";
    case WeightPreset::moving_center:
      return "moving_center";
  }
  return "?";
}

WeightPreset weight_preset_from_name(const std::string& name) {
  for (WeightPreset p : {WeightPreset::zero, WeightPreset::abs2, WeightPreset::abs2_t2,
                         WeightPreset::moving_center}) {
    if (name == weight_preset_name(p)) return p;
  }
  throw ConfigError("unknown weight preset: " + name);
}

}  // namespace bergvar
