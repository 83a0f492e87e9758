#include "bergvar/presets.hpp"

#include <cmath>
#include <cstdio>

namespace bergvar {

namespace {

std::string box_string(double r, int m) {
  char buf[64];
  if (m == 1) {
    std::snprintf(buf, sizeof(buf), "|t| <= %.3g", r);
  } else {
    std::snprintf(buf, sizeof(buf), "|t^j| <= %.3g, j = 1..%d", r, m);
  }
  return buf;
}

}  // namespace

std::vector<PresetInfo> preset_catalog() {
  std::vector<PresetInfo> out;
  for (FamilyPreset p : {FamilyPreset::unit_disk, FamilyPreset::scaled_disk,
                         FamilyPreset::squeezed_disk, FamilyPreset::double_squeeze,
                         FamilyPreset::motion_a0, FamilyPreset::motion_at,
                         FamilyPreset::motion_at2, FamilyPreset::motion_aeps}) {
    const DomainFamily f = make_family(p, p == FamilyPreset::motion_aeps
                                              ? std::vector<cplx>{cplx(0.1, 0.0)}
                                              : std::vector<cplx>{});
    out.push_back({family_preset_name(p), "family", box_string(f.box_radius(0), f.m)});
  }
  for (WeightPreset p : {WeightPreset::zero, WeightPreset::abs2, WeightPreset::abs2_t2,
                         WeightPreset::moving_center}) {
    out.push_back({weight_preset_name(p), "weight", "follows the family box"});
  }
  for (MotionPreset p :
       {MotionPreset::a0, MotionPreset::at, MotionPreset::at2, MotionPreset::aeps}) {
    const MotionSpec m = make_motion(p);
    out.push_back({motion_preset_name(p), "motion", box_string(m.box_radius(), 1)});
  }
  for (const std::string& id : integrand_ids()) {
    out.push_back({id, "integrand", "smooth on all preset fibers"});
  }
  return out;
}

DomainFamily family_from_id(const std::string& id, const std::vector<cplx>& params) {
  return make_family(family_preset_from_name(id), params);
}

WeightFamily weight_from_id(const std::string& id, const std::vector<cplx>& params) {
  return make_weight(weight_preset_from_name(id), params);
}

MotionSpec motion_from_id(const std::string& id, cplx eps) {
  return make_motion(motion_preset_from_name(id), eps);
}

std::vector<std::string> integrand_ids() {
  return {"one", "abs2", "re_zeta", "gauss", "ret_abs2"};
}

Integrand integrand_from_id(const std::string& id) {
  Integrand f;
  f.name = id;
  if (id == "one") {
    f.f = [](const ParamPoint&, cplx) { return cplx(1.0); };
    f.df_dt = [](const ParamPoint&, cplx, int) { return cplx(0.0); };
  } else if (id == "abs2") {
    f.f = [](const ParamPoint&, cplx z) { return cplx(std::norm(z)); };
    f.df_dt = [](const ParamPoint&, cplx, int) { return cplx(0.0); };
  } else if (id == "re_zeta") {
    f.f = [](const ParamPoint&, cplx z) { return cplx(z.real()); };
    f.df_dt = [](const ParamPoint&, cplx, int) { return cplx(0.0); };
  } else if (id == "gauss") {
    f.f = [](const ParamPoint&, cplx z) { return cplx(std::exp(-std::norm(z))); };
    f.df_dt = [](const ParamPoint&, cplx, int) { return cplx(0.0); };
  } else if (id == "ret_abs2") {
    // f = (1 + Re t^1) |zeta|^2, df/dt^1 = |zeta|^2 / 2
    f.f = [](const ParamPoint& t, cplx z) {
      return cplx((1.0 + t[0].real()) * std::norm(z));
    };
    f.df_dt = [](const ParamPoint&, cplx z, int j) {
      return j == 0 ? cplx(0.5 * std::norm(z)) : cplx(0.0);
    };
  } else {
    throw ConfigError("unknown integrand preset: " + id);
  }
  return f;
}

}  // namespace bergvar
