#pragma once

#include <string>
#include <vector>

#include "bergvar/domain.hpp"
#include "bergvar/motions.hpp"
#include "bergvar/variation.hpp"
#include "bergvar/weight.hpp"

namespace bergvar {

struct PresetInfo {
  std::string id;
  std::string kind;  // family | weight | motion | integrand
  std::string box;   // human-readable parameter box
};

/// Stable-ordered catalog of everything the config may reference.
std::vector<PresetInfo> preset_catalog();

DomainFamily family_from_id(const std::string& id, const std::vector<cplx>& params = {});
WeightFamily weight_from_id(const std::string& id, const std::vector<cplx>& params = {});
MotionSpec motion_from_id(const std::string& id, cplx eps = cplx(0.1, 0.0));
Integrand integrand_from_id(const std::string& id);

std::vector<std::string> integrand_ids();

}  // namespace bergvar
