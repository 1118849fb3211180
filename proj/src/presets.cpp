#include "anyonsim/presets.hpp"

#include <cmath>

#include "anyonsim/errors.hpp"

namespace anyonsim {

AnyonState preset_state(const std::string& name, double phi) {
  const double r = 1.0 / std::sqrt(2.0);
  if (name == "appendixG") {
    return AnyonState(4, phi, {{OccupationVector::from_string("1100").bits(), r},
                               {OccupationVector::from_string("1001").bits(), r}});
  }
  if (name == "two-slater") {
    return AnyonState(4, phi, {{OccupationVector::from_string("1100").bits(), r},
                               {OccupationVector::from_string("0011").bits(), r}});
  }
  throw PreconditionError("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() { return {"appendixG", "two-slater"}; }

Circuit appendix_g_circuit(double phi, double theta) {
  return {4, phi, {GateElement::beam_splitter(1, 2, theta)}};
}

}  // namespace anyonsim
