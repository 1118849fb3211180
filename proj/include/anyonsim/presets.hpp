#pragma once

#include <string>
#include <vector>

#include "anyonsim/fock.hpp"
#include "anyonsim/optics.hpp"

namespace anyonsim {

/// "appendixG": (a_1^+ a_2^+ + a_1^+ a_4^+)|0>/sqrt2 on four modes.
/// "two-slater": (f_1^+ f_2^+ + f_3^+ f_4^+)|0>/sqrt2 on four modes.
AnyonState preset_state(const std::string& name, double phi);
std::vector<std::string> preset_names();

/// BS_12(theta) on four modes, the circuit that accompanies "appendixG".
Circuit appendix_g_circuit(double phi, double theta);

}  // namespace anyonsim
