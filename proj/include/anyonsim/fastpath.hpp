#pragma once

#include <optional>
#include <string>

#include "anyonsim/fock.hpp"
#include "anyonsim/optics.hpp"

namespace anyonsim {

/// One-particle transfer matrix of a number-conserving circuit:
/// U(y, x) = <e_y| C |e_x>. Circuits compose as U_last * ... * U_first.
struct SingleParticleUnitary {
  Matrix U;

  int modes() const { return static_cast<int>(U.rows()); }
  void validate(double tol = 1e-10) const;
};

/// Gates whose fermionic image is the same element at every phi:
/// PS, nearest-neighbour BS, PA_12 and fSWAP.
bool is_invariant_family_gate(const GateElement& gate);
/// First gate outside the invariant family, if any.
std::optional<GateElement> first_out_of_family_gate(const Circuit& circuit);

/// Throws FamilyError on PA gates and non-nearest-neighbour beam splitters.
SingleParticleUnitary compile_single_particle(const Circuit& circuit);

struct FastAmplitude {
  Complex value;
  bool particle_number_mismatch = false;
};

/// <y|C|x> = det U[rows of y, cols of x], both in increasing mode order.
FastAmplitude amplitude_number_conserving(const SingleParticleUnitary& u, const OccupationVector& x,
                                          const OccupationVector& y);

/// <y|C|x> for a circuit in the invariant family at any phi. Number-conserving
/// stretches use determinants; PA_12 layers are applied exactly on the
/// two-mode parity block between them.
Complex anyonic_amplitude_via_fastpath(const Circuit& circuit, const OccupationVector& x,
                                       const OccupationVector& y);

/// Final state for a sparse input, evaluated entirely with the fast path.
AnyonState run_circuit_fastpath(const AnyonState& state, const Circuit& circuit);

}  // namespace anyonsim
