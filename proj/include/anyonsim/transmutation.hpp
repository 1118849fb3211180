#pragma once

#include "anyonsim/fock.hpp"
#include "anyonsim/operator_expr.hpp"

namespace anyonsim {

/// Exchange transmutation between the algebras at phi_source and
/// phi_target. The generator image is
///   a_{source,i} -> a_{target,i} exp(i s (phi_target - phi_source) sum_{k<i} n_k)
/// with s = kExchangeSign, which makes the image obey the source relations.
struct TransmutationMap {
  double phi_source;
  double phi_target;

  TransmutationMap inverse() const { return {phi_target, phi_source}; }
  /// The fractional Jordan-Wigner transform: phi -> fermions.
  static TransmutationMap jordan_wigner(double phi) { return {phi, 0.0}; }
};

/// `second` after `first`; requires first.phi_target == second.phi_source.
TransmutationMap compose(const TransmutationMap& second, const TransmutationMap& first);

OperatorExpr transmute_operator(const OperatorExpr& op, const TransmutationMap& map);

/// Fock amplitudes are invariant under transmutation, so only the tag changes.
AnyonState transmute_state(const AnyonState& state, double phi_target);
AnyonState fermionize(const AnyonState& state);
AnyonState anyonize(const AnyonState& state, double phi);

namespace detail {
OperatorExpr transmute_operator(const OperatorExpr& op, const TransmutationMap& map,
                                int exchange_sign);
}

}  // namespace anyonsim
