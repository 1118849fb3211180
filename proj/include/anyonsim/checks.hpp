#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "anyonsim/fock.hpp"
#include "anyonsim/operator_expr.hpp"
#include "anyonsim/optics.hpp"
#include "anyonsim/transmutation.hpp"

namespace anyonsim::checks {

using Rng = std::mt19937_64;

// Random inputs.

Complex random_complex(Rng& rng);
/// Normalized state; particle_number < 0 mixes all sectors.
AnyonState random_state(Rng& rng, int m, int particle_number, double phi);
/// Haar-distributed via QR of a complex Gaussian matrix.
Matrix random_unitary(Rng& rng, int m);
Matrix random_hermitian(Rng& rng, int m);
/// Sum of `terms` random ladder monomials of degree 1..3.
OperatorExpr random_operator(Rng& rng, int m, double phi, int terms = 3);
/// PS, nearest-neighbour BS, fSWAP and (when allowed) PA_12.
Circuit random_in_family_circuit(Rng& rng, int m, double phi, int depth, bool allow_pa);

/// Dense matrix of `op` evaluated with an explicit exchange sign.
Matrix dense_operator(const OperatorExpr& op, int exchange_sign);

// Individual properties; each returns the largest deviation seen.

/// a_i a_j^+ + e^{-i phi eps_ij} a_j^+ a_i = delta_ij and
/// a_i a_j + e^{i phi eps_ij} a_j a_i = 0 on every basis state.
double exchange_relation_error(int m, double phi, int exchange_sign = kExchangeSign);
/// [n_i, a_j^+] = delta_ij a_j^+, [n_i, a_j] = -delta_ij a_j.
double number_commutator_error(int m, double phi, int exchange_sign = kExchangeSign);
/// Canonical anticommutators at phi = 0.
double fermionic_reduction_error(int m, int exchange_sign = kExchangeSign);
/// [a_i, a_j] = [a_i, a_j^+] = 0 for i != j at phi = pi.
double pi_commutation_error(int m, int exchange_sign = kExchangeSign);

struct JwtErrors {
  double amplitude_invariance = 0.0;  // <y|J(O)|x>_{phi2} vs <y|O|x>_{phi1}
  double composition = 0.0;
  double inverse = 0.0;
  double number_invariance = 0.0;
};
JwtErrors jwt_law_errors(Rng& rng, int m, int trials, int exchange_sign = kExchangeSign);

struct FswapErrors {
  double involution = 0.0;
  double three_gate = 0.0;
  double decomposition = 0.0;  // random PS/BS/PA targets at phi = 0
};
FswapErrors fswap_errors(Rng& rng, int m, double phi, int decomposition_trials);

struct FastpathErrors {
  double dense_mismatch = 0.0;
  double phi_dependence = 0.0;
};
/// Compares every amplitude of the N-particle inputs against the dense
/// engine at each phi, and the fast amplitudes across phis.
FastpathErrors fastpath_errors(const Circuit& circuit, int particle_number, const std::vector<double>& phis);

struct SlaterErrors {
  double reconstruction = 0.0;
  double oracle = 0.0;  // sorted z_k^2 vs eigenvalues of 4 V^+V (each doubled)
};
SlaterErrors slater_errors(const AnyonState& two_particle_state);

// Suites for `anyonsim check`.

struct CheckOptions {
  int max_modes = 4;
  int phi_points = 11;  // inclusive grid over [0, pi]
  int trials = 20;
  std::uint64_t seed = 20240607;
  int exchange_sign = kExchangeSign;
  double tol = 1e-10;
};

struct SuiteResult {
  std::string name;
  bool passed;
  double max_error;
};

std::vector<double> phi_grid(int points);
std::vector<SuiteResult> run_property_suites(const CheckOptions& options);

}  // namespace anyonsim::checks
