#pragma once

#include <optional>
#include <vector>

#include "anyonsim/fock.hpp"
#include "anyonsim/optics.hpp"

namespace anyonsim {

struct DensityMatrix {
  Matrix entries;

  int dim() const { return static_cast<int>(entries.rows()); }
  Complex trace() const { return entries.trace(); }
  bool is_hermitian(double tol = 1e-10) const;
  /// Hermitian, unit trace and positive semidefinite within tol.
  void validate(double tol = 1e-10) const;
};

/// (k, l) entry <a_l^+ a_k> / N, evaluated in the state's own algebra.
/// Requires a normalized state with definite particle number N >= 1.
DensityMatrix one_body_rdm(const AnyonState& state);

/// Which particle survives the particle partial trace. kY traces out the
/// first particle label; kX traces out the second and carries the exchange
/// phase exp(i phi (eps_{i2 i1} + eps_{j1 i2})).
enum class KeptParticle { kX, kY };

/// Particle partial trace in the anyonic Fock representation, normalized to
/// unit trace. kY works for any N >= 2 (all but the last label traced);
/// kX is defined for N = 2.
DensityMatrix particle_trace_rdm(const AnyonState& state, KeptParticle keep);

/// -sum lambda log2 lambda over eigenvalues >= 1e-12, in bits.
double von_neumann_entropy(const DensityMatrix& rho);

/// -p log2 p - (1-p) log2 (1-p); zero within 1e-12 of either end.
double binary_entropy(double p);

struct MinimalEntropyModes {
  Matrix mode_basis;                // columns are the natural modes
  double single_particle_entropy;   // sum_i H(lambda_i), bits
  std::vector<double> occupations;  // descending
};

/// Diagonalizes the fermionized <f_l^+ f_k> matrix (trace N). Its
/// eigenvalues do not depend on phi.
MinimalEntropyModes minimal_entropy_modes(const AnyonState& state);

/// Antisymmetric coefficients of a two-particle fermionic state,
/// |psi> = sum_{i,j} v_ij f_i^+ f_j^+ |0>, v_ij = c_ij / 2 for i < j.
struct TwoParticleCoefficients {
  Matrix v;

  static TwoParticleCoefficients from_state(const AnyonState& state);
};

/// U V U^T is block diagonal with blocks [[0, z_k/2], [-z_k/2, 0]], so the
/// fermionized state is sum_k z_k g_{2k-1}^+ g_{2k}^+ |0> with natural
/// modes g_k^+ = sum_i (U^+)_{ik} f_i^+. z is descending, sum z_k^2 = 1.
struct SlaterDecomposition {
  Matrix U;
  std::vector<double> z;
  int rank = 0;

  Matrix mode_basis() const { return U.adjoint(); }
  /// Rebuilds sum_k z_k g_{2k-1}^+ g_{2k}^+ |0> in the original Fock basis.
  AnyonState reconstruct(double phi) const;
};

SlaterDecomposition slater_decompose(const AnyonState& state, double rank_tol = 1e-8);

struct SeparabilityVerdict {
  bool separable;
  double max_deviation;  // max |lambda - round(lambda)|
  double single_particle_entropy;
  Matrix witness;        // diagonalizing mode basis
  std::optional<int> slater_rank;  // N = 2 only
};

/// Separable iff every natural occupation is within tol of 0 or 1. For
/// N = 2 the Slater rank (counting z_k^2 > tol) must agree.
SeparabilityVerdict is_separable(const AnyonState& state, double tol = 1e-8);

}  // namespace anyonsim
