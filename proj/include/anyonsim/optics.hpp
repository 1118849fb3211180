#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "anyonsim/fock.hpp"
#include "anyonsim/operator_expr.hpp"

namespace anyonsim {

using Matrix = Eigen::MatrixXcd;

enum class GateKind { kPhaseShift, kBeamSplitter, kParametricAmp, kFSwap };

/// One optical element. Modes are 1-based; `j` is unused for phase shifters
/// and `theta` is unused for fermionic swaps.
///
///   PS_i(t)    = exp[i t a_i^+ a_i]
///   BS_ij(t)   = exp[i t (a_i^+ a_j + a_j^+ a_i)]
///   PA_ij(t)   = exp[i t (a_i^+ a_j^+ + a_j a_i)]
///   FSWAP_ij   = image of 1 - n_i - n_j + f_i^+ f_j + f_j^+ f_i in the phi algebra
struct GateElement {
  GateKind kind;
  int i;
  int j = 0;
  double theta = 0.0;

  static GateElement phase_shift(int i, double theta) { return {GateKind::kPhaseShift, i, 0, theta}; }
  static GateElement beam_splitter(int i, int j, double theta) {
    return {GateKind::kBeamSplitter, i, j, theta};
  }
  static GateElement parametric_amp(int i, int j, double theta) {
    return {GateKind::kParametricAmp, i, j, theta};
  }
  static GateElement fswap(int i, int j) { return {GateKind::kFSwap, i, j, 0.0}; }

  bool is_two_mode() const { return kind != GateKind::kPhaseShift; }
  std::string describe() const;

  friend bool operator==(const GateElement&, const GateElement&) = default;
};

std::string gate_kind_name(GateKind kind);
GateKind gate_kind_from_name(const std::string& name);

/// Throws PreconditionError when indices fall outside [1, m] or coincide.
void validate_gate(const GateElement& gate, int m);

struct Circuit {
  int m;
  double phi;
  std::vector<GateElement> gates;

  void validate() const;
  /// Reversed circuit with negated angles (fSWAP is self-inverse).
  Circuit inverse() const;
};

/// Hermitian K with gate = exp(i theta K); not defined for FSWAP.
OperatorExpr gate_generator(const GateElement& gate, int m, double phi);
/// The fSWAP operator itself in the phi algebra.
OperatorExpr fswap_operator(int i, int j, int m, double phi);

AnyonState apply_gate(const AnyonState& state, const GateElement& gate);
AnyonState apply_fswap(const AnyonState& state, int i, int j);
AnyonState run_circuit(const AnyonState& state, const Circuit& circuit);

/// Rewrites a phase shifter, beam splitter, parametric amplifier or fSWAP
/// on arbitrary modes as a sequence (in application order) over
/// {PS_1, BS_12, PA_12, FSWAP_{k,k+1}}. Exact in the fermionic algebra.
std::vector<GateElement> decompose_distant(const GateElement& gate);

/// Dense matrix of the circuit on the full 2^m Fock space; column c is the
/// image of the basis state with occupation bits c. Limited to m <= 12.
Matrix circuit_matrix(const Circuit& circuit);
Matrix operator_matrix(const OperatorExpr& op);

/// Multi-mode Bogoliubov transformation in creation-operator form:
///   U f_i^+ U^+ = sum_j U_ij f_j^+ + sum_k V_ik f_k.
struct BogoliubovPair {
  Matrix U;
  Matrix V;

  int modes() const { return static_cast<int>(U.rows()); }
  bool is_number_conserving(double tol = 1e-12) const;
  /// UU^+ + VV^+ = 1 and UV^T + VU^T = 0.
  void validate(double tol = 1e-10) const;
};

/// H = sum_ab h_ab f_a^+ f_b + 1/2 sum_ab (g_ab f_a^+ f_b^+ + conj(g_ab) f_b f_a),
/// h Hermitian and g antisymmetric. The transformation is exp(iH).
struct QuadraticGenerator {
  Matrix h;
  Matrix g;

  int modes() const { return static_cast<int>(h.rows()); }
  void validate(double tol = 1e-12) const;
  OperatorExpr fermionic_operator() const;
  BogoliubovPair bogoliubov_pair() const;
};

/// J_phi^{-1} o B_{U,0} o J_phi on a state: fermionize, expand each Fock
/// component as prod_k (sum_j U_{i_k j} f_j^+)|0>, anyonize. Requires V = 0.
AnyonState apply_induced_bogoliubov(const AnyonState& state, const BogoliubovPair& b);
/// Same for a general (V != 0) transformation given by its generator.
AnyonState apply_induced_bogoliubov(const AnyonState& state, const QuadraticGenerator& gen);

}  // namespace anyonsim
