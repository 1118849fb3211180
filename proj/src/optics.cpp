#include "anyonsim/optics.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "anyonsim/errors.hpp"
#include "anyonsim/transmutation.hpp"
#include "combinatorics.hpp"

namespace anyonsim {

namespace {

constexpr int kMaxDenseModes = 12;

std::uint64_t mode_bit(int mode) { return std::uint64_t{1} << (mode - 1); }

/// Fermionic-algebra distant fSWAP as a palindromic nearest-neighbour chain.
void append_fswap_chain(std::vector<GateElement>& seq, int a, int b) {
  if (a == b) return;
  if (a > b) std::swap(a, b);
  for (int k = a; k < b - 1; ++k) seq.push_back(GateElement::fswap(k, k + 1));
  seq.push_back(GateElement::fswap(b - 1, b));
  for (int k = b - 2; k >= a; --k) seq.push_back(GateElement::fswap(k, k + 1));
}

/// Applies exp(i theta K) where K only moves the occupations of `local_mask`.
/// Basis states sharing the occupations outside the mask span an invariant
/// block of dimension <= 4, exponentiated densely.
AnyonState exponentiate_local(const AnyonState& state, const OperatorExpr& generator,
                              double theta, std::uint64_t local_mask) {
  std::vector<std::uint64_t> configs;
  for (std::uint64_t sub = local_mask;; sub = (sub - 1) & local_mask) {
    configs.push_back(sub);
    if (sub == 0) break;
  }
  const auto dim = static_cast<Eigen::Index>(configs.size());
  auto index_of = [&](std::uint64_t local) {
    for (Eigen::Index k = 0; k < dim; ++k) {
      if (configs[k] == local) return k;
    }
    throw InvariantError("generator left its local block");
  };

  std::map<std::uint64_t, Eigen::VectorXcd> blocks;
  for (const auto& [bits, amp] : state.amplitudes()) {
    auto [it, inserted] = blocks.try_emplace(bits & ~local_mask, Eigen::VectorXcd::Zero(dim));
    it->second(index_of(bits & local_mask)) += amp;
  }

  AnyonState::Amplitudes out;
  for (const auto& [env, vec] : blocks) {
    Matrix k_block = Matrix::Zero(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
      for (const auto& term : generator.terms()) {
        if (auto r = term.act(env | configs[c], state.phi())) {
          k_block(index_of(r->first & local_mask), c) += r->second;
        }
      }
    }
    const Matrix u = (Complex(0.0, theta) * k_block).exp();
    const Eigen::VectorXcd result = u * vec;
    for (Eigen::Index r = 0; r < dim; ++r) out[env | configs[r]] += result(r);
  }
  return AnyonState(state.modes(), state.phi(), std::move(out));
}

Matrix dense_from_action(int m, const std::function<AnyonState(const AnyonState&)>& action,
                         double phi) {
  if (m > kMaxDenseModes) throw PreconditionError("dense matrices are limited to 12 modes");
  const std::uint64_t dim = std::uint64_t{1} << m;
  Matrix mat = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::uint64_t c = 0; c < dim; ++c) {
    const AnyonState col = action(AnyonState(m, phi, {{c, Complex(1.0)}}));
    for (const auto& [bits, amp] : col.amplitudes()) {
      mat(static_cast<Eigen::Index>(bits), static_cast<Eigen::Index>(c)) = amp;
    }
  }
  return mat;
}

}  // namespace

std::string gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::kPhaseShift: return "PS";
    case GateKind::kBeamSplitter: return "BS";
    case GateKind::kParametricAmp: return "PA";
    case GateKind::kFSwap: return "FSWAP";
  }
  return "?";
}

GateKind gate_kind_from_name(const std::string& name) {
  if (name == "PS") return GateKind::kPhaseShift;
  if (name == "BS") return GateKind::kBeamSplitter;
  if (name == "PA") return GateKind::kParametricAmp;
  if (name == "FSWAP") return GateKind::kFSwap;
  throw PreconditionError("unknown gate kind '" + name + "'");
}

std::string GateElement::describe() const {
  std::string s = gate_kind_name(kind) + "(" + std::to_string(i);
  if (is_two_mode()) s += "," + std::to_string(j);
  if (kind != GateKind::kFSwap) s += "; theta=" + std::to_string(theta);
  return s + ")";
}

void validate_gate(const GateElement& gate, int m) {
  detail::check_mode(m, gate.i);
  if (gate.is_two_mode()) {
    detail::check_mode(m, gate.j);
    if (gate.i == gate.j) throw PreconditionError("two-mode gate needs distinct modes: " + gate.describe());
  }
}

void Circuit::validate() const {
  for (const auto& g : gates) validate_gate(g, m);
}

Circuit Circuit::inverse() const {
  Circuit inv{m, phi, {}};
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    GateElement g = *it;
    g.theta = -g.theta;
    inv.gates.push_back(g);
  }
  return inv;
}

OperatorExpr gate_generator(const GateElement& gate, int m, double phi) {
  validate_gate(gate, m);
  const auto c = [&](int k) { return OperatorExpr::create(m, phi, k); };
  const auto a = [&](int k) { return OperatorExpr::annihilate(m, phi, k); };
  switch (gate.kind) {
    case GateKind::kPhaseShift: return OperatorExpr::number(m, phi, gate.i);
    case GateKind::kBeamSplitter: return c(gate.i) * a(gate.j) + c(gate.j) * a(gate.i);
    case GateKind::kParametricAmp: return c(gate.i) * c(gate.j) + a(gate.j) * a(gate.i);
    case GateKind::kFSwap: break;
  }
  throw PreconditionError("fSWAP has no generator form; use fswap_operator");
}

OperatorExpr fswap_operator(int i, int j, int m, double phi) {
  validate_gate(GateElement::fswap(i, j), m);
  const auto c = [&](int k) { return OperatorExpr::create(m, 0.0, k); };
  const auto a = [&](int k) { return OperatorExpr::annihilate(m, 0.0, k); };
  const OperatorExpr fermionic = OperatorExpr::identity(m, 0.0) - OperatorExpr::number(m, 0.0, i) -
                                 OperatorExpr::number(m, 0.0, j) + c(i) * a(j) + c(j) * a(i);
  if (phi == 0.0) return fermionic;
  return transmute_operator(fermionic, {0.0, phi});
}

AnyonState apply_gate(const AnyonState& state, const GateElement& gate) {
  validate_gate(gate, state.modes());
  if (gate.kind == GateKind::kFSwap) return apply_fswap(state, gate.i, gate.j);
  std::uint64_t mask = mode_bit(gate.i);
  if (gate.is_two_mode()) mask |= mode_bit(gate.j);
  return exponentiate_local(state, gate_generator(gate, state.modes(), state.phi()), gate.theta,
                            mask);
}

AnyonState apply_fswap(const AnyonState& state, int i, int j) {
  return apply_operator_expr(state, fswap_operator(i, j, state.modes(), state.phi()));
}

AnyonState run_circuit(const AnyonState& state, const Circuit& circuit) {
  if (state.modes() != circuit.m) throw PreconditionError("circuit and state mode counts differ");
  if (state.phi() != circuit.phi) throw PreconditionError("circuit and state statistics differ");
  circuit.validate();
  AnyonState current = state;
  for (const auto& g : circuit.gates) current = apply_gate(current, g);
  return current;
}

std::vector<GateElement> decompose_distant(const GateElement& gate) {
  std::vector<GateElement> seq;
  if (gate.kind == GateKind::kFSwap) {
    if (gate.i == gate.j) throw PreconditionError("fSWAP needs distinct modes");
    append_fswap_chain(seq, gate.i, gate.j);
    return seq;
  }
  if (gate.kind == GateKind::kPhaseShift) {
    append_fswap_chain(seq, 1, gate.i);
    seq.push_back(GateElement::phase_shift(1, gate.theta));
    append_fswap_chain(seq, 1, gate.i);
    return seq;
  }
  if (gate.i == gate.j || gate.i < 1 || gate.j < 1) {
    throw PreconditionError("invalid two-mode gate: " + gate.describe());
  }
  // W = A B with W f_1^+ W^+ = f_i^+ and W f_2^+ W^+ = f_j^+; the gate is
  // W G_12 W^+, applied as A, B, G_12, B, A.
  std::array<std::pair<int, int>, 2> swaps = (gate.j != 1)
                                                 ? std::array{std::pair{1, gate.i}, std::pair{2, gate.j}}
                                                 : std::array{std::pair{2, gate.i}, std::pair{1, 2}};
  for (const auto& [a, b] : swaps) append_fswap_chain(seq, a, b);
  GateElement core = gate;
  core.i = 1;
  core.j = 2;
  seq.push_back(core);
  for (auto it = swaps.rbegin(); it != swaps.rend(); ++it) append_fswap_chain(seq, it->first, it->second);
  return seq;
}

Matrix circuit_matrix(const Circuit& circuit) {
  circuit.validate();
  return dense_from_action(
      circuit.m, [&](const AnyonState& s) { return run_circuit(s, circuit); }, circuit.phi);
}

Matrix operator_matrix(const OperatorExpr& op) {
  return dense_from_action(
      op.modes(), [&](const AnyonState& s) { return apply_operator_expr(s, op); }, op.phi());
}

bool BogoliubovPair::is_number_conserving(double tol) const {
  return V.size() == 0 || V.cwiseAbs().maxCoeff() <= tol;
}

void BogoliubovPair::validate(double tol) const {
  const auto m = U.rows();
  if (U.cols() != m || V.rows() != m || V.cols() != m) {
    throw InvariantError("Bogoliubov matrices must both be m x m");
  }
  const Matrix unit = U * U.adjoint() + V * V.adjoint() - Matrix::Identity(m, m);
  const Matrix pair = U * V.transpose() + V * U.transpose();
  if (unit.cwiseAbs().maxCoeff() > tol) throw InvariantError("UU^+ + VV^+ != 1");
  if (pair.cwiseAbs().maxCoeff() > tol) throw InvariantError("UV^T + VU^T != 0");
}

void QuadraticGenerator::validate(double tol) const {
  const auto m = h.rows();
  if (h.cols() != m || g.rows() != m || g.cols() != m) {
    throw InvariantError("generator matrices must both be m x m");
  }
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > tol) throw InvariantError("h is not Hermitian");
  if ((g + g.transpose()).cwiseAbs().maxCoeff() > tol) throw InvariantError("g is not antisymmetric");
}

OperatorExpr QuadraticGenerator::fermionic_operator() const {
  validate();
  const int m = modes();
  std::vector<LadderTerm> terms;
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (h(a, b) != Complex{}) {
        terms.push_back({h(a, b), {{a + 1, LadderKind::kCreate}, {b + 1, LadderKind::kAnnihilate}}, {}});
      }
      if (g(a, b) != Complex{}) {
        terms.push_back({0.5 * g(a, b), {{a + 1, LadderKind::kCreate}, {b + 1, LadderKind::kCreate}}, {}});
        terms.push_back({0.5 * std::conj(g(a, b)),
                         {{b + 1, LadderKind::kAnnihilate}, {a + 1, LadderKind::kAnnihilate}},
                         {}});
      }
    }
  }
  return OperatorExpr(m, 0.0, std::move(terms));
}

BogoliubovPair QuadraticGenerator::bogoliubov_pair() const {
  validate();
  const auto m = h.rows();
  // d/dt (f^+, f) = i[H, (f^+, f)] is linear with this 2m x 2m matrix.
  Matrix k(2 * m, 2 * m);
  k.topLeftCorner(m, m) = h.transpose();
  k.topRightCorner(m, m) = g.conjugate();
  k.bottomLeftCorner(m, m) = -g;
  k.bottomRightCorner(m, m) = -h;
  const Matrix e = (Complex(0.0, 1.0) * k).exp();
  return {e.topLeftCorner(m, m), e.topRightCorner(m, m)};
}

AnyonState apply_induced_bogoliubov(const AnyonState& state, const BogoliubovPair& b) {
  b.validate();
  if (b.modes() != state.modes()) throw PreconditionError("Bogoliubov pair has wrong mode count");
  if (!b.is_number_conserving()) {
    throw PreconditionError("V != 0 transformations must be supplied in generator form");
  }
  const int m = state.modes();
  // Fermionize: amplitudes carry over unchanged, so work on them directly.
  AnyonState::Amplitudes out;
  std::map<int, std::vector<std::uint64_t>> sectors;
  for (const auto& [bits, amp] : state.amplitudes()) {
    const int n = std::popcount(bits);
    auto [it, inserted] = sectors.try_emplace(n);
    if (inserted) it->second = internal::masks_with_popcount(m, n);
    const auto rows = internal::occupied_modes(bits);
    for (const std::uint64_t y : it->second) {
      out[y] += amp * internal::minor_determinant(b.U, rows, internal::occupied_modes(y));
    }
  }
  // Anyonize back into the original sector.
  return AnyonState(m, state.phi(), std::move(out));
}

AnyonState apply_induced_bogoliubov(const AnyonState& state, const QuadraticGenerator& gen) {
  const int m = state.modes();
  if (gen.modes() != m) throw PreconditionError("generator has wrong mode count");
  if (m > kMaxDenseModes) throw PreconditionError("generator-form Bogoliubov limited to 12 modes");
  const OperatorExpr h = gen.fermionic_operator();
  const AnyonState fermionic = fermionize(state);

  AnyonState::Amplitudes out;
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<std::uint64_t> basis;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << m); ++x) {
      if (std::popcount(x) % 2 == parity) basis.push_back(x);
    }
    std::map<std::uint64_t, Eigen::Index> index;
    for (std::size_t k = 0; k < basis.size(); ++k) index[basis[k]] = static_cast<Eigen::Index>(k);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
    bool any = false;
    for (const auto& [bits, amp] : fermionic.amplitudes()) {
      if (std::popcount(bits) % 2 == parity) {
        v(index.at(bits)) = amp;
        any = true;
      }
    }
    if (!any) continue;
    Matrix hm = Matrix::Zero(v.size(), v.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
      for (const auto& term : h.terms()) {
        if (auto r = term.act(basis[c], 0.0)) hm(index.at(r->first), static_cast<Eigen::Index>(c)) += r->second;
      }
    }
    const Eigen::VectorXcd w = (Complex(0.0, 1.0) * hm).exp() * v;
    for (std::size_t k = 0; k < basis.size(); ++k) out[basis[k]] += w(static_cast<Eigen::Index>(k));
  }
  return anyonize(AnyonState(m, 0.0, std::move(out)), state.phi());
}

}  // namespace anyonsim
