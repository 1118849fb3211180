#include "anyonsim/fastpath.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <variant>

#include "anyonsim/errors.hpp"
#include "combinatorics.hpp"

namespace anyonsim {

namespace {

bool is_nearest_neighbour(const GateElement& g) { return std::abs(g.i - g.j) == 1; }

bool is_pa12(const GateElement& g) {
  return g.kind == GateKind::kParametricAmp &&
         ((g.i == 1 && g.j == 2) || (g.i == 2 && g.j == 1));
}

Matrix gate_transfer_matrix(const GateElement& g, int m) {
  Matrix u = Matrix::Identity(m, m);
  const int i = g.i - 1;
  const int j = g.j - 1;
  switch (g.kind) {
    case GateKind::kPhaseShift:
      u(i, i) = std::polar(1.0, g.theta);
      break;
    case GateKind::kBeamSplitter: {
      if (!is_nearest_neighbour(g)) {
        throw FamilyError("distant beam splitter is outside the simulable family: " + g.describe());
      }
      const Complex c(std::cos(g.theta), 0.0);
      const Complex s(0.0, std::sin(g.theta));
      u(i, i) = c;
      u(j, j) = c;
      u(i, j) = s;
      u(j, i) = s;
      break;
    }
    case GateKind::kFSwap:
      u(i, i) = 0.0;
      u(j, j) = 0.0;
      u(i, j) = 1.0;
      u(j, i) = 1.0;
      break;
    case GateKind::kParametricAmp:
      throw FamilyError("parametric amplifier does not conserve particle number: " + g.describe());
  }
  return u;
}

using Segment = std::variant<SingleParticleUnitary, GateElement>;

std::vector<Segment> split_segments(const Circuit& circuit) {
  if (auto bad = first_out_of_family_gate(circuit)) {
    throw FamilyError("gate " + bad->describe() + " is outside the phi-invariant family");
  }
  std::vector<Segment> segments;
  Circuit run{circuit.m, circuit.phi, {}};
  auto flush = [&] {
    if (!run.gates.empty()) segments.emplace_back(compile_single_particle(run));
    run.gates.clear();
  };
  for (const auto& g : circuit.gates) {
    if (g.kind == GateKind::kParametricAmp) {
      flush();
      segments.emplace_back(g);
    } else {
      run.gates.push_back(g);
    }
  }
  flush();
  return segments;
}

using SparseVector = std::map<std::uint64_t, Complex>;

SparseVector propagate_number_conserving(const SparseVector& v, const SingleParticleUnitary& u) {
  SparseVector out;
  std::map<int, std::vector<std::uint64_t>> sectors;
  for (const auto& [z, amp] : v) {
    const int n = std::popcount(z);
    auto [it, inserted] = sectors.try_emplace(n);
    if (inserted) it->second = internal::masks_with_popcount(u.modes(), n);
    const auto cols = internal::occupied_modes(z);
    for (const std::uint64_t w : it->second) {
      const Complex d = internal::minor_determinant(u.U, internal::occupied_modes(w), cols);
      if (d != Complex{}) out[w] += amp * d;
    }
  }
  return out;
}

SparseVector propagate_pa12(const SparseVector& v, double nu) {
  // PA_12 only couples |00> and |11> on modes (1,2); both ladder strings are
  // empty there, so the block is [[cos, i sin], [i sin, cos]] at every phi.
  constexpr std::uint64_t kPair = 0b11;
  const Complex c(std::cos(nu), 0.0);
  const Complex s(0.0, std::sin(nu));
  SparseVector out;
  for (const auto& [z, amp] : v) {
    const std::uint64_t local = z & kPair;
    if (local == 0 || local == kPair) {
      out[z] += c * amp;
      out[z ^ kPair] += s * amp;
    } else {
      out[z] += amp;
    }
  }
  return out;
}

SparseVector propagate(SparseVector v, const std::vector<Segment>& segments) {
  for (const auto& seg : segments) {
    if (const auto* u = std::get_if<SingleParticleUnitary>(&seg)) {
      v = propagate_number_conserving(v, *u);
    } else {
      v = propagate_pa12(v, std::get<GateElement>(seg).theta);
    }
  }
  return v;
}

}  // namespace

void SingleParticleUnitary::validate(double tol) const {
  if (U.rows() != U.cols()) throw InvariantError("single-particle matrix must be square");
  const Matrix d = U.adjoint() * U - Matrix::Identity(U.rows(), U.cols());
  if (d.cwiseAbs().maxCoeff() > tol) throw InvariantError("single-particle matrix is not unitary");
}

bool is_invariant_family_gate(const GateElement& gate) {
  switch (gate.kind) {
    case GateKind::kPhaseShift:
    case GateKind::kFSwap: return true;
    case GateKind::kBeamSplitter: return is_nearest_neighbour(gate);
    case GateKind::kParametricAmp: return is_pa12(gate);
  }
  return false;
}

std::optional<GateElement> first_out_of_family_gate(const Circuit& circuit) {
  for (const auto& g : circuit.gates) {
    if (!is_invariant_family_gate(g)) return g;
  }
  return std::nullopt;
}

SingleParticleUnitary compile_single_particle(const Circuit& circuit) {
  circuit.validate();
  Matrix u = Matrix::Identity(circuit.m, circuit.m);
  for (const auto& g : circuit.gates) u = gate_transfer_matrix(g, circuit.m) * u;
  return {u};
}

FastAmplitude amplitude_number_conserving(const SingleParticleUnitary& u, const OccupationVector& x,
                                          const OccupationVector& y) {
  if (x.modes() != u.modes() || y.modes() != u.modes()) {
    throw PreconditionError("occupation vectors do not match the compiled mode count");
  }
  if (x.particle_number() != y.particle_number()) return {Complex{}, true};
  return {internal::minor_determinant(u.U, internal::occupied_modes(y.bits()),
                                      internal::occupied_modes(x.bits())),
          false};
}

Complex anyonic_amplitude_via_fastpath(const Circuit& circuit, const OccupationVector& x,
                                       const OccupationVector& y) {
  if (x.modes() != circuit.m || y.modes() != circuit.m) {
    throw PreconditionError("occupation vectors do not match the circuit mode count");
  }
  const auto segments = split_segments(circuit);
  if (segments.size() <= 1 && (segments.empty() || std::holds_alternative<SingleParticleUnitary>(segments[0]))) {
    if (segments.empty()) return x == y ? Complex(1.0) : Complex{};
    return amplitude_number_conserving(std::get<SingleParticleUnitary>(segments[0]), x, y).value;
  }
  const SparseVector v = propagate({{x.bits(), Complex(1.0)}}, segments);
  auto it = v.find(y.bits());
  return it == v.end() ? Complex{} : it->second;
}

AnyonState run_circuit_fastpath(const AnyonState& state, const Circuit& circuit) {
  if (state.modes() != circuit.m) throw PreconditionError("circuit and state mode counts differ");
  if (state.phi() != circuit.phi) throw PreconditionError("circuit and state statistics differ");
  circuit.validate();
  SparseVector v(state.amplitudes().begin(), state.amplitudes().end());
  return AnyonState(state.modes(), state.phi(), propagate(std::move(v), split_segments(circuit)));
}

}  // namespace anyonsim
