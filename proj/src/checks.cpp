#include "anyonsim/checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "anyonsim/entanglement.hpp"
#include "anyonsim/fastpath.hpp"
#include "combinatorics.hpp"

namespace anyonsim::checks {

namespace {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

int eps(int i, int j) { return i < j ? 1 : (i > j ? -1 : 0); }

struct Ladders {
  std::vector<Matrix> create;
  std::vector<Matrix> annihilate;
};

Ladders ladders(int m, double phi, int sign) {
  Ladders l;
  for (int k = 1; k <= m; ++k) {
    l.create.push_back(dense_operator(OperatorExpr::create(m, phi, k), sign));
    l.annihilate.push_back(dense_operator(OperatorExpr::annihilate(m, phi, k), sign));
  }
  return l;
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

Complex random_complex(Rng& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng)};
}

AnyonState random_state(Rng& rng, int m, int particle_number, double phi) {
  AnyonState::Amplitudes amps;
  if (particle_number < 0) {
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << m); ++b) amps[b] = random_complex(rng);
  } else {
    for (const auto b : internal::masks_with_popcount(m, particle_number)) amps[b] = random_complex(rng);
  }
  return AnyonState(m, phi, std::move(amps)).normalized();
}

Matrix random_unitary(Rng& rng, int m) {
  Matrix g(m, m);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) g(r, c) = random_complex(rng);
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int k = 0; k < m; ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

Matrix random_hermitian(Rng& rng, int m) {
  Matrix g(m, m);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) g(r, c) = random_complex(rng);
  }
  return (g + g.adjoint()) / 2.0;
}

OperatorExpr random_operator(Rng& rng, int m, double phi, int terms) {
  std::vector<LadderTerm> out;
  for (int t = 0; t < terms; ++t) {
    LadderTerm term;
    term.coefficient = random_complex(rng);
    const int degree = uniform_int(rng, 1, 3);
    for (int d = 0; d < degree; ++d) {
      term.factors.push_back({uniform_int(rng, 1, m), uniform_int(rng, 0, 1) ? LadderKind::kCreate : LadderKind::kAnnihilate});
    }
    out.push_back(std::move(term));
  }
  return OperatorExpr(m, phi, std::move(out));
}

Circuit random_in_family_circuit(Rng& rng, int m, double phi, int depth, bool allow_pa) {
  Circuit c{m, phi, {}};
  const int kinds = (allow_pa && m >= 2) ? 4 : 3;
  for (int d = 0; d < depth; ++d) {
    const int kind = m >= 2 ? uniform_int(rng, 0, kinds - 1) : 0;
    const double theta = uniform(rng, -std::numbers::pi, std::numbers::pi);
    switch (kind) {
      case 0: c.gates.push_back(GateElement::phase_shift(uniform_int(rng, 1, m), theta)); break;
      case 1: {
        const int i = uniform_int(rng, 1, m - 1);
        c.gates.push_back(GateElement::beam_splitter(i, i + 1, theta));
        break;
      }
      case 2: {
        const int i = uniform_int(rng, 1, m);
        int j = uniform_int(rng, 1, m - 1);
        if (j >= i) ++j;
        c.gates.push_back(GateElement::fswap(i, j));
        break;
      }
      default: c.gates.push_back(GateElement::parametric_amp(1, 2, theta)); break;
    }
  }
  return c;
}

Matrix dense_operator(const OperatorExpr& op, int exchange_sign) {
  const int m = op.modes();
  const std::uint64_t dim = std::uint64_t{1} << m;
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::uint64_t c = 0; c < dim; ++c) {
    const AnyonState col =
        detail::apply_operator_expr(AnyonState(m, op.phi(), {{c, Complex(1.0)}}), op, exchange_sign);
    for (const auto& [r, amp] : col.amplitudes()) out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = amp;
  }
  return out;
}

double exchange_relation_error(int m, double phi, int exchange_sign) {
  const Ladders l = ladders(m, phi, exchange_sign);
  const Matrix id = Matrix::Identity(l.create[0].rows(), l.create[0].cols());
  double err = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const int e = eps(i, j);
      const Matrix r1 = l.annihilate[i] * l.create[j] + std::polar(1.0, -phi * e) * l.create[j] * l.annihilate[i] -
                        (i == j ? id : Matrix::Zero(id.rows(), id.cols()));
      const Matrix r2 = l.annihilate[i] * l.annihilate[j] + std::polar(1.0, phi * e) * l.annihilate[j] * l.annihilate[i];
      err = std::max({err, max_abs(r1), max_abs(r2)});
    }
  }
  return err;
}

double number_commutator_error(int m, double phi, int exchange_sign) {
  const Ladders l = ladders(m, phi, exchange_sign);
  double err = 0.0;
  for (int i = 0; i < m; ++i) {
    const Matrix n = l.create[i] * l.annihilate[i];
    for (int j = 0; j < m; ++j) {
      const double d = i == j ? 1.0 : 0.0;
      err = std::max(err, max_abs(n * l.create[j] - l.create[j] * n - d * l.create[j]));
      err = std::max(err, max_abs(n * l.annihilate[j] - l.annihilate[j] * n + d * l.annihilate[j]));
    }
  }
  return err;
}

double fermionic_reduction_error(int m, int exchange_sign) {
  const Ladders l = ladders(m, 0.0, exchange_sign);
  const Matrix id = Matrix::Identity(l.create[0].rows(), l.create[0].cols());
  double err = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double d = i == j ? 1.0 : 0.0;
      err = std::max(err, max_abs(l.annihilate[i] * l.create[j] + l.create[j] * l.annihilate[i] - d * id));
      err = std::max(err, max_abs(l.annihilate[i] * l.annihilate[j] + l.annihilate[j] * l.annihilate[i]));
    }
  }
  return err;
}

double pi_commutation_error(int m, int exchange_sign) {
  const Ladders l = ladders(m, std::numbers::pi, exchange_sign);
  double err = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      err = std::max(err, max_abs(l.annihilate[i] * l.annihilate[j] - l.annihilate[j] * l.annihilate[i]));
      err = std::max(err, max_abs(l.annihilate[i] * l.create[j] - l.create[j] * l.annihilate[i]));
    }
  }
  return err;
}

JwtErrors jwt_law_errors(Rng& rng, int m, int trials, int exchange_sign) {
  JwtErrors e;
  const double two_pi = 2.0 * std::numbers::pi;
  for (int t = 0; t < trials; ++t) {
    const double p1 = uniform(rng, 0.0, two_pi);
    const double p2 = uniform(rng, 0.0, two_pi);
    const double p3 = uniform(rng, 0.0, two_pi);
    const OperatorExpr op = random_operator(rng, m, p1);
    const Matrix base = dense_operator(op, exchange_sign);
    const OperatorExpr to2 = detail::transmute_operator(op, {p1, p2}, exchange_sign);
    const Matrix m2 = dense_operator(to2, exchange_sign);
    e.amplitude_invariance = std::max(e.amplitude_invariance, max_abs(m2 - base));

    // Amplitude table of O|psi> is the same in both algebras.
    const AnyonState psi = random_state(rng, m, -1, p1);
    const AnyonState lhs = detail::apply_operator_expr(psi, op, exchange_sign);
    const AnyonState rhs = detail::apply_operator_expr(transmute_state(psi, p2), to2, exchange_sign);
    e.amplitude_invariance = std::max(e.amplitude_invariance, transmute_state(lhs, p2).max_abs_diff(rhs));

    const Matrix chained = dense_operator(detail::transmute_operator(to2, {p2, p3}, exchange_sign), exchange_sign);
    const Matrix direct = dense_operator(detail::transmute_operator(op, {p1, p3}, exchange_sign), exchange_sign);
    e.composition = std::max(e.composition, max_abs(chained - direct));

    const Matrix back = dense_operator(detail::transmute_operator(to2, {p2, p1}, exchange_sign), exchange_sign);
    e.inverse = std::max(e.inverse, max_abs(back - base));

    for (int k = 1; k <= m; ++k) {
      const OperatorExpr n = OperatorExpr::number(m, p1, k);
      const Matrix img = dense_operator(detail::transmute_operator(n, {p1, p2}, exchange_sign), exchange_sign);
      e.number_invariance = std::max(e.number_invariance, max_abs(img - dense_operator(n, exchange_sign)));
    }
  }
  return e;
}

FswapErrors fswap_errors(Rng& rng, int m, double phi, int decomposition_trials) {
  FswapErrors e;
  std::vector<std::vector<Matrix>> f(m + 1, std::vector<Matrix>(m + 1));
  for (int i = 1; i <= m; ++i) {
    for (int j = i + 1; j <= m; ++j) {
      f[i][j] = operator_matrix(fswap_operator(i, j, m, phi));
      const Matrix id = Matrix::Identity(f[i][j].rows(), f[i][j].cols());
      e.involution = std::max(e.involution, max_abs(f[i][j] * f[i][j] - id));
    }
  }
  if (m >= 3) e.three_gate = max_abs(f[1][2] * f[2][3] * f[1][2] - f[1][3]);

  for (int t = 0; t < decomposition_trials && m >= 2; ++t) {
    const int kind = uniform_int(rng, 0, 3);
    const int i = uniform_int(rng, 1, m);
    int j = uniform_int(rng, 1, m - 1);
    if (j >= i) ++j;
    const double theta = uniform(rng, -std::numbers::pi, std::numbers::pi);
    GateElement g = GateElement::phase_shift(i, theta);
    if (kind == 1) g = GateElement::beam_splitter(i, j, theta);
    if (kind == 2) g = GateElement::parametric_amp(i, j, theta);
    if (kind == 3) g = GateElement::fswap(i, j);
    const Matrix target = circuit_matrix({m, 0.0, {g}});
    const Matrix decomposed = circuit_matrix({m, 0.0, decompose_distant(g)});
    e.decomposition = std::max(e.decomposition, max_abs(target - decomposed));
  }
  return e;
}

FastpathErrors fastpath_errors(const Circuit& circuit, int particle_number, const std::vector<double>& phis) {
  FastpathErrors e;
  const auto inputs = internal::masks_with_popcount(circuit.m, particle_number);
  std::vector<AnyonState> reference;
  for (std::size_t p = 0; p < phis.size(); ++p) {
    Circuit c = circuit;
    c.phi = phis[p];
    const Matrix dense = circuit_matrix(c);
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      const OccupationVector x(c.m, inputs[k]);
      const AnyonState fast = run_circuit_fastpath(basis_state(x, c.phi), c);
      for (Eigen::Index r = 0; r < dense.rows(); ++r) {
        const Complex d = dense(r, static_cast<Eigen::Index>(inputs[k]));
        e.dense_mismatch = std::max(e.dense_mismatch, std::abs(fast.amplitude(static_cast<std::uint64_t>(r)) - d));
      }
      // Single-amplitude entry point on the diagonal element.
      e.dense_mismatch = std::max(e.dense_mismatch, std::abs(anyonic_amplitude_via_fastpath(c, x, x) -
                                                             dense(static_cast<Eigen::Index>(inputs[k]),
                                                                   static_cast<Eigen::Index>(inputs[k]))));
      if (p == 0) {
        reference.push_back(fast);
      } else {
        e.phi_dependence = std::max(e.phi_dependence, transmute_state(fast, phis[0]).max_abs_diff(reference[k]));
      }
    }
  }
  return e;
}

SlaterErrors slater_errors(const AnyonState& state) {
  SlaterErrors e;
  const SlaterDecomposition sd = slater_decompose(state);
  e.reconstruction = sd.reconstruct(0.0).max_abs_diff(fermionize(state));

  const Matrix v = TwoParticleCoefficients::from_state(state).v;
  Eigen::SelfAdjointEigenSolver<Matrix> es(v.adjoint() * v, Eigen::EigenvaluesOnly);
  std::vector<double> oracle;
  for (const double mu : es.eigenvalues()) oracle.push_back(4.0 * mu);
  std::vector<double> ours;
  for (const double z : sd.z) {
    ours.push_back(z * z);
    ours.push_back(z * z);
  }
  ours.resize(oracle.size(), 0.0);
  std::sort(oracle.begin(), oracle.end(), std::greater<>());
  std::sort(ours.begin(), ours.end(), std::greater<>());
  for (std::size_t k = 0; k < oracle.size(); ++k) e.oracle = std::max(e.oracle, std::abs(oracle[k] - ours[k]));
  return e;
}

std::vector<double> phi_grid(int points) {
  std::vector<double> out;
  if (points == 1) return {0.0};
  for (int k = 0; k < points; ++k) out.push_back(std::numbers::pi * k / (points - 1));
  return out;
}

std::vector<SuiteResult> run_property_suites(const CheckOptions& o) {
  Rng rng(o.seed);
  const auto grid = phi_grid(o.phi_points);
  const int sign = o.exchange_sign;
  std::vector<SuiteResult> results;
  auto record = [&](std::string name, double err) { results.push_back({std::move(name), err <= o.tol, err}); };

  double err = 0.0;
  for (int m = 1; m <= o.max_modes; ++m) {
    for (const double phi : grid) err = std::max(err, exchange_relation_error(m, phi, sign));
  }
  record("exchange-relations", err);

  err = 0.0;
  for (int m = 1; m <= o.max_modes; ++m) {
    for (const double phi : grid) err = std::max(err, number_commutator_error(m, phi, sign));
  }
  record("number-commutators", err);

  err = 0.0;
  for (int m = 1; m <= o.max_modes; ++m) {
    err = std::max({err, fermionic_reduction_error(m, sign), pi_commutation_error(m, sign)});
  }
  record("phi-reductions", err);

  err = 0.0;
  for (int m = 1; m <= o.max_modes; ++m) {
    const JwtErrors j = jwt_law_errors(rng, m, o.trials, sign);
    err = std::max({err, j.amplitude_invariance, j.composition, j.inverse, j.number_invariance});
  }
  record("jwt-laws", err);

  err = 0.0;
  for (int m = 2; m <= std::max(3, o.max_modes); ++m) {
    for (const double phi : {0.0, std::numbers::pi / 3.0, std::numbers::pi}) {
      const FswapErrors f = fswap_errors(rng, m, phi, phi == 0.0 ? o.trials : 0);
      err = std::max({err, f.involution, f.three_gate, f.decomposition});
    }
  }
  record("fswap-identities", err);

  err = 0.0;
  for (int t = 0; t < o.trials; ++t) {
    const int m = uniform_int(rng, 2, std::max(3, o.max_modes + 1));
    const int n = uniform_int(rng, 0, std::min(m, 3));
    const Circuit c = random_in_family_circuit(rng, m, 0.0, uniform_int(rng, 1, 12), true);
    const FastpathErrors f = fastpath_errors(c, n, {0.0, std::numbers::pi / 3.0, std::numbers::pi});
    err = std::max({err, f.dense_mismatch, f.phi_dependence});
  }
  record("fastpath-vs-dense", err);

  err = 0.0;
  for (int t = 0; t < o.trials; ++t) {
    const int m = uniform_int(rng, 2, std::max(4, o.max_modes + 2));
    const SlaterErrors s = slater_errors(random_state(rng, m, 2, uniform(rng, 0.0, 2.0 * std::numbers::pi)));
    err = std::max({err, s.reconstruction, s.oracle});
  }
  record("slater-decomposition", err);

  return results;
}

}  // namespace anyonsim::checks
