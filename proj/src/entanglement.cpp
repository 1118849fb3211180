#include "anyonsim/entanglement.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <bit>

#include "anyonsim/errors.hpp"
#include "anyonsim/transmutation.hpp"

namespace anyonsim {

namespace {

constexpr double kEigenFloor = 1e-12;

int require_particle_number(const AnyonState& state, int min_n) {
  const auto n = state.definite_particle_number();
  if (!n) throw PreconditionError("state has no definite particle number");
  if (*n < min_n) throw PreconditionError("state needs at least " + std::to_string(min_n) + " particles");
  return *n;
}

void require_normalized(const AnyonState& state) {
  if (!state.is_normalized()) throw PreconditionError("state is not normalized");
}

// Single-particle amplitudes of a one-particle state, indexed by mode (0-based).
Eigen::VectorXcd single_particle_vector(const AnyonState& s) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(s.modes());
  for (const auto& [bits, amp] : s.amplitudes()) {
    v(std::countr_zero(bits)) = amp;
  }
  return v;
}

Matrix correlation_matrix(const AnyonState& state) {
  const int m = state.modes();
  std::vector<AnyonState> lowered;
  lowered.reserve(m);
  for (int k = 1; k <= m; ++k) lowered.push_back(apply_annihilate(state, k));
  Matrix c(m, m);
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) c(k, l) = inner_product(lowered[l], lowered[k]);
  }
  return c;
}

}  // namespace

bool DensityMatrix::is_hermitian(double tol) const {
  if (entries.rows() != entries.cols()) return false;
  return (entries - entries.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

void DensityMatrix::validate(double tol) const {
  if (!is_hermitian(tol)) throw InvariantError("density matrix is not Hermitian");
  if (std::abs(trace() - Complex(1.0)) > tol) throw InvariantError("density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries);
  if (es.eigenvalues().minCoeff() < -tol) throw InvariantError("density matrix is not positive");
}

DensityMatrix one_body_rdm(const AnyonState& state) {
  const int n = require_particle_number(state, 1);
  require_normalized(state);
  return {correlation_matrix(state) / static_cast<double>(n)};
}

DensityMatrix particle_trace_rdm(const AnyonState& state, KeptParticle keep) {
  const int n = require_particle_number(state, 2);
  const int m = state.modes();
  Matrix rho = Matrix::Zero(m, m);

  if (keep == KeptParticle::kY) {
    // Sum over ordered tuples of traced labels: A(i, t) = <0| a_i a_{t_{N-1}} ... a_{t_1} |psi>.
    std::function<void(const AnyonState&, int)> descend = [&](const AnyonState& s, int depth) {
      if (s.is_zero()) return;
      if (depth == n - 1) {
        const Eigen::VectorXcd a = single_particle_vector(s);
        rho += a * a.adjoint();
        return;
      }
      for (int t = 1; t <= m; ++t) descend(apply_annihilate(s, t), depth + 1);
    };
    descend(state, 0);
  } else {
    if (n != 2) throw PreconditionError("tracing the second particle is defined for N = 2 only");
    // B(i1, i2) = <0| a_{i1} a_{i2} |psi>
    Matrix b = Matrix::Zero(m, m);
    for (int i2 = 1; i2 <= m; ++i2) {
      const AnyonState lowered = apply_annihilate(state, i2);
      if (lowered.is_zero()) continue;
      b.col(i2 - 1) = single_particle_vector(lowered);
    }
    const double phi = state.phi();
    auto eps = [](int a, int b) { return a < b ? 1 : (a > b ? -1 : 0); };
    for (int i1 = 0; i1 < m; ++i1) {
      for (int j1 = 0; j1 < m; ++j1) {
        Complex acc = 0.0;
        for (int i2 = 0; i2 < m; ++i2) {
          const Complex term = b(i1, i2) * std::conj(b(j1, i2));
          if (term == Complex(0.0)) continue;
          acc += std::polar(1.0, phi * (eps(i2, i1) + eps(j1, i2))) * term;
        }
        rho(i1, j1) = acc;
      }
    }
  }

  const Complex tr = rho.trace();
  if (std::abs(tr) < kEigenFloor) throw PreconditionError("state has zero norm");
  return {rho / tr.real()};
}

double von_neumann_entropy(const DensityMatrix& rho) {
  if (!rho.is_hermitian()) throw PreconditionError("entropy of a non-Hermitian matrix");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.entries, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (const double lambda : es.eigenvalues()) {
    if (lambda >= kEigenFloor) s -= lambda * std::log2(lambda);
  }
  return s;
}

double binary_entropy(double p) {
  if (p <= kEigenFloor || p >= 1.0 - kEigenFloor) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

MinimalEntropyModes minimal_entropy_modes(const AnyonState& state) {
  require_particle_number(state, 0);
  require_normalized(state);
  const Matrix gamma = correlation_matrix(fermionize(state));
  Eigen::SelfAdjointEigenSolver<Matrix> es(gamma);
  const int m = state.modes();
  MinimalEntropyModes out{Matrix(m, m), 0.0, {}};
  // Eigen sorts ascending; report descending.
  for (int k = 0; k < m; ++k) {
    const int src = m - 1 - k;
    out.mode_basis.col(k) = es.eigenvectors().col(src);
    const double lambda = es.eigenvalues()(src);
    out.occupations.push_back(lambda);
    out.single_particle_entropy += binary_entropy(lambda);
  }
  return out;
}

TwoParticleCoefficients TwoParticleCoefficients::from_state(const AnyonState& state) {
  const int n = require_particle_number(state, 2);
  if (n != 2) throw PreconditionError("Slater decomposition needs exactly two particles");
  const int m = state.modes();
  Matrix v = Matrix::Zero(m, m);
  // Fock amplitudes are shared by every phi, so they are the fermionic c_ij.
  for (const auto& [bits, amp] : state.amplitudes()) {
    const int i = std::countr_zero(bits);
    const int j = std::countr_zero(bits & (bits - 1));
    v(i, j) = amp / 2.0;
    v(j, i) = -amp / 2.0;
  }
  if (std::abs(v.squaredNorm() - 0.5) > kNormTolerance) {
    throw PreconditionError("state is not normalized");
  }
  return {v};
}

namespace {

// Orthogonalizes v against the columns of basis[:, 0..count) twice.
Eigen::VectorXcd orthogonalize(Eigen::VectorXcd v, const Matrix& basis, int count) {
  for (int pass = 0; pass < 2; ++pass) {
    for (int c = 0; c < count; ++c) v -= basis.col(c) * basis.col(c).dot(v);
  }
  return v;
}

}  // namespace

SlaterDecomposition slater_decompose(const AnyonState& state, double rank_tol) {
  const Matrix c = 2.0 * TwoParticleCoefficients::from_state(state).v;
  const int m = static_cast<int>(c.rows());
  // Singular values of C are the z_k, each twice; the left singular
  // vectors span the eigenspaces of C C^+.
  Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeFullU);
  const Eigen::VectorXd sigma = svd.singularValues();
  const Matrix& left = svd.matrixU();

  Matrix modes = Matrix::Zero(m, m);  // columns m_1, m_2, ...
  int filled = 0;
  std::vector<double> z;

  // Degenerate clusters, largest first. Within a cluster the first partner
  // is the normalized projection of the first standard basis vector with a
  // near-maximal overlap, which makes the output basis canonical.
  int start = 0;
  while (start < m && sigma(start) > rank_tol) {
    int end = start + 1;
    while (end < m && std::abs(sigma(end) - sigma(start)) <= 1e-9 * std::max(1.0, sigma(start))) ++end;
    const Matrix cluster = left.middleCols(start, end - start);
    int remaining = static_cast<int>(cluster.cols());
    while (remaining >= 2) {
      std::vector<Eigen::VectorXcd> proj(m);
      double best = 0.0;
      for (int k = 0; k < m; ++k) {
        Eigen::VectorXcd ek = Eigen::VectorXcd::Zero(m);
        ek(k) = 1.0;
        proj[k] = orthogonalize(cluster * (cluster.adjoint() * ek), modes, filled);
        best = std::max(best, proj[k].norm());
      }
      int pick = 0;
      while (proj[pick].norm() < 0.5 * best) ++pick;
      const Eigen::VectorXcd a = proj[pick].normalized();
      Eigen::VectorXcd partner = -c * a.conjugate();
      const double zk = partner.norm();
      partner = orthogonalize(partner / zk, modes, filled);
      modes.col(filled++) = a;
      modes.col(filled++) = partner.normalized();
      z.push_back(zk);
      remaining -= 2;
    }
    start = end;
  }

  // Kernel: complete with the standard basis.
  for (int k = 0; k < m && filled < m; ++k) {
    Eigen::VectorXcd ek = Eigen::VectorXcd::Zero(m);
    ek(k) = 1.0;
    const Eigen::VectorXcd r = orthogonalize(ek, modes, filled);
    if (r.norm() > 1e-6) modes.col(filled++) = r.normalized();
  }
  if (filled != m) throw InvariantError("Slater mode basis is incomplete");

  SlaterDecomposition out;
  out.U = modes.adjoint();
  out.z = std::move(z);
  out.rank = static_cast<int>(std::count_if(out.z.begin(), out.z.end(), [&](double v) { return v > rank_tol; }));
  return out;
}

AnyonState SlaterDecomposition::reconstruct(double phi) const {
  const Matrix mb = mode_basis();
  const int m = static_cast<int>(mb.rows());
  AnyonState::Amplitudes amps;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      Complex cij = 0.0;
      for (std::size_t k = 0; k < z.size(); ++k) {
        const int a = static_cast<int>(2 * k);
        const int b = a + 1;
        cij += z[k] * (mb(i, a) * mb(j, b) - mb(j, a) * mb(i, b));
      }
      if (std::abs(cij) > kPruneTolerance) amps[(std::uint64_t{1} << i) | (std::uint64_t{1} << j)] = cij;
    }
  }
  return AnyonState(m, phi, std::move(amps));
}

SeparabilityVerdict is_separable(const AnyonState& state, double tol) {
  const MinimalEntropyModes modes = minimal_entropy_modes(state);
  double dev = 0.0;
  for (const double lambda : modes.occupations) dev = std::max(dev, std::abs(lambda - std::round(lambda)));
  SeparabilityVerdict verdict{dev <= tol, dev, modes.single_particle_entropy, modes.mode_basis, std::nullopt};
  if (state.definite_particle_number() == 2) {
    const SlaterDecomposition sd = slater_decompose(state);
    const int rank = static_cast<int>(
        std::count_if(sd.z.begin(), sd.z.end(), [&](double zk) { return zk * zk > tol; }));
    verdict.slater_rank = rank;
    if ((rank == 1) != verdict.separable) {
      throw InvariantError("natural occupations and Slater rank disagree on separability");
    }
  }
  return verdict;
}

}  // namespace anyonsim
