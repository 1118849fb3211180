#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "anyonsim/checks.hpp"
#include "anyonsim/entanglement.hpp"
#include "anyonsim/errors.hpp"
#include "anyonsim/presets.hpp"
#include "anyonsim/transmutation.hpp"
#include "oracle.hpp"

using namespace anyonsim;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

AnyonState appendix_g_output(double phi, double theta) {
  return run_circuit(preset_state("appendixG", phi), appendix_g_circuit(phi, theta));
}

// Single-particle matrix of the beam-splitter example output state (trace over the
// first particle). Entry (1, 2) carries -i sin cos, which is what the
// trace produces and what makes the phi = 0 spectrum {1/2, 1/2, 0, 0}.
Matrix appendix_g_reference(double phi, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Matrix r = Matrix::Zero(4, 4);
  r(0, 0) = 1 + c * c;
  r(0, 1) = -kI * s * c;
  r(0, 3) = kI * s * std::polar(1.0, phi);
  r(1, 0) = kI * s * c;
  r(1, 1) = 1 + s * s;
  r(1, 3) = c;
  r(3, 0) = -kI * s * std::polar(1.0, -phi);
  r(3, 1) = c;
  r(3, 3) = 1;
  return r / 4.0;
}

AnyonState occ(const char* s, double phi) { return basis_state(OccupationVector::from_string(s), phi); }

}  // namespace

TEST_CASE("beam-splitter example single-particle matrix, first particle traced") {
  for (const double phi : checks::phi_grid(9)) {
    for (const double theta : checks::phi_grid(9)) {
      const DensityMatrix rho = particle_trace_rdm(appendix_g_output(phi, theta), KeptParticle::kY);
      CHECK_NOTHROW(rho.validate());
      CHECK(oracle::max_abs(rho.entries - appendix_g_reference(phi, theta)) < 1e-12);
    }
  }
}

TEST_CASE("beam-splitter example single-particle matrix, second particle traced") {
  for (const double phi : {0.0, 0.7, 2.0, kPi}) {
    for (const double theta : {0.3, 1.0}) {
      const DensityMatrix rho = particle_trace_rdm(appendix_g_output(phi, theta), KeptParticle::kX);
      // Same matrix with the conjugate phase on the (1, 4) coherences.
      CHECK(oracle::max_abs(rho.entries - appendix_g_reference(-phi, theta)) < 1e-12);
      CHECK(std::abs(rho.entries(0, 3) - kI * std::sin(theta) * std::polar(1.0, -phi) / 4.0) < 1e-12);
    }
  }
}

TEST_CASE("both particle traces give the same entropy") {
  checks::Rng rng(3);
  for (int t = 0; t < 40; ++t) {
    const int m = 2 + t % 5;
    const double phi = 0.157 * t;
    const AnyonState psi = checks::random_state(rng, m, 2, phi);
    const double sx = von_neumann_entropy(particle_trace_rdm(psi, KeptParticle::kX));
    const double sy = von_neumann_entropy(particle_trace_rdm(psi, KeptParticle::kY));
    CHECK(std::abs(sx - sy) < 1e-10);
  }
}

TEST_CASE("particle trace for more than two particles") {
  checks::Rng rng(9);
  const AnyonState psi = checks::random_state(rng, 5, 3, 1.3);
  const DensityMatrix rho = particle_trace_rdm(psi, KeptParticle::kY);
  CHECK_NOTHROW(rho.validate());
  CHECK_THROWS_AS(particle_trace_rdm(psi, KeptParticle::kX), PreconditionError);
  // At phi = 0 every particle trace is the one-body matrix.
  const AnyonState f = fermionize(psi);
  CHECK(oracle::max_abs(particle_trace_rdm(f, KeptParticle::kY).entries - one_body_rdm(f).entries) < 1e-12);
  CHECK_THROWS_AS(particle_trace_rdm(occ("100", 0.0), KeptParticle::kY), PreconditionError);
  CHECK_THROWS_AS(particle_trace_rdm(occ("110", 0.0) + occ("111", 0.0), KeptParticle::kY), PreconditionError);
}

TEST_CASE("fermionized beam-splitter example state") {
  for (const double theta : checks::phi_grid(9)) {
    for (const double phi : {0.0, 1.1, kPi}) {
      const DensityMatrix rho = one_body_rdm(fermionize(appendix_g_output(phi, theta)));
      CHECK(oracle::max_abs(rho.entries - appendix_g_reference(0.0, theta)) < 1e-12);
      Eigen::SelfAdjointEigenSolver<Matrix> es(rho.entries);
      CHECK(std::abs(es.eigenvalues()(3) - 0.5) < 1e-12);
      CHECK(std::abs(es.eigenvalues()(2) - 0.5) < 1e-12);
      CHECK(std::abs(es.eigenvalues()(1)) < 1e-12);
      CHECK(std::abs(es.eigenvalues()(0)) < 1e-12);
      CHECK(std::abs(von_neumann_entropy(rho) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("one-body matrix") {
  checks::Rng rng(12);
  const AnyonState psi = checks::random_state(rng, 5, 2, 0.6);
  const DensityMatrix rho = one_body_rdm(psi);
  CHECK_NOTHROW(rho.validate());
  // Diagonal holds occupations / N.
  for (int k = 1; k <= 5; ++k) {
    CHECK(std::abs(rho.entries(k - 1, k - 1).real() - inner_product(psi, apply_number(psi, k)).real() / 2.0) < 1e-14);
  }
  CHECK_THROWS_AS(one_body_rdm(psi * 2.0), PreconditionError);
  CHECK_THROWS_AS(one_body_rdm(vacuum(3, 0.0)), PreconditionError);
}

TEST_CASE("von Neumann entropy") {
  Matrix pure = Matrix::Zero(3, 3);
  pure(1, 1) = 1.0;
  CHECK(von_neumann_entropy({pure}) == 0.0);
  CHECK(std::abs(von_neumann_entropy({Matrix::Identity(4, 4) / 4.0}) - 2.0) < 1e-14);
  Matrix bad = Matrix::Identity(2, 2) / 2.0;
  bad(0, 1) = 0.3;
  CHECK_THROWS_AS(von_neumann_entropy({bad}), PreconditionError);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(1e-13) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  DensityMatrix not_unit{Matrix::Identity(2, 2)};
  CHECK_THROWS_AS(not_unit.validate(), InvariantError);
}

TEST_CASE("naive particle-trace entropy depends on phi") {
  const double theta = kPi / 4;
  double lo = 10.0;
  double hi = -10.0;
  for (const double phi : checks::phi_grid(9)) {
    const AnyonState s = appendix_g_output(phi, theta);
    const double sy = von_neumann_entropy(particle_trace_rdm(s, KeptParticle::kY));
    lo = std::min(lo, sy);
    hi = std::max(hi, sy);
    CHECK(is_separable(s).separable);
  }
  CHECK(hi - lo > 0.1);
  CHECK(std::abs(von_neumann_entropy(particle_trace_rdm(appendix_g_output(0.0, theta), KeptParticle::kY)) - 1.0) <
        1e-12);
}

TEST_CASE("minimal-entropy modes") {
  checks::Rng rng(21);
  for (int t = 0; t < 10; ++t) {
    const int m = 3 + t % 4;
    const int n = 1 + t % 3;
    const AnyonState psi = checks::random_state(rng, m, std::min(n, m), 0.0);
    const MinimalEntropyModes natural = minimal_entropy_modes(psi);
    CHECK(std::is_sorted(natural.occupations.rbegin(), natural.occupations.rend()));
    // Same amplitude table at another phi gives the same spectrum.
    const MinimalEntropyModes other = minimal_entropy_modes(psi.with_phi(2.2));
    for (std::size_t k = 0; k < natural.occupations.size(); ++k) {
      CHECK(std::abs(natural.occupations[k] - other.occupations[k]) < 1e-12);
    }
    // Sampling check of the minimizer: no random mode basis does better.
    const Matrix gamma =
        natural.mode_basis * Eigen::Map<const Eigen::VectorXd>(natural.occupations.data(), m).cast<Complex>().asDiagonal() *
        natural.mode_basis.adjoint();
    for (int s = 0; s < 200; ++s) {
      const Matrix w = checks::random_unitary(rng, m);
      const Matrix rotated = w.adjoint() * gamma * w;
      double e = 0.0;
      for (int k = 0; k < m; ++k) e += binary_entropy(rotated(k, k).real());
      CHECK(e >= natural.single_particle_entropy - 1e-12);
    }
  }
  CHECK(minimal_entropy_modes(occ("1011", 0.4)).single_particle_entropy == 0.0);
  CHECK(minimal_entropy_modes(vacuum(3, 0.4)).single_particle_entropy == 0.0);
}

TEST_CASE("Slater decomposition examples") {
  const SlaterDecomposition one = slater_decompose(occ("1100", 0.7));
  REQUIRE(one.z.size() == 1);
  CHECK(std::abs(one.z[0] - 1.0) < 1e-14);
  CHECK(one.rank == 1);
  CHECK(oracle::max_abs(one.U - Matrix::Identity(4, 4)) < 1e-14);

  const SlaterDecomposition two = slater_decompose(preset_state("two-slater", 1.9));
  REQUIRE(two.z.size() == 2);
  CHECK(std::abs(two.z[0] - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(two.z[1] - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(two.rank == 2);
  CHECK(oracle::max_abs(two.U - Matrix::Identity(4, 4)) < 1e-12);

  for (const double theta : checks::phi_grid(7)) {
    const SlaterDecomposition g = slater_decompose(appendix_g_output(0.9, theta));
    CHECK(g.rank == 1);
    REQUIRE(g.z.size() == 1);
    CHECK(std::abs(g.z[0] - 1.0) < 1e-12);
  }
}

TEST_CASE("Slater decomposition of random states") {
  checks::Rng rng(33);
  for (int t = 0; t < 40; ++t) {
    const int m = 2 + t % 7;
    const double phi = 0.3 * t;
    const AnyonState psi = checks::random_state(rng, m, 2, phi);
    const SlaterDecomposition sd = slater_decompose(psi);
    const auto e = checks::slater_errors(psi);
    CHECK(e.reconstruction < 1e-10);
    CHECK(e.oracle < 1e-10);
    CHECK(oracle::max_abs(sd.U * sd.U.adjoint() - Matrix::Identity(m, m)) < 1e-12);
    CHECK(std::is_sorted(sd.z.rbegin(), sd.z.rend()));
    double norm = 0.0;
    for (const double z : sd.z) norm += z * z;
    CHECK(std::abs(norm - 1.0) < 1e-12);

    // U V U^T is block diagonal with z_k / 2 blocks.
    const Matrix v = TwoParticleCoefficients::from_state(psi).v;
    const Matrix b = sd.U * v * sd.U.transpose();
    Matrix expected = Matrix::Zero(m, m);
    for (std::size_t k = 0; k < sd.z.size(); ++k) {
      expected(2 * k, 2 * k + 1) = sd.z[k] / 2;
      expected(2 * k + 1, 2 * k) = -sd.z[k] / 2;
    }
    CHECK(oracle::max_abs(b - expected) < 1e-10);

    // Coefficients do not depend on phi.
    const SlaterDecomposition other = slater_decompose(psi.with_phi(phi + 1.0));
    REQUIRE(other.z.size() == sd.z.size());
    for (std::size_t k = 0; k < sd.z.size(); ++k) CHECK(std::abs(other.z[k] - sd.z[k]) < 1e-12);
  }
}

TEST_CASE("Slater preconditions") {
  CHECK_THROWS_AS(slater_decompose(occ("1110", 0.0)), PreconditionError);
  CHECK_THROWS_AS(slater_decompose(occ("1100", 0.0) * 2.0), PreconditionError);
  CHECK_THROWS_AS(TwoParticleCoefficients::from_state(occ("1000", 0.0)), PreconditionError);
}

TEST_CASE("separability") {
  for (const double phi : {0.0, 1.0, kPi}) {
    const auto v = is_separable(occ("10110", phi));
    CHECK(v.separable);
    CHECK(v.max_deviation < 1e-14);
    CHECK_FALSE(v.slater_rank.has_value());
    const auto g = is_separable(appendix_g_output(phi, 0.8));
    CHECK(g.separable);
    CHECK(g.slater_rank == 1);
    const auto s = is_separable(preset_state("two-slater", phi));
    CHECK_FALSE(s.separable);
    CHECK(s.slater_rank == 2);
    CHECK(std::abs(s.single_particle_entropy - 4.0) < 1e-12);
  }
  // The witness diagonalizes the fermionic one-body matrix.
  const AnyonState g = appendix_g_output(0.5, 0.8);
  const auto verdict = is_separable(g);
  const Matrix gamma = 2.0 * one_body_rdm(fermionize(g)).entries;
  const Matrix d = verdict.witness.adjoint() * gamma * verdict.witness;
  CHECK(oracle::max_abs(d - Matrix(d.diagonal().asDiagonal())) < 1e-12);
  CHECK_THROWS_AS(is_separable(occ("10", 0.0) + occ("11", 0.0)), PreconditionError);
}

TEST_CASE("induced single-particle transformations keep Fock states separable") {
  checks::Rng rng(47);
  for (int t = 0; t < 20; ++t) {
    const int m = 3 + t % 4;
    const int n = 1 + t % (m - 1);
    std::vector<int> modes(m);
    for (int k = 0; k < m; ++k) modes[k] = k;
    std::shuffle(modes.begin(), modes.end(), rng);
    std::uint64_t bits = 0;
    for (int k = 0; k < n; ++k) bits |= std::uint64_t{1} << modes[k];
    const double phi = 0.41 * t;
    const AnyonState x(m, phi, {{bits, Complex(1.0)}});
    const AnyonState y = apply_induced_bogoliubov(x, BogoliubovPair{checks::random_unitary(rng, m), Matrix::Zero(m, m)});
    CHECK(std::abs(y.norm_squared() - 1.0) < 1e-12);
    const auto v = is_separable(y);
    CHECK(v.separable);
    if (n == 2) CHECK(v.slater_rank == 1);
  }
}
