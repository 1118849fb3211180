#pragma once

// Reference constructions for the unit tests. Nothing here calls the
// library's ladder primitives.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  }
  return out;
}

// Mode m is the leftmost Kronecker factor so that basis index == occupation
// bits with mode k in bit k-1. Every occupied mode left of `mode` contributes
// -exp(-i phi) when a creation operator is moved past it.
inline Matrix create(int m, int mode, double phi) {
  Matrix raise = Matrix::Zero(2, 2);
  raise(1, 0) = 1.0;
  Matrix string = Matrix::Identity(2, 2);
  string(1, 1) = -std::polar(1.0, -phi);
  Matrix out = Matrix::Identity(1, 1);
  for (int k = m; k >= 1; --k) {
    const Matrix factor = k > mode ? Matrix::Identity(2, 2) : k == mode ? raise : string;
    out = kron(out, factor);
  }
  return out;
}

inline Matrix annihilate(int m, int mode, double phi) { return create(m, mode, phi).adjoint(); }

inline Matrix number(int m, int mode) { return create(m, mode, 0.0) * annihilate(m, mode, 0.0); }

inline Matrix identity(int m) { return Matrix::Identity(Eigen::Index{1} << m, Eigen::Index{1} << m); }

/// exp(i theta K) for Hermitian K via its eigendecomposition.
inline Matrix unitary_exp(const Matrix& k, double theta) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(k);
  Eigen::VectorXcd phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) phases(i) = std::polar(1.0, theta * es.eigenvalues()(i));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace oracle
