#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace anyonsim {

using Complex = std::complex<double>;

/// Sign s in the reordering phase (-e^{i s phi})^{n_<}. Fixed by requiring
/// the deformed exchange relations
///   a_i a_j^+ + e^{-i phi eps_ij} a_j^+ a_i = delta_ij,
///   a_i a_j   + e^{ i phi eps_ij} a_j   a_i = 0
/// to hold on every Fock state; the transmutation strings use the same sign.
inline constexpr int kExchangeSign = -1;

inline constexpr double kPruneTolerance = 1e-14;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr int kMaxModes = 64;

/// Occupations of m modes packed into a machine word. Mode i (1-based)
/// lives in bit i-1.
class OccupationVector {
 public:
  OccupationVector(int m, std::uint64_t bits);

  /// Parses "1010" (leftmost character is mode 1).
  static OccupationVector from_string(std::string_view occ);

  int modes() const { return m_; }
  std::uint64_t bits() const { return bits_; }
  bool occupied(int mode) const;
  int particle_number() const;
  /// Number of occupied modes strictly left of `mode`.
  int occupied_before(int mode) const;
  std::string to_string() const;

  friend bool operator==(const OccupationVector&, const OccupationVector&) = default;

 private:
  int m_;
  std::uint64_t bits_;
};

/// Sparse state vector over the Fock basis of the m-mode algebra with
/// statistical parameter phi. The basis vector for occupation x is the
/// product of creation operators in increasing mode order applied to the
/// vacuum. Values are immutable; every operation returns a new state.
class AnyonState {
 public:
  using Amplitudes = std::map<std::uint64_t, Complex>;

  /// The zero vector.
  AnyonState(int m, double phi);
  AnyonState(int m, double phi, Amplitudes amplitudes);

  int modes() const { return m_; }
  double phi() const { return phi_; }
  const Amplitudes& amplitudes() const { return amplitudes_; }

  Complex amplitude(std::uint64_t bits) const;
  Complex amplitude(const OccupationVector& occ) const;

  double norm_squared() const;
  bool is_normalized(double tol = kNormTolerance) const;
  bool is_zero() const { return amplitudes_.empty(); }
  AnyonState normalized() const;
  /// Same amplitude table tagged with a different statistical parameter.
  AnyonState with_phi(double phi) const;

  /// Particle number when every component shares it.
  std::optional<int> definite_particle_number() const;

  AnyonState operator+(const AnyonState& other) const;
  AnyonState operator-(const AnyonState& other) const;
  AnyonState operator*(Complex scale) const;
  friend AnyonState operator*(Complex scale, const AnyonState& s) { return s * scale; }

  /// Largest absolute amplitude difference; states must share m and phi.
  double max_abs_diff(const AnyonState& other) const;

 private:
  void prune();
  void check_compatible(const AnyonState& other) const;

  int m_;
  double phi_;
  Amplitudes amplitudes_;
};

AnyonState vacuum(int m, double phi);
AnyonState basis_state(const OccupationVector& occ, double phi);

/// Phase picked up when a creation operator for mode i passes n_before
/// occupied modes to its left.
Complex reorder_phase(double phi, int n_before, int exchange_sign = kExchangeSign);

AnyonState apply_create(const AnyonState& state, int mode);
AnyonState apply_annihilate(const AnyonState& state, int mode);
AnyonState apply_number(const AnyonState& state, int mode);

Complex inner_product(const AnyonState& a, const AnyonState& b);

namespace detail {
/// Ladder primitives with an explicit sign, used by the convention audit.
AnyonState apply_create(const AnyonState& state, int mode, int exchange_sign);
AnyonState apply_annihilate(const AnyonState& state, int mode, int exchange_sign);
void check_mode(int m, int mode);
}  // namespace detail

}  // namespace anyonsim
