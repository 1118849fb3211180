#include "anyonsim/fock.hpp"

#include <bit>
#include <cmath>

#include "anyonsim/errors.hpp"

namespace anyonsim {

namespace {

std::uint64_t mode_bit(int mode) { return std::uint64_t{1} << (mode - 1); }

std::uint64_t low_mask(int mode) { return mode_bit(mode) - 1; }

void check_mode_count(int m) {
  if (m < 1 || m > kMaxModes) {
    throw PreconditionError("mode count must be in [1, 64], got " + std::to_string(m));
  }
}

}  // namespace

namespace detail {

void check_mode(int m, int mode) {
  if (mode < 1 || mode > m) {
    throw PreconditionError("mode index " + std::to_string(mode) + " outside [1, " +
                            std::to_string(m) + "]");
  }
}

AnyonState apply_create(const AnyonState& state, int mode, int exchange_sign) {
  check_mode(state.modes(), mode);
  const std::uint64_t bit = mode_bit(mode);
  AnyonState::Amplitudes out;
  for (const auto& [bits, amp] : state.amplitudes()) {
    if (bits & bit) continue;
    const int before = std::popcount(bits & low_mask(mode));
    out.emplace(bits | bit, amp * reorder_phase(state.phi(), before, exchange_sign));
  }
  return AnyonState(state.modes(), state.phi(), std::move(out));
}

AnyonState apply_annihilate(const AnyonState& state, int mode, int exchange_sign) {
  check_mode(state.modes(), mode);
  const std::uint64_t bit = mode_bit(mode);
  AnyonState::Amplitudes out;
  for (const auto& [bits, amp] : state.amplitudes()) {
    if (!(bits & bit)) continue;
    const int before = std::popcount(bits & low_mask(mode));
    out.emplace(bits & ~bit,
                amp * std::conj(reorder_phase(state.phi(), before, exchange_sign)));
  }
  return AnyonState(state.modes(), state.phi(), std::move(out));
}

}  // namespace detail

OccupationVector::OccupationVector(int m, std::uint64_t bits) : m_(m), bits_(bits) {
  check_mode_count(m);
  if (m < kMaxModes && (bits >> m) != 0) {
    throw PreconditionError("occupation bits exceed mode count");
  }
}

OccupationVector OccupationVector::from_string(std::string_view occ) {
  const int m = static_cast<int>(occ.size());
  check_mode_count(m);
  std::uint64_t bits = 0;
  for (int k = 0; k < m; ++k) {
    if (occ[k] == '1') {
      bits |= std::uint64_t{1} << k;
    } else if (occ[k] != '0') {
      throw PreconditionError("occupation string must contain only 0/1: " + std::string(occ));
    }
  }
  return OccupationVector(m, bits);
}

bool OccupationVector::occupied(int mode) const {
  detail::check_mode(m_, mode);
  return (bits_ & mode_bit(mode)) != 0;
}

int OccupationVector::particle_number() const { return std::popcount(bits_); }

int OccupationVector::occupied_before(int mode) const {
  detail::check_mode(m_, mode);
  return std::popcount(bits_ & low_mask(mode));
}

std::string OccupationVector::to_string() const {
  std::string s(m_, '0');
  for (int k = 0; k < m_; ++k) {
    if ((bits_ >> k) & 1U) s[k] = '1';
  }
  return s;
}

AnyonState::AnyonState(int m, double phi) : m_(m), phi_(phi) { check_mode_count(m); }

AnyonState::AnyonState(int m, double phi, Amplitudes amplitudes)
    : m_(m), phi_(phi), amplitudes_(std::move(amplitudes)) {
  check_mode_count(m);
  if (m < kMaxModes) {
    for (const auto& [bits, amp] : amplitudes_) {
      if ((bits >> m) != 0) throw PreconditionError("amplitude key exceeds mode count");
    }
  }
  prune();
}

void AnyonState::prune() {
  std::erase_if(amplitudes_, [](const auto& kv) { return std::abs(kv.second) < kPruneTolerance; });
}

void AnyonState::check_compatible(const AnyonState& other) const {
  if (m_ != other.m_) throw PreconditionError("states have different mode counts");
  if (phi_ != other.phi_) throw PreconditionError("states live in different statistics sectors");
}

Complex AnyonState::amplitude(std::uint64_t bits) const {
  auto it = amplitudes_.find(bits);
  return it == amplitudes_.end() ? Complex{} : it->second;
}

Complex AnyonState::amplitude(const OccupationVector& occ) const {
  if (occ.modes() != m_) throw PreconditionError("occupation vector has wrong mode count");
  return amplitude(occ.bits());
}

double AnyonState::norm_squared() const {
  double s = 0.0;
  for (const auto& [bits, amp] : amplitudes_) s += std::norm(amp);
  return s;
}

bool AnyonState::is_normalized(double tol) const { return std::abs(norm_squared() - 1.0) <= tol; }

AnyonState AnyonState::normalized() const {
  const double n = std::sqrt(norm_squared());
  if (n == 0.0) throw PreconditionError("cannot normalize the zero vector");
  return *this * Complex(1.0 / n);
}

AnyonState AnyonState::with_phi(double phi) const { return AnyonState(m_, phi, amplitudes_); }

std::optional<int> AnyonState::definite_particle_number() const {
  std::optional<int> n;
  for (const auto& [bits, amp] : amplitudes_) {
    const int k = std::popcount(bits);
    if (n && *n != k) return std::nullopt;
    n = k;
  }
  return n;
}

AnyonState AnyonState::operator+(const AnyonState& other) const {
  check_compatible(other);
  Amplitudes out = amplitudes_;
  for (const auto& [bits, amp] : other.amplitudes_) out[bits] += amp;
  return AnyonState(m_, phi_, std::move(out));
}

AnyonState AnyonState::operator-(const AnyonState& other) const {
  return *this + other * Complex(-1.0);
}

AnyonState AnyonState::operator*(Complex scale) const {
  Amplitudes out;
  for (const auto& [bits, amp] : amplitudes_) out.emplace(bits, amp * scale);
  return AnyonState(m_, phi_, std::move(out));
}

double AnyonState::max_abs_diff(const AnyonState& other) const {
  check_compatible(other);
  double d = 0.0;
  for (const auto& [bits, amp] : amplitudes_) d = std::max(d, std::abs(amp - other.amplitude(bits)));
  for (const auto& [bits, amp] : other.amplitudes_) d = std::max(d, std::abs(amp - amplitude(bits)));
  return d;
}

AnyonState vacuum(int m, double phi) { return AnyonState(m, phi, {{0, Complex(1.0)}}); }

AnyonState basis_state(const OccupationVector& occ, double phi) {
  return AnyonState(occ.modes(), phi, {{occ.bits(), Complex(1.0)}});
}

Complex reorder_phase(double phi, int n_before, int exchange_sign) {
  if (n_before == 0) return Complex(1.0);
  const double sign = (n_before % 2 == 0) ? 1.0 : -1.0;
  return sign * std::polar(1.0, n_before * exchange_sign * phi);
}

AnyonState apply_create(const AnyonState& state, int mode) {
  return detail::apply_create(state, mode, kExchangeSign);
}

AnyonState apply_annihilate(const AnyonState& state, int mode) {
  return detail::apply_annihilate(state, mode, kExchangeSign);
}

AnyonState apply_number(const AnyonState& state, int mode) {
  detail::check_mode(state.modes(), mode);
  const std::uint64_t bit = mode_bit(mode);
  AnyonState::Amplitudes out;
  for (const auto& [bits, amp] : state.amplitudes()) {
    if (bits & bit) out.emplace(bits, amp);
  }
  return AnyonState(state.modes(), state.phi(), std::move(out));
}

Complex inner_product(const AnyonState& a, const AnyonState& b) {
  if (a.modes() != b.modes()) throw PreconditionError("inner product of states with different m");
  if (a.phi() != b.phi()) throw PreconditionError("inner product across statistics sectors");
  Complex s{};
  for (const auto& [bits, amp] : a.amplitudes()) s += std::conj(amp) * b.amplitude(bits);
  return s;
}

}  // namespace anyonsim
