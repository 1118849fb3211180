#include "anyonsim/operator_expr.hpp"

#include <bit>
#include <cmath>

#include "anyonsim/errors.hpp"

namespace anyonsim {

namespace {

double string_weight(const std::vector<double>& weights, int mode) {
  return weights.empty() ? 0.0 : weights[mode - 1];
}

std::vector<double> add_strings(const std::vector<double>& a, const std::vector<double>& b, int m) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  std::vector<double> out(m);
  for (int k = 0; k < m; ++k) out[k] = a[k] + b[k];
  return out;
}

void check_term(const LadderTerm& term, int m) {
  for (const auto& f : term.factors) detail::check_mode(m, f.mode);
  if (!term.number_string.empty() && static_cast<int>(term.number_string.size()) != m) {
    throw PreconditionError("number string length must equal the mode count");
  }
}

}  // namespace

std::optional<std::pair<std::uint64_t, Complex>> LadderTerm::act(std::uint64_t bits, double phi,
                                                                 int exchange_sign) const {
  Complex amp = coefficient;
  if (!number_string.empty()) {
    double angle = 0.0;
    for (std::size_t k = 0; k < number_string.size(); ++k) {
      if ((bits >> k) & 1U) angle += number_string[k];
    }
    amp *= std::polar(1.0, angle);
  }
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    const std::uint64_t bit = std::uint64_t{1} << (it->mode - 1);
    const int before = std::popcount(bits & (bit - 1));
    if (it->kind == LadderKind::kCreate) {
      if (bits & bit) return std::nullopt;
      amp *= reorder_phase(phi, before, exchange_sign);
      bits |= bit;
    } else {
      if (!(bits & bit)) return std::nullopt;
      amp *= std::conj(reorder_phase(phi, before, exchange_sign));
      bits &= ~bit;
    }
  }
  return std::make_pair(bits, amp);
}

OperatorExpr::OperatorExpr(int m, double phi) : m_(m), phi_(phi) {
  if (m < 1 || m > kMaxModes) throw PreconditionError("mode count must be in [1, 64]");
}

OperatorExpr::OperatorExpr(int m, double phi, std::vector<LadderTerm> terms)
    : OperatorExpr(m, phi) {
  for (const auto& t : terms) check_term(t, m);
  terms_ = std::move(terms);
}

OperatorExpr OperatorExpr::identity(int m, double phi) {
  return OperatorExpr(m, phi, {LadderTerm{}});
}

OperatorExpr OperatorExpr::create(int m, double phi, int mode) {
  return OperatorExpr(m, phi, {LadderTerm{Complex(1.0), {{mode, LadderKind::kCreate}}, {}}});
}

OperatorExpr OperatorExpr::annihilate(int m, double phi, int mode) {
  return OperatorExpr(m, phi, {LadderTerm{Complex(1.0), {{mode, LadderKind::kAnnihilate}}, {}}});
}

OperatorExpr OperatorExpr::number(int m, double phi, int mode) {
  return create(m, phi, mode) * annihilate(m, phi, mode);
}

OperatorExpr OperatorExpr::number_string(int m, double phi, std::vector<double> weights) {
  return OperatorExpr(m, phi, {LadderTerm{Complex(1.0), {}, std::move(weights)}});
}

void OperatorExpr::check_compatible(const OperatorExpr& other) const {
  if (m_ != other.m_) throw PreconditionError("operators act on different mode counts");
  if (phi_ != other.phi_) throw PreconditionError("operators belong to different algebras");
}

OperatorExpr OperatorExpr::operator+(const OperatorExpr& other) const {
  check_compatible(other);
  std::vector<LadderTerm> terms = terms_;
  terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
  return OperatorExpr(m_, phi_, std::move(terms));
}

OperatorExpr OperatorExpr::operator-(const OperatorExpr& other) const {
  return *this + other * Complex(-1.0);
}

OperatorExpr OperatorExpr::operator*(const OperatorExpr& other) const {
  check_compatible(other);
  std::vector<LadderTerm> terms;
  terms.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) terms.push_back(multiply_terms(a, b, m_));
  }
  return OperatorExpr(m_, phi_, std::move(terms));
}

OperatorExpr OperatorExpr::operator*(Complex scale) const {
  std::vector<LadderTerm> terms = terms_;
  for (auto& t : terms) t.coefficient *= scale;
  return OperatorExpr(m_, phi_, std::move(terms));
}

OperatorExpr OperatorExpr::adjoint() const {
  std::vector<LadderTerm> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) {
    // (c F_0 ... F_{n-1} D)^+ = conj(c) D^+ F_{n-1}^+ ... F_0^+
    LadderTerm left{std::conj(t.coefficient), {}, {}};
    if (!t.number_string.empty()) {
      left.number_string.resize(t.number_string.size());
      for (std::size_t k = 0; k < t.number_string.size(); ++k) {
        left.number_string[k] = -t.number_string[k];
      }
    }
    LadderTerm right;
    for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it) {
      right.factors.push_back({it->mode, it->kind == LadderKind::kCreate ? LadderKind::kAnnihilate
                                                                         : LadderKind::kCreate});
    }
    terms.push_back(multiply_terms(left, right, m_));
  }
  return OperatorExpr(m_, phi_, std::move(terms));
}

OperatorExpr OperatorExpr::with_phi(double phi) const { return OperatorExpr(m_, phi, terms_); }

LadderTerm multiply_terms(const LadderTerm& left, const LadderTerm& right, int m) {
  LadderTerm out;
  out.coefficient = left.coefficient * right.coefficient;
  out.factors = left.factors;
  double angle = 0.0;
  for (const auto& f : right.factors) {
    // exp(i w n_j) a_j^+ = e^{i w_j} a_j^+ exp(i w n_j), and conversely for a_j.
    const double w = string_weight(left.number_string, f.mode);
    angle += (f.kind == LadderKind::kCreate) ? w : -w;
    out.factors.push_back(f);
  }
  if (angle != 0.0) out.coefficient *= std::polar(1.0, angle);
  out.number_string = add_strings(left.number_string, right.number_string, m);
  return out;
}

namespace detail {

AnyonState apply_operator_expr(const AnyonState& state, const OperatorExpr& op, int exchange_sign) {
  if (state.modes() != op.modes()) throw PreconditionError("operator and state mode counts differ");
  if (state.phi() != op.phi()) throw PreconditionError("operator and state statistics differ");
  AnyonState::Amplitudes out;
  for (const auto& [bits, amp] : state.amplitudes()) {
    for (const auto& term : op.terms()) {
      if (auto r = term.act(bits, state.phi(), exchange_sign)) out[r->first] += amp * r->second;
    }
  }
  return AnyonState(state.modes(), state.phi(), std::move(out));
}

}  // namespace detail

AnyonState apply_operator_expr(const AnyonState& state, const OperatorExpr& op) {
  return detail::apply_operator_expr(state, op, kExchangeSign);
}

}  // namespace anyonsim
