#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "anyonsim/fock.hpp"

namespace anyonsim {

enum class LadderKind { kCreate, kAnnihilate };

struct LadderFactor {
  int mode;  // 1-based
  LadderKind kind;

  friend bool operator==(const LadderFactor&, const LadderFactor&) = default;
};

/// coefficient * factors[0] * factors[1] * ... * exp(i sum_k w_k n_k).
///
/// The diagonal number string sits to the right of every ladder factor, so
/// on a basis state it is evaluated first. `number_string` is either empty
/// (all weights zero) or holds one weight per mode.
struct LadderTerm {
  Complex coefficient{1.0};
  std::vector<LadderFactor> factors;
  std::vector<double> number_string;

  /// Acts on a single basis component; nullopt when the term annihilates it.
  std::optional<std::pair<std::uint64_t, Complex>> act(std::uint64_t bits, double phi,
                                                       int exchange_sign = kExchangeSign) const;
};

/// Sum of ladder terms, an element of the m-mode algebra at parameter phi.
class OperatorExpr {
 public:
  OperatorExpr(int m, double phi);
  OperatorExpr(int m, double phi, std::vector<LadderTerm> terms);

  static OperatorExpr identity(int m, double phi);
  static OperatorExpr create(int m, double phi, int mode);
  static OperatorExpr annihilate(int m, double phi, int mode);
  static OperatorExpr number(int m, double phi, int mode);
  /// exp(i sum_k w_k n_k) as a single diagonal term.
  static OperatorExpr number_string(int m, double phi, std::vector<double> weights);

  int modes() const { return m_; }
  double phi() const { return phi_; }
  const std::vector<LadderTerm>& terms() const { return terms_; }

  OperatorExpr operator+(const OperatorExpr& other) const;
  OperatorExpr operator-(const OperatorExpr& other) const;
  OperatorExpr operator*(const OperatorExpr& other) const;
  OperatorExpr operator*(Complex scale) const;
  friend OperatorExpr operator*(Complex scale, const OperatorExpr& op) { return op * scale; }

  OperatorExpr adjoint() const;
  /// Same terms read in another statistics sector (no transmutation).
  OperatorExpr with_phi(double phi) const;

 private:
  void check_compatible(const OperatorExpr& other) const;

  int m_;
  double phi_;
  std::vector<LadderTerm> terms_;
};

/// Multiplies two normalized terms, commuting the left diagonal string
/// through the right ladder factors.
LadderTerm multiply_terms(const LadderTerm& left, const LadderTerm& right, int m);

AnyonState apply_operator_expr(const AnyonState& state, const OperatorExpr& op);

namespace detail {
AnyonState apply_operator_expr(const AnyonState& state, const OperatorExpr& op, int exchange_sign);
}

}  // namespace anyonsim
