#include "anyonsim/transmutation.hpp"

#include "anyonsim/errors.hpp"

namespace anyonsim {

namespace {

LadderTerm generator_image(const LadderFactor& f, int m, double delta, int exchange_sign) {
  LadderTerm image{Complex(1.0), {f}, {}};
  if (f.mode > 1 && delta != 0.0) {
    const double w = exchange_sign * delta * (f.kind == LadderKind::kAnnihilate ? 1.0 : -1.0);
    image.number_string.assign(m, 0.0);
    for (int k = 1; k < f.mode; ++k) image.number_string[k - 1] = w;
  }
  return image;
}

}  // namespace

TransmutationMap compose(const TransmutationMap& second, const TransmutationMap& first) {
  if (first.phi_target != second.phi_source) {
    throw PreconditionError("transmutation maps do not chain");
  }
  return {first.phi_source, second.phi_target};
}

namespace detail {

OperatorExpr transmute_operator(const OperatorExpr& op, const TransmutationMap& map,
                                int exchange_sign) {
  if (op.phi() != map.phi_source) {
    throw PreconditionError("operator does not belong to the map's source algebra");
  }
  const int m = op.modes();
  const double delta = map.phi_target - map.phi_source;
  std::vector<LadderTerm> terms;
  terms.reserve(op.terms().size());
  for (const auto& term : op.terms()) {
    LadderTerm image{term.coefficient, {}, {}};
    for (const auto& f : term.factors) {
      image = multiply_terms(image, generator_image(f, m, delta, exchange_sign), m);
    }
    // Number operators are fixed points, so the trailing string maps to itself.
    image = multiply_terms(image, LadderTerm{Complex(1.0), {}, term.number_string}, m);
    terms.push_back(std::move(image));
  }
  return OperatorExpr(m, map.phi_target, std::move(terms));
}

}  // namespace detail

OperatorExpr transmute_operator(const OperatorExpr& op, const TransmutationMap& map) {
  return detail::transmute_operator(op, map, kExchangeSign);
}

AnyonState transmute_state(const AnyonState& state, double phi_target) {
  return state.with_phi(phi_target);
}

AnyonState fermionize(const AnyonState& state) { return transmute_state(state, 0.0); }

AnyonState anyonize(const AnyonState& state, double phi) { return transmute_state(state, phi); }

}  // namespace anyonsim
