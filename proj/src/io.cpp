#include "anyonsim/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "anyonsim/errors.hpp"

namespace anyonsim {

using nlohmann::json;

namespace {

template <typename T>
T required(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad field '") + key + "': " + e.what());
  }
}

void require_number(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key) || !doc.at(key).is_number()) {
    throw ParseError(std::string("field '") + key + "' must be a number");
  }
}

int read_modes(const json& doc) {
  if (!doc.is_object() || !doc.contains("m") || !doc.at("m").is_number_integer()) {
    throw ParseError("field 'm' must be an integer");
  }
  const int m = doc.at("m").get<int>();
  if (m < 1 || m > kMaxModes) throw ParseError("mode count out of range");
  return m;
}

}  // namespace

json state_to_json(const AnyonState& state) {
  json amps = json::array();
  for (const auto& [bits, amp] : state.amplitudes()) {
    amps.push_back({{"occ", OccupationVector(state.modes(), bits).to_string()},
                    {"re", amp.real()},
                    {"im", amp.imag()}});
  }
  return {{"m", state.modes()}, {"phi", state.phi()}, {"amplitudes", amps}};
}

AnyonState state_from_json(const json& doc) {
  const int m = read_modes(doc);
  require_number(doc, "phi");
  const double phi = doc.at("phi").get<double>();
  if (!doc.contains("amplitudes") || !doc.at("amplitudes").is_array()) {
    throw ParseError("field 'amplitudes' must be an array");
  }
  AnyonState::Amplitudes amps;
  for (const auto& entry : doc.at("amplitudes")) {
    const auto occ_text = required<std::string>(entry, "occ");
    if (static_cast<int>(occ_text.size()) != m) throw ParseError("occupation '" + occ_text + "' has wrong length");
    require_number(entry, "re");
    const double im = entry.contains("im") ? required<double>(entry, "im") : 0.0;
    std::uint64_t bits = 0;
    try {
      bits = OccupationVector::from_string(occ_text).bits();
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
    amps[bits] += Complex(entry.at("re").get<double>(), im);
  }
  return AnyonState(m, phi, std::move(amps));
}

json circuit_to_json(const Circuit& circuit) {
  json gates = json::array();
  for (const auto& g : circuit.gates) {
    json entry = {{"kind", gate_kind_name(g.kind)}, {"i", g.i}};
    if (g.is_two_mode()) entry["j"] = g.j;
    if (g.kind != GateKind::kFSwap) entry["theta"] = g.theta;
    gates.push_back(entry);
  }
  return {{"m", circuit.m}, {"phi", circuit.phi}, {"gates", gates}};
}

Circuit circuit_from_json(const json& doc) {
  Circuit c{read_modes(doc), 0.0, {}};
  require_number(doc, "phi");
  c.phi = doc.at("phi").get<double>();
  if (!doc.contains("gates") || !doc.at("gates").is_array()) throw ParseError("field 'gates' must be an array");
  for (const auto& entry : doc.at("gates")) {
    GateElement g{GateKind::kPhaseShift, 0};
    try {
      g.kind = gate_kind_from_name(required<std::string>(entry, "kind"));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
    g.i = required<int>(entry, "i");
    if (g.is_two_mode()) g.j = required<int>(entry, "j");
    if (g.kind != GateKind::kFSwap) {
      require_number(entry, "theta");
      g.theta = entry.at("theta").get<double>();
    }
    c.gates.push_back(g);
  }
  return c;
}

json slater_to_json(const SlaterDecomposition& sd) {
  const Matrix basis = sd.mode_basis();
  json rows = json::array();
  for (Eigen::Index r = 0; r < basis.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
      row.push_back({{"re", basis(r, c).real()}, {"im", basis(r, c).imag()}});
    }
    rows.push_back(row);
  }
  return {{"z", sd.z}, {"rank", sd.rank}, {"modeBasis", rows}};
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

std::string format_real(double x) {
  if (x == 0.0) x = 0.0;  // drop negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace anyonsim
