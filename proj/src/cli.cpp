#include "anyonsim/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <mutex>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "anyonsim/checks.hpp"
#include "anyonsim/entanglement.hpp"
#include "anyonsim/errors.hpp"
#include "anyonsim/fastpath.hpp"
#include "anyonsim/io.hpp"
#include "anyonsim/presets.hpp"

namespace anyonsim::cli {

namespace {

struct Options {
  std::string circuit_path;
  std::string state;  // path or inline JSON
  std::string preset;
  std::string phi_grid = "0:pi:11";
  std::string theta_grid = "0:pi/2:5";
  std::string engine = "dense";
  std::string out_path;
  std::string phi;
  std::string theta = "pi/4";
  double tol = 1e-8;
  bool inject_sign_flip = false;
};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

double parse_real(const std::string& token) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + token + "'");
  }
  if (used != token.size()) throw ParseError("not a number: '" + token + "'");
  return v;
}

nlohmann::json load_json_arg(const std::string& arg) {
  const std::string t = trim(arg);
  if (!t.empty() && t.front() == '{') return parse_json_text(t);
  return read_json_file(t);
}

struct Pipeline {
  AnyonState initial;
  Circuit circuit;
};

// Initial state and circuit with a common phi. A preset without a circuit
// file gets its companion circuit (BS_12(theta) for appendixG, empty else).
Pipeline build_pipeline(const Options& o, bool default_circuit) {
  if (!o.state.empty() && !o.preset.empty()) throw ParseError("--state and --preset are exclusive");
  if (o.state.empty() && o.preset.empty()) throw ParseError("one of --state or --preset is required");

  std::optional<Circuit> circuit;
  if (!o.circuit_path.empty()) circuit = circuit_from_json(read_json_file(o.circuit_path));

  std::optional<double> phi;
  if (!o.phi.empty()) phi = parse_angle(o.phi);

  std::optional<AnyonState> state;
  if (!o.state.empty()) state = state_from_json(load_json_arg(o.state));

  const double resolved = phi ? *phi : circuit ? circuit->phi : state ? state->phi() : 0.0;
  AnyonState initial = state ? *state : preset_state(o.preset, resolved);
  if (phi) initial = initial.with_phi(*phi);

  Circuit c{initial.modes(), initial.phi(), {}};
  if (circuit) {
    c = *circuit;
    if (phi) c.phi = *phi;
  } else if (default_circuit && o.preset == "appendixG") {
    c = appendix_g_circuit(initial.phi(), parse_angle(o.theta));
  }
  if (c.m != initial.modes()) throw PreconditionError("circuit and state mode counts differ");
  if (c.phi != initial.phi()) throw PreconditionError("circuit and state statistics differ (use --phi)");
  c.validate();
  return {initial, c};
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw PreconditionError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

void write_amplitudes(const AnyonState& s, std::ostream& os) {
  std::vector<std::pair<std::string, Complex>> rows;
  for (const auto& [bits, amp] : s.amplitudes()) rows.emplace_back(OccupationVector(s.modes(), bits).to_string(), amp);
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  os << "occ,re,im\n";
  for (const auto& [occ, amp] : rows) os << occ << ',' << format_real(amp.real()) << ',' << format_real(amp.imag()) << '\n';
}

int cmd_run(const Options& o, std::ostream& out, std::ostream& err) {
  const Pipeline p = build_pipeline(o, true);
  AnyonState result = p.initial;
  if (o.engine == "dense") {
    result = run_circuit(p.initial, p.circuit);
  } else if (o.engine == "fastpath") {
    result = run_circuit_fastpath(p.initial, p.circuit);
  } else if (o.engine == "both") {
    result = run_circuit(p.initial, p.circuit);
    if (const auto bad = first_out_of_family_gate(p.circuit)) {
      err << "warning: " << bad->describe() << " is outside the fast-path family; dense engine only\n";
    } else {
      const double diff = result.max_abs_diff(run_circuit_fastpath(p.initial, p.circuit));
      err << "max |dense - fastpath| = " << format_real(diff) << '\n';
      if (diff > 1e-10) throw InvariantError("dense and fast-path engines disagree");
    }
  } else {
    throw ParseError("unknown engine '" + o.engine + "'");
  }
  Output dest(o.out_path, out);
  write_amplitudes(result, dest.stream());
  return kOk;
}

struct ScanRow {
  double phi, theta, s_x, s_y, e_sp;
  int rank;
};

int thread_cap() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ANYONSIM_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, static_cast<unsigned>(cap));
  }
  return static_cast<int>(n);
}

int cmd_entropy_scan(const Options& o, std::ostream& out) {
  Options base = o;
  if (base.state.empty() && base.preset.empty()) base.preset = "appendixG";
  const auto phis = parse_grid(o.phi_grid);
  const auto thetas = parse_grid(o.theta_grid);
  const Pipeline p = build_pipeline(base, false);
  if (p.initial.modes() < 2) throw PreconditionError("entropy scan needs at least two modes");
  if (p.initial.definite_particle_number() != 2) throw PreconditionError("entropy scan needs exactly two particles");

  std::vector<ScanRow> rows(phis.size() * thetas.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < rows.size(); k = next++) {
      try {
        const double phi = phis[k / thetas.size()];
        const double theta = thetas[k % thetas.size()];
        Circuit c = p.circuit;
        c.phi = phi;
        c.gates.push_back(GateElement::beam_splitter(1, 2, theta));
        const AnyonState s = run_circuit(p.initial.with_phi(phi), c).normalized();
        const double sx = von_neumann_entropy(particle_trace_rdm(s, KeptParticle::kX));
        const double sy = von_neumann_entropy(particle_trace_rdm(s, KeptParticle::kY));
        const double esp = minimal_entropy_modes(s).single_particle_entropy;
        rows[k] = {phi, theta, sx, sy, esp, slater_decompose(s, o.tol).rank};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int workers = std::min<int>(thread_cap(), static_cast<int>(rows.size()));
  for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  Output dest(o.out_path, out);
  std::ostream& os = dest.stream();
  os << "phi,theta,S_x,S_y,E_SP,slater_rank\n";
  for (const auto& r : rows) {
    os << format_real(r.phi) << ',' << format_real(r.theta) << ',' << format_real(r.s_x) << ',' << format_real(r.s_y)
       << ',' << format_real(r.e_sp) << ',' << r.rank << '\n';
  }
  return kOk;
}

int cmd_schmidt(const Options& o, std::ostream& out) {
  const Pipeline p = build_pipeline(o, true);
  const AnyonState s = run_circuit(p.initial, p.circuit);
  if (s.definite_particle_number() != 2) throw PreconditionError("Schmidt decomposition needs exactly two particles");
  Output dest(o.out_path, out);
  dest.stream() << slater_to_json(slater_decompose(s, o.tol)).dump(2) << '\n';
  return kOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  checks::CheckOptions co;
  if (o.inject_sign_flip) co.exchange_sign = -kExchangeSign;
  bool ok = true;
  for (const auto& r : checks::run_property_suites(co)) {
    out << r.name << ": " << (r.passed ? "PASS" : "FAIL") << " (max error " << format_real(r.max_error) << ")\n";
    ok = ok && r.passed;
  }
  return ok ? kOk : kInvariantBreach;
}

}  // namespace

double parse_angle(const std::string& raw) {
  const std::string token = trim(raw);
  const auto at = token.find("pi");
  if (at == std::string::npos) return parse_real(token);
  std::string coef = token.substr(0, at);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  double value = std::numbers::pi;
  if (coef == "-") {
    value = -value;
  } else if (!coef.empty() && coef != "+") {
    value *= parse_real(coef);
  }
  const std::string rest = token.substr(at + 2);
  if (!rest.empty()) {
    if (rest.front() != '/') throw ParseError("bad angle '" + token + "'");
    const double den = parse_real(rest.substr(1));
    if (den == 0.0) throw ParseError("bad angle '" + token + "'");
    value /= den;
  }
  return value;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() == 1) return {parse_angle(parts[0])};
  if (parts.size() != 3) throw ParseError("grid must be a:b:n, got '" + text + "'");
  const double a = parse_angle(parts[0]);
  const double b = parse_angle(parts[1]);
  const double nd = parse_real(trim(parts[2]));
  if (nd < 1 || nd != std::floor(nd)) throw ParseError("grid point count must be a positive integer");
  const int n = static_cast<int>(nd);
  if (n == 1) return {a};
  std::vector<double> out;
  for (int k = 0; k < n; ++k) out.push_back(k == n - 1 ? b : a + (b - a) * k / (n - 1));
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulator for one-dimensional fermionic anyons", "anyonsim"};
  app.require_subcommand(1);
  Options o;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--state", o.state, "State JSON file or inline JSON");
    sub->add_option("--preset", o.preset, "Named initial state (appendixG, two-slater)");
    sub->add_option("--circuit", o.circuit_path, "Circuit JSON file");
    sub->add_option("--phi", o.phi, "Statistical parameter (overrides the files)");
    sub->add_option("--out", o.out_path, "Output path (default stdout)");
  };

  auto* run = app.add_subcommand("run", "Evolve a state and print its amplitudes as CSV");
  add_input(run);
  run->add_option("--engine", o.engine, "dense, fastpath or both")->check(CLI::IsMember({"dense", "fastpath", "both"}));
  run->add_option("--theta", o.theta, "BS_12 angle for the appendixG preset without --circuit");

  auto* scan = app.add_subcommand("entropy-scan", "Entropies over a (phi, theta) grid as CSV");
  add_input(scan);
  scan->add_option("--phi-grid", o.phi_grid, "a:b:n");
  scan->add_option("--theta-grid", o.theta_grid, "a:b:n; BS_12(theta) is applied last");
  scan->add_option("--tol", o.tol, "Slater rank tolerance");

  auto* schmidt = app.add_subcommand("schmidt", "Slater decomposition of a two-particle state as JSON");
  add_input(schmidt);
  schmidt->add_option("--theta", o.theta, "BS_12 angle for the appendixG preset without --circuit");
  schmidt->add_option("--tol", o.tol, "Rank tolerance");

  auto* check = app.add_subcommand("check", "Run the property suites");
  check->add_flag("--inject-sign-flip", o.inject_sign_flip)->group("");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (*run) return cmd_run(o, out, err);
    if (*scan) return cmd_entropy_scan(o, out);
    if (*schmidt) return cmd_schmidt(o, out);
    return cmd_check(o, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const FamilyError& e) {
    err << "error: " << e.what() << '\n';
    return kFamilyMismatch;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kPreconditionFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kPreconditionFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvariantBreach;
  }
}

}  // namespace anyonsim::cli
