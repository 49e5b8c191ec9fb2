#include "sshqed_cli/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"

#include "sshqed/classify.hpp"
#include "sshqed/parallel.hpp"
#include "sshqed/response.hpp"
#include "sshqed/spectra.hpp"
#include "sshqed/sweep.hpp"
#include "sshqed/tracking.hpp"
#include "sshqed_cli/checksum.hpp"
#include "sshqed_cli/svg.hpp"

namespace sshqed::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxSites = 10000;
constexpr std::size_t kMaxGrid = 100000;
constexpr const char* kVersion = "0.1.0";

double parse_real(const std::string& text, const std::string& flag) {
  double v = 0.0;
  const char* b = text.data();
  const char* e = b + text.size();
  if (b != e && *b == '+') ++b;
  const auto r = std::from_chars(b, e, v);
  if (r.ec != std::errc{} || r.ptr != e || !std::isfinite(v))
    throw UsageError(flag + ": expected a finite number, got '" + text + "'");
  return v;
}

std::size_t parse_count(const std::string& text, const std::string& flag) {
  std::size_t v = 0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc{} || r.ptr != text.data() + text.size())
    throw UsageError(flag + ": expected a positive integer, got '" + text + "'");
  return v;
}

std::string fmt(double x) { return io::format_number(x); }

std::string angle_text(double a) {
  const double k = a / kPi;
  const double r = std::round(k * 1e6) / 1e6;
  if (std::abs(k - r) < 1e-12) return fmt(r) + "pi";
  return fmt(a);
}

std::string default_stem(Command c) {
  std::string s = to_string(c);
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

void check_grid(const std::optional<std::size_t>& g, const char* flag) {
  if (g && (*g < 2 || *g > kMaxGrid))
    throw UsageError(std::string(flag) + ": grid size must be in 2.." + std::to_string(kMaxGrid) + ", got " +
                     std::to_string(*g));
}

std::string describe(const RunSpec& r) {
  const RunParams& p = r.params;
  std::ostringstream os;
  os << "N=" << p.n;
  if (p.theta) os << ", theta=" << angle_text(*p.theta);
  if (p.V) os << ", V=" << fmt(*p.V);
  if (p.phi) os << ", phi=" << angle_text(*p.phi);
  if (p.V1) os << ", V1=" << fmt(*p.V1);
  if (p.V2) os << ", V2=" << fmt(*p.V2);
  for (const auto& [site, v] : p.potentials) os << ", V(" << site << ")=" << fmt(v);
  return os.str();
}

}  // namespace

const char* to_string(Command c) noexcept {
  switch (c) {
    case Command::spectrum: return "spectrum";
    case Command::sweep: return "sweep";
    case Command::phase_diagram: return "phase-diagram";
    case Command::inversion: return "inversion";
    case Command::response: return "response";
    case Command::map_physical: return "map-physical";
  }
  return "?";
}

const char* to_string(Mode m) noexcept {
  switch (m) {
    case Mode::point: return "point";
    case Mode::theta_sweep: return "theta-sweep";
    case Mode::phi_sweep: return "phi-sweep";
    case Mode::unilateral_diagram: return "unilateral-diagram";
    case Mode::bilateral_diagram: return "bilateral-diagram";
    case Mode::inversion: return "inversion";
    case Mode::response: return "response";
    case Mode::map_physical: return "map-physical";
  }
  return "?";
}

Command command_from_string(const std::string& s) {
  for (Command c : {Command::spectrum, Command::sweep, Command::phase_diagram, Command::inversion,
                    Command::response, Command::map_physical})
    if (s == to_string(c)) return c;
  throw UsageError("unknown command '" + s + "'");
}

double parse_angle(const std::string& text, const std::string& flag) {
  std::string t = text;
  bool pi = false;
  if (t.size() >= 2 && t.compare(t.size() - 2, 2, "pi") == 0) {
    pi = true;
    t.resize(t.size() - 2);
    if (t.empty() || t == "+") t = "1";
    if (t == "-") t = "-1";
  }
  const double v = parse_real(t, flag);
  return pi ? v * kPi : v;
}

Potentials RunParams::site_potentials() const {
  Potentials out;
  if (V1) out[1] += *V1;
  if (V2) out[n] += *V2;
  if (V && phi) {
    const auto [a, b] = bilateral_potentials(*V, *phi);
    out[1] += a;
    out[n] += b;
  }
  for (const auto& [site, v] : potentials) out[site] += v;
  return out;
}

RunSpec make_run(Command command, RunParams p, OutputSpec output, std::string stem, std::string title) {
  RunSpec r;
  r.command = command;
  r.output = std::move(output);
  r.stem = stem.empty() ? default_stem(command) : std::move(stem);

  if (command != Command::map_physical && (p.n < 2 || p.n > kMaxSites))
    throw UsageError("--n: number of sites must be in 2.." + std::to_string(kMaxSites) + ", got " +
                     std::to_string(p.n));
  for (const auto& [site, v] : p.potentials) {
    if (site < 1 || site > p.n)
      throw UsageError("--potential: site " + std::to_string(site) + " outside 1.." + std::to_string(p.n));
    if (!std::isfinite(v)) throw UsageError("--potential: value must be finite");
  }
  check_grid(p.theta_grid, "--theta-grid");
  check_grid(p.phi_grid, "--phi-grid");
  check_grid(p.v_grid, "--v-grid");
  if ((p.V1 || p.V2) && p.V && p.phi) throw UsageError("--v1/--v2: cannot be combined with --v and --phi");
  if (p.V && !p.phi && (command == Command::spectrum || command == Command::response ||
                        (command == Command::sweep && !p.phi_grid)))
    throw UsageError("--v: the bilateral budget needs --phi");
  if (p.phi && !p.V) throw UsageError("--phi: the bilateral angle needs --v");

  auto require = [](bool ok, const char* msg) {
    if (!ok) throw UsageError(msg);
  };
  auto open_only = [&](const char* what) {
    if (p.boundary != Boundary::open) throw UsageError(std::string("--boundary: ") + what + " needs an open chain");
  };
  auto no_end_potentials = [&](const char* what) {
    if (p.V1 || p.V2 || !p.potentials.empty())
      throw UsageError(std::string("--v1/--v2/--potential: not used by ") + what);
  };

  switch (command) {
    case Command::spectrum:
      if (p.theta_grid) {
        require(!p.theta, "--theta: conflicts with --theta-grid");
        r.mode = Mode::theta_sweep;
      } else {
        require(p.theta.has_value(), "--theta: required for a single spectrum (or give --theta-grid)");
        r.mode = Mode::point;
      }
      break;
    case Command::sweep:
      if (p.phi_grid) {
        require(p.theta.has_value(), "--theta: required for a phi sweep");
        require(p.V.has_value(), "--v: required for a phi sweep");
        require(!p.phi, "--phi: conflicts with --phi-grid");
        no_end_potentials("a phi sweep");
        open_only("a phi sweep");
        r.mode = Mode::phi_sweep;
      } else {
        require(!p.theta, "--theta: a theta sweep covers [0, 2pi]; use --theta-grid for its size");
        if (!p.theta_grid) p.theta_grid = 201;
        r.mode = Mode::theta_sweep;
      }
      break;
    case Command::phase_diagram:
      open_only("a phase diagram");
      no_end_potentials("a phase diagram");
      if (!p.theta_grid) p.theta_grid = 201;
      if (p.phi_grid) {
        require(p.V.has_value(), "--v: required for a bilateral phase diagram");
        require(*p.V > 0.0, "--v: potential budget must be positive");
        r.mode = Mode::bilateral_diagram;
      } else {
        require(!p.V, "--v: only used with --phi-grid (bilateral diagram)");
        if (!p.v_grid) p.v_grid = 201;
        require(std::isfinite(p.v_max) && p.v_max > 0.0, "--v-max: must be positive");
        r.mode = Mode::unilateral_diagram;
      }
      break;
    case Command::inversion:
      open_only("band-inversion tracking");
      no_end_potentials("band-inversion tracking");
      if (!p.phi_grid) p.phi_grid = 401;
      if (!p.V) p.V = 2.5;
      if (!p.theta) p.theta = 0.01 * kPi;
      require(*p.V > 0.0, "--v: potential budget must be positive");
      r.mode = Mode::inversion;
      break;
    case Command::response:
      require(p.theta.has_value(), "--theta: required for a response");
      require(p.omega.has_value() || p.omega_target != OmegaTarget::value,
              "--omega: required (a frequency, 'nontopological' or 'topological')");
      require(std::isfinite(p.kappa) && p.kappa > 0.0, "--kappa: linewidth must be positive");
      if (p.drive_site < 1 || p.drive_site > p.n)
        throw UsageError("--drive-site: site " + std::to_string(p.drive_site) + " outside 1.." +
                         std::to_string(p.n));
      r.mode = Mode::response;
      break;
    case Command::map_physical:
      require(p.params_file.has_value(), "--params: required (JSON file with the circuit parameters)");
      if (!std::filesystem::is_regular_file(*p.params_file))
        throw UsageError("--params: cannot read '" + *p.params_file + "'");
      require(std::isfinite(p.cancel_tol) && p.cancel_tol >= 0.0, "--cancel-tol: must be nonnegative");
      r.mode = Mode::map_physical;
      break;
  }

  r.params = std::move(p);
  if (title.empty()) {
    title = std::string(to_string(r.command));
    if (r.command != Command::map_physical) title += " (" + describe(r) + ")";
  }
  r.title = std::move(title);
  return r;
}

Invocation parse_args(const std::vector<std::string>& args) {
  CLI::App app{"sshqed: SSH chains in circuit-QED lattices with qubit-assisted onsite potentials"};
  app.name("sshqed");
  app.footer(
      "Commands:\n"
      "  spectrum        levels, labels and state profiles at one theta (or a theta sweep)\n"
      "  sweep           spectrum versus theta, or versus phi with --phi-grid\n"
      "  phase-diagram   unilateral (V1, theta) diagram, or bilateral (phi, theta) with --phi-grid\n"
      "  inversion       band-inversion trace of the four edge levels versus phi\n"
      "  response        driven steady-state photon numbers\n"
      "  map-physical    effective chain from circuit parameters (--params file.json)\n"
      "  reproduce FIG   regenerate a figure: fig2a fig2c fig3 fig4 fig5 fig6 fig7 fig8 fig9\n"
      "\nAngles accept a 'pi' suffix, e.g. --theta 0.25pi.\n"
      "SSHQED_THREADS sets the number of worker threads.");

  std::string command, figure;
  std::string n, theta, phi, V, V1, V2, boundary, theta_grid, phi_grid, v_grid, v_max, kappa, drive_site,
      omega, format, out, params, cancel_tol;
  std::vector<std::string> potentials;
  bool no_zero_point = false;

  app.add_option("command", command, "command to run");
  app.add_option("figure", figure, "figure name for reproduce");
  auto* o_n = app.add_option("--n", n, "number of sites (default 100)");
  auto* o_theta = app.add_option("--theta", theta, "dimerization angle");
  auto* o_phi = app.add_option("--phi", phi, "bilateral angle: V cos(phi) on site 1, V sin(phi) on site N");
  auto* o_v = app.add_option("--v", V, "bilateral potential budget V");
  auto* o_v1 = app.add_option("--v1", V1, "potential on site 1");
  auto* o_v2 = app.add_option("--v2", V2, "potential on site N");
  auto* o_pot = app.add_option("--potential", potentials, "onsite potential site=value (repeatable)")
                    ->allow_extra_args(false);
  auto* o_boundary = app.add_option("--boundary", boundary, "open|periodic (default open)");
  auto* o_tg = app.add_option("--theta-grid", theta_grid, "theta grid size over [0, 2pi]");
  auto* o_pg = app.add_option("--phi-grid", phi_grid, "phi grid size");
  auto* o_vg = app.add_option("--v-grid", v_grid, "V1 grid size over [0, v-max]");
  auto* o_vmax = app.add_option("--v-max", v_max, "upper end of the V1 grid (default 4)");
  auto* o_kappa = app.add_option("--kappa", kappa, "resonator linewidth (default 0.05)");
  auto* o_drive = app.add_option("--drive-site", drive_site, "driven resonator (default 1)");
  auto* o_omega = app.add_option("--omega", omega, "drive frequency, or nontopological|topological");
  auto* o_params = app.add_option("--params", params, "circuit parameter file (map-physical)");
  auto* o_nzp = app.add_flag("--no-zero-point", no_zero_point, "keep the common resonator detuning");
  auto* o_ctol = app.add_option("--cancel-tol", cancel_tol, "cancellation tolerance (default 1e-9)");
  app.add_option("--format", format, "comma list of csv,json,svg (default all)");
  app.add_option("--out", out, "output directory (default .)");

  Invocation inv;
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    inv.help = app.help();
    return inv;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  OutputSpec output;
  if (!out.empty()) output.dir = out;
  if (!format.empty()) {
    output.csv = output.json = output.svg = false;
    std::stringstream ss(format);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item == "csv") output.csv = true;
      else if (item == "json") output.json = true;
      else if (item == "svg") output.svg = true;
      else throw UsageError("--format: unknown format '" + item + "' (expected csv, json, svg)");
    }
  }
  inv.output = output;

  if (command.empty()) throw UsageError("missing command (try --help)");

  if (command == "reproduce") {
    for (const CLI::Option* o : {o_n, o_theta, o_phi, o_v, o_v1, o_v2, o_pot, o_boundary, o_tg, o_pg, o_vg,
                                 o_vmax, o_kappa, o_drive, o_omega, o_params, o_nzp, o_ctol})
      if (o->count() > 0) throw UsageError(o->get_name() + ": not accepted by reproduce");
    if (figure.empty()) throw UsageError("reproduce: missing figure name");
    inv.figure = figure;
    inv.runs = expand_figure(figure, output);
    return inv;
  }
  if (!figure.empty()) throw UsageError("unexpected argument '" + figure + "'");

  const Command cmd = command_from_string(command);

  using Set = std::vector<const CLI::Option*>;
  Set allowed;
  switch (cmd) {
    case Command::spectrum: allowed = {o_n, o_theta, o_phi, o_v, o_v1, o_v2, o_pot, o_boundary, o_tg}; break;
    case Command::sweep: allowed = {o_n, o_theta, o_phi, o_v, o_v1, o_v2, o_pot, o_boundary, o_tg, o_pg}; break;
    case Command::phase_diagram: allowed = {o_n, o_v, o_tg, o_pg, o_vg, o_vmax}; break;
    case Command::inversion: allowed = {o_n, o_v, o_theta, o_pg}; break;
    case Command::response:
      allowed = {o_n, o_theta, o_phi, o_v, o_v1, o_v2, o_pot, o_boundary, o_kappa, o_drive, o_omega};
      break;
    case Command::map_physical: allowed = {o_params, o_boundary, o_nzp, o_ctol}; break;
  }
  for (const CLI::Option* o : {o_n, o_theta, o_phi, o_v, o_v1, o_v2, o_pot, o_boundary, o_tg, o_pg, o_vg, o_vmax,
                               o_kappa, o_drive, o_omega, o_params, o_nzp, o_ctol})
    if (o->count() > 0 && std::find(allowed.begin(), allowed.end(), o) == allowed.end())
      throw UsageError(o->get_name() + ": not used by '" + command + "'");

  RunParams p;
  if (o_n->count()) p.n = parse_count(n, "--n");
  if (o_theta->count()) p.theta = parse_angle(theta, "--theta");
  if (o_phi->count()) p.phi = parse_angle(phi, "--phi");
  if (o_v->count()) p.V = parse_real(V, "--v");
  if (o_v1->count()) p.V1 = parse_real(V1, "--v1");
  if (o_v2->count()) p.V2 = parse_real(V2, "--v2");
  for (const auto& entry : potentials) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos) throw UsageError("--potential: expected site=value, got '" + entry + "'");
    const std::size_t site = parse_count(entry.substr(0, eq), "--potential");
    if (p.potentials.count(site)) throw UsageError("--potential: site " + std::to_string(site) + " given twice");
    p.potentials[site] = parse_real(entry.substr(eq + 1), "--potential");
  }
  if (o_boundary->count()) {
    try {
      p.boundary = boundary_from_string(boundary);
    } catch (const std::exception&) {
      throw UsageError("--boundary: expected open or periodic, got '" + boundary + "'");
    }
  }
  if (o_tg->count()) p.theta_grid = parse_count(theta_grid, "--theta-grid");
  if (o_pg->count()) p.phi_grid = parse_count(phi_grid, "--phi-grid");
  if (o_vg->count()) p.v_grid = parse_count(v_grid, "--v-grid");
  if (o_vmax->count()) p.v_max = parse_real(v_max, "--v-max");
  if (o_kappa->count()) p.kappa = parse_real(kappa, "--kappa");
  if (o_drive->count()) p.drive_site = parse_count(drive_site, "--drive-site");
  if (o_omega->count()) {
    if (omega == "nontopological") p.omega_target = OmegaTarget::nontopological;
    else if (omega == "topological") p.omega_target = OmegaTarget::topological;
    else p.omega = parse_real(omega, "--omega");
  }
  if (o_params->count()) p.params_file = params;
  p.zero_point = !no_zero_point;
  if (o_ctol->count()) p.cancel_tol = parse_real(cancel_tol, "--cancel-tol");

  inv.runs.push_back(make_run(cmd, std::move(p), output));
  return inv;
}

io::json params_json(const RunParams& p) {
  io::json j;
  j["n"] = p.n;
  auto opt = [&](const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
  };
  opt("theta", p.theta);
  opt("phi", p.phi);
  opt("V", p.V);
  opt("V1", p.V1);
  opt("V2", p.V2);
  io::json pots = io::json::array();
  for (const auto& [site, v] : p.potentials) pots.push_back({{"site", site}, {"value", v}});
  j["potentials"] = pots;
  j["boundary"] = to_string(p.boundary);
  if (p.theta_grid) j["theta_grid"] = *p.theta_grid;
  if (p.phi_grid) j["phi_grid"] = *p.phi_grid;
  if (p.v_grid) {
    j["v_grid"] = *p.v_grid;
    j["v_max"] = p.v_max;
  }
  j["kappa"] = p.kappa;
  j["drive_site"] = p.drive_site;
  switch (p.omega_target) {
    case OmegaTarget::value:
      if (p.omega) j["omega"] = *p.omega;
      break;
    case OmegaTarget::nontopological: j["omega"] = "nontopological"; break;
    case OmegaTarget::topological: j["omega"] = "topological"; break;
  }
  if (p.params_file) j["params_file"] = *p.params_file;
  j["zero_point"] = p.zero_point;
  return j;
}

namespace {

class Writer {
 public:
  explicit Writer(const OutputSpec& out, std::string stem) : out_(out), stem_(std::move(stem)) {}

  void put(const std::string& suffix, const std::string& content) {
    const std::string name = stem_ + suffix;
    io::write_file(out_.dir / name, content);
    files_.push_back({name, io::sha256_hex(content), content.size()});
  }

  std::vector<WrittenFile> take() { return std::move(files_); }

 private:
  const OutputSpec& out_;
  std::string stem_;
  std::vector<WrittenFile> files_;
};

std::string counts_text(const LabelCounts& c) {
  std::ostringstream os;
  os << c.topological << " topological, " << c.nontopological << " nontopological, " << c.bound << " bound";
  return os.str();
}

std::string chain_csv(const EffectiveChain& c) {
  std::string s = "site,onsite,hopping\n";
  for (std::size_t j = 1; j <= c.n_sites; ++j) {
    s += std::to_string(j) + ',' + io::format_number(c.potential_at(j)) + ',';
    if (j <= c.hoppings.size()) s += io::format_number(c.bond(j));
    s += '\n';
  }
  return s;
}

// Picks the state with the requested label closest to the drive site.
const StateClassification& target_state(const EdgeReport& report, StateLabel label, std::size_t site) {
  const StateClassification* best = nullptr;
  auto dist = [&](const StateClassification& s) { return s.center > site ? s.center - site : site - s.center; };
  for (const auto& s : report.states)
    if (s.label == label && (!best || dist(s) < dist(*best))) best = &s;
  if (!best) throw std::runtime_error(std::string("no ") + to_string(label) + " state to tune the drive to");
  return *best;
}

}  // namespace

RunOutcome execute(const RunSpec& run) {
  const auto t0 = std::chrono::steady_clock::now();
  const RunParams& p = run.params;
  const OutputSpec& out = run.output;
  Writer w(out, run.stem);
  RunOutcome result;

  switch (run.mode) {
    case Mode::point: {
      const EffectiveChain chain = chain_from_theta(p.n, {*p.theta}, p.site_potentials(), p.boundary);
      const Spectrum spec = eigendecompose(chain);
      const EdgeReport report = classify_spectrum(spec, chain);
      if (out.csv) {
        w.put("_levels.csv", io::spectrum_csv(spec));
        w.put("_states.csv", io::states_csv(report));
        w.put("_distributions.csv", io::distributions_csv(spec, report));
      }
      if (out.json) {
        io::json c = io::to_json(chain);
        c["theta"] = *p.theta;
        w.put("_chain.json", io::dump(c));
        w.put("_spectrum.json", io::dump(io::to_json(spec, true)));
        w.put("_states.json", io::dump(io::to_json(report)));
      }
      if (out.svg) w.put("_distributions.svg", svg::render(svg::distribution_chart(spec, report, run.title)));
      result.summary = counts_text(report.counts);
      break;
    }
    case Mode::theta_sweep:
    case Mode::phi_sweep: {
      SpectrumSweep sweep;
      if (run.mode == Mode::theta_sweep) {
        const auto grid = linspace(0.0, 2.0 * kPi, *p.theta_grid);
        sweep = sweep_theta(p.n, p.site_potentials(), grid, p.boundary);
      } else {
        const auto grid = linspace(0.0, 2.0 * kPi, *p.phi_grid);
        sweep = sweep_phi(p.n, *p.theta, *p.V, grid);
      }
      if (out.csv) w.put("_sweep.csv", io::sweep_csv(sweep));
      if (out.json) w.put("_sweep.json", io::dump(io::to_json(sweep)));
      if (out.svg) w.put("_sweep.svg", svg::render(svg::sweep_chart(sweep, run.title)));
      std::size_t top = 0, non = 0;
      for (const auto& pt : sweep.points) {
        top = std::max(top, pt.report.counts.topological);
        non = std::max(non, pt.report.counts.nontopological);
      }
      result.summary = std::to_string(sweep.points.size()) + " points, up to " + std::to_string(top) +
                       " topological and " + std::to_string(non) + " nontopological states";
      break;
    }
    case Mode::unilateral_diagram:
    case Mode::bilateral_diagram: {
      const auto theta_grid = linspace(0.0, 2.0 * kPi, *p.theta_grid);
      PhaseDiagram d;
      if (run.mode == Mode::unilateral_diagram) {
        const auto v_grid = linspace(0.0, p.v_max, *p.v_grid);
        d = phase_diagram_unilateral(v_grid, theta_grid, p.n);
      } else {
        const auto phi_grid = linspace(0.0, kPi, *p.phi_grid);
        d = phase_diagram_bilateral(phi_grid, theta_grid, *p.V, p.n);
      }
      if (out.csv) w.put("_phase.csv", io::phase_csv(d));
      if (out.json) w.put("_phase.json", io::dump(io::to_json(d)));
      if (out.svg)
        w.put("_phase.svg", svg::render(svg::phase_chart(d, run.title, run.mode == Mode::unilateral_diagram)));
      std::array<std::size_t, 3> tally{};
      for (Region r : d.cells) ++tally[static_cast<std::size_t>(r)];
      result.summary = "cells I/II/III: " + std::to_string(tally[0]) + "/" + std::to_string(tally[1]) + "/" +
                       std::to_string(tally[2]);
      break;
    }
    case Mode::inversion: {
      const auto grid = linspace(0.0, 2.0 * kPi, *p.phi_grid);
      const InversionTrace trace = trace_band_inversion(grid, *p.V, p.n, *p.theta);
      if (out.csv) w.put("_inversion.csv", io::inversion_csv(trace));
      if (out.json) w.put("_inversion.json", io::dump(io::to_json(trace)));
      if (out.svg) w.put("_inversion.svg", svg::render(svg::inversion_chart(trace, run.title)));
      std::ostringstream os;
      for (LevelRole r : kAllRoles) {
        os << to_string(r) << ':';
        for (std::size_t idx : trace.index_sequence(r)) os << ' ' << idx;
        os << "; ";
      }
      result.summary = os.str();
      break;
    }
    case Mode::response: {
      const EffectiveChain chain = chain_from_theta(p.n, {*p.theta}, p.site_potentials(), p.boundary);
      const Spectrum spec = eigendecompose(chain);
      DriveSpec drive;
      drive.site = p.drive_site;
      drive.kappa = p.kappa;
      std::string tuned;
      if (p.omega_target == OmegaTarget::value) {
        drive.omega = *p.omega;
      } else {
        const EdgeReport report = classify_spectrum(spec, chain);
        const StateLabel label = p.omega_target == OmegaTarget::topological ? StateLabel::TopologicalEdge
                                                                            : StateLabel::NontopologicalEdge;
        const auto& s = target_state(report, label, p.drive_site);
        drive.omega = s.energy;
        tuned = std::string(", tuned to level ") + std::to_string(s.index) + " (" + to_string(label) + ")";
      }
      const ResponseProfile profile = steady_state_response(spec, drive);
      if (out.csv) w.put("_response.csv", io::response_csv(profile));
      if (out.json) w.put("_response.json", io::dump(io::to_json(profile, drive)));
      if (out.svg) {
        const std::string panel = "drive at site " + std::to_string(drive.site) + ", omega = " +
                                  io::format_number(drive.omega);
        w.put("_response.svg", svg::render(svg::response_chart({profile}, {panel}, run.title)));
      }
      result.summary = "omega=" + io::format_number(drive.omega) + tuned + ", peak at site " +
                       std::to_string(profile.peak_site);
      break;
    }
    case Mode::map_physical: {
      const PhysicalParams phys = io::physical_from_json(io::parse(io::read_file(*p.params_file)));
      const EffectiveChain chain = effective_from_physical(phys, p.boundary, {p.zero_point});
      const auto violations = check_cancellation(phys, p.cancel_tol);
      if (out.csv) w.put("_chain.csv", chain_csv(chain));
      if (out.json) {
        io::json j{{"schema", io::kSchemaVersion}, {"kind", "physical_map"}};
        j["physical"] = io::to_json(phys);
        j["zero_point_subtracted"] = p.zero_point;
        j["chain"] = io::to_json(chain);
        j["cancellation_violations"] = violations;
        w.put("_map.json", io::dump(j));
      }
      result.summary = std::to_string(chain.n_sites) + " sites, " + std::to_string(violations.size()) +
                       " interior sites without cancellation";
      break;
    }
  }

  result.files = w.take();
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

io::json run_invocation(const Invocation& inv, std::ostream& log) {
  const auto t0 = std::chrono::steady_clock::now();
  io::json manifest{{"schema", io::kSchemaVersion}, {"kind", "manifest"}, {"tool", "sshqed"}, {"version", kVersion}};
  manifest["figure"] = inv.figure ? io::json(*inv.figure) : io::json(nullptr);
  manifest["threads"] = worker_count();
  io::json runs = io::json::array();
  for (const RunSpec& run : inv.runs) {
    RunOutcome outcome;
    try {
      outcome = execute(run);
    } catch (const std::exception& e) {
      std::string where = "run '" + run.stem + "'";
      if (inv.figure) where = *inv.figure + ": " + where;
      throw std::runtime_error(where + ": " + e.what());
    }
    log << run.stem << ": " << outcome.summary << '\n';
    io::json files = io::json::array();
    for (const auto& f : outcome.files) {
      files.push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
      log << "  wrote " << (run.output.dir / f.path).string() << '\n';
    }
    runs.push_back({{"stem", run.stem},
                    {"command", to_string(run.command)},
                    {"mode", to_string(run.mode)},
                    {"title", run.title},
                    {"params", params_json(run.params)},
                    {"summary", outcome.summary},
                    {"files", files},
                    {"runtime_seconds", outcome.seconds}});
  }
  manifest["runs"] = runs;
  manifest["runtime_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  io::write_file(inv.output.dir / "manifest.json", io::dump(manifest, 2));
  return manifest;
}

int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Invocation inv;
  try {
    inv = parse_args(args);
  } catch (const UsageError& e) {
    err << "sshqed: " << e.what() << "\nRun 'sshqed --help' for usage.\n";
    return 2;
  }
  if (inv.help) {
    out << *inv.help;
    return 0;
  }
  try {
    run_invocation(inv, out);
  } catch (const std::exception& e) {
    err << "sshqed: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace sshqed::cli
