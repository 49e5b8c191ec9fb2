#include <numbers>

#include "sshqed_cli/cli.hpp"

namespace sshqed::cli {

namespace {

constexpr double kPi = std::numbers::pi;

RunParams base(std::size_t n) {
  RunParams p;
  p.n = n;
  return p;
}

RunParams theta_sweep(std::size_t n, Potentials pots) {
  RunParams p = base(n);
  p.potentials = std::move(pots);
  p.theta_grid = 201;
  return p;
}

RunParams point(std::size_t n, double theta, Potentials pots) {
  RunParams p = base(n);
  p.potentials = std::move(pots);
  p.theta = theta;
  return p;
}

// Bulk-site pair (V cos φ on site a, V sin φ on site b).
Potentials pair(std::size_t a, std::size_t b, double V, double phi) {
  const auto [va, vb] = bilateral_potentials(V, phi);
  return {{a, va}, {b, vb}};
}

std::string tag(double x) {
  std::string s = io::format_number(x);
  for (char& c : s)
    if (c == '.') c = 'p';
  return s;
}

}  // namespace

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names{"fig2a", "fig2c", "fig3", "fig4", "fig5",
                                              "fig6",  "fig7",  "fig8", "fig9"};
  return names;
}

std::vector<RunSpec> expand_figure(const std::string& name, const OutputSpec& out) {
  std::vector<RunSpec> runs;
  auto add = [&](Command c, RunParams p, const std::string& stem, const std::string& title) {
    runs.push_back(make_run(c, std::move(p), out, name + "_" + stem, title));
  };

  if (name == "fig2a") {
    for (double v1 : {0.25, 1.0, 2.0})
      add(Command::sweep, theta_sweep(100, {{1, v1}}), "V1_" + tag(v1), "Unilateral spectrum, V1 = " + io::format_number(v1));
    add(Command::spectrum, point(100, kPi, {{1, 0.25}}), "states_V1_0p25_theta_pi", "Edge states, V1 = 0.25, theta = pi");
    add(Command::spectrum, point(100, 0.1 * kPi, {{1, 2.0}}), "states_V1_2_theta_0p1pi", "Edge states, V1 = 2, theta = 0.1pi");
    add(Command::spectrum, point(100, kPi, {{1, 2.0}}), "states_V1_2_theta_pi", "Edge states, V1 = 2, theta = pi");
  } else if (name == "fig2c") {
    RunParams p = base(100);
    p.v_grid = 201;
    p.theta_grid = 201;
    p.v_max = 4.0;
    add(Command::phase_diagram, p, "phase", "Unilateral phase diagram, N = 100");
  } else if (name == "fig3") {
    add(Command::sweep, theta_sweep(100, {{1, 4.0}}), "N100", "V1 = 4, N = 100");
    add(Command::sweep, theta_sweep(99, {{1, 4.0}}), "N99", "V1 = 4, N = 99");
  } else if (name == "fig4") {
    for (double k : {0.125, 0.25, 0.75})
      add(Command::sweep, theta_sweep(100, pair(1, 100, 0.5, k * kPi)), "phi_" + tag(k) + "pi",
          "V = 0.5, phi = " + io::format_number(k) + "pi");
    add(Command::spectrum, point(100, kPi, pair(1, 100, 0.5, 0.25 * kPi)), "states_theta_pi",
        "Edge states, V = 0.5, phi = 0.25pi, theta = pi");
    add(Command::spectrum, point(100, 0.1, pair(1, 100, 0.5, 0.25 * kPi)), "states_theta_0p1",
        "Edge states, V = 0.5, phi = 0.25pi, theta = 0.1");
  } else if (name == "fig5") {
    for (int k = 1; k <= 16; ++k) {
      const double phi = k * kPi / 8.0;
      add(Command::sweep, theta_sweep(100, pair(1, 100, 2.5, phi)), "phi_" + std::to_string(k) + "pi8",
          "V = 2.5, phi = " + std::to_string(k) + "pi/8");
    }
    RunParams inv = base(100);
    inv.V = 2.5;
    inv.phi_grid = 401;
    inv.theta = 0.01 * kPi;
    add(Command::inversion, inv, "inversion", "Band inversion, V = 2.5, theta = 0.01pi");
    add(Command::spectrum, point(100, 0.01 * kPi, pair(1, 100, 2.5, kPi / 8.0)), "states",
        "Edge states, V = 2.5, phi = pi/8, theta = 0.01pi");
  } else if (name == "fig6") {
    RunParams p = base(100);
    p.V = 2.5;
    p.phi_grid = 201;
    p.theta_grid = 201;
    add(Command::phase_diagram, p, "phase", "Bilateral phase diagram, V = 2.5, N = 100");
  } else if (name == "fig7") {
    const struct {
      std::size_t n, a;
    } cases[] = {{100, 50}, {101, 51}};
    for (const auto& c : cases) {
      const std::string id = "N" + std::to_string(c.n);
      const std::string what = "V = 2.5 on site " + std::to_string(c.a) + ", N = " + std::to_string(c.n);
      add(Command::sweep, theta_sweep(c.n, pair(c.a, c.a + 1, 2.5, 0.0)), id, what);
      add(Command::spectrum, point(c.n, kPi, pair(c.a, c.a + 1, 2.5, 0.0)), id + "_states",
          "Edge states, " + what + ", theta = pi");
    }
  } else if (name == "fig8") {
    const struct {
      std::size_t n, a, b;
      double phi_over_pi;
    } cases[] = {{100, 50, 51, 0.25}, {101, 50, 52, 0.25}, {101, 50, 52, 0.75}};
    for (const auto& c : cases) {
      const std::string id = "N" + std::to_string(c.n) + "_phi_" + tag(c.phi_over_pi) + "pi";
      const std::string what = "sites " + std::to_string(c.a) + ", " + std::to_string(c.b) + ", N = " +
                               std::to_string(c.n) + ", phi = " + io::format_number(c.phi_over_pi) + "pi";
      const Potentials pots = pair(c.a, c.b, 2.5, c.phi_over_pi * kPi);
      add(Command::sweep, theta_sweep(c.n, pots), id, "V = 2.5 on " + what);
      add(Command::spectrum, point(c.n, kPi, pots), id + "_states", "Edge states, " + what + ", theta = pi");
    }
  } else if (name == "fig9") {
    for (OmegaTarget t : {OmegaTarget::nontopological, OmegaTarget::topological}) {
      RunParams p = point(100, 0.25 * kPi, {{1, 4.0}});
      p.kappa = 0.05;
      p.drive_site = 1;
      p.omega_target = t;
      const std::string which = t == OmegaTarget::topological ? "topological" : "nontopological";
      add(Command::response, p, which, "Drive at site 1 tuned to the " + which + " edge state");
    }
  } else {
    std::string known;
    for (const auto& n : figure_names()) known += (known.empty() ? "" : ", ") + n;
    throw UsageError("reproduce: unknown figure '" + name + "' (known: " + known + ")");
  }
  return runs;
}

}  // namespace sshqed::cli
