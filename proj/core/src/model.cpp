#include "sshqed/model.hpp"

#include <cmath>
#include <string>

#include "sshqed/errors.hpp"

namespace sshqed {

const char* to_string(Boundary b) noexcept {
  return b == Boundary::open ? "open" : "periodic";
}

Boundary boundary_from_string(const std::string& s) {
  if (s == "open") return Boundary::open;
  if (s == "periodic") return Boundary::periodic;
  throw std::invalid_argument("unknown boundary '" + s + "' (expected open|periodic)");
}

PhysicalParams PhysicalParams::from_frequencies(std::size_t n_sites, double omega_c, double omega_d,
                                                double omega_q, double omega_Q,
                                                std::vector<double> g, std::vector<double> G) {
  PhysicalParams p;
  p.n_sites = n_sites;
  p.delta_c = omega_c - omega_d;
  p.delta_q = omega_q - omega_d;
  p.delta_Q = omega_Q - omega_d;
  p.g = std::move(g);
  p.G = std::move(G);
  return p;
}

double EffectiveChain::potential_at(std::size_t site) const {
  auto it = potentials.find(site);
  return it == potentials.end() ? 0.0 : it->second;
}

EffectiveChain EffectiveChain::reversed() const {
  if (boundary != Boundary::open) {
    throw std::invalid_argument("reversed: only open chains have a mirror image");
  }
  EffectiveChain out;
  out.n_sites = n_sites;
  out.boundary = boundary;
  out.hoppings.assign(hoppings.rbegin(), hoppings.rend());
  for (const auto& [site, value] : potentials) out.potentials[n_sites + 1 - site] = value;
  return out;
}

double ThetaSpec::t1() const { return base * (1.0 + 0.5 * std::cos(theta)); }
double ThetaSpec::t2() const { return base * (1.0 - 0.5 * std::cos(theta)); }

void validate(const EffectiveChain& chain) {
  if (chain.n_sites < 1) throw std::invalid_argument("chain must have at least one site");
  const std::size_t bonds = chain.boundary == Boundary::open ? chain.n_sites - 1 : chain.n_sites;
  if (chain.hoppings.size() != bonds) {
    throw LengthMismatch("chain with " + std::to_string(chain.n_sites) + " sites needs " +
                         std::to_string(bonds) + " hoppings, got " +
                         std::to_string(chain.hoppings.size()));
  }
  for (double t : chain.hoppings) {
    if (!std::isfinite(t)) throw std::invalid_argument("hopping is not finite");
  }
  for (const auto& [site, value] : chain.potentials) {
    if (site < 1 || site > chain.n_sites) {
      throw BadSite("potential site " + std::to_string(site) + " outside 1.." +
                    std::to_string(chain.n_sites));
    }
    if (!std::isfinite(value)) throw std::invalid_argument("potential is not finite");
  }
}

namespace {

void check_physical(const PhysicalParams& p) {
  if (p.n_sites < 2) throw std::invalid_argument("physical lattice needs N >= 2");
  if (p.delta_q == 0.0) throw ZeroDetuning("delta_q is zero: dispersive shift g^2/delta_q undefined");
  if (p.delta_Q == 0.0) throw ZeroDetuning("delta_Q is zero: dispersive shift G^2/delta_Q undefined");
  if (p.g.size() < p.n_sites) {
    throw LengthMismatch("g has " + std::to_string(p.g.size()) + " entries, need " +
                         std::to_string(p.n_sites));
  }
  if (p.G.size() < p.n_sites) {
    throw LengthMismatch("G has " + std::to_string(p.G.size()) + " entries, need " +
                         std::to_string(p.n_sites));
  }
}

}  // namespace

EffectiveChain effective_from_physical(const PhysicalParams& p, Boundary boundary,
                                       ZeroPointOption zero_point) {
  check_physical(p);
  const std::size_t n = p.n_sites;
  const double offset = zero_point.subtract ? 0.0 : p.delta_c;

  EffectiveChain chain;
  chain.n_sites = n;
  chain.boundary = boundary;

  const std::size_t bonds = boundary == Boundary::open ? n - 1 : n;
  chain.hoppings.resize(bonds);
  for (std::size_t j = 0; j < bonds; ++j) {
    const double right = p.G[(j + 1) % n];  // G_{N+1} wraps to G_1
    chain.hoppings[j] = -p.G[j] * right / p.delta_Q;
  }

  for (std::size_t s = 0; s < n; ++s) {
    const bool end = boundary == Boundary::open && (s == 0 || s == n - 1);
    const double junction = (end ? 1.0 : 2.0) * p.G[s] * p.G[s] / p.delta_Q;
    const double value = offset - p.g[s] * p.g[s] / p.delta_q - junction;
    if (value != 0.0) chain.potentials[s + 1] = value;
  }
  return chain;
}

std::vector<std::size_t> check_cancellation(const PhysicalParams& p, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("check_cancellation: tol must be positive");
  check_physical(p);
  std::vector<std::size_t> violating;
  for (std::size_t s = 1; s + 1 < p.n_sites; ++s) {
    const double residual = p.g[s] * p.g[s] / p.delta_q + 2.0 * p.G[s] * p.G[s] / p.delta_Q;
    if (std::abs(residual) > tol) violating.push_back(s + 1);
  }
  return violating;
}

EffectiveChain chain_from_theta(std::size_t n_sites, ThetaSpec spec, const Potentials& potentials,
                                Boundary boundary) {
  if (n_sites < 2) throw std::invalid_argument("chain_from_theta: need at least 2 sites");
  EffectiveChain chain;
  chain.n_sites = n_sites;
  chain.boundary = boundary;
  const std::size_t bonds = boundary == Boundary::open ? n_sites - 1 : n_sites;
  const double t1 = spec.t1();
  const double t2 = spec.t2();
  chain.hoppings.resize(bonds);
  for (std::size_t j = 1; j <= bonds; ++j) chain.hoppings[j - 1] = (j % 2 == 1) ? t1 : t2;
  chain.potentials = potentials;
  validate(chain);
  return chain;
}

std::pair<double, double> bilateral_potentials(double V, double phi) {
  return {V * std::cos(phi), V * std::sin(phi)};
}

EffectiveChain bilateral_chain(std::size_t n_sites, double theta, double V, double phi) {
  const auto [v1, v2] = bilateral_potentials(V, phi);
  return chain_from_theta(n_sites, ThetaSpec{theta}, Potentials{{1, v1}, {n_sites, v2}});
}

}  // namespace sshqed
