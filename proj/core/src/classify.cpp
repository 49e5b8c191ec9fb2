#include "sshqed/classify.hpp"

#include <algorithm>
#include <cmath>

#include "sshqed/errors.hpp"

namespace sshqed {

const char* to_string(StateLabel label) noexcept {
  switch (label) {
    case StateLabel::Bulk: return "bulk";
    case StateLabel::TopologicalEdge: return "topological";
    case StateLabel::NontopologicalEdge: return "nontopological";
    case StateLabel::BoundState: return "bound";
  }
  return "bulk";
}

StateLabel state_label_from_string(const std::string& s) {
  if (s == "bulk") return StateLabel::Bulk;
  if (s == "topological") return StateLabel::TopologicalEdge;
  if (s == "nontopological") return StateLabel::NontopologicalEdge;
  if (s == "bound") return StateLabel::BoundState;
  throw std::invalid_argument("unknown state label: " + s);
}

std::size_t LabelCounts::of(StateLabel label) const noexcept {
  switch (label) {
    case StateLabel::Bulk: return bulk;
    case StateLabel::TopologicalEdge: return topological;
    case StateLabel::NontopologicalEdge: return nontopological;
    case StateLabel::BoundState: return bound;
  }
  return 0;
}

std::vector<StateClassification> EdgeReport::with_label(StateLabel label) const {
  std::vector<StateClassification> out;
  for (const auto& s : states)
    if (s.label == label) out.push_back(s);
  return out;
}

double ipr(std::span<const double> psi) {
  double norm2 = 0.0;
  double p4 = 0.0;
  for (double x : psi) {
    const double w = x * x;
    norm2 += w;
    p4 += w * w;
  }
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-8) throw NotNormalized("ipr: vector is not unit-norm");
  return p4;
}

bool ChainContext::in_gap(double energy) const {
  return std::abs(energy) < edges.inner - config.gap_margin * edges.outer;
}

bool ChainContext::out_of_band(double energy) const {
  return std::abs(energy) > edges.outer * (1.0 + config.out_of_band_margin);
}

ChainContext make_context(const EffectiveChain& chain, const Spectrum* spectrum,
                          ClassifierConfig config) {
  ChainContext ctx;
  ctx.n_sites = chain.n_sites;
  ctx.onsite.assign(chain.n_sites, 0.0);
  for (const auto& [site, value] : chain.potentials) ctx.onsite.at(site - 1) = value;
  ctx.edges = chain_band_edges(chain);
  ctx.config = config;
  for (std::size_t s = 1; s <= ctx.n_sites; ++s)
    if (std::abs(ctx.onsite[s - 1]) > ctx.edges.outer) ctx.cuts.insert(s);
  if (spectrum != nullptr) {
    for (std::size_t m = 0; m < spectrum->size(); ++m) {
      if (!ctx.out_of_band(spectrum->energies[m])) continue;
      const std::size_t c = localization_center(spectrum->vector(m));
      if (ctx.onsite[c - 1] != 0.0) ctx.cuts.insert(c);
    }
  }
  return ctx;
}

namespace {

StateLabel in_gap_label(std::size_t center, const ChainContext& ctx) {
  if (ctx.cuts.contains(center)) return StateLabel::BoundState;
  // Segment of non-cut sites containing center.
  std::size_t lo = center;
  while (lo > 1 && !ctx.cuts.contains(lo - 1)) --lo;
  std::size_t hi = center;
  while (hi < ctx.n_sites && !ctx.cuts.contains(hi + 1)) ++hi;
  if (hi == lo) return StateLabel::BoundState;
  const std::size_t w = ctx.config.edge_window;
  if (center - lo < w || hi - center < w) return StateLabel::TopologicalEdge;
  return StateLabel::BoundState;
}

}  // namespace

StateClassification classify_state(double energy, std::span<const double> psi,
                                   const ChainContext& ctx, std::size_t index) {
  if (psi.size() != ctx.n_sites) throw LengthMismatch("classify_state: vector length != N");
  StateClassification out;
  out.index = index;
  out.energy = energy;
  out.ipr = ipr(psi);
  out.center = localization_center(psi);

  if (ctx.out_of_band(energy)) {
    const bool on_potential = ctx.onsite[out.center - 1] != 0.0;
    const bool terminus = out.center == 1 || out.center == ctx.n_sites;
    out.label = on_potential && terminus ? StateLabel::NontopologicalEdge : StateLabel::BoundState;
  } else if (out.ipr < ctx.config.tau_loc) {
    out.label = StateLabel::Bulk;
  } else if (ctx.in_gap(energy)) {
    out.label = in_gap_label(out.center, ctx);
  } else {
    out.label = StateLabel::Bulk;
  }
  return out;
}

StateClassification classify_state(double energy, std::span<const double> psi,
                                   const BandEdges& edges, const EffectiveChain& chain,
                                   ClassifierConfig config) {
  ChainContext ctx = make_context(chain, nullptr, config);
  ctx.edges = edges;
  ctx.cuts.clear();
  for (std::size_t s = 1; s <= ctx.n_sites; ++s)
    if (std::abs(ctx.onsite[s - 1]) > edges.outer) ctx.cuts.insert(s);
  return classify_state(energy, psi, ctx);
}

EdgeReport classify_spectrum(const Spectrum& spectrum, const EffectiveChain& chain,
                             ClassifierConfig config) {
  if (spectrum.size() != chain.n_sites)
    throw LengthMismatch("classify_spectrum: spectrum size != N");
  const ChainContext ctx = make_context(chain, &spectrum, config);
  EdgeReport report;
  report.gap = ctx.edges;
  report.cuts = ctx.cuts;
  report.states.reserve(spectrum.size());
  for (std::size_t m = 0; m < spectrum.size(); ++m) {
    auto s = classify_state(spectrum.energies[m], spectrum.vector(m), ctx, m + 1);
    switch (s.label) {
      case StateLabel::Bulk: ++report.counts.bulk; break;
      case StateLabel::TopologicalEdge: ++report.counts.topological; break;
      case StateLabel::NontopologicalEdge: ++report.counts.nontopological; break;
      case StateLabel::BoundState: ++report.counts.bound; break;
    }
    report.states.push_back(s);
  }
  return report;
}

IngapScan ingap_level_exists_over_theta(std::size_t n_sites, double V1,
                                        std::span<const double> theta_grid,
                                        ClassifierConfig config) {
  IngapScan scan;
  scan.exists_everywhere = !theta_grid.empty();
  Potentials pots;
  if (V1 != 0.0) pots[1] = V1;
  for (double theta : theta_grid) {
    const EffectiveChain chain = chain_from_theta(n_sites, {theta}, pots);
    const Spectrum spec = eigendecompose(chain);
    const EdgeReport report = classify_spectrum(spec, chain, config);
    IngapWitness row{theta, std::nullopt, std::nullopt};
    for (const auto& s : report.states) {
      if (s.label != StateLabel::TopologicalEdge) continue;
      if (!row.energy || std::abs(s.energy) < std::abs(*row.energy)) {
        row.index = s.index;
        row.energy = s.energy;
      }
    }
    if (!row.index) scan.exists_everywhere = false;
    scan.witnesses.push_back(row);
  }
  return scan;
}

}  // namespace sshqed
