// classify.hpp: localization diagnostics and eigenstate labels.

#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "sshqed/model.hpp"
#include "sshqed/spectra.hpp"

namespace sshqed {

enum class StateLabel { Bulk, TopologicalEdge, NontopologicalEdge, BoundState };

const char* to_string(StateLabel label) noexcept;
StateLabel state_label_from_string(const std::string& s);

struct ClassifierConfig {
  double tau_loc{0.05};           // ipr below this is extended
  double gap_margin{1e-3};        // δ as a fraction of the band top
  std::size_t edge_window{2};     // sites counted as a segment end
  double out_of_band_margin{1e-9};  // relative slack above the band top
};

struct StateClassification {
  std::size_t index{0};  // 1-based rank in the ascending spectrum
  double energy{0.0};
  StateLabel label{StateLabel::Bulk};
  std::size_t center{0};  // 1-based site of max |ψ|²
  double ipr{0.0};

  bool operator==(const StateClassification&) const = default;
};

struct LabelCounts {
  std::size_t bulk{0};
  std::size_t topological{0};
  std::size_t nontopological{0};
  std::size_t bound{0};

  std::size_t total() const noexcept { return bulk + topological + nontopological + bound; }
  std::size_t of(StateLabel label) const noexcept;
  bool operator==(const LabelCounts&) const = default;
};

struct EdgeReport {
  std::vector<StateClassification> states;
  BandEdges gap;
  LabelCounts counts;
  std::set<std::size_t> cuts;  // sites treated as decoupling cuts

  std::vector<StateClassification> with_label(StateLabel label) const;
  bool operator==(const EdgeReport&) const = default;
};

// Σ ψ_j⁴. Throws NotNormalized when | ‖ψ‖ − 1 | > 1e−8.
double ipr(std::span<const double> psi);

// Everything classify_state needs to know about the chain beyond one state.
struct ChainContext {
  std::size_t n_sites{0};
  std::vector<double> onsite;  // potential per site, 0-based storage
  BandEdges edges;
  std::set<std::size_t> cuts;
  ClassifierConfig config;

  bool in_gap(double energy) const;
  bool out_of_band(double energy) const;
};

// Cuts are sites with |V| above the band top. When a spectrum is supplied,
// potential-carrying sites on which an out-of-band state is centered are
// cuts as well.
ChainContext make_context(const EffectiveChain& chain, const Spectrum* spectrum = nullptr,
                          ClassifierConfig config = {});

// Label one eigenstate. index is carried through verbatim.
StateClassification classify_state(double energy, std::span<const double> psi,
                                   const ChainContext& ctx, std::size_t index = 0);

// Convenience form with caller-chosen band edges and static cuts only.
StateClassification classify_state(double energy, std::span<const double> psi,
                                   const BandEdges& edges, const EffectiveChain& chain,
                                   ClassifierConfig config = {});

EdgeReport classify_spectrum(const Spectrum& spectrum, const EffectiveChain& chain,
                             ClassifierConfig config = {});

struct IngapWitness {
  double theta{0.0};
  std::optional<std::size_t> index;  // lowest-|E| in-gap TopologicalEdge state
  std::optional<double> energy;
};

struct IngapScan {
  bool exists_everywhere{false};
  std::vector<IngapWitness> witnesses;  // one row per grid θ
};

// Whether an in-gap TopologicalEdge level survives at every grid θ for a
// θ-chain with potential V1 on site 1.
IngapScan ingap_level_exists_over_theta(std::size_t n_sites, double V1,
                                        std::span<const double> theta_grid,
                                        ClassifierConfig config = {});

}  // namespace sshqed
