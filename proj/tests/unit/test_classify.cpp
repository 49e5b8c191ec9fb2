#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "generators.hpp"
#include "sshqed/classify.hpp"
#include "sshqed/errors.hpp"
#include "sshqed/sweep.hpp"

using namespace sshqed;
constexpr double pi = std::numbers::pi;

namespace {

EdgeReport classify(const EffectiveChain& c) { return classify_spectrum(eigendecompose(c), c); }

std::set<std::size_t> centers(const EdgeReport& r, StateLabel label) {
  std::set<std::size_t> out;
  for (const auto& s : r.with_label(label)) out.insert(s.center);
  return out;
}

}  // namespace

TEST(Ipr, Examples) {
  std::vector<double> e1(10, 0.0);
  e1[0] = 1.0;
  EXPECT_DOUBLE_EQ(ipr(e1), 1.0);
  EXPECT_NEAR(ipr(std::vector<double>(100, 0.1)), 0.01, 1e-15);
}

// Geometric profile ψ_j ∝ r^j: Σψ⁴ / (Σψ²)² → (1−r²)²/(1−r⁴).
TEST(Ipr, ExponentialProfileClosedForm) {
  const double r = 0.5;
  std::vector<double> psi(50);
  double norm = 0;
  for (std::size_t j = 0; j < psi.size(); ++j) {
    psi[j] = std::pow(r, static_cast<double>(j + 1));
    norm += psi[j] * psi[j];
  }
  for (double& x : psi) x /= std::sqrt(norm);
  EXPECT_NEAR(ipr(psi), (1 - r * r) * (1 - r * r) / (1 - std::pow(r, 4)), 1e-6);
}

TEST(Ipr, RejectsUnnormalized) {
  EXPECT_THROW(ipr(std::vector<double>{1.0, 1.0}), NotNormalized);
  EXPECT_NO_THROW(ipr(std::vector<double>{1.0 + 5e-9}));
}

TEST(Ipr, BoundsOnRandomUnitVectors) {
  testkit::Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = testkit::uniform_size(rng, 1, 100);
    std::vector<double> v(n);
    double norm = 0;
    for (double& x : v) {
      x = testkit::uniform(rng, -1, 1);
      norm += x * x;
    }
    for (double& x : v) x /= std::sqrt(norm);
    const double p = ipr(v);
    EXPECT_GE(p, 1.0 / static_cast<double>(n) - 1e-12);
    EXPECT_LE(p, 1.0 + 1e-12);
  }
}

TEST(ClassifyState, ZeroEnergyEndState) {
  const auto chain = chain_from_theta(10, {pi}, {});
  std::vector<double> psi(10, 0.0);
  psi[0] = 0.95;
  psi[2] = std::sqrt(1 - 0.95 * 0.95);
  const auto s = classify_state(0.0, psi, BandEdges{1.0, 2.0}, chain);
  EXPECT_EQ(s.label, StateLabel::TopologicalEdge);
  EXPECT_EQ(s.center, 1u);
}

TEST(ClassifyState, ExtendedStateIsBulk) {
  const auto chain = chain_from_theta(100, {pi}, {});
  const auto s = classify_state(0.0, std::vector<double>(100, 0.1), BandEdges{1.0, 2.0}, chain);
  EXPECT_EQ(s.label, StateLabel::Bulk);
}

TEST(ClassifyState, EndPotentialSplitsOffNontopologicalLevel) {
  const auto chain = chain_from_theta(100, {0.1 * pi}, {{1, 2.0}});
  const auto r = classify(chain);
  const auto nontopo = r.with_label(StateLabel::NontopologicalEdge);
  ASSERT_EQ(nontopo.size(), 1u);
  EXPECT_EQ(nontopo[0].center, 1u);
  EXPECT_EQ(nontopo[0].index, 100u);
  EXPECT_GT(nontopo[0].energy, r.gap.outer);
}

TEST(ClassifyState, InteriorOutOfBandStateIsBound) {
  const auto r = classify(chain_from_theta(100, {pi}, {{50, 2.5}}));
  EXPECT_EQ(centers(r, StateLabel::BoundState).count(50), 1u);
  EXPECT_TRUE(r.with_label(StateLabel::NontopologicalEdge).empty());
  EXPECT_TRUE(r.cuts.contains(50));
}

TEST(ClassifySpectrum, BareTopologicalPhase) {
  const auto r = classify(chain_from_theta(100, {pi}, {}));
  const auto topo = r.with_label(StateLabel::TopologicalEdge);
  ASSERT_EQ(topo.size(), 2u);
  for (const auto& s : topo) {
    EXPECT_LT(std::abs(s.energy), 1e-6);
    EXPECT_GT(s.ipr, 0.3);
  }
  EXPECT_EQ(r.counts.bulk, 98u);
  EXPECT_EQ(centers(r, StateLabel::TopologicalEdge), (std::set<std::size_t>{1, 100}));
}

TEST(ClassifySpectrum, BareTrivialPhase) {
  const auto r = classify(chain_from_theta(100, {0.1 * pi}, {}));
  EXPECT_EQ(r.counts.bulk, 100u);
}

TEST(ClassifySpectrum, StrongPotentialDimer) {
  EffectiveChain c;
  c.n_sites = 2;
  c.hoppings = {1.0};
  c.potentials[1] = 10.0;
  const auto spec = eigendecompose(c);
  // Exact 2×2 eigenpair: E = 5 ± √26.
  EXPECT_NEAR(spec.energies[1], 5 + std::sqrt(26.0), 1e-12);
  const auto r = classify_spectrum(spec, c);
  EXPECT_EQ(r.states[1].label, StateLabel::NontopologicalEdge);
  EXPECT_EQ(r.states[1].center, 1u);
  EXPECT_EQ(r.counts.nontopological, 1u);
  EXPECT_EQ(r.counts.total(), 2u);
}

TEST(ClassifySpectrum, CountsSumToN) {
  testkit::Rng rng(32);
  for (int i = 0; i < 100; ++i) {
    const auto c = testkit::random_chain(rng, 2, 60);
    const auto r = classify(c);
    EXPECT_EQ(r.counts.total(), c.n_sites);
    for (std::size_t k = 0; k < r.states.size(); ++k) {
      EXPECT_EQ(r.states[k].index, k + 1);
      const bool in_gap = std::abs(r.states[k].energy) <= r.gap.outer * (1 + 1e-9);
      if (r.states[k].label != StateLabel::Bulk && in_gap) {
        EXPECT_GE(r.states[k].ipr, 0.05);
      }
    }
  }
}

TEST(ClassifySpectrum, MirrorSymmetry) {
  testkit::Rng rng(33);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = testkit::uniform_size(rng, 4, 80);
    Potentials p{{1, testkit::uniform(rng, -4, 4)}};
    if (testkit::coin(rng)) p[n] = testkit::uniform(rng, -4, 4);
    const auto c = chain_from_theta(n, {testkit::uniform(rng, 0, 2 * pi)}, p);
    const auto a = classify(c);
    const auto b = classify(c.reversed());
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_NEAR(a.states[k].energy, b.states[k].energy, 1e-10);
    }
    std::multiset<std::pair<int, std::size_t>> la, lb;
    for (const auto& s : a.states)
      if (s.label != StateLabel::Bulk) la.insert({static_cast<int>(s.label), s.center});
    for (const auto& s : b.states)
      if (s.label != StateLabel::Bulk) lb.insert({static_cast<int>(s.label), n + 1 - s.center});
    EXPECT_EQ(la, lb) << "trial " << i;
  }
}

TEST(ClassifySpectrum, NegativePotentialMirrorsSplitOffLevel) {
  for (double th : {0.1 * pi, 0.6 * pi, pi}) {
    const auto up = classify(chain_from_theta(60, {th}, {{1, 3.0}}));
    const auto down = classify(chain_from_theta(60, {th}, {{1, -3.0}}));
    EXPECT_EQ(up.counts, down.counts);
    const auto a = up.with_label(StateLabel::NontopologicalEdge);
    const auto b = down.with_label(StateLabel::NontopologicalEdge);
    ASSERT_EQ(a.size(), 1u);
    ASSERT_EQ(b.size(), 1u);
    EXPECT_NEAR(a[0].energy, -b[0].energy, 1e-10);
    EXPECT_EQ(a[0].index, 60u);
    EXPECT_EQ(b[0].index, 1u);
  }
}

TEST(ClassifySpectrum, DecouplingLimitMatchesShortenedChain) {
  for (double th : {0.0, 0.3 * pi, pi, 1.7 * pi}) {
    const auto c = chain_from_theta(40, {th}, {{1, 1e3}});
    const auto spec = eigendecompose(c);
    const auto r = classify_spectrum(spec, c);
    EffectiveChain rest;
    rest.n_sites = 39;
    rest.hoppings.assign(c.hoppings.begin() + 1, c.hoppings.end());
    const auto sub = eigendecompose(rest).energies;
    std::vector<double> kept;
    for (const auto& s : r.states)
      if (!(s.center == 1 && s.energy > r.gap.outer)) kept.push_back(s.energy);
    ASSERT_EQ(kept.size(), sub.size());
    for (std::size_t m = 0; m < sub.size(); ++m) EXPECT_NEAR(kept[m], sub[m], 5e-3);
  }
}

TEST(ClassifySpectrum, IsolatedSiteBetweenCutsIsBound) {
  const auto [v1, v2] = bilateral_potentials(2.5, 0.25 * pi);
  const auto r = classify(chain_from_theta(101, {pi}, {{50, v1}, {52, v2}}));
  EXPECT_TRUE(r.cuts.contains(50));
  EXPECT_TRUE(r.cuts.contains(52));
  const auto bound = centers(r, StateLabel::BoundState);
  EXPECT_TRUE(bound.contains(51));
  EXPECT_TRUE(bound.contains(50));
  EXPECT_TRUE(bound.contains(52));
}

TEST(ChainContext, StaticCutsOnlyWithoutSpectrum) {
  const auto c = chain_from_theta(20, {pi}, {{5, 1.9}, {10, 2.5}});
  const auto ctx = make_context(c);
  EXPECT_EQ(ctx.cuts, (std::set<std::size_t>{10}));
  const auto spec = eigendecompose(c);
  const auto ctx2 = make_context(c, &spec);
  EXPECT_TRUE(ctx2.cuts.contains(10));
}

TEST(ClassifyState, LengthMismatch) {
  const auto c = chain_from_theta(4, {pi}, {});
  EXPECT_THROW(classify_state(0.0, std::vector<double>{1.0}, BandEdges{1, 2}, c), LengthMismatch);
}

TEST(Labels, RoundTripNames) {
  for (auto l : {StateLabel::Bulk, StateLabel::TopologicalEdge, StateLabel::NontopologicalEdge,
                 StateLabel::BoundState})
    EXPECT_EQ(state_label_from_string(to_string(l)), l);
  EXPECT_THROW(state_label_from_string("edge"), std::invalid_argument);
}

TEST(IngapScan, StrongEndPotentialEvenChain) {
  const auto grid = linspace(0, 2 * pi, 41);
  const auto scan = ingap_level_exists_over_theta(100, 4.0, linspace(0.6 * pi, 1.4 * pi, 9));
  EXPECT_TRUE(scan.exists_everywhere);
  const auto bare = ingap_level_exists_over_theta(100, 0.0, grid);
  EXPECT_FALSE(bare.exists_everywhere);
  for (const auto& w : bare.witnesses) {
    const double t = w.theta / pi;
    if (t > 0.6 && t < 1.4) {
      EXPECT_TRUE(w.index.has_value());
    }
    if (t < 0.4 || t > 1.6) {
      EXPECT_FALSE(w.index.has_value());
    }
  }
  EXPECT_EQ(bare.witnesses.size(), grid.size());
}

TEST(IngapScan, OddChainHasNoLevelSpanningAllTheta) {
  const auto scan = ingap_level_exists_over_theta(99, 4.0, linspace(0, 2 * pi, 41));
  EXPECT_FALSE(scan.exists_everywhere);
  for (const auto& w : scan.witnesses)
    if (w.theta > 0.6 * pi && w.theta < 1.4 * pi) {
      EXPECT_FALSE(w.index.has_value());
    }
}
