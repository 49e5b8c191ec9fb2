#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "sshqed/errors.hpp"
#include "sshqed/parallel.hpp"
#include "sshqed/sweep.hpp"
#include "sshqed/tracking.hpp"

using namespace sshqed;
constexpr double pi = std::numbers::pi;

namespace {

double chiral_asymmetry(const std::vector<double>& e) {
  double worst = 0;
  for (std::size_t m = 0; m < e.size(); ++m) worst = std::max(worst, std::abs(e[m] + e[e.size() - 1 - m]));
  return worst;
}

}  // namespace

TEST(Grid, Linspace) {
  const auto g = linspace(0.0, 1.0, 5);
  EXPECT_EQ(g, (std::vector<double>{0, 0.25, 0.5, 0.75, 1.0}));
  EXPECT_EQ(linspace(2.0, 3.0, 1), std::vector<double>{2.0});
  EXPECT_THROW(linspace(0, 1, 0), std::invalid_argument);
}

TEST(Grid, Validation) {
  EXPECT_THROW(validate_grid(std::vector<double>{}, "x"), SweepError);
  EXPECT_THROW(validate_grid(std::vector<double>{0, 0}, "x"), SweepError);
  EXPECT_THROW(validate_grid(std::vector<double>{1, 0}, "x"), SweepError);
  EXPECT_THROW(validate_grid(std::vector<double>{0, NAN}, "x"), SweepError);
  EXPECT_NO_THROW(validate_grid(std::vector<double>{0, 1e-9}, "x"));
}

TEST(SweepTheta, WeakEndPotentialSplitsLeftEdgeLevel) {
  const auto grid = linspace(0, 2 * pi, 201);
  const auto sw = sweep_theta(100, {{1, 0.25}}, grid);
  ASSERT_EQ(sw.points.size(), grid.size());
  double max_split = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    EXPECT_EQ(sw.points[k].parameter, grid[k]);
    EXPECT_EQ(sw.points[k].report.counts.nontopological, 0u);
    const double t = grid[k] / pi;
    if (t >= 0.5 && t <= 1.5) {
      const auto& e = sw.points[k].energies;
      max_split = std::max(max_split, std::abs(e[50] + e[49]));
    }
  }
  EXPECT_GT(max_split, 0.0);
}

TEST(SweepTheta, StrongEndPotentialAlwaysSplitsOff) {
  const auto sw = sweep_theta(100, {{1, 2.0}}, linspace(0, 2 * pi, 41));
  for (const auto& p : sw.points) EXPECT_EQ(p.report.counts.nontopological, 1u) << p.parameter;
}

TEST(SweepTheta, ChiralWithoutPotentials) {
  const auto sw = sweep_theta(100, {}, linspace(0, 2 * pi, 41));
  for (const auto& p : sw.points) EXPECT_LT(chiral_asymmetry(p.energies), 1e-9);
}

TEST(SweepTheta, RejectsOutOfRangeGrid) {
  EXPECT_THROW(sweep_theta(10, {}, std::vector<double>{0, 7.0}), SweepError);
  EXPECT_THROW(sweep_theta(10, {}, std::vector<double>{1, 0.5}), SweepError);
}

TEST(SweepTheta, FailureCarriesParameter) {
  try {
    sweep_parameter("x", std::vector<double>{0.0, 1.0, 2.0}, [](double x) {
      if (x == 1.0) throw std::runtime_error("boom");
      return chain_from_theta(4, {x}, {});
    });
    FAIL() << "expected SweepError";
  } catch (const SweepError& e) {
    EXPECT_EQ(e.parameter(), 1.0);
    EXPECT_NE(std::string(e.what()).find("boom"), std::string::npos);
  }
}

TEST(SweepTheta, ParallelMatchesSerial) {
  const auto grid = linspace(0, 2 * pi, 31);
  ::setenv("SSHQED_THREADS", "1", 1);
  const auto serial = sweep_theta(40, {{1, 1.3}}, grid);
  ::setenv("SSHQED_THREADS", "4", 1);
  const auto parallel = sweep_theta(40, {{1, 1.3}}, grid);
  ::unsetenv("SSHQED_THREADS");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    EXPECT_EQ(serial.points[k].energies, parallel.points[k].energies);
    EXPECT_EQ(serial.points[k].report.states, parallel.points[k].report.states);
  }
}

TEST(Boundary, UnilateralFormula) {
  EXPECT_DOUBLE_EQ(boundary_unilateral(pi), 1.5);
  EXPECT_DOUBLE_EQ(boundary_unilateral(0.0), 0.5);
  EXPECT_NEAR(boundary_unilateral(0.5 * pi), 1.0, 1e-15);
}

TEST(PhaseDiagram, UnilateralExamples) {
  const std::vector<double> V{0.25, 2.0};
  const std::vector<double> th{0.1 * pi, pi};
  const auto d = phase_diagram_unilateral(V, th, 100);
  EXPECT_EQ(d.at(0, 1), Region::I);
  EXPECT_EQ(d.at(0, 0), Region::II);
  EXPECT_EQ(d.at(1, 0), Region::III);
  EXPECT_THROW(phase_diagram_unilateral(std::vector<double>{-1.0}, th, 10), SweepError);
}

TEST(PhaseDiagram, ZeroPotentialColumnIsBareSsh) {
  const auto th = linspace(0, 2 * pi, 41);
  const auto d = phase_diagram_unilateral(std::vector<double>{0.0}, th, 100);
  for (std::size_t k = 0; k < th.size(); ++k) {
    const double t = th[k] / pi;
    if (t > 0.55 && t < 1.45) {
      EXPECT_EQ(d.at(0, k), Region::I) << t;
    }
    if (t < 0.45 || t > 1.55) {
      EXPECT_EQ(d.at(0, k), Region::II) << t;
    }
  }
}

TEST(PhaseDiagram, BilateralExamples) {
  const std::vector<double> phi{0.5 * pi, 0.75 * pi};
  const std::vector<double> th{0.25 * pi, 0.75 * pi, pi};
  const auto d = phase_diagram_bilateral(phi, th, 2.5, 100);
  EXPECT_EQ(d.at(0, 1), Region::I);
  EXPECT_EQ(d.at(1, 0), Region::II);
  EXPECT_EQ(d.at(1, 2), Region::III);
  EXPECT_THROW(phase_diagram_bilateral(std::vector<double>{0, 4.0}, th, 2.5, 10), SweepError);
}

TEST(PhaseDiagram, BilateralEndpointsReduceToUnilateral) {
  const auto th = linspace(0, 2 * pi, 21);
  for (double phi : {0.0, 0.5 * pi}) {
    for (double t : th) {
      const auto [v1, v2] = bilateral_potentials(2.5, phi);
      const auto a = sweep_parameter("theta", std::vector<double>{t},
                                     [&](double x) { return bilateral_chain(60, x, 2.5, phi); });
      Potentials p;
      if (phi == 0.0) p[1] = v1;
      else p[60] = v2;
      const auto b = sweep_theta(60, p, std::vector<double>{t});
      ASSERT_EQ(a.points[0].report.states.size(), b.points[0].report.states.size());
      for (std::size_t k = 0; k < a.points[0].report.states.size(); ++k) {
        EXPECT_EQ(a.points[0].report.states[k].label, b.points[0].report.states[k].label);
        EXPECT_NEAR(a.points[0].report.states[k].energy, b.points[0].report.states[k].energy, 1e-12);
      }
    }
  }
}

TEST(PhaseDiagram, SymmetricPointSpectrum) {
  const auto sw = sweep_phi(100, 0.4 * pi, 2.5, std::vector<double>{0.75 * pi});
  EXPECT_LT(chiral_asymmetry(sw.points[0].energies), 1e-8);
}

TEST(PhaseDiagram, OnsetTracksAnalyticBoundary) {
  const auto V = linspace(0.0, 3.0, 301);
  for (double th : {0.25 * pi, 0.5 * pi, pi}) {
    const double onset = nontopological_onset(th, V, 100);
    EXPECT_NEAR(onset, boundary_unilateral(th), 0.02 + 1e-12) << th / pi;
  }
  EXPECT_TRUE(std::isnan(nontopological_onset(pi, std::vector<double>{0.1, 0.2}, 40)));
}

TEST(Regions, CountMappings) {
  EXPECT_EQ(region_unilateral({98, 2, 0, 0}), Region::I);
  EXPECT_EQ(region_unilateral({100, 0, 0, 0}), Region::II);
  EXPECT_EQ(region_unilateral({97, 2, 1, 0}), Region::III);
  EXPECT_EQ(region_bilateral({97, 2, 1, 0}), Region::I);
  EXPECT_EQ(region_bilateral({96, 2, 2, 0}), Region::II);
  EXPECT_EQ(region_bilateral({98, 0, 2, 0}), Region::III);
  for (auto r : {Region::I, Region::II, Region::III}) EXPECT_EQ(region_from_string(to_string(r)), r);
}

TEST(Inversion, DegenerateNontopologicalPairAtQuarterTurn) {
  const auto sw = sweep_phi(100, 0.01 * pi, 2.5, std::vector<double>{0.25 * pi});
  const auto nt = sw.points[0].report.with_label(StateLabel::NontopologicalEdge);
  ASSERT_EQ(nt.size(), 2u);
  EXPECT_LT(std::abs(nt[0].energy - nt[1].energy), 1e-6);
}

TEST(Inversion, TraceIsPiecewiseConstantBetweenFlips) {
  const auto grid = linspace(0, 2 * pi, 201);
  const auto tr = trace_band_inversion(grid, 2.5, 100);
  for (LevelRole r : kAllRoles) {
    const auto& t = tr.trace(r);
    ASSERT_EQ(t.indices.size(), grid.size());
    std::size_t changes = 0;
    for (std::size_t k = 1; k < grid.size(); ++k) changes += t.indices[k] != t.indices[k - 1];
    EXPECT_EQ(changes, tr.flips_of(r).size());
    for (std::size_t i : t.indices) {
      EXPECT_GE(i, 1u);
      EXPECT_LE(i, 100u);
    }
  }
  EXPECT_EQ(tr.index_sequence(LevelRole::blue), (std::vector<std::size_t>{100, 99, 1, 2, 100}));
}

TEST(Inversion, HalfPeriodSequenceIsNotClosed) {
  const auto tr = trace_band_inversion(linspace(0, pi, 101), 2.5, 100);
  EXPECT_EQ(tr.index_sequence(LevelRole::purple), (std::vector<std::size_t>{99, 100}));
}

TEST(Inversion, DoublyFilledRoleIsLost) {
  EdgeReport r;
  r.states.resize(10);
  for (std::size_t k = 0; k < 10; ++k) r.states[k] = {k + 1, -1.0 + 0.2 * k, StateLabel::Bulk, 5, 0.1};
  r.states[0].label = StateLabel::TopologicalEdge;
  r.states[0].center = 1;
  r.states[1].label = StateLabel::TopologicalEdge;
  r.states[1].center = 2;
  EXPECT_THROW(assign_roles(r, 1.0, 1.0, 0.1, 0.2), TrackingLost);
  try {
    assign_roles(r, 1.0, 1.0, 0.1, 0.2);
  } catch (const TrackingLost& e) {
    EXPECT_DOUBLE_EQ(e.phi_lo(), 0.1);
    EXPECT_DOUBLE_EQ(e.phi_hi(), 0.2);
  }
}

TEST(Inversion, VacantRolesAnchorByPotentialSign) {
  EdgeReport r;
  for (std::size_t k = 0; k < 6; ++k) r.states.push_back({k + 1, -2.5 + k, StateLabel::Bulk, 3, 0.1});
  auto a = assign_roles(r, 1.0, 1.0);
  EXPECT_EQ(a.index[0], 3u);  // green: top of lower band
  EXPECT_EQ(a.index[3], 6u);  // blue: top of spectrum
  a = assign_roles(r, -1.0, -1.0);
  EXPECT_EQ(a.index[0], 4u);
  EXPECT_EQ(a.index[3], 1u);
  EXPECT_FALSE(a.occupied[0]);
}

TEST(Parallel, VisitsEveryIndexOnceAndRethrowsLowest) {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(100, [&](std::size_t i) { hits[i]++; }, 4);
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  try {
    parallel_for(50, [](std::size_t i) {
      if (i == 7 || i == 30) throw std::runtime_error(std::to_string(i));
    }, 3);
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "7");
  }
}

TEST(Parallel, WorkerCountFromEnvironment) {
  ::setenv("SSHQED_THREADS", "3", 1);
  EXPECT_EQ(worker_count(), 3u);
  ::setenv("SSHQED_THREADS", "zero", 1);
  EXPECT_GE(worker_count(), 1u);
  ::unsetenv("SSHQED_THREADS");
}
