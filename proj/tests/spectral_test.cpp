#include "pairspec/spectral.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pairspec/errors.hpp"
#include "pairspec/synthgen.hpp"
#include "test_support.hpp"

namespace pairspec {
namespace {

using std::numbers::pi;
using testing::random_set;
using testing::relative_difference;
using testing::spectral_entry_oracle;

const MinutiaSet kTwoPoints({Minutia(0, 0, 0.3, 80), Minutia(3, 4, 1.1, 80)}, 326, 357);

TEST(DefaultGrid, MFamilyMcyt) {
  const GridSpec g = default_grid(Family::M, Variant::LocationOrientation, 256);
  EXPECT_EQ(g.kind(), GridKind::RadialDirect);
  ASSERT_EQ(g.q_values().size(), 16u);
  EXPECT_EQ(g.q_values().front(), 1);
  EXPECT_EQ(g.q_values().back(), 16);
  ASSERT_EQ(g.radial_values().size(), 20u);
  EXPECT_EQ(g.radial_values().front(), 16.0);
  EXPECT_EQ(g.radial_values().back(), 130.0);
  EXPECT_NEAR(g.radial_values()[1] - g.radial_values()[0], 114.0 / 19.0, 1e-12);
  EXPECT_EQ(g.sigma(), 2.3);
  EXPECT_EQ(g.point_count(), 320u);
  EXPECT_EQ(g, default_grid(Family::M, Variant::LocationOrientation, RadialProfile::Mcyt));
}

TEST(DefaultGrid, MFamilyVerifingerLocation) {
  const GridSpec g = default_grid(Family::M, Variant::Location, 326);
  EXPECT_EQ(g.q_values(), (std::vector<int>{2, 4, 6, 8, 10, 12, 14, 16}));
  ASSERT_EQ(g.radial_values().size(), 25u);
  EXPECT_EQ(g.radial_values().front(), 16.0);
  EXPECT_EQ(g.radial_values().back(), 160.0);
  EXPECT_EQ(g.point_count(), 200u);
  EXPECT_EQ(default_grid(Family::M, Variant::LocationOrientation, RadialProfile::Verifinger).point_count(), 400u);
}

TEST(DefaultGrid, LFamily) {
  const GridSpec g = default_grid(Family::L, Variant::LocationOrientation, 300);
  EXPECT_EQ(g.kind(), GridKind::LogPolarFreq);
  EXPECT_EQ(g.q_values().size(), 48u);
  EXPECT_EQ(g.q_values().front(), -24);
  EXPECT_EQ(g.q_values().back(), 24);
  ASSERT_EQ(g.radial_values().size(), 32u);
  EXPECT_EQ(g.radial_values().front(), 0.2);
  EXPECT_EQ(g.radial_values().back(), 37.7);
  EXPECT_EQ(g.point_count(), 1536u);
  const GridSpec x = default_grid(Family::L, Variant::Location, 300);
  EXPECT_EQ(x.q_values().size(), 24u);
  for (int q : x.q_values()) EXPECT_EQ(q % 2, 0);
}

TEST(GridSpecTest, Validation) {
  EXPECT_THROW(GridSpec(GridKind::RadialDirect, {0, 1}, {1.0}, 1.0), std::invalid_argument);
  EXPECT_THROW(GridSpec(GridKind::RadialDirect, {1, 1}, {1.0}, 1.0), std::invalid_argument);
  EXPECT_THROW(GridSpec(GridKind::RadialDirect, {1}, {2.0, 1.0}, 1.0), std::invalid_argument);
  EXPECT_THROW(GridSpec(GridKind::RadialDirect, {1}, {1.0, 1.0}, 1.0), std::invalid_argument);
  EXPECT_THROW(GridSpec(GridKind::RadialDirect, {1}, {1.0}, 0.0), std::invalid_argument);
  EXPECT_NO_THROW(GridSpec(GridKind::LogPolarFreq, {-1, 1}, {-1.0, 1.0}));
}

TEST(ComputeL, TwoMinutiaeHandValue) {
  const GridSpec g(GridKind::LogPolarFreq, {2}, {1.0});
  const SpectralTemplate t = compute_L(kTwoPoints, Variant::Location, g);
  const Complex expected = std::polar(2.0, 2 * std::atan2(4.0, 3.0) + std::log(5.0));
  EXPECT_NEAR(std::abs(t.values(0, 0) - expected), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(t.values(0, 0)), 2.0, 1e-14);
}

TEST(ComputeL, OddQVanishes) {
  std::mt19937_64 rng(1);
  const GridSpec g(GridKind::LogPolarFreq, {-3, -1, 1, 2, 3, 5, 7}, linspace(0.2, 37.7, 8));
  for (int trial = 0; trial < 20; ++trial) {
    const MinutiaSet s = random_set(rng, 25);
    const SpectralTemplate t = compute_L(s, Variant::Location, g);
    const double pairs = static_cast<double>(admissible_pairs(s).pairs.size());
    for (std::size_t i = 0; i < g.q_values().size(); ++i) {
      if (g.q_values()[i] % 2 == 0) continue;
      for (Complex v : t.values.row(i)) EXPECT_LE(std::abs(v), 1e-9 * pairs);
    }
  }
}

TEST(ComputeL, MatchesTermByTermOracle) {
  std::mt19937_64 rng(2);
  const GridSpec g(GridKind::LogPolarFreq, {-5, -2, 1, 4, 9}, linspace(0.2, 37.7, 6));
  for (Variant v : {Variant::Location, Variant::LocationOrientation}) {
    for (int trial = 0; trial < 5; ++trial) {
      const MinutiaSet s = random_set(rng, 20);
      const SpectralTemplate t = compute_L(s, v, g);
      Matrix<Complex> oracle(g.q_values().size(), g.radial_values().size());
      for (std::size_t i = 0; i < oracle.rows(); ++i) {
        for (std::size_t j = 0; j < oracle.cols(); ++j) {
          oracle(i, j) = spectral_entry_oracle(s, v == Variant::LocationOrientation, true, g.q_values()[i],
                                               g.radial_values()[j], 0.0);
        }
      }
      EXPECT_LE(relative_difference(oracle, t.values), 1e-12);
    }
  }
}

TEST(ComputeM, TwoMinutiaeHandValue) {
  const GridSpec g(GridKind::RadialDirect, {1, 2}, {5.0, 7.3}, 2.3);
  const SpectralTemplate t = compute_M(kTwoPoints, Variant::Location, g);
  EXPECT_NEAR(t.values(1, 0).real(), -0.5599, 1e-4);
  EXPECT_NEAR(t.values(1, 0).imag(), 1.9201, 1e-4);
  EXPECT_NEAR(std::abs(t.values(1, 0) - std::polar(2.0, 2 * std::atan2(4.0, 3.0))), 0.0, 1e-14);
  // odd q row vanishes for LOCATION
  EXPECT_LE(std::abs(t.values(0, 0)), 1e-15);
  EXPECT_LE(std::abs(t.values(0, 1)), 1e-15);
  // One sigma away from R_ab.
  EXPECT_NEAR(std::abs(t.values(1, 1) - t.values(1, 0) * std::exp(-0.5)), 0.0, 1e-14);
}

TEST(ComputeM, MatchesTermByTermOracle) {
  std::mt19937_64 rng(3);
  const GridSpec g(GridKind::RadialDirect, {-4, 1, 2, 3, 16}, linspace(16, 130, 7), 2.3);
  for (Variant v : {Variant::Location, Variant::LocationOrientation}) {
    for (int trial = 0; trial < 5; ++trial) {
      const MinutiaSet s = random_set(rng, 20);
      const SpectralTemplate t = compute_M(s, v, g);
      Matrix<Complex> oracle(g.q_values().size(), g.radial_values().size());
      for (std::size_t i = 0; i < oracle.rows(); ++i) {
        for (std::size_t j = 0; j < oracle.cols(); ++j) {
          oracle(i, j) = spectral_entry_oracle(s, v == Variant::LocationOrientation, false, g.q_values()[i],
                                               g.radial_values()[j], 2.3);
        }
      }
      EXPECT_LE(relative_difference(oracle, t.values), 1e-12);
    }
  }
}

TEST(ComputeSpectral, InsufficientMinutiae) {
  const GridSpec m = default_grid(Family::M, Variant::Location, 326);
  const GridSpec l = default_grid(Family::L, Variant::Location, 326);
  const MinutiaSet one({Minutia(1, 1, 0, 50)}, 326, 357);
  const MinutiaSet far({Minutia(0, 0, 0, 50), Minutia(300, 0, 0, 50)}, 326, 357);
  for (const MinutiaSet* s : {&one, &far}) {
    EXPECT_THROW(compute_M(*s, Variant::Location, m), InsufficientMinutiaeError);
    EXPECT_THROW(compute_L(*s, Variant::Location, l), InsufficientMinutiaeError);
  }
  EXPECT_THROW(compute_M(MinutiaSet({}, 10, 10), Variant::Location, m), InsufficientMinutiaeError);
  EXPECT_THROW(compute_L(kTwoPoints, Variant::Location, m), std::invalid_argument);
}

TEST(ComputeSpectral, TranslationInvariance) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> shift(-20.0, 20.0);
  const GridSpec l = default_grid(Family::L, Variant::LocationOrientation, 326);
  const GridSpec m = default_grid(Family::M, Variant::LocationOrientation, 326);
  for (int trial = 0; trial < 20; ++trial) {
    const MinutiaSet s = random_set(rng, 30, 326, 357, 140.0);
    const MinutiaSet moved = rigid_transform(s, 0.0, 0.0, 0.0, shift(rng), shift(rng));
    for (Variant v : {Variant::Location, Variant::LocationOrientation}) {
      EXPECT_LE(relative_difference(compute_L(s, v, l).values, compute_L(moved, v, l).values), 1e-9);
      EXPECT_LE(relative_difference(compute_M(s, v, m).values, compute_M(moved, v, m).values), 1e-9);
    }
  }
  // The hand example: shift by (10, -7).
  const MinutiaSet a({Minutia(20, 20, 0, 50), Minutia(23, 24, 1, 50), Minutia(40, 31, 2, 50)}, 100, 100);
  const MinutiaSet b = rigid_transform(a, 0.0, 0.0, 0.0, 10.0, -7.0);
  EXPECT_LE(relative_difference(compute_L(a, Variant::Location, l).values, compute_L(b, Variant::Location, l).values),
            1e-9);
}

TEST(ComputeSpectral, Deterministic) {
  std::mt19937_64 rng(5);
  const MinutiaSet s = random_set(rng, 35);
  const GridSpec m = default_grid(Family::M, Variant::LocationOrientation, 326);
  const GridSpec l = default_grid(Family::L, Variant::LocationOrientation, 326);
  EXPECT_EQ(compute_M(s, Variant::LocationOrientation, m), compute_M(s, Variant::LocationOrientation, m));
  EXPECT_EQ(compute_L(s, Variant::LocationOrientation, l), compute_L(s, Variant::LocationOrientation, l));
}

TEST(ComputeM, TruncationKnobIsClose) {
  std::mt19937_64 rng(6);
  const MinutiaSet s = random_set(rng, 35);
  const GridSpec m = default_grid(Family::M, Variant::LocationOrientation, 326);
  const SpectralTemplate exact = compute_M(s, Variant::LocationOrientation, m);
  const SpectralTemplate fast = compute_M(s, Variant::LocationOrientation, m, {.truncate_gaussian = true});
  const double pairs = static_cast<double>(admissible_pairs(s).pairs.size());
  for (std::size_t k = 0; k < exact.values.size(); ++k) {
    EXPECT_LE(std::abs(exact.values.flat()[k] - fast.values.flat()[k]), pairs * std::exp(-18.0));
  }
}

TEST(ComputeM, WeightHookScalesTerms) {
  const GridSpec g(GridKind::RadialDirect, {2}, {5.0}, 2.3);
  SpectralOptions opts;
  opts.weight = [](const Minutia&, const Minutia&, const PairGeometry&) { return 0.25; };
  const Complex full = compute_M(kTwoPoints, Variant::Location, g).values(0, 0);
  const Complex weighted = compute_M(kTwoPoints, Variant::Location, g, opts).values(0, 0);
  EXPECT_NEAR(std::abs(weighted - 0.25 * full), 0.0, 1e-15);
}

TEST(ComputeSpectral, DirectionDependentWeights) {
  // Weight depends on which minutia comes first; some directions dropped.
  const PairWeightFn weight = [](const Minutia& a, const Minutia& b, const PairGeometry&) {
    if (a.quality < 30 && b.quality >= 30) return 0.0;
    return 0.5 + a.quality / 100.0;
  };
  SpectralOptions opts;
  opts.weight = weight;
  std::mt19937_64 rng(21);
  const GridSpec l(GridKind::LogPolarFreq, {-3, 1, 2, 5}, linspace(0.2, 37.7, 5));
  const GridSpec m(GridKind::RadialDirect, {1, 2, 7}, linspace(16, 160, 6), 2.3);
  for (int trial = 0; trial < 4; ++trial) {
    const MinutiaSet s = random_set(rng, 15);
    for (Variant v : {Variant::Location, Variant::LocationOrientation}) {
      for (const GridSpec& g : {l, m}) {
        const bool log_polar = g.kind() == GridKind::LogPolarFreq;
        const SpectralTemplate t = compute_template(s, v, g, opts);
        Matrix<Complex> oracle(g.q_values().size(), g.radial_values().size());
        for (std::size_t a = 0; a < s.size(); ++a) {
          for (std::size_t b = 0; b < s.size(); ++b) {
            if (a == b) continue;
            const double dx = s[a].x - s[b].x, dy = s[a].y - s[b].y;
            const double r = std::hypot(dx, dy);
            if (2 * r > s.image_width()) continue;
            const double w = weight(s[a], s[b], PairGeometry{r, 0.0});
            const double ph = std::atan2(dy, dx) + (v == Variant::LocationOrientation ? s[a].theta - s[b].theta : 0.0);
            for (std::size_t i = 0; i < oracle.rows(); ++i) {
              const double q = g.q_values()[i];
              for (std::size_t j = 0; j < oracle.cols(); ++j) {
                const double x = g.radial_values()[j];
                const Complex ang = std::polar(w, q * std::atan2(dy, dx) + ph - std::atan2(dy, dx));
                oracle(i, j) += log_polar ? ang * std::polar(1.0, x * std::log(r))
                                          : ang * std::exp(-(x - r) * (x - r) / (2 * 2.3 * 2.3));
              }
            }
          }
        }
        EXPECT_LE(relative_difference(oracle, t.values), 1e-12);
      }
    }
  }
}

TEST(Transform, IdentityAndEvenHalfTurn) {
  std::mt19937_64 rng(7);
  const MinutiaSet s = random_set(rng, 30);
  const SpectralTemplate m = compute_M(s, Variant::Location, default_grid(Family::M, Variant::Location, 326));
  EXPECT_EQ(transform_template(m, 0.0, 1.0), m);
  EXPECT_LE(relative_difference(m.values, transform_template(m, pi).values), 1e-12);
}

TEST(Transform, MatchesRecomputationFromRotatedMinutiae) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> angle(-pi, pi);
  const GridSpec m = default_grid(Family::M, Variant::LocationOrientation, 326);
  const GridSpec l = default_grid(Family::L, Variant::LocationOrientation, 326);
  for (int trial = 0; trial < 10; ++trial) {
    const MinutiaSet s = random_set(rng, 30, 326, 357, 150.0);
    const double phi = angle(rng);
    const MinutiaSet rotated = rigid_transform(s, phi, 163.0, 178.5);
    for (Variant v : {Variant::Location, Variant::LocationOrientation}) {
      EXPECT_LE(relative_difference(compute_M(rotated, v, m).values, transform_template(compute_M(s, v, m), phi).values),
                1e-9);
      EXPECT_LE(relative_difference(compute_L(rotated, v, l).values, transform_template(compute_L(s, v, l), phi).values),
                1e-9);
    }
  }
}

TEST(Transform, LScalingLaw) {
  std::mt19937_64 rng(9);
  // Wide canvas so that scaling never changes pair admissibility.
  const GridSpec l = default_grid(Family::L, Variant::LocationOrientation, 2000);
  for (int trial = 0; trial < 5; ++trial) {
    const MinutiaSet s = random_set(rng, 25, 2000, 2000, 300.0);
    const double lambda = 0.8 + 0.4 * std::uniform_real_distribution<double>(0, 1)(rng);
    const double phi = 0.3;
    std::vector<Minutia> scaled;
    for (const Minutia& mm : s.minutiae()) {
      const double rx = mm.x - 1000, ry = mm.y - 1000;
      scaled.emplace_back(1000 + lambda * (std::cos(phi) * rx - std::sin(phi) * ry),
                          1000 + lambda * (std::sin(phi) * rx + std::cos(phi) * ry), mm.theta + phi, mm.quality);
    }
    const MinutiaSet t(std::move(scaled), 2000, 2000);
    for (Variant v : {Variant::Location, Variant::LocationOrientation}) {
      EXPECT_LE(relative_difference(compute_L(t, v, l).values, transform_template(compute_L(s, v, l), phi, lambda).values),
                1e-9);
    }
  }
}

TEST(Transform, ScalingRejectedForM) {
  const SpectralTemplate m = compute_M(kTwoPoints, Variant::Location, default_grid(Family::M, Variant::Location, 326));
  EXPECT_THROW(transform_template(m, 0.1, 1.1), UnsupportedTransformError);
  EXPECT_THROW(transform_template(m, 0.1, 0.0), UnsupportedTransformError);
  EXPECT_NO_THROW(transform_template(m, 0.1, 1.0));
}

TEST(Transform, PreservesMagnitudes) {
  std::mt19937_64 rng(10);
  const MinutiaSet s = random_set(rng, 30);
  const SpectralTemplate l =
      compute_L(s, Variant::LocationOrientation, default_grid(Family::L, Variant::LocationOrientation, 326));
  const SpectralTemplate t = transform_template(l, 1.234, 1.3);
  for (std::size_t k = 0; k < l.values.size(); ++k) {
    const double a = std::abs(l.values.flat()[k]);
    EXPECT_NEAR(std::abs(t.values.flat()[k]), a, 1e-12 * std::max(1.0, a));
  }
  EXPECT_EQ(t.grid, l.grid);
  EXPECT_EQ(t.variant, l.variant);
}

// f(-q, -w) = s(q) conj(f(q, w)) on sign-extended grids, s = 1 for LOCATION,
// (-1)^q with orientation.
TEST(ConjugateSymmetry, AllFourFunctions) {
  std::mt19937_64 rng(11);
  std::vector<int> qs;
  for (int q = -24; q <= 24; ++q) {
    if (q != 0) qs.push_back(q);
  }
  std::vector<double> ws = linspace(-37.7, 37.7, 31);
  const GridSpec l(GridKind::LogPolarFreq, qs, ws);
  std::vector<int> mq;
  for (int q = -16; q <= 16; ++q) {
    if (q != 0) mq.push_back(q);
  }
  const GridSpec m(GridKind::RadialDirect, mq, linspace(16, 160, 25), 2.3);

  for (int trial = 0; trial < 5; ++trial) {
    const MinutiaSet s = random_set(rng, 35);
    const double tol = 1e-12 * static_cast<double>(admissible_pairs(s).pairs.size());
    for (Variant v : {Variant::Location, Variant::LocationOrientation}) {
      const SpectralTemplate tl = compute_L(s, v, l);
      const std::size_t nq = qs.size(), nw = ws.size();
      for (std::size_t i = 0; i < nq; ++i) {
        const int q = qs[i];
        const double sign = (v == Variant::LocationOrientation && q % 2 != 0) ? -1.0 : 1.0;
        for (std::size_t j = 0; j < nw; ++j) {
          EXPECT_LE(std::abs(tl.values(nq - 1 - i, nw - 1 - j) - sign * std::conj(tl.values(i, j))), tol);
        }
      }
      const SpectralTemplate tm = compute_M(s, v, m);
      const std::size_t nm = mq.size();
      for (std::size_t i = 0; i < nm; ++i) {
        const int q = mq[i];
        const double sign = (v == Variant::LocationOrientation && q % 2 != 0) ? -1.0 : 1.0;
        for (std::size_t j = 0; j < tm.values.cols(); ++j) {
          EXPECT_LE(std::abs(tm.values(nm - 1 - i, j) - sign * std::conj(tm.values(i, j))), tol);
        }
      }
    }
  }
}

}  // namespace
}  // namespace pairspec
