#include "pairspec/synthgen.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pairspec/errors.hpp"

namespace pairspec {
namespace {

double min_pairwise_distance(const MinutiaSet& s) {
  double best = INFINITY;
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = a + 1; b < s.size(); ++b) best = std::min(best, std::hypot(s[a].x - s[b].x, s[a].y - s[b].y));
  }
  return best;
}

TEST(GenerateFinger, TypicalFinger) {
  const MinutiaSet s = generate_finger(1, 35, 326, 357);
  ASSERT_EQ(s.size(), 35u);
  EXPECT_GE(min_pairwise_distance(s), 8.0);
  EXPECT_EQ(s.image_width(), 326);
  EXPECT_EQ(s.image_height(), 357);
  for (const Minutia& m : s.minutiae()) {
    EXPECT_GE(m.quality, 45);
    EXPECT_LE(m.quality, 100);
    EXPECT_GE(m.theta, 0.0);
    EXPECT_LT(m.theta, kTwoPi);
  }
}

TEST(GenerateFinger, DeterministicInSeed) {
  EXPECT_EQ(generate_finger(7, 35, 326, 357), generate_finger(7, 35, 326, 357));
  EXPECT_NE(generate_finger(7, 35, 326, 357), generate_finger(8, 35, 326, 357));
  EXPECT_EQ(generate_finger(3, 2, 326, 357).size(), 2u);
}

TEST(GenerateFinger, Errors) {
  EXPECT_THROW(generate_finger(1, 1, 326, 357), GenerationError);
  EXPECT_THROW(generate_finger(1, 50, 20, 20), GenerationError);  // cannot pack 50 points 8 px apart
}

TEST(Perturb, ZeroNoiseIsIdentity) {
  const MinutiaSet s = generate_finger(2, 35, 326, 357);
  EXPECT_EQ(perturb(s, NoiseModel{}, 99), s);
}

TEST(Perturb, DropEverything) {
  NoiseModel n;
  n.drop_prob = 1.0;
  EXPECT_TRUE(perturb(generate_finger(2, 35, 326, 357), n, 5).empty());
  n.spur_count = 4;
  EXPECT_EQ(perturb(generate_finger(2, 35, 326, 357), n, 5).size(), 4u);
}

TEST(Perturb, DeterministicAndClamped) {
  const MinutiaSet s = generate_finger(3, 35, 326, 357);
  NoiseModel n = SynthProfile::desk_scale().noise;
  n.trans_range = 60.0;
  EXPECT_EQ(perturb(s, n, 11), perturb(s, n, 11));
  const MinutiaSet p = perturb(s, n, 11);
  for (const Minutia& m : p.minutiae()) {
    EXPECT_GE(m.x, 0.0);
    EXPECT_LE(m.x, 326.0);
    EXPECT_GE(m.y, 0.0);
    EXPECT_LE(m.y, 357.0);
  }
}

TEST(Perturb, RigidMotionKeepsDistances) {
  // Minutiae kept away from the border so the rigid part never clamps.
  std::vector<Minutia> inner;
  const MinutiaSet base = generate_finger(4, 35, 326, 357);
  for (const Minutia& m : base.minutiae()) {
    if (std::hypot(m.x - 163, m.y - 178.5) < 140) inner.push_back(m);
  }
  const MinutiaSet s(std::move(inner), 326, 357);
  NoiseModel n;
  n.rot_range = std::numbers::pi / 30;
  n.trans_range = 10.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const MinutiaSet p = perturb(s, n, seed);
    ASSERT_EQ(p.size(), s.size());
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (std::size_t b = a + 1; b < s.size(); ++b) {
        EXPECT_NEAR(std::hypot(p[a].x - p[b].x, p[a].y - p[b].y), std::hypot(s[a].x - s[b].x, s[a].y - s[b].y), 1e-9);
      }
    }
  }
}

TEST(Perturb, RotationStaysInRange) {
  const MinutiaSet s = generate_finger(5, 10, 326, 357);
  NoiseModel n;
  n.rot_range = std::numbers::pi / 30;  // 6 degrees
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const MinutiaSet p = perturb(s, n, seed);
    double d = wrap_angle(p[0].theta - s[0].theta);
    if (d > std::numbers::pi) d -= kTwoPi;
    EXPECT_LE(std::abs(d), std::numbers::pi / 30 + 1e-12);
  }
}

TEST(Perturb, RejectsInvalidNoise) {
  NoiseModel n;
  n.drop_prob = 1.5;
  EXPECT_THROW(perturb(generate_finger(1, 5, 100, 100), n, 1), std::invalid_argument);
  n = {};
  n.jitter_sigma = -1;
  EXPECT_THROW(perturb(generate_finger(1, 5, 100, 100), n, 1), std::invalid_argument);
}

TEST(RigidTransform, RotatesAboutCenter) {
  const MinutiaSet s({Minutia(60, 50, 0.5, 70)}, 100, 100);
  const MinutiaSet r = rigid_transform(s, std::numbers::pi / 2, 50, 50, 1, 2);
  EXPECT_NEAR(r[0].x, 51.0, 1e-12);
  EXPECT_NEAR(r[0].y, 62.0, 1e-12);
  EXPECT_NEAR(r[0].theta, 0.5 + std::numbers::pi / 2, 1e-12);
  EXPECT_THROW(rigid_transform(s, 0, 0, 0, 100, 0), std::invalid_argument);
}

TEST(GenerateDatabase, LayoutAndDeterminism) {
  SynthProfile p = SynthProfile::desk_scale();
  p.fingers = 12;
  p.images = 3;
  const FingerprintDb db = generate_database(p, 42);
  ASSERT_EQ(db.size(), 12u);
  EXPECT_EQ(db[0].id, "1_1");
  EXPECT_EQ(db[9].id, "1_10");
  EXPECT_EQ(db[10].id, "2_1");
  for (const Finger& f : db) {
    ASSERT_EQ(f.images.size(), 3u);
    EXPECT_EQ(f.images[0].image_id, 1);
    EXPECT_EQ(f.images[2].image_id, 3);
  }
  const FingerprintDb again = generate_database(p, 42);
  for (std::size_t f = 0; f < db.size(); ++f) {
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(db[f].images[i].minutiae, again[f].images[i].minutiae);
  }
}

TEST(DeriveSeed, DistinctKeys) {
  EXPECT_NE(derive_seed(1, 0, 1), derive_seed(1, 1, 0));
  EXPECT_NE(derive_seed(1, 2), derive_seed(2, 2));
  EXPECT_EQ(derive_seed(5, 6, 7), derive_seed(5, 6, 7));
}

}  // namespace
}  // namespace pairspec
