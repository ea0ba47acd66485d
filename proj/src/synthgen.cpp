#include "pairspec/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "pairspec/errors.hpp"

namespace pairspec {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

int draw_quality(std::mt19937_64& rng) { return std::uniform_int_distribution<int>(45, 100)(rng); }

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b);
}

void NoiseModel::validate() const {
  if (jitter_sigma < 0 || theta_sigma < 0 || spur_count < 0 || rot_range < 0 || trans_range < 0 ||
      quality_sigma < 0) {
    throw std::invalid_argument("noise parameters must be non-negative");
  }
  if (!(drop_prob >= 0.0 && drop_prob <= 1.0)) throw std::invalid_argument("drop_prob must be in [0, 1]");
}

MinutiaSet generate_finger(std::uint64_t seed, int z, int width, int height) {
  if (z < 2) throw GenerationError("a synthetic finger needs at least two minutiae");
  if (width <= 0 || height <= 0) throw GenerationError("image dimensions must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(0.0, width);
  std::uniform_real_distribution<double> uy(0.0, height);
  std::uniform_real_distribution<double> ut(0.0, kTwoPi);
  const double min_sq = kMinMinutiaDistance * kMinMinutiaDistance;
  const long max_attempts = 1000L * z;

  std::vector<Minutia> out;
  out.reserve(static_cast<std::size_t>(z));
  long attempts = 0;
  while (static_cast<int>(out.size()) < z) {
    if (++attempts > max_attempts) {
      throw GenerationError("cannot place " + std::to_string(z) + " minutiae 8 px apart in " + std::to_string(width) +
                            "x" + std::to_string(height));
    }
    const double x = ux(rng);
    const double y = uy(rng);
    const bool clear = std::none_of(out.begin(), out.end(), [&](const Minutia& m) {
      return (m.x - x) * (m.x - x) + (m.y - y) * (m.y - y) < min_sq;
    });
    if (!clear) continue;
    const double theta = ut(rng);
    out.emplace_back(x, y, theta, draw_quality(rng));
  }
  return MinutiaSet(std::move(out), width, height);
}

MinutiaSet perturb(const MinutiaSet& set, const NoiseModel& noise, std::uint64_t seed) {
  noise.validate();
  std::mt19937_64 rng(seed);
  const double w = set.image_width();
  const double h = set.image_height();
  const double cx = w / 2.0;
  const double cy = h / 2.0;

  const double rot = noise.rot_range > 0 ? std::uniform_real_distribution<double>(-noise.rot_range, noise.rot_range)(rng) : 0.0;
  double dx = 0.0, dy = 0.0;
  if (noise.trans_range > 0) {
    std::uniform_real_distribution<double> ut(-noise.trans_range, noise.trans_range);
    dx = ut(rng);
    dy = ut(rng);
  }
  const double c = std::cos(rot);
  const double s = std::sin(rot);
  std::normal_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  std::vector<Minutia> out;
  out.reserve(set.size() + static_cast<std::size_t>(noise.spur_count));
  for (const Minutia& m : set.minutiae()) {
    double x = m.x, y = m.y, theta = m.theta;
    int quality = m.quality;
    if (rot != 0.0) {
      const double rx = m.x - cx;
      const double ry = m.y - cy;
      x = cx + c * rx - s * ry;
      y = cy + s * rx + c * ry;
      theta += rot;
    }
    x += dx;
    y += dy;
    if (noise.jitter_sigma > 0) {
      x += noise.jitter_sigma * unit(rng);
      y += noise.jitter_sigma * unit(rng);
    }
    if (noise.theta_sigma > 0) theta += noise.theta_sigma * unit(rng);
    if (noise.quality_sigma > 0) {
      quality = std::clamp(static_cast<int>(std::lround(quality + noise.quality_sigma * unit(rng))), 0, 100);
    }
    if (noise.drop_prob > 0 && u01(rng) < noise.drop_prob) continue;
    out.emplace_back(std::clamp(x, 0.0, w), std::clamp(y, 0.0, h), theta, quality);
  }
  if (noise.spur_count > 0) {
    std::uniform_real_distribution<double> ux(0.0, w);
    std::uniform_real_distribution<double> uy(0.0, h);
    std::uniform_real_distribution<double> ut(0.0, kTwoPi);
    for (int i = 0; i < noise.spur_count; ++i) {
      const double x = ux(rng);
      const double y = uy(rng);
      const double theta = ut(rng);
      out.emplace_back(x, y, theta, draw_quality(rng));
    }
  }
  return MinutiaSet(std::move(out), set.image_width(), set.image_height());
}

MinutiaSet rigid_transform(const MinutiaSet& set, double phi, double cx, double cy, double dx, double dy) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  std::vector<Minutia> out;
  out.reserve(set.size());
  for (const Minutia& m : set.minutiae()) {
    const double rx = m.x - cx;
    const double ry = m.y - cy;
    out.emplace_back(cx + c * rx - s * ry + dx, cy + s * rx + c * ry + dy, m.theta + phi, m.quality);
  }
  return MinutiaSet(std::move(out), set.image_width(), set.image_height());
}

SynthProfile SynthProfile::desk_scale() {
  SynthProfile p;
  p.noise.jitter_sigma = 2.0;
  p.noise.theta_sigma = 0.05;
  p.noise.drop_prob = 0.2;
  p.noise.spur_count = 3;
  p.noise.rot_range = deg_to_rad(6.0);
  p.noise.trans_range = 10.0;
  return p;
}

FingerprintDb generate_database(const SynthProfile& profile, std::uint64_t seed) {
  if (profile.fingers < 0 || profile.images < 0) throw GenerationError("finger and image counts must be non-negative");
  FingerprintDb db;
  db.reserve(static_cast<std::size_t>(profile.fingers));
  for (int f = 0; f < profile.fingers; ++f) {
    const MinutiaSet master = generate_finger(derive_seed(seed, static_cast<std::uint64_t>(f)), profile.z,
                                              profile.width, profile.height);
    Finger finger;
    finger.person = 1 + f / 10;
    finger.finger = 1 + f % 10;
    finger.id = std::to_string(finger.person) + "_" + std::to_string(finger.finger);
    for (int i = 0; i < profile.images; ++i) {
      const auto image_seed = derive_seed(seed, static_cast<std::uint64_t>(f), static_cast<std::uint64_t>(i) + 1);
      finger.images.push_back({i + 1, {}, perturb(master, profile.noise, image_seed)});
    }
    db.push_back(std::move(finger));
  }
  return db;
}

}  // namespace pairspec
