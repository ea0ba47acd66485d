#pragma once

#include <cstdint>

#include "pairspec/evaluation.hpp"
#include "pairspec/minutiae.hpp"

namespace pairspec {

/// Acquisition noise applied to a master minutia set to simulate one
/// impression. The default-constructed model is the identity.
struct NoiseModel {
  double jitter_sigma = 0.0;  ///< px, Gaussian per coordinate
  double theta_sigma = 0.0;   ///< rad, Gaussian orientation noise
  double drop_prob = 0.0;     ///< per-minutia deletion probability
  int spur_count = 0;         ///< false minutiae added per impression
  double rot_range = 0.0;     ///< rad, global rotation uniform in ±rot_range
  double trans_range = 0.0;   ///< px, global translation uniform in ±trans_range per axis
  double quality_sigma = 0.0; ///< Gaussian noise on the quality label

  /// Throws std::invalid_argument for negative widths or drop_prob outside [0, 1].
  void validate() const;
};

inline constexpr double kMinMinutiaDistance = 8.0;

/// z minutiae placed uniformly with pairwise distance >= 8 px, orientations
/// uniform in [0, 2π), qualities uniform in [45, 100]. Throws
/// GenerationError when the packing cannot be met after bounded retries.
MinutiaSet generate_finger(std::uint64_t seed, int z, int width, int height);

/// Applies, in order: rotation about the image center (θ shifted along),
/// translation, per-minutia jitter, orientation noise, quality noise,
/// deletion, spur insertion. Coordinates are clamped to the image.
MinutiaSet perturb(const MinutiaSet& set, const NoiseModel& noise, std::uint64_t seed);

/// Rigid motion: counter-clockwise rotation by `phi` about (cx, cy) with
/// θ -> θ + φ, then translation by (dx, dy). No clamping; throws
/// std::invalid_argument if a minutia leaves the image.
MinutiaSet rigid_transform(const MinutiaSet& set, double phi, double cx, double cy, double dx = 0.0,
                           double dy = 0.0);

struct SynthProfile {
  int fingers = 50;
  int images = 6;
  int z = 35;
  int width = 326;
  int height = 357;
  NoiseModel noise;

  /// 50 fingers x 6 images, z = 35, jitter 2 px, θ noise 0.05 rad, drop 0.2,
  /// 3 spurs, rotation ±6°, translation ±10 px.
  static SynthProfile desk_scale();
};

/// Finger f is a master set from a seed derived from (seed, f); image i is
/// perturb(master, noise, derived(seed, f, i)). Fingers are numbered as
/// person = 1 + f / 10, finger = 1 + f % 10; image ids start at 1.
FingerprintDb generate_database(const SynthProfile& profile, std::uint64_t seed);

/// splitmix64-style mixing of a key tuple into a seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace pairspec
