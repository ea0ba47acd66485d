#pragma once

#include <complex>
#include <span>
#include <vector>

#include "pairspec/spectral.hpp"

namespace pairspec {

struct MatchResult {
  double score_x = 0.0;       ///< S(F_x, F_x')
  double score_xtheta = 0.0;  ///< S(F_xθ, F_xθ')
  double fused = 0.0;         ///< score_x + score_xtheta
  double phi_opt = 0.0;       ///< rotation applied to the probe at the maximum
};

/// The two variants computed from one minutia set on grids of one family.
struct TemplatePair {
  SpectralTemplate location;
  SpectralTemplate location_orientation;
};

/// Complex Pearson correlation
///   ρ(u, v) = (1/n) <(u - ū)/σ_u, (v - v̄)/σ_v>,  <a, b> = Σ conj(a_i) b_i,
/// with σ_u² = (1/n) Σ |u_i - ū|². Throws DegenerateScoreError when either
/// vector has zero variance and IncompatibleTemplateError on a length
/// mismatch.
std::complex<double> complex_pearson(std::span<const std::complex<double>> u,
                                     std::span<const std::complex<double>> v);

/// |ρ| of the row-major flattened templates, clamped to [0, 1]. The grids
/// and variants must match.
double score(const SpectralTemplate& f, const SpectralTemplate& f2);

double fused_score(const SpectralTemplate& fx, const SpectralTemplate& fx2, const SpectralTemplate& ft,
                   const SpectralTemplate& ft2);

/// Strict preference used by the rotation search: higher fused score wins;
/// on equal scores the smaller |phi_opt| wins, then the negative angle.
bool better_match(const MatchResult& candidate, const MatchResult& incumbent) noexcept;

/// Rotates the probe by every angle in `angles` and keeps the best fused
/// score. Ties go to the smallest |φ|, then to the negative angle.
MatchResult match_with_rotation(const TemplatePair& enrolled, const TemplatePair& probe,
                                std::span<const double> angles);

/// Angles -max..max (degrees) in steps of `step`, returned in radians.
std::vector<double> rotation_angles(double max_deg, double step_deg);

/// Named rotation-search presets.
std::vector<double> rotation_off();            ///< {0}
std::vector<double> rotation_pm3_step1p5();    ///< ±3°, step 1.5°
std::vector<double> rotation_pm4p5_step1p5();  ///< ±4.5°, step 1.5°

}  // namespace pairspec
