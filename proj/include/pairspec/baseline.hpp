#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pairspec/matrix.hpp"
#include "pairspec/minutiae.hpp"

namespace pairspec {

/// Single-minutia spectral baseline: the magnitude of the Fourier transform
/// of Gaussian-smeared minutia locations, sampled on a log-polar
/// (alpha, beta) grid with k = e^alpha (cos beta, sin beta).
enum class BaselineVariant { Plain, Orientation };

const char* to_string(BaselineVariant v) noexcept;
BaselineVariant baseline_variant_from_string(const std::string& s);

struct BaselineGrid {
  std::vector<double> alpha_values;  ///< ln |k|, k in radians per pixel
  std::vector<double> beta_values;   ///< equally spaced over [0, 2π)
  double sigma = 0.0;

  std::size_t point_count() const noexcept { return alpha_values.size() * beta_values.size(); }
  friend bool operator==(const BaselineGrid&, const BaselineGrid&) = default;
};

inline constexpr std::size_t kBaselineAlphaCount = 128;
inline constexpr std::size_t kBaselineBetaCount = 256;
inline constexpr double kBaselineKMin = 0.02;
inline constexpr double kBaselineKMax = 1.2;

/// alpha_count values over [ln 0.02, ln 1.2] (inclusive), beta_count angles
/// 2πj / beta_count.
BaselineGrid default_baseline_grid(std::size_t alpha_count = kBaselineAlphaCount,
                                   std::size_t beta_count = kBaselineBetaCount, double sigma = 2.3);

struct BaselineTemplate {
  BaselineGrid grid;
  BaselineVariant variant = BaselineVariant::Plain;
  Matrix<double> values;  ///< [alpha index][beta index]

  friend bool operator==(const BaselineTemplate&, const BaselineTemplate&) = default;
};

/// G[α][β] = e^{-σ²|k|²/2} |Σ_j c_j e^{-i k·x_j}| with c_j = 1 (Plain) or
/// e^{iθ_j} (Orientation). Throws InsufficientMinutiaeError on an empty set.
BaselineTemplate compute_G(const MinutiaSet& set, const BaselineGrid& grid,
                           BaselineVariant variant = BaselineVariant::Plain);

struct BaselineMatch {
  double score = 0.0;  ///< real Pearson correlation
  int shift = 0;       ///< arg-max column offset
};

/// Max over column shifts s of the Pearson correlation between g_ref[:, j]
/// and g[:, (j + s) mod cols]. Ties go to the smallest |s|, then to the
/// negative shift. Throws IncompatibleTemplateError on a shape mismatch and
/// DegenerateScoreError on zero variance.
BaselineMatch baseline_match(const Matrix<double>& g, const Matrix<double>& g_ref, std::span<const int> shifts);

/// Real Pearson correlation of two equally long vectors.
double pearson(std::span<const double> u, std::span<const double> v);

}  // namespace pairspec
